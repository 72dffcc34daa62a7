"""Acceptance criteria 1-5, one PASS/FAIL line each (shown in the terminal summary)."""
import os
import subprocess
import sys
import time

import pytest

from istab.cli import run_checks, w0_report
from istab.gcb import based_irreducible
from istab.iqg import icontext, trivial_submodule, w0_closed_form
from istab.rootdata import admissible_pair
from istab.stability import RANKS

RESULTS = {}
HERE = os.path.dirname(os.path.abspath(__file__))


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    print("criterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))


def _summary(reps):
    counts = {}
    for r in reps:
        counts[r.status] = counts.get(r.status, 0) + 1
    bad = [r for r in reps if r.status != "pass"]
    return counts, bad


def test_criterion_1_calc_lemmas():
    t0 = time.time()
    reps = run_checks("lemma-calc-*")
    counts, bad = _summary(reps)
    dt = time.time() - t0
    ok = not bad and dt < 60
    record(1, ok, "%d checks %s in %.1fs" % (len(reps), counts, dt))
    assert ok, [(r.check_id, r.witness) for r in bad]


def _w0_reports():
    out = {}
    for kind in RANKS:
        for n in RANKS[kind]:
            out[(kind, n)] = w0_report(kind, n)
    return out


@pytest.mark.xfail(strict=True, reason="the printed FII closed form, read with its stated zero-weight labels, "
                                       "is not annihilated by E_3; see the FII tests in test_iqg")
def test_criterion_2_w0_literal():
    t0 = time.time()
    reps = _w0_reports()
    bad = {k: w for k, (ok, w, _) in reps.items() if not ok}
    dt = time.time() - t0
    ok = not bad and dt < 600
    detail = "%d pair/rank cases in %.1fs" % (len(reps), dt)
    if bad:
        detail += "; mismatches: %s" % ", ".join("%s%s" % (k, "" if n is None else ":n=%d" % n) for k, n in bad)
    record(2, ok, detail)
    assert ok


def test_criterion_2_w0_all_but_literal_fii():
    """Everything in criterion 2 except the literal FII comparison, which is replaced by the label-swapped one."""
    for (kind, n), (ok, wit, params) in _w0_reports().items():
        if kind == "FII":
            assert params.get("dim") == 1
            assert params.get("matches_with_zero_labels_swapped") is True
        else:
            assert ok, (kind, n, wit)
    p = admissible_pair("FII")
    w0 = trivial_submodule(icontext(p, based_irreducible(p.datum, p.varpi)))
    assert w0 == w0_closed_form(p, swap_zero_labels=True)


def test_criterion_3_gm():
    t0 = time.time()
    reps = run_checks("prop-base-statement:*")
    counts, bad = _summary(reps)
    dt = time.time() - t0
    ok = not bad and len(reps) == 16 and dt < 300
    record(3, ok, "%d checks %s in %.1fs" % (len(reps), counts, dt))
    assert ok, [(r.check_id, r.witness) for r in bad]


def test_criterion_4_stability():
    t0 = time.time()
    reps = run_checks("theorem-main:*")
    counts, bad = _summary(reps)
    dt = time.time() - t0
    ok = not bad and len(reps) == 31 and dt < 1800
    record(4, ok, "%d instances %s in %.1fs" % (len(reps), counts, dt))
    assert ok, [(r.check_id, r.status, r.witness) for r in bad]


FOUNDATION = ["test_scalar.py", "test_rootdata.py", "test_rep.py", "test_braid.py", "test_gcb.py",
              "test_crystal.py", "test_iqg.py", "test_stability.py", "test_kernels.py"]


def test_criterion_5_foundation_suites():
    t0 = time.time()
    files = [os.path.join(HERE, f) for f in FOUNDATION]
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"] + files,
                          capture_output=True, text=True, cwd=os.path.dirname(HERE))
    dt = time.time() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and dt < 1200
    record(5, ok, "%s (%.1fs)" % (tail, dt))
    assert ok, proc.stdout[-3000:]
