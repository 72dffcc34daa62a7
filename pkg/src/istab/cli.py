"""Command line entry point and the verification registry.

Every check has a stable id such as ``lemma-calc-BII:n=3`` or
``theorem-main:AI:w1|0|w1``; ``istab verify GLOB`` runs the matching ones.
"""
import fnmatch
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from . import rep as _rep
from .rootdata import KINDS, admissible_pair, build_datum, format_weight, parse_weight, theta_table
from .scalar import ONE, ev_inf, is_in_Ainf, qint_rf, qpow, render


class NoSuchCheck(KeyError):
    pass


class CheckReport:
    def __init__(self, check_id, status, params=None, witness=None, elapsed_ms=0):
        self.check_id = check_id
        self.status = status
        self.params = params or {}
        self.witness = witness
        self.elapsed_ms = elapsed_ms

    def as_dict(self):
        return {"check_id": self.check_id, "status": self.status, "params": self.params,
                "witness": self.witness, "elapsed_ms": self.elapsed_ms}


def _vec_text(v):
    return " + ".join("(%s)*G[%d]" % (render(x), k) for k, x in sorted(v.items())) or "0"


# checks ---------------------------------------------------------------------------------
# each returns (ok, witness, params)


def _calc_aii():
    from .gcb import based_irreducible
    from .iqg import a_vec, b_act, icontext, t_wbullet
    p = admissible_pair("AII")
    V = based_irreducible(p.datum, p.varpi)
    ctx = icontext(p, V)
    got = b_act(ctx, 1, a_vec(V, 4, 3))
    want = {k: qpow(2) for k in a_vec(V, 3, 1)}
    tw = t_wbullet(ctx)(a_vec(V, 4, 2)) == a_vec(V, 3, 1)
    return got == want and tw, None if got == want else _vec_text(got), {"identity": "B2 v43 = q^2 v31"}


def _calc_aiv(n):
    from .gcb import based_irreducible
    from .iqg import a_vec, b_act, icontext
    from .rep import vadd
    p = admissible_pair("AIV", n)
    V = based_irreducible(p.datum, p.datum.varpi(0))
    ctx = icontext(p, V)
    got = b_act(ctx, n - 1, a_vec(V, n))
    want = dict(a_vec(V, n + 1))
    vadd(want, a_vec(V, 1))
    return got == want, None if got == want else _vec_text(got), {"n": n}


def _calc_bd(kind, n):
    from .gcb import based_irreducible
    from .iqg import b_act, c_vec, icontext, t_wbullet
    p = admissible_pair(kind, n)
    V = based_irreducible(p.datum, p.datum.varpi(0))
    ctx = icontext(p, V)
    e = 2 * n - 1 if kind == "BII" else n - 1
    got = b_act(ctx, 0, c_vec(V, -1))
    want = {k: qpow(e) for k in c_vec(V, 2)}
    tw = t_wbullet(ctx)(c_vec(V, -2)) == c_vec(V, 2)
    return got == want and tw, None if got == want else _vec_text(got), {"n": n, "exponent": e}


def cii_table_failures(n):
    """Mismatches of the F_i / E_i tables on v_{kbar,k} in V(w2) of type C_n."""
    from .iqg import cii_tensor, cii_vector
    from .rep import vscale
    p = admissible_pair("CII", n)
    _, T = cii_tensor(p)
    bad = []
    for i in range(1, n + 1):
        for k in range(2, n + 1):
            v = cii_vector(p, -k, k)
            for gen in "FE":
                got = T.umod.act(gen, i - 1, v)
                if gen == "F":
                    tgt = cii_vector(p, -i, i + 1) if i < n else None
                else:
                    tgt = cii_vector(p, -(i + 1), i) if i < n else None
                if k == i + 1:
                    want = vscale(qint_rf(2), tgt)
                elif k == i + 2 or (k == i and i < n):
                    want = tgt
                else:
                    want = {}
                if got != want:
                    bad.append((gen, i, k))
    return bad


def _calc_cii(n):
    bad = cii_table_failures(n)
    return not bad, str(bad[:3]) if bad else None, {"n": n, "entries": 2 * n * (n - 1)}


def w0_report(kind, n):
    """(ok, witness, params) for the trivial submodule of V(varpi)."""
    from .gcb import based_irreducible
    from .iqg import WrongDimension, cii_embedding, icontext, trivial_submodule, w0_closed_form
    p = admissible_pair(kind, n)
    d = p.datum
    params = {"n": n} if n else {}
    if kind == "CII":
        V2, T, f = cii_embedding(p)
        ctx = icontext(p, V2)
    else:
        ctx = icontext(p, based_irreducible(d, p.varpi))
    try:
        w0 = trivial_submodule(ctx)
    except WrongDimension as exc:
        return False, str(exc), params
    params["dim"] = 1
    lat = all(is_in_Ainf(x) and ev_inf(x) == (1 if k == ctx.module.top else 0) for k, x in w0.items())
    if not lat:
        return False, "w0 not congruent to b_varpi: " + _vec_text(w0), params
    cf = w0_closed_form(p)
    if cf is None:
        params["closed_form"] = "none printed"
        return True, None, params
    got = T.to_u(f(w0)) if kind == "CII" else w0
    params["closed_form"] = "compared"
    if got != cf:
        wit = "computed " + _vec_text(w0)
        if kind == "FII" and got == w0_closed_form(p, swap_zero_labels=True):
            params["matches_with_zero_labels_swapped"] = True
            wit += "; equals the printed form with b_0^1 and b_0^2 interchanged"
        return False, wit, params
    if kind == "CII":
        from .iqg import cii_w0_prime
        wp = cii_w0_prime(p)
        if any(T.umod.act(g, j, wp) for g in "EF" for j in p.black):
            return False, "w'0 not annihilated", params
    return True, None, params


def _w0(kind):
    from .stability import RANKS
    wit = []
    params = {}
    ok = True
    for n in RANKS[kind]:
        o, w, pr = w0_report(kind, n)
        ok = ok and o
        params["n=%s" % n if n else "n"] = pr
        if w:
            wit.append(w)
    return ok, "; ".join(wit) or None, params


def _gm(kind, n, m):
    from .gcb import crystal_map_of
    from .iqg import g_functional, icontext, is_based_ihom, trivial_context
    p = admissible_pair(kind, n)
    g = g_functional(p, m)
    rep = is_based_ihom(g, icontext(p, g.source), trivial_context(p))
    cm = crystal_map_of(g)
    gamma = all((c is not None) == (b == g.source.top) for b, c in cm.items())
    norm = g({g.source.top: ONE}) == {g.target.top: ONE}
    ok = rep.ok and gamma and norm
    wit = None if ok else "%r gamma=%s norm=%s" % (rep, gamma, norm)
    return ok, wit, {"m": m, "dim": g.source.dim}


def _kiso(kind, n):
    from .iqg import is_based_ihom, k_isomorphism
    p = admissible_pair(kind, n)
    f, s, t = k_isomorphism(p)
    rep = is_based_ihom(f, s, t)
    sq = True
    if s is t:
        sq = all(f(f({b: ONE})) == {b: ONE} for b in range(s.dim))
    return rep.ok and sq, None if rep.ok and sq else repr(rep), {"K^2=id": sq if s is t else "n/a"}


def _theorem(kind, n, lam, mu, nu):
    from .stability import run_instance
    p = admissible_pair(kind, n)
    r = run_instance(p, lam, mu, nu)
    params = dict(r.params)
    params["ibar_paths"] = r.paths
    if r.status == "skipped":
        return None, r.witness, params
    return r.status == "pass", r.witness if r.status != "pass" else None, params


def _negative(kind, n, corrupt):
    from .stability import registry_instances, run_instance
    p = admissible_pair(kind, n)
    lam, mu, nu = registry_instances(p)[0]
    r = run_instance(p, lam, mu, nu, corrupt=corrupt)
    # the control passes when the corrupted pipeline is rejected
    return r.status == "fail", None if r.status == "fail" else "corruption went undetected", \
        {"corrupt": corrupt, "rejected_by": r.witness}


def _context_inv(kind, n):
    from .gcb import based_irreducible
    from .iqg import check_context, icontext
    p = admissible_pair(kind, n)
    ctx = icontext(p, based_irreducible(p.datum, p.varpi))
    bad = check_context(ctx)
    return not bad, str(bad[:3]) if bad else None, {"path": ctx.path, "dim": ctx.dim}


def _braid(series, n, lam):
    from .braid import braid_T_w, check_intertwining
    from .gcb import based_irreducible
    d = build_datum(series, n)
    M = based_irreducible(d, lam).gmod
    bad = []
    for i in d.nodes:
        bad += check_intertwining(M, i, [{b: ONE} for b in range(M.dim)])
    # braid relations between adjacent nodes
    rel = True
    for i in d.nodes:
        for j in d.nodes:
            if i < j:
                mij = {0: 2, 1: 3, 2: 4, 3: 6}[d.a(i, j) * d.a(j, i)]
                w1 = tuple((i, j) * mij)[:mij]
                w2 = tuple((j, i) * mij)[:mij]
                A, B = braid_T_w(M, w1), braid_T_w(M, w2)
                rel = rel and all(A({b: ONE}) == B({b: ONE}) for b in range(M.dim))
    ok = not bad and rel
    return ok, None if ok else "intertwining %s relations %s" % (bad[:2], rel), {"dim": M.dim}


def build_registry():
    """check_id -> (callable, args)."""
    from .stability import RANKS, all_pairs, registry_instances
    reg = {}
    reg["lemma-calc-AII"] = (_calc_aii, ())
    for n in (2, 3):
        reg["lemma-calc-AIV:n=%d" % n] = (_calc_aiv, (n,))
        reg["lemma-calc-BII:n=%d" % n] = (_calc_bd, ("BII", n))
    reg["lemma-calc-DII:n=4"] = (_calc_bd, ("DII", 4))
    for n in (3, 4):
        reg["lemma-calc-CII:n=%d" % n] = (_calc_cii, (n,))
    for k in KINDS:
        reg["w0-%s" % k] = (_w0, (k,))
    for k in KINDS:
        n = RANKS[k][0]
        lab = admissible_pair(k, n).label()
        for m in (1, 2):
            reg["prop-base-statement:%s:m=%d" % (lab, m)] = (_gm, (k, n, m))
        reg["ibar-context:%s" % lab] = (_context_inv, (k, n))
        reg["negative-control:g1:%s" % lab] = (_negative, (k, n, "g1"))
        reg["negative-control:phi:%s" % lab] = (_negative, (k, n, "phi"))
    for k, n in (("AI", None), ("AIII", None), ("AIV", 2), ("AIV", 3)):
        reg["lemma-K-%s" % admissible_pair(k, n).label()] = (_kiso, (k, n))
    for p in all_pairs():
        for lam, mu, nu in registry_instances(p):
            key = "theorem-main:%s:%s|%s|%s" % (p.label(), format_weight(lam), format_weight(mu),
                                                format_weight(nu))
            reg[key] = (_theorem, (p.kind, p.n or None, lam, mu, nu))
    for series, n, lam in (("A", 2, (1, 1)), ("B", 2, (1, 1)), ("C", 3, (0, 1, 0)), ("D", 4, (1, 0, 0, 0))):
        reg["braid:%s%d:%s" % (series, n, format_weight(lam))] = (_braid, (series, n, lam))
    return reg


def _run_one(args):
    check_id, size_bound, timing = args
    old = _rep.set_size_bound(size_bound) if size_bound else None
    fn, fargs = build_registry()[check_id]
    t0 = time.time()
    try:
        ok, wit, params = fn(*fargs)
    except _rep.SizeBoundExceeded as exc:
        ok, wit, params = None, str(exc), {}
    except Exception as exc:  # reported, never swallowed silently
        ok, wit, params = False, "%s: %s" % (type(exc).__name__, exc), {}
    finally:
        if old is not None:
            _rep.set_size_bound(old)
    status = "skipped" if ok is None else "pass" if ok else "fail"
    if status == "fail" and not wit:
        wit = "check returned false"
    ms = int(1000 * (time.time() - t0)) if timing else 0
    return CheckReport(check_id, status, params, wit, ms)


def run_checks(selection, parallelism=1, size_bound=None, timing=False):
    reg = build_registry()
    pats = [selection] if isinstance(selection, str) else list(selection)
    ids = sorted(k for k in reg if any(fnmatch.fnmatchcase(k, p) for p in pats))
    if not ids:
        raise NoSuchCheck(selection)
    jobs = [(i, size_bound, timing) for i in ids]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(parallelism) as ex:
            reps = list(ex.map(_run_one, jobs))
    else:
        reps = [_run_one(j) for j in jobs]
    return sorted(reps, key=lambda r: r.check_id)


def reports_json(reps):
    return json.dumps([r.as_dict() for r in reps], indent=2, sort_keys=True, ensure_ascii=False)


# click interface ------------------------------------------------------------------------


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.option("--parallel", default=1, show_default=True, help="Worker processes.")
@click.option("--size-bound", type=int, default=None, help="Largest module dimension to build.")
@click.pass_context
def main(ctx, as_json, parallel, size_bound):
    """Based modules, iquantum groups and stability of icanonical bases."""
    ctx.obj = {"json": as_json, "parallel": parallel, "size_bound": size_bound}
    if size_bound:
        old = _rep.set_size_bound(size_bound)
        ctx.call_on_close(lambda: _rep.set_size_bound(old))


def _emit(ctx, data, text):
    if ctx.obj["json"]:
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        click.echo(text)


@main.command()
@click.argument("series")
@click.argument("n", type=int, required=False)
@click.pass_context
def datum(ctx, series, n):
    """Cartan matrix, symmetrizer and longest word."""
    d = build_datum(series, n)
    data = {"series": d.series, "rank": d.rank, "cartan": [list(r) for r in d.cartan],
            "sym": list(d.sym), "longest_word": [i + 1 for i in d.longest_word()]}
    _emit(ctx, data, "\n".join("%s: %s" % kv for kv in data.items()))


def _pair_opts(f):
    f = click.option("--kind", type=click.Choice(KINDS), required=True)(f)
    f = click.option("--n", type=int, default=None)(f)
    return f


@main.command()
@_pair_opts
@click.pass_context
def pair(ctx, kind, n):
    """Admissible pair data and the multiples nu + w tau nu = m varpi."""
    p = admissible_pair(kind, n)
    data = {"kind": p.label(), "black": [j + 1 for j in p.black], "tau": [t + 1 for t in p.tau],
            "varsigma": {str(i + 1): render(x) for i, x in p.varsigma.items()},
            "varpi": format_weight(p.varpi), "wbullet": [j + 1 for j in p.wbullet],
            "theta_multiples": theta_table(p), "Y_imath": [list(h) for h in p.y_imath_basis()]}
    _emit(ctx, data, "\n".join("%s: %s" % kv for kv in data.items()))


@main.command()
@click.option("--series", required=True)
@click.option("--n", type=int, default=None)
@click.option("--weight", required=True)
@click.pass_context
def module(ctx, series, n, weight):
    """Build V(lam) and check the defining relations."""
    from .rep import irreducible
    d = build_datum(series, n)
    lam = parse_weight(weight, d)
    M = irreducible(d, lam)
    bad = M.check_relations()
    data = {"dim": M.dim, "weyl_dim": d.weyl_dimension(lam), "relations_ok": not bad,
            "weights": {format_weight(w): len(v) for w, v in sorted(M.by_weight.items())}}
    _emit(ctx, data, "\n".join("%s: %s" % kv for kv in data.items()))


@main.command()
@click.option("--series", required=True)
@click.option("--n", type=int, default=None)
@click.option("--weight", required=True)
@click.pass_context
def gcb(ctx, series, n, weight):
    """Global basis of V(lam) in the F-monomial basis."""
    from .gcb import based_irreducible
    d = build_datum(series, n)
    BM = based_irreducible(d, parse_weight(weight, d))
    rows = []
    for b in range(BM.dim):
        rows.append({"b": b, "weight": format_weight(BM.crystal.wt(b)), "string": list(BM.strings[b]),
                     "G": {str(k): render(x) for k, x in sorted(BM.C[b].items())}})
    _emit(ctx, rows, "\n".join("G[%(b)d] wt=%(weight)s string=%(string)s: %(G)s" % r for r in rows))


@main.command()
@click.option("--series", required=True)
@click.option("--n", type=int, default=None)
@click.option("--weight", required=True)
@click.option("--dot", is_flag=True, help="Graphviz output.")
@click.pass_context
def crystal(ctx, series, n, weight, dot):
    """Crystal graph of V(lam)."""
    from .gcb import based_irreducible
    d = build_datum(series, n)
    cr = based_irreducible(d, parse_weight(weight, d)).crystal
    if dot:
        click.echo(cr.to_dot())
        return
    rows = [{"b": b, "weight": format_weight(cr.wt(b)),
             "f": {str(i + 1): cr.f(i, b) for i in d.nodes if cr.f(i, b) is not None}} for b in range(len(cr))]
    _emit(ctx, rows, "\n".join("%(b)d wt=%(weight)s f=%(f)s" % r for r in rows))


@main.command()
@_pair_opts
@click.option("--w0", "show_w0", is_flag=True, help="Generator of the trivial submodule of V(varpi).")
@click.option("--icb", "show_icb", is_flag=True, help="icanonical basis table.")
@click.option("--weight", default=None, help="Highest weight for --icb (default varpi).")
@click.pass_context
def iqg(ctx, kind, n, show_w0, show_icb, weight):
    """B_i actions, w0 and icanonical bases."""
    from .gcb import based_irreducible
    from .iqg import icontext, trivial_submodule
    p = admissible_pair(kind, n)
    d = p.datum
    lam = parse_weight(weight, d) if weight else p.varpi
    ctx_i = icontext(p, based_irreducible(d, lam))
    data = {"module": "V(%s)" % format_weight(lam), "ibar_path": ctx_i.path}
    if show_w0:
        w0 = trivial_submodule(ctx_i)
        data["w0"] = {str(k): render(x) for k, x in sorted(w0.items())}
    if show_icb or not show_w0:
        data["icb"] = {str(b): {str(k): render(x) for k, x in sorted(v.items())} for b, v in enumerate(ctx_i.icb)}
    lines = ["%s: %s" % (k, v) for k, v in data.items() if k not in ("icb",)]
    if "icb" in data:
        lines += ["G^i[%s] = %s" % (b, _vec_text({int(k): x for k, x in ctx_i.icb[int(b)].items()}))
                  for b in data["icb"]]
    _emit(ctx, data, "\n".join(lines))


@main.command()
@_pair_opts
@click.option("--lambda", "lam", default="0")
@click.option("--mu", default="0")
@click.option("--nu", required=True)
@click.pass_context
def stability(ctx, kind, n, lam, mu, nu):
    """Build pi^i for one (lambda, mu, nu) and verify it is based."""
    from .stability import run_instance
    p = admissible_pair(kind, n)
    d = p.datum
    r = run_instance(p, parse_weight(lam, d), parse_weight(mu, d), parse_weight(nu, d))
    data = r.as_dict()
    data["elapsed_ms"] = 0
    _emit(ctx, data, "%s: %s\n%s" % (r.key, r.status.upper(),
                                    "\n".join("  %s: %s" % (k, "pass" if v else "FAIL") for k, v in r.bullets.items())))
    if r.status == "fail":
        sys.exit(1)


@main.command()
@click.argument("selection", nargs=-1)
@click.option("--timing", is_flag=True, help="Record elapsed_ms (makes the output non-reproducible).")
@click.pass_context
def verify(ctx, selection, timing):
    """Run the registered checks whose ids match the glob(s)."""
    try:
        reps = run_checks(list(selection) or ["*"], ctx.obj["parallel"], ctx.obj["size_bound"], timing)
    except NoSuchCheck as exc:
        raise click.ClickException("no check matches %s" % exc)
    if ctx.obj["json"]:
        click.echo(reports_json(reps))
    else:
        for r in reps:
            line = "%-60s %s" % (r.check_id, r.status.upper())
            if r.witness and r.status != "pass":
                line += "  " + r.witness
            click.echo(line)
    if any(r.status == "fail" for r in reps):
        sys.exit(1)


@main.command()
@click.option("--out", type=click.Path(dir_okay=False), default="istab-report.json", show_default=True)
@click.option("--list", "list_only", is_flag=True, help="List check ids only.")
@click.pass_context
def report(ctx, out, list_only):
    """Run every check and write the JSON report."""
    if list_only:
        for k in sorted(build_registry()):
            click.echo(k)
        return
    reps = run_checks(["*"], ctx.obj["parallel"], ctx.obj["size_bound"])
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(reports_json(reps))
    counts = {}
    for r in reps:
        counts[r.status] = counts.get(r.status, 0) + 1
    click.echo("%s: %s" % (out, ", ".join("%d %s" % (v, k) for k, v in sorted(counts.items()))))


if __name__ == "__main__":
    main()
