import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from istab import _kernels

P = _kernels.PRIME

matrices = st.tuples(st.integers(1, 7), st.integers(1, 7)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.sampled_from([0, 0, 1, 2, 5, P - 1, P - 3, 123456789])))


@given(matrices)
def test_rref_backends_agree(M):
    A, B = M.copy(), M.copy()
    ra = _kernels.rref_modp(A)
    rb = _kernels._rref_numpy(B, P, B.shape[1])
    assert ra[0] == rb[0] and list(ra[1]) == list(rb[1])
    assert (A == B).all()


@given(st.integers(1, 6).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, 50))))
def test_det_backends_agree(M):
    a = _kernels.det_modp(M.copy())
    b = _kernels._det_numpy(M.copy(), P)
    assert a == b
    if M.shape[0] <= 3:   # small enough for a float determinant to be exact after rounding
        assert a == round(np.linalg.det(M.astype(float))) % P


def test_numpy_fallback_selected_by_environment():
    code = ("from istab import _kernels; from istab.cli import w0_report;"
            "print(_kernels.BACKEND, w0_report('BII', 3)[0])")
    env = dict(os.environ, ISTAB_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]
