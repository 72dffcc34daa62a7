"""Dense Gaussian elimination over GF(p) on int64 arrays.

The numba kernel is used when numba imports and ISTAB_NUMBA is not "0";
otherwise a row-vectorized numpy version runs.  Both give identical results.
"""
import os

import numpy as np

PRIME = 2147483647  # 2^31 - 1, so products of residues fit in int64


def _rref_numpy(M, p, ncols):
    rows = M.shape[0]
    piv = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        f = M[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            M[hit] = (M[hit] - (f[hit, None] * M[r][None, :]) % p) % p
        piv.append(c)
        r += 1
    return r, piv


def _det_numpy(M, p):
    n = M.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            M[[c, k]] = M[[k, c]]
            det = (p - det) % p
        piv = int(M[c, c])
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        f = M[c + 1:, c] * inv % p
        hit = np.nonzero(f)[0]
        if hit.size:
            rows = c + 1 + hit
            M[rows] = (M[rows] - (f[hit, None] * M[c][None, :]) % p) % p
    return det


try:
    if os.environ.get("ISTAB_NUMBA", "1") == "0":
        raise ImportError
    from numba import njit

    @njit(cache=True)
    def _powmod(a, e, p):
        out = 1
        a %= p
        while e:
            if e & 1:
                out = out * a % p
            a = a * a % p
            e >>= 1
        return out

    @njit(cache=True)
    def _rref_nb(M, p, ncols):
        rows, cols = M.shape
        piv = np.full(rows, -1, dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if M[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    t = M[r, j]
                    M[r, j] = M[k, j]
                    M[k, j] = t
            inv = _powmod(M[r, c], p - 2, p)
            for j in range(cols):
                M[r, j] = M[r, j] * inv % p
            for i in range(rows):
                if i != r and M[i, c] != 0:
                    f = M[i, c]
                    for j in range(c, cols):
                        M[i, j] = (M[i, j] - f * M[r, j] % p) % p
            piv[r] = c
            r += 1
        return r, piv

    @njit(cache=True)
    def _det_nb(M, p):
        n = M.shape[0]
        det = 1
        for c in range(n):
            k = -1
            for i in range(c, n):
                if M[i, c] != 0:
                    k = i
                    break
            if k < 0:
                return 0
            if k != c:
                for j in range(n):
                    t = M[c, j]
                    M[c, j] = M[k, j]
                    M[k, j] = t
                det = (p - det) % p
            det = det * M[c, c] % p
            inv = _powmod(M[c, c], p - 2, p)
            for i in range(c + 1, n):
                if M[i, c] != 0:
                    f = M[i, c] * inv % p
                    for j in range(c, n):
                        M[i, j] = (M[i, j] - f * M[c, j] % p) % p
        return det

    def _det_jit(M, p):
        return int(_det_nb(M, p))

    def _rref_jit(M, p, ncols):
        r, piv = _rref_nb(M, p, ncols)
        return int(r), [int(c) for c in piv[:r]]

    BACKEND = "numba"
    rref = _rref_jit
    det = _det_jit
except ImportError:  # pragma: no cover - exercised with ISTAB_NUMBA=0
    BACKEND = "numpy"
    rref = _rref_numpy
    det = _det_numpy


def rref_modp(M, ncols=None, p=PRIME):
    """Reduce M in place; pivots are searched only in the first ncols columns."""
    if ncols is None:
        ncols = M.shape[1]
    return rref(M, p, ncols)


def det_modp(M, p=PRIME):
    """Determinant of a square int64 array mod p (M is destroyed)."""
    return det(M, p)
