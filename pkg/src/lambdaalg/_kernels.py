"""Dense F_p elimination kernels.

The hot loops (rank and reduced row echelon form over F_p) are compiled
with numba when it is installed; set the environment variable
``LAMBDA_NO_NUMBA=1`` to force the pure-numpy path. Both implementations
produce the same reduced echelon form (it is unique), and
benchmarks/bench_kernels.py compares their speed.
"""

from __future__ import annotations

import os

import numpy as np


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_DISABLED = _flag("LAMBDA_NO_NUMBA")


def _rref_numpy(A: np.ndarray, p: int):
    """In-place RREF over F_p with vectorized row updates. Returns (pivot_cols, rank)."""
    m, n = A.shape
    piv = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        if inv != 1:
            A[r] = A[r] * inv % p
        rows = np.nonzero(A[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
        piv[r] = c
        r += 1
    return piv[:r], r


_HAVE_NUMBA = False
if not NUMBA_DISABLED:
    try:
        import numba

        @numba.njit(cache=True, nogil=True)
        def _rref_numba(A, p):  # pragma: no cover - exercised via rref_mod_p
            m, n = A.shape
            cap = m if m < n else n
            piv = np.empty(cap, dtype=np.int64)
            r = 0
            for c in range(n):
                if r == m:
                    break
                pr = -1
                for i in range(r, m):
                    if A[i, c] != 0:
                        pr = i
                        break
                if pr == -1:
                    continue
                if pr != r:
                    for j in range(n):
                        tmp = A[r, j]
                        A[r, j] = A[pr, j]
                        A[pr, j] = tmp
                # modular inverse by binary exponentiation
                inv = 1
                base = A[r, c] % p
                e = p - 2
                while e:
                    if e & 1:
                        inv = inv * base % p
                    base = base * base % p
                    e >>= 1
                if inv != 1:
                    for j in range(n):
                        A[r, j] = A[r, j] * inv % p
                for i in range(m):
                    if i != r and A[i, c] != 0:
                        f = A[i, c]
                        for j in range(n):
                            A[i, j] = (A[i, j] - f * A[r, j]) % p
                piv[r] = c
                r += 1
            return piv[:r], r

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False


def using_numba() -> bool:
    return _HAVE_NUMBA


def _as_matrix(a, p: int) -> np.ndarray:
    A = np.array(a, dtype=np.int64, order="C")
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {A.shape}")
    return A % p


def rref_mod_p(a, p: int):
    """Reduced row echelon form over F_p.

    Returns (R, pivot_cols, rank); R is a fresh int64 array, reduced above
    and below each pivot.
    """
    A = _as_matrix(a, p)
    if A.size == 0:
        return A, np.empty(0, dtype=np.int64), 0
    if _HAVE_NUMBA:
        piv, rank = _rref_numba(A, p)
    else:
        piv, rank = _rref_numpy(A, p)
    return A, piv, rank


def rank_mod_p(a, p: int) -> int:
    return rref_mod_p(a, p)[2]


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Columns form a basis of the right null space over F_p; shape (ncols, nullity)."""
    A = np.array(a, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {A.shape}")
    n = A.shape[1]
    R, piv, rank = rref_mod_p(A, p)
    pivset = set(int(c) for c in piv)
    free = [c for c in range(n) if c not in pivset]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        out[fc, idx] = 1
        for r in range(rank):
            out[int(piv[r]), idx] = (-int(R[r, fc])) % p
    return out


def in_span_mod_p(cols: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Whether v lies in the column span of cols over F_p."""
    cols = np.atleast_2d(np.asarray(cols, dtype=np.int64))
    v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
    if cols.size == 0 or cols.shape[1] == 0:
        return not np.any(v % p)
    base = rank_mod_p(cols, p)
    return rank_mod_p(np.hstack([cols, v]), p) == base


def det_mod_p(a, p: int) -> int:
    """Determinant of a square matrix over F_p by elimination."""
    A = _as_matrix(a, p)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError(f"determinant needs a square matrix, got {A.shape}")
    det = 1
    for c in range(n):
        pr = -1
        for i in range(c, n):
            if A[i, c]:
                pr = i
                break
        if pr == -1:
            return 0
        if pr != c:
            A[[c, pr]] = A[[pr, c]]
            det = (-det) % p
        det = det * int(A[c, c]) % p
        inv = pow(int(A[c, c]), p - 2, p)
        A[c] = A[c] * inv % p
        for i in range(c + 1, n):
            if A[i, c]:
                A[i] = (A[i] - A[i, c] * A[c]) % p
    return det % p
