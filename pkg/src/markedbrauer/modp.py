"""Dense matrix rank over Z/p.

Two interchangeable kernels: a numba-jitted elimination and a vectorized
numpy fallback.  Setting the environment variable MARKEDBRAUER_PURE_NUMPY
to a nonempty value (before import) forces the fallback; so does a missing
numba.  Entries and the prime must stay below 2^21 so that products fit
comfortably in int64.
"""

import os

import numpy as np


def _rank_mod_p_numpy(a, p):
    a = np.ascontiguousarray(a % p)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = a[rank] * inv % p
        below = np.nonzero(a[rank + 1:, col])[0]
        if below.size:
            idx = rank + 1 + below
            a[idx] = (a[idx] - np.outer(a[idx, col], a[rank])) % p
        rank += 1
    return rank


USING_NUMBA = False
if not os.environ.get("MARKEDBRAUER_PURE_NUMPY"):
    try:
        from numba import njit

        @njit(cache=True)
        def _rank_mod_p_numba(a, p):  # pragma: no cover - jitted
            nrows, ncols = a.shape
            rank = 0
            for col in range(ncols):
                if rank == nrows:
                    break
                piv = -1
                for i in range(rank, nrows):
                    if a[i, col] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for j in range(col, ncols):
                        t = a[rank, j]
                        a[rank, j] = a[piv, j]
                        a[piv, j] = t
                inv = np.int64(1)
                base = a[rank, col]
                e = p - 2
                while e > 0:
                    if e & 1:
                        inv = inv * base % p
                    base = base * base % p
                    e >>= 1
                for j in range(col, ncols):
                    a[rank, j] = a[rank, j] * inv % p
                for i in range(rank + 1, nrows):
                    f = a[i, col]
                    if f != 0:
                        for j in range(col, ncols):
                            a[i, j] = (a[i, j] - f * a[rank, j]) % p
                rank += 1
            return rank

        USING_NUMBA = True
    except ImportError:
        pass


def rank_mod_p_dense(a, p):
    """Rank of an integer numpy array over Z/p (p an odd prime < 2^21)."""
    a = np.array(a, dtype=np.int64) % p
    if a.size == 0:
        return 0
    if USING_NUMBA:
        return int(_rank_mod_p_numba(a, np.int64(p)))
    return int(_rank_mod_p_numpy(a, int(p)))
