"""Smallest-eigenvalue kernels for symmetric tridiagonal matrices.

Two interchangeable backends compute the same Sturm-sequence bisection:

* ``numba``  -- scalar bisection compiled with ``@njit``;
* ``numpy``  -- multisection, counting eigenvalues below many shifts at once
  with vectorised numpy recurrences.

The default is numba when it imports. Set ``GSNW_DISABLE_NUMBA=1`` to force
the numpy path (read once at import time).
"""
import os

import numpy as np

_DISABLE = os.environ.get("GSNW_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
BACKEND = "numba" if (HAVE_NUMBA and not _DISABLE) else "numpy"

TOL = 1e-12
_SAFMIN = np.finfo(np.float64).tiny


def gershgorin_bracket(diag, off):
    """Interval ``[lo, hi]`` containing the smallest eigenvalue."""
    diag = np.asarray(diag, dtype=np.float64)
    off = np.abs(np.asarray(off, dtype=np.float64))
    radius = np.zeros_like(diag)
    radius[:-1] += off
    radius[1:] += off
    return float(np.min(diag - radius)), float(np.min(diag))


def _pivmin(off):
    if off.size == 0:
        return _SAFMIN
    return _SAFMIN * max(1.0, float(np.max(off * off)))


# -- numpy backend -----------------------------------------------------------

def sturm_count_numpy(diag, off, shifts):
    """Number of eigenvalues strictly below each entry of ``shifts``."""
    diag = np.asarray(diag, dtype=np.float64)
    off2 = np.asarray(off, dtype=np.float64) ** 2
    shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    pivmin = _pivmin(np.sqrt(off2))
    q = diag[0] - shifts
    q = np.where(np.abs(q) <= pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, diag.size):
        q = diag[i] - shifts - off2[i - 1] / q
        q = np.where(np.abs(q) <= pivmin, -pivmin, q)
        count += q < 0
    return count


def min_eigenvalue_numpy(diag, off, tol=TOL, points=63):
    diag = np.asarray(diag, dtype=np.float64)
    off = np.asarray(off, dtype=np.float64)
    if diag.size == 1:
        return float(diag[0])
    lo, hi = gershgorin_bracket(diag, off)
    while hi - lo > tol:
        xs = np.linspace(lo, hi, points + 2)[1:-1]
        hit = np.flatnonzero(sturm_count_numpy(diag, off, xs) >= 1)
        if hit.size == 0:
            new_lo, new_hi = xs[-1], hi
        elif hit[0] == 0:
            new_lo, new_hi = lo, xs[0]
        else:
            new_lo, new_hi = xs[hit[0] - 1], xs[hit[0]]
        if new_lo == lo and new_hi == hi:
            break
        lo, hi = new_lo, new_hi
    return float(0.5 * (lo + hi))


# -- numba backend -----------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _sturm_count_nb(diag, off2, x, pivmin):
        q = diag[0] - x
        if abs(q) <= pivmin:
            q = -pivmin
        count = 1 if q < 0.0 else 0
        for i in range(1, diag.shape[0]):
            q = diag[i] - x - off2[i - 1] / q
            if abs(q) <= pivmin:
                q = -pivmin
            if q < 0.0:
                count += 1
        return count

    @numba.njit(cache=True)
    def _min_eigenvalue_nb(diag, off, tol, safmin):
        n = diag.shape[0]
        if n == 1:
            return diag[0]
        off2 = np.empty(n - 1)
        emax = 0.0
        for i in range(n - 1):
            off2[i] = off[i] * off[i]
            if off2[i] > emax:
                emax = off2[i]
        pivmin = safmin * max(1.0, emax)
        lo = np.inf
        hi = np.inf
        for i in range(n):
            r = 0.0
            if i > 0:
                r += abs(off[i - 1])
            if i < n - 1:
                r += abs(off[i])
            lo = min(lo, diag[i] - r)
            hi = min(hi, diag[i])
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _sturm_count_nb(diag, off2, mid, pivmin) >= 1:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def min_eigenvalue_numba(diag, off, tol=TOL):
        diag = np.ascontiguousarray(diag, dtype=np.float64)
        off = np.ascontiguousarray(off, dtype=np.float64)
        return float(_min_eigenvalue_nb(diag, off, tol, _SAFMIN))

    def sturm_count_numba(diag, off, shifts):
        diag = np.ascontiguousarray(diag, dtype=np.float64)
        off = np.ascontiguousarray(off, dtype=np.float64)
        off2 = off * off
        pivmin = _pivmin(off)
        shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
        return np.array([_sturm_count_nb(diag, off2, float(x), pivmin) for x in shifts])

else:  # pragma: no cover
    min_eigenvalue_numba = None
    sturm_count_numba = None


if BACKEND == "numba":
    min_eigenvalue = min_eigenvalue_numba
    sturm_count = sturm_count_numba
else:
    min_eigenvalue = min_eigenvalue_numpy
    sturm_count = sturm_count_numpy


def warmup():
    """Trigger JIT compilation so that later timings exclude it."""
    if BACKEND == "numba":
        min_eigenvalue(np.array([0.0, 2.0]), np.array([0.5]))
