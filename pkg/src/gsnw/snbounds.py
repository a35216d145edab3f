"""Schmidt-number bound ladder ``g_r`` and certification.

``g_r`` is the smallest expectation value of a test operator over states of
Schmidt number at most ``r``.  For the Gaussian families it is the smallest
eigenvalue of an ``r x r`` symmetric tridiagonal matrix (plus ``omega1 +
omega2``), found by Sturm-sequence bisection.
"""
from dataclasses import dataclass
import functools
import math

import numpy as np

from gsnw import _accel
from gsnw.covariance import Family
from gsnw.errors import InputError
from gsnw.params import WitnessParams

STRICT_GUARD = 1e-12
SATURATION_TOL = 1e-9
DEFAULT_RMAX = 64


@dataclass(frozen=True)
class SymTridiagonal:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64)
        e = np.asarray(self.offdiag, dtype=np.float64)
        if d.ndim != 1 or d.size < 1 or e.shape != (d.size - 1,):
            raise InputError("need r diagonal and r-1 off-diagonal entries")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise InputError("tridiagonal entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self):
        return self.diag.size

    def dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class GrLadder:
    params: object
    raw: np.ndarray
    effective: np.ndarray
    g_inf: float

    @property
    def rmax(self):
        return self.raw.size


@dataclass(frozen=True)
class CertificationReport:
    certified_r: int
    saturated_inf: bool
    expectation: float
    margins: np.ndarray  # (effective[r] - expectation) / g1, r = 1..rmax
    params: object
    rmax: int


def tridiag_n(r, p):
    i = np.arange(r, dtype=np.float64)
    return SymTridiagonal(2.0 * i * (p.omega1 + p.omega2), np.arange(1, r, dtype=np.float64) * p.omegac)


def tridiag_p(r, p):
    i = np.arange(1, r + 1, dtype=np.float64)
    diag = 2.0 * ((i - 1) * p.omega1 + (r - i) * p.omega2)
    k = np.arange(1, r, dtype=np.float64)
    return SymTridiagonal(diag, np.sqrt(k * (r - k)) * p.omegac)


def min_eigen_tridiag(t, tol=_accel.TOL):
    return _accel.min_eigenvalue(t.diag, t.offdiag, tol)


def _tridiag(p, r):
    if r < 1:
        raise InputError("r must be >= 1")
    return tridiag_n(r, p) if p.family is Family.N else tridiag_p(r, p)


def g_r(p, r):
    if r == 1:
        return p.omega1 + p.omega2
    return min_eigen_tridiag(_tridiag(p, r)) + p.omega1 + p.omega2


def g_inf(p):
    if p.family is Family.N:
        return math.sqrt((p.omega1 + p.omega2) ** 2 - p.omegac ** 2)
    return math.sqrt((p.omega1 - p.omega2) ** 2 + p.omegac ** 2)


@functools.lru_cache(maxsize=8192)
def _raw_levels(family, omega1, omega2, omegac, rmax):
    p = WitnessParams(family, omega1, omega2, omegac)
    return tuple(g_r(p, r) for r in range(1, rmax + 1))


def ladder(p, rmax=DEFAULT_RMAX):
    if rmax < 1:
        raise InputError("rmax must be >= 1")
    if p.family is Family.N:
        # the N matrices depend on omega1 + omega2 only
        s = p.omega1 + p.omega2
        raw = _raw_levels(Family.N, 0.5 * s, 0.5 * s, p.omegac, rmax)
    else:
        raw = _raw_levels(Family.P, p.omega1, p.omega2, p.omegac, rmax)
    raw = np.array(raw)
    return GrLadder(params=p, raw=raw, effective=np.minimum.accumulate(raw), g_inf=g_inf(p))


def certify(expectation, lad):
    """Certified Schmidt-number lower bound from an expectation value.

    A level ``r`` is undercut when ``expectation < effective[r] - 1e-12``.
    When the expectation sits within ``1e-9`` of ``g_inf`` and level 1 is
    undercut, levels that are themselves within ``1e-9`` of ``g_inf`` are
    also counted as undercut: they cannot be resolved from the limit.
    """
    eff = lad.effective
    saturated = bool(expectation < lad.g_inf + SATURATION_TOL)
    undercut = expectation < eff - STRICT_GUARD
    if saturated and undercut[0]:
        undercut |= eff - lad.g_inf <= SATURATION_TOL
    # effective is non-increasing, so undercut levels form a prefix
    n = int(np.argmin(undercut)) if not undercut.all() else undercut.size
    g1 = lad.params.omega1 + lad.params.omega2
    return CertificationReport(
        certified_r=1 + n,
        saturated_inf=saturated,
        expectation=float(expectation),
        margins=(eff - expectation) / g1,
        params=lad.params,
        rmax=lad.rmax,
    )
