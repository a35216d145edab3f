"""Gaussian test operators on standard-form states and their optimisation."""
from dataclasses import dataclass, field
import math

import numpy as np

from gsnw import snbounds
from gsnw.covariance import Family
from gsnw.errors import (
    FallbackOutOfDomain,
    InputError,
    NoRealRoot,
    NoUsableCoupling,
    SemiboundednessViolated,
)
from gsnw.params import WitnessParams

OMEGA1_BOUNDS = (1e-3, 1.0 - 1e-3)
GOLDEN_TOL = 1e-6
BACKSUB_TOL = 1e-9
DISC_RTOL = 1e-10
TIE_DECIMALS = 12

__all__ = [
    "WitnessParams",
    "OptimizationResult",
    "cross_correlation",
    "expectation",
    "delta",
    "omegac_primary",
    "omegac_fallback",
    "optimize",
    "golden_section",
]


@dataclass(frozen=True)
class OptimizationResult:
    params: WitnessParams
    expectation: float
    normalized_expectation: float
    certified_r: int
    trace: list = field(repr=False)
    ladder: snbounds.GrLadder = field(repr=False)
    report: snbounds.CertificationReport = field(repr=False)
    coupling: str = "fallback"


def cross_correlation(sf, family):
    """Largest cross term ``|<q1 q2 +/- p1 p2>|`` reachable by local rotations.

    ``|vc1 + vc2|`` for ``P`` and ``|vc1 - vc2|`` for ``N``.  For the family
    matching the sign of ``det V_c`` this is ``|vc1| + |vc2|``; the mismatched
    family only reaches ``|vc1| - |vc2|`` since flipping the sign of one
    component is a partial transposition, not a local unitary.
    """
    if Family(family) is Family.P:
        return abs(sf.vc1 + sf.vc2)
    return abs(sf.vc1 - sf.vc2)


def expectation(sf, p):
    """``Tr(rho_s L)`` on a standard form, with the cross term aligned against ``omegac``."""
    return 2.0 * (sf.v1 * p.omega1 + sf.v2 * p.omega2) + p.omegac * cross_correlation(sf, p.family)


def delta(sf, p):
    return snbounds.g_inf(p) - expectation(sf, p)


def _quadratic_roots(a, b, c):
    scale = abs(b) + abs(c) + 1.0
    if abs(a) <= 1e-14 * scale:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    # a double root means a pure state; its coupling equals the fallback one
    if disc <= DISC_RTOL * (b * b + abs(4.0 * a * c)):
        return []
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = [q / a]
    if q != 0.0:
        roots.append(c / q)
    return roots


def omegac_primary(sf, omega1, omega2, family):
    """Coupling that closes the gap ``g_inf - <L>`` exactly.

    Solves ``Delta(omegac) = 0`` after squaring the square root and keeps a
    negative root that satisfies semiboundedness and survives
    back-substitution.  Raises :class:`NoRealRoot` otherwise.
    """
    family = Family(family)
    a = 0.5 * cross_correlation(sf, family)
    b = 2.0 * (sf.v1 * omega1 + sf.v2 * omega2)
    if family is Family.N:
        qa, qc = 1.0 + 4.0 * a * a, b * b - (omega1 + omega2) ** 2
    else:
        qa, qc = 4.0 * a * a - 1.0, b * b - (omega1 - omega2) ** 2
    roots = sorted((w for w in _quadratic_roots(qa, 4.0 * a * b, qc) if w < 0.0), key=abs, reverse=True)
    for w in roots:
        try:
            p = WitnessParams(family, omega1, omega2, w)
        except SemiboundednessViolated:
            continue
        if abs(delta(sf, p)) <= BACKSUB_TOL:
            return w
    raise NoRealRoot("no admissible coupling with Delta = 0")


def omegac_fallback(sf, omega1, omega2, family):
    """Stationary point of ``Delta`` in the coupling."""
    family = Family(family)
    a = 0.5 * cross_correlation(sf, family)
    if family is Family.N:
        w = -2.0 * a * (omega1 + omega2) / math.sqrt(1.0 + 4.0 * a * a)
    else:
        if a >= 0.5:
            raise FallbackOutOfDomain(f"P-family fallback needs |v_c| < 1/2, got {a!r}")
        w = -2.0 * abs(a * (omega1 - omega2)) / math.sqrt(1.0 - 4.0 * a * a)
    WitnessParams(family, omega1, omega2, w)
    return w


def golden_section(f, a, b, tol=GOLDEN_TOL):
    """Minimise ``f`` on ``[a, b]``; values only need to be comparable."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _evaluate(sf, family, omega1, rmax):
    omega2 = 1.0 - omega1
    coupling = "primary"
    try:
        w = omegac_primary(sf, omega1, omega2, family)
    except NoRealRoot:
        coupling = "fallback"
        try:
            w = omegac_fallback(sf, omega1, omega2, family)
        except (FallbackOutOfDomain, SemiboundednessViolated):
            return None
    p = WitnessParams(family, omega1, omega2, w)
    e = expectation(sf, p)
    lad = snbounds.ladder(p, rmax)
    return p, e, lad, snbounds.certify(e, lad), coupling


_WORST = (math.inf, math.inf, math.inf)


def _rank(cand):
    # minimised: more certified levels, then lower <L>/g1, then wider semiboundedness margin
    if cand is None:
        return _WORST
    p, e, _, rep, _ = cand
    return (-rep.certified_r, round(e / p.g1, TIE_DECIMALS), -round(p.semibound_margin, TIE_DECIMALS))


def optimize(sf, family, rmax=snbounds.DEFAULT_RMAX, grid=101):
    """Scan ``omega1`` (with ``omega1 + omega2 = 1``) and refine by golden section.

    The coupling at each point comes from :func:`omegac_primary`, falling back
    to :func:`omegac_fallback`.  Points where neither is admissible are skipped.
    """
    family = Family(family)
    if rmax < 1 or grid < 3:
        raise InputError("need rmax >= 1 and grid >= 3")
    lo, hi = OMEGA1_BOUNDS
    omegas = np.linspace(lo, hi, grid)
    trace = []
    best = None
    for w1 in omegas:
        cand = _evaluate(sf, family, float(w1), rmax)
        if cand is None:
            continue
        trace.append((float(w1), cand[0].omegac, cand[1], cand[3].certified_r))
        if _rank(cand) < _rank(best):
            best = cand
    if best is None:
        raise NoUsableCoupling("no grid point admits a semibounded coupling")

    h = omegas[1] - omegas[0]
    w0 = best[0].omega1
    cache = {}

    def objective(w1):
        if w1 not in cache:
            cache[w1] = _evaluate(sf, family, w1, rmax)
        return _rank(cache[w1])

    w_ref, _ = golden_section(objective, max(lo, w0 - h), min(hi, w0 + h))
    refined = cache[w_ref]
    if _rank(refined) < _rank(best):
        best = refined

    p, e, lad, rep, coupling = best
    return OptimizationResult(
        params=p,
        expectation=e,
        normalized_expectation=e / p.g1,
        certified_r=rep.certified_r,
        trace=trace,
        ladder=lad,
        report=rep,
        coupling=coupling,
    )
