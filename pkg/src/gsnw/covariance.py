"""Two-mode covariance matrices and their standard form.

Covariance matrices are plain ``(4, 4)`` float arrays in quadrature order
``(q1, p1, q2, p2)`` with vacuum variance 1/2.
"""
from dataclasses import dataclass
import enum
import math

import numpy as np

from gsnw.errors import (
    DegenerateInvariants,
    InputError,
    NonFinite,
    NonPositive,
    NonSymmetric,
    TooFewSamples,
)

SYMMETRY_RTOL = 1e-10
BONA_FIDE_TOL = 1e-9
ROOT_CLIP_TOL = 1e-9
ZERO_CORRELATION = 1e-12
MIN_SAMPLES = 16

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
J4 = np.kron(np.eye(2), J2)


class Family(str, enum.Enum):
    """Test-operator family: ``P`` couples ``q1q2 + p1p2``, ``N`` couples ``q1q2 - p1p2``."""

    P = "P"
    N = "N"


class Selection(str, enum.Enum):
    P = "P"
    N = "N"
    BOTH = "Both"
    NONE = "None"


@dataclass(frozen=True)
class StandardForm:
    """Local blocks ``v1*I``, ``v2*I`` and cross block ``diag(vc1, vc2)``.

    Convention: ``vc1 >= 0`` and ``|vc1| >= |vc2|``; the sign of ``vc2`` carries
    the sign of ``det(V_c)``.
    """

    v1: float
    v2: float
    vc1: float
    vc2: float

    def __post_init__(self):
        vals = (self.v1, self.v2, self.vc1, self.vc2)
        if not all(math.isfinite(x) for x in vals):
            raise NonFinite("standard form entries must be finite")
        if min(self.v1, self.v2) < 0.5 - BONA_FIDE_TOL:
            raise NonPositive(f"local variances must be >= 1/2, got {self.v1}, {self.v2}")
        if self.vc1 < 0.0 or abs(self.vc2) > abs(self.vc1) * (1 + 1e-12) + 1e-15:
            raise InputError("expected vc1 >= 0 and |vc1| >= |vc2|")

    @property
    def det_vc(self):
        return self.vc1 * self.vc2

    @property
    def abs_vc(self):
        """Mean absolute cross correlation ``(|vc1| + |vc2|) / 2``."""
        return 0.5 * (abs(self.vc1) + abs(self.vc2))

    def as_tuple(self):
        return (self.v1, self.v2, self.vc1, self.vc2)


@dataclass(frozen=True)
class SymplecticInvariants:
    i1: float
    i2: float
    i3: float
    i4: float

    def as_tuple(self):
        return (self.i1, self.i2, self.i3, self.i4)


@dataclass(frozen=True)
class BonaFide:
    valid: bool
    symplectic_eigenvalues: tuple


def _det2(b):
    return b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]


def _as_cm(cm):
    m = np.asarray(cm, dtype=np.float64)
    if m.shape != (4, 4):
        raise InputError(f"covariance matrix must be 4x4, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("covariance matrix has non-finite entries")
    scale = max(float(np.max(np.abs(m))), 1e-300)
    if np.max(np.abs(m - m.T)) > SYMMETRY_RTOL * scale:
        raise NonSymmetric("covariance matrix is not symmetric")
    return m


def _check_positive(m):
    if np.min(np.diag(m)) <= 0.0 or np.linalg.eigvalsh(0.5 * (m + m.T))[0] <= 0.0:
        raise NonPositive("covariance matrix is not positive definite")


def symplectic_eigenvalues(cm):
    """Symplectic eigenvalues ``(nu1, nu2)`` with ``nu1 >= nu2``."""
    m = _as_cm(cm)
    ev = np.linalg.eigvals(-(J4 @ m) @ (J4 @ m))
    nu = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))
    # eigenvalues of -(JV)^2 come in degenerate pairs
    return float(0.5 * (nu[2] + nu[3])), float(0.5 * (nu[0] + nu[1]))


def validate_bona_fide(cm):
    m = _as_cm(cm)
    _check_positive(m)
    nu1, nu2 = symplectic_eigenvalues(m)
    return BonaFide(valid=nu2 >= 0.5 - BONA_FIDE_TOL, symplectic_eigenvalues=(nu1, nu2))


def invariants(cm):
    """Local symplectic invariants ``det V1, det V2, det Vc, det V``.

    Only symmetry and positivity are checked, so partially transposed
    (possibly unphysical) matrices are accepted.
    """
    m = _as_cm(cm)
    _check_positive(m)
    return SymplecticInvariants(
        i1=float(_det2(m[:2, :2])),
        i2=float(_det2(m[2:, 2:])),
        i3=float(_det2(m[:2, 2:])),
        i4=float(np.linalg.det(m)),
    )


def _whitener(block):
    """Unit-determinant ``W`` with ``W @ block @ W.T = sqrt(det block) * I``."""
    b = block / math.sqrt(_det2(block))
    # for symmetric positive B with det 1: B^(-1/2) = (adj(B) + I) / sqrt(tr B + 2)
    adj = np.array([[b[1, 1] + 1.0, -b[0, 1]], [-b[1, 0], b[0, 0] + 1.0]])
    return adj / math.sqrt(b[0, 0] + b[1, 1] + 2.0)


def to_standard_form(cm):
    """Reduce to ``(v1, v2, vc1, vc2)``.

    The local blocks are whitened to multiples of the identity by unit
    determinant matrices; the cross block is then diagonalised by rotations,
    so ``|vc1|, |vc2|`` are its singular values.  These follow from the
    rotation invariants ``hypot(a + d, c - b)`` and ``hypot(a - d, b + c)``,
    which stay accurate when ``|vc1|`` and ``|vc2|`` nearly coincide or vanish.
    The result reproduces the invariants ``i1..i4``.
    """
    inv = invariants(cm)
    m = _as_cm(cm)
    v1 = math.sqrt(inv.i1)
    v2 = math.sqrt(inv.i2)
    v12 = v1 * v2
    # the squared cross correlations solve t**2 - s t + i3**2 = 0
    s = (v12 * v12 + inv.i3 * inv.i3 - inv.i4) / v12
    if s * s - 4.0 * inv.i3 * inv.i3 < -ROOT_CLIP_TOL:
        raise DegenerateInvariants("invariants admit no real standard form")
    c = _whitener(m[:2, :2]) @ m[:2, 2:] @ _whitener(m[2:, 2:]).T
    x = math.hypot(c[0, 0] + c[1, 1], c[1, 0] - c[0, 1])
    y = math.hypot(c[0, 0] - c[1, 1], c[0, 1] + c[1, 0])
    vc1 = 0.5 * (x + y)
    vc2 = 0.5 * abs(x - y)
    if inv.i3 < 0.0:
        vc2 = -vc2
    elif inv.i3 == 0.0:
        vc2 = 0.0
    return StandardForm(v1=v1, v2=v2, vc1=vc1, vc2=vc2)


def embed_full_cm(sf):
    """Covariance matrix with blocks ``v1*I``, ``v2*I``, ``diag(vc1, vc2)``."""
    m = np.zeros((4, 4))
    m[0, 0] = m[1, 1] = sf.v1
    m[2, 2] = m[3, 3] = sf.v2
    m[0, 2] = m[2, 0] = sf.vc1
    m[1, 3] = m[3, 1] = sf.vc2
    return m


def partial_transpose(cm, subsystem=2):
    """Mirror reflection ``p_j -> -p_j`` of one subsystem."""
    if subsystem not in (1, 2):
        raise InputError("subsystem must be 1 or 2")
    m = np.asarray(cm, dtype=np.float64)
    if m.shape != (4, 4):
        raise InputError(f"covariance matrix must be 4x4, got shape {m.shape}")
    lam = np.ones(4)
    lam[2 * subsystem - 1] = -1.0
    return lam[:, None] * m * lam[None, :]


def select_family(sf):
    # |vc1| >= |vc2| by convention
    if abs(sf.vc1) <= ZERO_CORRELATION:
        return Selection.NONE
    if abs(sf.vc2) <= ZERO_CORRELATION:
        return Selection.BOTH
    return Selection.P if sf.det_vc > 0 else Selection.N


def cm_from_samples(records):
    """Symmetrised sample covariance of quadrature records ``(q1, p1, q2, p2)``."""
    x = np.asarray(records, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != 4:
        raise InputError(f"records must have shape (N, 4), got {x.shape}")
    if x.shape[0] < MIN_SAMPLES:
        raise TooFewSamples(f"need at least {MIN_SAMPLES} records, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise NonFinite("records contain non-finite values")
    c = np.cov(x, rowvar=False, ddof=1)
    return 0.5 * (c + c.T)
