"""Standard forms of the example state families.

All generators return a :class:`~gsnw.covariance.StandardForm` directly; use
:func:`gsnw.covariance.embed_full_cm` to get the 4x4 matrix.
"""
from dataclasses import dataclass
import math

from gsnw.covariance import StandardForm
from gsnw.errors import GammaTooLarge, InputError


@dataclass(frozen=True)
class SqueezedThermalSpec:
    """Two-mode squeezed thermal state with extra local thermal noise.

    ``nbar1``/``nbar2`` are the thermal occupations squeezed by the two-mode
    squeezer, ``mbar`` is noise added locally to each mode afterwards.
    """

    gamma: float
    nbar1: float = 0.0
    nbar2: float = 0.0
    mbar: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or min(self.nbar1, self.nbar2, self.mbar) < 0:
            raise InputError("gamma and noise parameters must be non-negative")


@dataclass(frozen=True)
class PhaseRandomizedSpec:
    gamma: float
    sigma: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or self.sigma < 0:
            raise InputError("gamma and sigma must be non-negative")


def squeezed_thermal(spec):
    ch2 = math.cosh(spec.gamma) ** 2
    sh2 = math.sinh(spec.gamma) ** 2
    v1 = (spec.nbar1 + 0.5) * ch2 + (spec.nbar2 + 0.5) * sh2 + spec.mbar
    v2 = (spec.nbar2 + 0.5) * ch2 + (spec.nbar1 + 0.5) * sh2 + spec.mbar
    vc = (spec.nbar1 + spec.nbar2 + 1.0) * math.sinh(spec.gamma) * math.cosh(spec.gamma)
    # phi is a local phase rotation and drops out of the standard form
    return StandardForm(v1=v1, v2=v2, vc1=vc, vc2=-vc)


def phase_randomized(spec):
    eps = math.tanh(spec.gamma)
    if eps >= 1.0 - 1e-12:
        raise GammaTooLarge(f"tanh(gamma) = {eps!r} too close to 1")
    e2 = eps * eps
    v = (1.0 + e2) / (2.0 * (1.0 - e2))
    vc = eps * math.exp(-0.5 * spec.sigma ** 2) / (1.0 - e2)
    return StandardForm(v1=v, v2=v, vc1=vc, vc2=-vc)


def tmsv(gamma):
    """Two-mode squeezed vacuum."""
    if gamma < 0:
        raise InputError("gamma must be non-negative")
    v = 0.5 * math.cosh(2.0 * gamma)
    vc = 0.5 * math.sinh(2.0 * gamma)
    return StandardForm(v1=v, v2=v, vc1=vc, vc2=-vc)


def from_spec(name, **params):
    """Build a standard form from a family name and keyword parameters.

    ``nbar`` sets both ``nbar1`` and ``nbar2`` for the squeezed thermal family.
    """
    key = name.strip().lower().replace("_", "-")
    params = {k: float(v) for k, v in params.items()}
    if key == "squeezed-thermal":
        if "nbar" in params:
            nbar = params.pop("nbar")
            params.setdefault("nbar1", nbar)
            params.setdefault("nbar2", nbar)
        _check_keys(params, {"gamma", "nbar1", "nbar2", "mbar", "phi"}, required={"gamma"})
        return squeezed_thermal(SqueezedThermalSpec(**params))
    if key == "phase-randomized":
        _check_keys(params, {"gamma", "sigma"}, required={"gamma"})
        return phase_randomized(PhaseRandomizedSpec(**params))
    if key == "tmsv":
        _check_keys(params, {"gamma"}, required={"gamma"})
        return tmsv(params["gamma"])
    raise InputError(f"unknown state family {name!r}")


def parse_state(text):
    """Parse ``"squeezed-thermal gamma=0.7 nbar=1.5"`` into ``(name, params)``."""
    parts = text.split()
    if not parts:
        raise InputError("empty state spec")
    params = {}
    for item in parts[1:]:
        k, sep, v = item.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {item!r}")
        try:
            params[k.strip()] = float(v)
        except ValueError:
            raise InputError(f"non-numeric value in {item!r}") from None
    return parts[0], params


def _check_keys(params, allowed, required):
    unknown = set(params) - allowed
    if unknown:
        raise InputError(f"unknown parameters: {sorted(unknown)}")
    missing = required - set(params)
    if missing:
        raise InputError(f"missing parameters: {sorted(missing)}")
