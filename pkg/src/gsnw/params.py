from dataclasses import dataclass, replace
import math

from gsnw.covariance import Family
from gsnw.errors import InputError, SemiboundednessViolated

SEMIBOUND_MARGIN = 1e-12


@dataclass(frozen=True)
class WitnessParams:
    """Coefficients of a Gaussian test operator.

    ``L = omega1 (q1^2 + p1^2) + omega2 (q2^2 + p2^2) + omegac (q1 q2 +/- p1 p2)``
    with ``+`` for family ``P`` and ``-`` for family ``N``.
    """

    family: Family
    omega1: float
    omega2: float
    omegac: float

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not all(math.isfinite(x) for x in (self.omega1, self.omega2, self.omegac)):
            raise InputError("witness coefficients must be finite")
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise InputError("omega1 and omega2 must be positive")
        if self.semibound_margin <= SEMIBOUND_MARGIN:
            raise SemiboundednessViolated(
                f"omegac^2 = {self.omegac ** 2!r} not below 4*omega1*omega2 = "
                f"{4 * self.omega1 * self.omega2!r}"
            )

    @property
    def g1(self):
        return self.omega1 + self.omega2

    @property
    def semibound_margin(self):
        return 4.0 * self.omega1 * self.omega2 - self.omegac ** 2

    def scaled(self, c):
        return replace(self, omega1=c * self.omega1, omega2=c * self.omega2, omegac=c * self.omegac)
