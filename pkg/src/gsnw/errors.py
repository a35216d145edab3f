"""Exception hierarchy.

Errors fall in two groups that the CLI maps to distinct exit codes: problems
with the input data (:class:`InputError`) and physically inadmissible
covariance matrices (:class:`NotBonaFide`).  Everything derives from
:class:`WitnessError`, itself a ``ValueError``.
"""


class WitnessError(ValueError):
    pass


class InputError(WitnessError):
    """Malformed or unusable input data."""


class NonSymmetric(InputError):
    pass


class NonFinite(InputError):
    pass


class TooFewSamples(InputError):
    pass


class ConventionError(InputError):
    pass


class InvalidSpec(InputError):
    pass


class NotBonaFide(WitnessError):
    """Covariance matrix violates the uncertainty relation."""


class NonPositive(NotBonaFide):
    pass


class DegenerateInvariants(NotBonaFide):
    pass


class GammaTooLarge(WitnessError):
    pass


class SemiboundednessViolated(WitnessError):
    """Coupling violates ``omegac**2 < 4*omega1*omega2``."""


class NoRealRoot(WitnessError):
    """The Delta = 0 coupling does not exist for this state."""


class FallbackOutOfDomain(WitnessError):
    pass


class NoUsableCoupling(WitnessError):
    pass


class CutoffTooSmall(WitnessError):
    pass


class CutoffTooLarge(WitnessError):
    pass


class RankExceedsCutoff(WitnessError):
    pass
