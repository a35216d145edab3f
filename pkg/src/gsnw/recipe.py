"""End-to-end certification of a standard form: family choice, optimisation, ladder."""
from dataclasses import dataclass, field

from gsnw import snbounds, witness
from gsnw.covariance import Family, Selection, select_family
from gsnw.errors import InputError, NoUsableCoupling

FAMILY_MODES = ("auto", "p", "n", "both")


class FamilyNone(InputError):
    """Vanishing cross correlations: no test operator can certify anything."""


@dataclass
class Outcome:
    selection: Selection
    examined: list
    result: witness.OptimizationResult = None
    unusable: list = field(default_factory=list)

    @property
    def certified_r(self):
        return 1 if self.result is None else self.result.certified_r

    @property
    def family(self):
        return None if self.result is None else self.result.params.family


def families_for(sf, mode="auto"):
    mode = mode.lower()
    if mode not in FAMILY_MODES:
        raise InputError(f"family mode must be one of {FAMILY_MODES}, got {mode!r}")
    sel = select_family(sf)
    if mode == "p":
        return sel, [Family.P]
    if mode == "n":
        return sel, [Family.N]
    if mode == "both":
        return sel, [Family.P, Family.N]
    return sel, {
        Selection.P: [Family.P],
        Selection.N: [Family.N],
        Selection.BOTH: [Family.P, Family.N],
        Selection.NONE: [],
    }[sel]


def certify_standard_form(sf, mode="auto", rmax=snbounds.DEFAULT_RMAX, grid=101):
    """Run the optimisation for each applicable family and keep the best.

    Raises :class:`FamilyNone` when ``mode="auto"`` and the cross block
    vanishes.  Families without any admissible coupling are listed in
    ``Outcome.unusable``; if none is usable the outcome carries no result.
    """
    sel, fams = families_for(sf, mode)
    if not fams:
        raise FamilyNone("V_c = 0: no Schmidt number above 1 can be identified")
    out = Outcome(selection=sel, examined=list(fams))
    for fam in fams:
        try:
            res = witness.optimize(sf, fam, rmax=rmax, grid=grid)
        except NoUsableCoupling:
            out.unusable.append(fam)
            continue
        if out.result is None or (res.certified_r, -res.normalized_expectation) > (
            out.result.certified_r,
            -out.result.normalized_expectation,
        ):
            out.result = res
    return out
