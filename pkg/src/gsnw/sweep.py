"""Parameter sweeps over the example state families, one CSV row per value."""
from dataclasses import dataclass, field
import math

import numpy as np

from gsnw import recipe, snbounds, states
from gsnw.errors import InputError, InvalidSpec

BASE_COLUMNS = [
    "param", "v1", "v2", "vc1", "vc2", "omega1", "omegac",
    "expectation", "expectation_norm", "g_inf_norm",
]


@dataclass(frozen=True)
class SweepSpec:
    state: str
    param: str
    start: float
    stop: float
    step: float
    fixed: dict = field(default_factory=dict)
    family: str = "auto"
    rmax: int = snbounds.DEFAULT_RMAX
    grid: int = 101

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise InvalidSpec("step must be positive")
        if not self.start <= self.stop:
            raise InvalidSpec("start must not exceed stop")
        if self.param in self.fixed:
            raise InvalidSpec(f"{self.param!r} is both fixed and swept")
        if self.family.lower() not in recipe.FAMILY_MODES:
            raise InvalidSpec(f"unknown family mode {self.family!r}")
        try:
            self.state_at(self.start)
        except InputError as exc:
            raise InvalidSpec(str(exc)) from None

    def values(self):
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [round(self.start + k * self.step, 12) for k in range(n)]

    def state_at(self, value):
        return states.from_spec(self.state, **{**self.fixed, self.param: value})

    def columns(self):
        return BASE_COLUMNS + [f"g_norm_{r}" for r in range(1, self.rmax + 1)] + ["certified_r"]


def sweep_row(spec, value):
    sf = spec.state_at(value)
    row = {"param": value, "v1": sf.v1, "v2": sf.v2, "vc1": sf.vc1, "vc2": sf.vc2, "certified_r": 1}
    try:
        out = recipe.certify_standard_form(sf, spec.family, rmax=spec.rmax, grid=spec.grid)
    except recipe.FamilyNone:
        return row
    res = out.result
    if res is None:
        return row
    g1 = res.params.g1
    row.update(
        omega1=res.params.omega1,
        omegac=res.params.omegac,
        expectation=res.expectation,
        expectation_norm=res.normalized_expectation,
        g_inf_norm=res.ladder.g_inf / g1,
        certified_r=res.certified_r,
    )
    for r, g in enumerate(res.ladder.effective, start=1):
        row[f"g_norm_{r}"] = g / g1
    return row


def run_sweep(spec):
    """Rows in increasing order of the swept parameter."""
    return [sweep_row(spec, v) for v in spec.values()]


def last_certified(rows, level=2):
    """Largest swept value whose certified Schmidt number is at least ``level``."""
    vals = [row["param"] for row in rows if row["certified_r"] >= level]
    return max(vals) if vals else None


def first_uncertified(rows, level=2):
    vals = [row["param"] for row in rows if row["certified_r"] < level]
    return min(vals) if vals else None


def certified_column(rows):
    return np.array([row["certified_r"] for row in rows])
