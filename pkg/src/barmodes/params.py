"""Physical and dimensionless parameter sets of the bar/end-mass system.

The model is a longitudinally vibrating elastic bar, clamped at one end,
carrying at the other end a mass that sits on a centering spring, a damper
and a velocity-feedback actuator.  All solvers in this package work on the
five dimensionless groups; this module holds both representations and the
conversion between them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

# Above this value eps1/mu/nu are no longer "small" dissipation and the
# perturbation-based solvers lose their accuracy guarantees.
SMALLNESS_LIMIT = 0.1

_STRICTLY_POSITIVE = ("rho", "S", "E", "c", "m", "l")
_NON_NEGATIVE = ("beta", "b", "d")


@dataclass(frozen=True)
class PhysicalParams:
    """The nine physical constants of the hybrid system (SI units)."""

    rho: float   # mass density, kg/m^3
    S: float     # cross-section area, m^2
    E: float     # elastic modulus, Pa
    beta: float  # material dissipation coefficient, s
    b: float     # executive-mechanism damping factor, N*s/m
    c: float     # centering-spring rigidity, N/m
    d: float     # feedback coefficient, N*s/m
    m: float     # attached end mass, kg
    l: float     # bar length, m

    def __post_init__(self):
        for name in _STRICTLY_POSITIVE:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        for name in _NON_NEGATIVE:
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def wave_speed(self) -> float:
        """Longitudinal wave speed a = sqrt(E/rho)."""
        return math.sqrt(self.E / self.rho)


@dataclass(frozen=True)
class DimensionlessParams:
    """The five dimensionless groups every solver operates on.

    Unlike :class:`PhysicalParams`, construction does not validate, so that
    :func:`validate` can report on deliberately out-of-range values.
    """

    eps1: float   # material dissipation
    mu: float     # mechanism damping
    nu: float     # feedback coefficient
    eta: float    # mass ratio
    delta: float  # stiffness ratio


def to_dimensionless(p: PhysicalParams) -> DimensionlessParams:
    """Map physical constants to the dimensionless groups.

    eps1 = beta*a/l, mu = b*a/(E*S), nu = d*a/(E*S), eta = m/(rho*S*l),
    delta = E*S/(c*l), with wave speed a = sqrt(E/rho).
    """
    a = p.wave_speed
    return DimensionlessParams(
        eps1=p.beta * a / p.l,
        mu=p.b * a / (p.E * p.S),
        nu=p.d * a / (p.E * p.S),
        eta=p.m / (p.rho * p.S * p.l),
        delta=p.E * p.S / (p.c * p.l),
    )


def validate(dp: DimensionlessParams) -> list[str]:
    """Return the list of violated invariants (empty means valid).

    Non-fatally warns when eps1, mu or nu exceed ``SMALLNESS_LIMIT``: the
    values are usable by the numerical solver but outside the
    small-dissipation regime the perturbation formulas assume.
    """
    problems = []
    # "not (x > 0)" also catches NaN.
    if not dp.eta > 0:
        problems.append("eta > 0 violated")
    if not dp.delta > 0:
        problems.append("delta > 0 violated")
    for name in ("eps1", "mu", "nu"):
        if not getattr(dp, name) >= 0:
            problems.append(f"{name} >= 0 violated")
    for name in ("eps1", "mu", "nu"):
        value = getattr(dp, name)
        if value >= 0 and value > SMALLNESS_LIMIT:
            warnings.warn(
                f"{name} = {value:g} exceeds {SMALLNESS_LIMIT}; outside the "
                "small-dissipation regime of the perturbation solvers",
                UserWarning,
                stacklevel=2,
            )
    return problems
