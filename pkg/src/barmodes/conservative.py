"""Real eigenfrequencies of the undamped bar/end-mass problem.

With every dissipative parameter removed the frequency equation reduces to
cot(w) = eta*w / (1 - eta*delta*w^2).  Both sides have poles, so root
finding is done on the equivalent entire function

    chi(w) = (eta*delta*w^2 - 1)*cos(w) + eta*w*sin(w),

which is smooth everywhere and changes sign at each eigenfrequency.  These
real roots seed every other solver in the package.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .params import DimensionlessParams

# Undamped roots are separated by O(pi); 0.01 leaves two orders of margin.
DEFAULT_SCAN_STEP = min(0.01, np.pi / 50)

# Halvings of the scan step allowed while the bracket count keeps changing.
_MAX_RESCANS = 6

_BRENTQ_XTOL = 1e-13  # final bracket width < 1e-12


@dataclass(frozen=True)
class ConservativeRoot:
    omega: float
    index: int  # 1-based mode number


def characteristic(omega, dp: DimensionlessParams):
    """chi(omega); accepts scalars or arrays, zero exactly at eigenfrequencies."""
    omega = np.asarray(omega, dtype=float)
    chi = (dp.eta * dp.delta * omega**2 - 1.0) * np.cos(omega) \
        + dp.eta * omega * np.sin(omega)
    return chi if chi.ndim else float(chi)


def _bracket_roots(dp, omega_max, step):
    """Sign-scan (0, omega_max] and return [(lo, hi)] brackets; an exact grid
    zero yields a degenerate (x, x) bracket."""
    n = max(int(np.ceil(omega_max / step)), 1)
    grid = np.linspace(0.0, omega_max, n + 1)
    vals = characteristic(grid, dp)
    brackets = []
    for i in range(n):
        if vals[i] == 0.0:
            if grid[i] > 0.0:
                brackets.append((grid[i], grid[i]))
            continue
        if vals[i] * vals[i + 1] < 0.0:
            brackets.append((grid[i], grid[i + 1]))
    if vals[n] == 0.0:
        brackets.append((grid[n], grid[n]))
    return brackets


def find_roots(dp: DimensionlessParams, omega_max: float,
               max_count: int | None = None) -> list[ConservativeRoot]:
    """All roots of the characteristic on (0, omega_max], sorted ascending.

    A sign scan at DEFAULT_SCAN_STEP locates brackets, each refined by
    Brent's method to a bracket width below 1e-12.  The scan is repeated at
    half the step until the bracket count stabilizes (at most 6 halvings);
    if a finer scan exposes extra roots, a non-fatal warning reports the
    step at which they had been hidden (the symptom of nearly-double roots).
    """
    if not omega_max > 0:
        raise ValueError("omega_max must be positive")

    step = min(DEFAULT_SCAN_STEP, omega_max)
    brackets = _bracket_roots(dp, omega_max, step)
    for _ in range(_MAX_RESCANS):
        finer = _bracket_roots(dp, omega_max, step / 2.0)
        if len(finer) == len(brackets):
            brackets = finer
            break
        warnings.warn(
            f"scan step {step:g} hid {len(finer) - len(brackets)} root(s); "
            "rescanning at half step",
            UserWarning,
            stacklevel=2,
        )
        step /= 2.0
        brackets = finer

    roots = []
    for lo, hi in brackets:
        if lo == hi:
            roots.append(lo)
        else:
            roots.append(brentq(characteristic, lo, hi, args=(dp,),
                                xtol=_BRENTQ_XTOL, rtol=8 * np.finfo(float).eps))
    roots.sort()
    if max_count is not None:
        roots = roots[:max_count]
    return [ConservativeRoot(omega=w, index=i + 1) for i, w in enumerate(roots)]
