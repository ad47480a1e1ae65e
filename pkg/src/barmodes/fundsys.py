"""Complex eigenvalues by the method of normal fundamental systems.

A time-harmonic solution u = (u1(x) + i*u2(x)) e^{(q+i*omega) tau} turns the
damped wave equation into a linear first-order system in the state
(g1, g2, g3, g4) = (u1, u2, u1', u2'):

    g1' = g3,  g2' = g4,
    g3' = K1*g1 - K2*g2,
    g4' = K2*g1 + K1*g2,        K1 + i*K2 = s^2 / (1 + eps1*s),  s = q + i*omega.

Integrating the four Cauchy problems whose initial states form the identity
gives the fundamental matrix Gamma(x).  The clamped end kills solutions 1
and 2; the end-mass boundary condition applied to columns 3 and 4 yields a
2x2 homogeneous system whose determinant Delta(omega, q) vanishes exactly at
eigenvalues.  Delta is non-negative (it has sum-of-squares structure), so
eigenvalues are located by derivative-free minimization of its normalized
form over (q, omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from . import asymptotic, conservative
from .params import DimensionlessParams

# A 4x4 ndarray whose column j holds the state of Cauchy solution j.
FundamentalMatrix = np.ndarray

DEFAULT_STEP = 1.0 / 2000.0
DEFAULT_SUBINTERVALS = 8
OVERFLOW_LIMIT = 1e150

_DENOM_FLOOR = 1e-30   # rhs-coefficient denominator guard
_NORM_FLOOR = 1e-300   # keeps the normalized determinant total
_RANK_TOL = 1e-8       # normalized-determinant level accepted as "singular"
_BAND_PENALTY = 1e6    # objective value outside the seed's frequency band


@dataclass(frozen=True)
class StateVector:
    """State (u1, u2, u1', u2') at one spatial point."""

    g1: float
    g2: float
    g3: float
    g4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.g1, self.g2, self.g3, self.g4])


def state_derivative(state: StateVector, K1: float, K2: float) -> StateVector:
    """Right-hand side of the normal system, spelled out state-wise.

    The integrator works on the matrix form; this is the same system kept
    in human-checkable shape (and cross-checked against the matrix in tests).
    """
    return StateVector(
        g1=state.g3,
        g2=state.g4,
        g3=K1 * state.g1 - K2 * state.g2,
        g4=K2 * state.g1 + K1 * state.g2,
    )


@dataclass(frozen=True)
class BoundaryCoefficients:
    """End-mass boundary polynomials D1..D4 evaluated at (q, omega)."""

    D1: float
    D2: float
    D3: float
    D4: float

    def as_matrix(self) -> np.ndarray:
        """The two boundary rows at x = 1 acting on a state (g1..g4)."""
        return np.array([
            [self.D1, self.D2, self.D3, self.D4],
            [-self.D2, self.D1, -self.D4, self.D3],
        ])


@dataclass(frozen=True)
class SpectralPoint:
    q: float
    omega: float
    delta_value: float = math.nan
    converged: bool = False


@dataclass(frozen=True)
class ModeShape:
    grid: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    C3: float
    C4: float


@dataclass(frozen=True)
class SweepRow:
    nu: float
    mode: int
    q: float
    omega: float
    delta_value: float
    converged: bool


@dataclass(frozen=True)
class SolveOptions:
    """Controls for the direct-search eigenvalue solver."""

    step: float = DEFAULT_STEP
    subintervals: int = DEFAULT_SUBINTERVALS
    simplex_size: float = 1e-3        # initial simplex half-width in q and omega
    diameter_tol: float = 1e-10       # stop when the simplex is this small
    max_iterations: int = 500
    converged_tol: float = 1e-12      # normalized determinant level
    band_halfwidth: float = np.pi / 2  # mode-hop guard around the seed omega


def rhs_coefficients(q: float, omega: float, eps1: float) -> tuple[float, float]:
    """(K1, K2) of the normal system; K1 + i*K2 = s^2/(1 + eps1*s).

    Raises ZeroDivisionError when eps1^2 omega^2 + (1 + eps1 q)^2 degenerates.
    """
    den = eps1 * eps1 * omega * omega + (1.0 + eps1 * q) ** 2
    if den <= _DENOM_FLOOR:
        raise ZeroDivisionError("degenerate rhs denominator: 1 + eps1*s ~ 0")
    K1 = (q * q - omega * omega + eps1 * q * (q * q + omega * omega)) / den
    K2 = (2.0 * q + eps1 * (q * q + omega * omega)) * omega / den
    return K1, K2


def boundary_coefficients(q: float, omega: float,
                          dp: DimensionlessParams) -> BoundaryCoefficients:
    """The four end-mass boundary polynomials in (q, omega) and the parameters.

    They are the real/imaginary parts of the complex boundary polynomials:
    D1 + i*D2 ~ coefficient of u(1), D3 + i*D4 ~ coefficient of u'(1)
    (conjugated), which tests verify independently.
    """
    eps1, mu, nu, eta, delta = dp.eps1, dp.mu, dp.nu, dp.eta, dp.delta
    q2, w2 = q * q, omega * omega
    D1 = eta * (q2 - w2) + eta * delta * q * q2 * (nu + mu) \
        - 3.0 * eta * delta * q * w2 * (nu + mu)
    D2 = -3.0 * eta * delta * q2 * omega * (nu + mu) \
        + eta * omega * (mu * delta * w2 - 2.0 * q + nu * delta * w2)
    D3 = delta * (q2 - w2) * (eps1 * mu + eta) \
        + eps1 * eta * delta * q * (q2 - 3.0 * w2) \
        + q * (mu * delta + eps1) + 1.0
    D4 = -omega * (eps1 + mu * delta) \
        + eps1 * eta * delta * omega * (w2 - 3.0 * q2) \
        - 2.0 * delta * q * omega * (eta + eps1 * mu)
    return BoundaryCoefficients(D1=D1, D2=D2, D3=D3, D4=D4)


def _rk4_step_matrix(A: np.ndarray, h: float) -> np.ndarray:
    # One classical Runge-Kutta step for y' = A y is exactly multiplication
    # by the degree-4 Taylor polynomial of exp(hA).
    hA = h * A
    M = np.eye(4)
    term = np.eye(4)
    for k in (1, 2, 3, 4):
        term = term @ hA / k
        M = M + term
    return M


def integrate_fundamental(q: float, omega: float, dp: DimensionlessParams,
                          x_start: float = 0.0, x_end: float = 1.0,
                          step: float = DEFAULT_STEP) -> FundamentalMatrix:
    """Fundamental matrix at x_end for identity initial data at x_start.

    Fixed-step classical fourth-order integration; the last step is
    shortened to land exactly on x_end.  Raises OverflowError when any
    entry exceeds 1e150 (the caller should subdivide), ValueError on a
    reversed interval or non-positive step.
    """
    if x_end < x_start:
        raise ValueError("x_end must not precede x_start")
    if not step > 0:
        raise ValueError("step must be positive")
    length = x_end - x_start
    if length == 0.0:
        return np.eye(4)

    K1, K2 = rhs_coefficients(q, omega, dp.eps1)
    A = np.array([
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [K1, -K2, 0.0, 0.0],
        [K2, K1, 0.0, 0.0],
    ])

    nfull = int(math.floor(length / step + 1e-9))
    remainder = length - nfull * step
    G = np.linalg.matrix_power(_rk4_step_matrix(A, step), nfull)
    if remainder > 1e-14:
        G = _rk4_step_matrix(A, remainder) @ G

    if not np.all(np.isfinite(G)) or np.max(np.abs(G)) > OVERFLOW_LIMIT:
        raise OverflowError(
            "fundamental matrix entry exceeded 1e150; subdivide the interval")
    return G


def _normalized_determinant(gamma_end: FundamentalMatrix, q: float,
                            omega: float, dp: DimensionlessParams) -> float:
    """Delta-hat from a fundamental matrix at x = 1.

    E = (boundary rows) @ (columns 3 and 4) is [[E1, E2], [E3, E4]];
    Delta = E1*E4 - E2*E3 >= 0 by the conjugate structure (column 4 is
    i x column 3, so E4 = E1 and E2 = -E3 and Delta is a sum of squares).
    Each E entry is a dot product of the D row with a Gamma column, so
    Delta <= ||D||^2 * (||col3||^2 + ||col4||^2) by Cauchy-Schwarz; dividing
    by half that bound yields a scale-free value with the same zeros and
    minimizers as the raw determinant, O(1) away from the spectrum and at
    roundoff level on it.  Clamped at 0 against sign noise in the last digit.
    """
    bc = boundary_coefficients(q, omega, dp)
    cols = gamma_end[:, 2:4]
    E = bc.as_matrix() @ cols
    raw = E[0, 0] * E[1, 1] - E[0, 1] * E[1, 0]
    d_norm2 = bc.D1**2 + bc.D2**2 + bc.D3**2 + bc.D4**2
    g_norm2 = float(np.sum(cols * cols))
    scale = 0.5 * d_norm2 * g_norm2 + _NORM_FLOOR
    return max(raw, 0.0) / scale


def delta(q: float, omega: float, dp: DimensionlessParams,
          step: float = DEFAULT_STEP) -> float:
    """Normalized characteristic determinant from a single-interval
    integration of [0, 1]; non-negative, zero exactly at eigenvalues."""
    gamma_end = integrate_fundamental(q, omega, dp, 0.0, 1.0, step)
    return _normalized_determinant(gamma_end, q, omega, dp)


def delta_subdivided(q: float, omega: float, dp: DimensionlessParams,
                     n: int = DEFAULT_SUBINTERVALS,
                     step: float = DEFAULT_STEP) -> float:
    """Normalized determinant with [0, 1] split into n equal subintervals.

    Each subinterval gets a fresh fundamental matrix from identity initial
    data; matching values and derivatives at the junctions is exactly
    right-to-left multiplication of the per-subinterval matrices, so the
    composed product is the fundamental matrix at x = 1.  n = 1 reproduces
    :func:`delta` identically.
    """
    if n < 1:
        raise ValueError("subinterval count must be at least 1")
    edges = np.linspace(0.0, 1.0, n + 1)
    gamma_end = None
    for i in range(n):
        seg = integrate_fundamental(q, omega, dp, edges[i], edges[i + 1], step)
        gamma_end = seg if gamma_end is None else seg @ gamma_end
    return _normalized_determinant(gamma_end, q, omega, dp)


def find_eigenvalue(dp: DimensionlessParams, seed: SpectralPoint,
                    options: SolveOptions | None = None) -> SpectralPoint:
    """Locate an eigenvalue near the seed by simplex minimization of the
    normalized determinant over (q, omega).

    Runs Nelder-Mead from the seed (initial simplex offsets from
    ``simplex_size``), then restarts once from the found point with a 10x
    smaller simplex.  Frequencies outside the seed's band (half-width
    ``band_halfwidth``) get a large penalty, which prevents mode hopping.
    Never raises: a failed search comes back with converged=False.
    """
    opts = options or SolveOptions()
    omega_seed = seed.omega

    def objective(z):
        qq, ww = z
        if ww <= 0.0 or abs(ww - omega_seed) >= opts.band_halfwidth:
            return _BAND_PENALTY
        try:
            return delta_subdivided(qq, ww, dp, opts.subintervals, opts.step)
        except (OverflowError, ZeroDivisionError):
            return _BAND_PENALTY

    x0 = np.array([seed.q, seed.omega], dtype=float)
    size = opts.simplex_size
    result = None
    for _ in range(2):  # initial search + one refining restart
        simplex = np.array([x0, x0 + [size, 0.0], x0 + [0.0, size]])
        result = minimize(
            objective, x0, method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": opts.diameter_tol,
                "fatol": np.inf,
                "maxiter": opts.max_iterations,
                "maxfev": 50 * opts.max_iterations,
            },
        )
        x0 = result.x
        size = opts.simplex_size / 10.0

    q_best, omega_best = float(x0[0]), float(x0[1])
    value = float(result.fun)
    return SpectralPoint(q=q_best, omega=omega_best, delta_value=value,
                         converged=value < opts.converged_tol)


def mode_shape(point: SpectralPoint, dp: DimensionlessParams,
               resolution: int = 201, step: float = DEFAULT_STEP) -> ModeShape:
    """Displacement profile (u1, u2) of a converged eigenvalue on a grid.

    The coefficient pair (C3, C4) is the null direction of the 2x2 boundary
    system.  That system is a scaled rotation, so the null direction is only
    defined up to complex phase; the shape is therefore rotated to make its
    largest-magnitude sample real and positive (rendering the conservative
    limit purely real) and scaled to unit peak amplitude.

    Raises ValueError for an unconverged point and numpy.linalg.LinAlgError
    when the boundary system is numerically full-rank (the point is not an
    eigenvalue).
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if not point.converged:
        raise ValueError("mode_shape needs a converged SpectralPoint")

    grid = np.linspace(0.0, 1.0, resolution)
    gammas = [np.eye(4)]
    for i in range(resolution - 1):
        seg = integrate_fundamental(point.q, point.omega, dp,
                                    grid[i], grid[i + 1], step)
        gammas.append(seg @ gammas[-1])

    bc = boundary_coefficients(point.q, point.omega, dp)
    E = bc.as_matrix() @ gammas[-1][:, 2:4]
    dhat = _normalized_determinant(gammas[-1], point.q, point.omega, dp)
    if dhat >= _RANK_TOL:
        raise np.linalg.LinAlgError(
            f"boundary system is full rank (normalized determinant {dhat:.3e}); "
            "the point is not an eigenvalue")

    _, _, vh = np.linalg.svd(E)
    c_raw = complex(vh[-1][0], vh[-1][1])

    # u1 + i*u2 = (C3 + i*C4) * (solution-3 state read complex-wise).
    profile = np.array([complex(g[0, 2], g[1, 2]) for g in gammas])
    profile = c_raw * profile
    peak = int(np.argmax(np.abs(profile)))
    c_final = c_raw / profile[peak]
    profile = profile / profile[peak]
    return ModeShape(grid=grid, u1=profile.real, u2=profile.imag,
                     C3=c_final.real, C4=c_final.imag)


def sweep_feedback(dp: DimensionlessParams, nu_values, modes=(1, 2),
                   omega_max: float = 20.0,
                   options: SolveOptions | None = None) -> list[SweepRow]:
    """Track eigenvalues of the requested modes across an ascending nu grid.

    dp.nu is ignored; each grid value replaces it.  Mode k starts from the
    k-th undamped frequency with the closed-form growth-rate estimate, and
    every later grid point is seeded from its predecessor (warm start).
    Unconverged points are flagged in their rows, never dropped.  Rows come
    back ordered by (nu, mode).
    """
    nu_values = [float(v) for v in nu_values]
    if sorted(nu_values) != nu_values:
        raise ValueError("nu grid must be ascending")
    if not nu_values:
        return []
    opts = options or SolveOptions()

    roots = conservative.find_roots(dp, omega_max, max_count=max(modes))
    if len(roots) < max(modes):
        raise ValueError(
            f"only {len(roots)} undamped frequencies below omega_max={omega_max:g}; "
            f"mode {max(modes)} requested")

    rows = []
    for mode in modes:
        w0 = roots[mode - 1].omega
        first = replace(dp, nu=nu_values[0])
        seed = SpectralPoint(q=asymptotic.corrected_eigenvalue(w0, first).q,
                             omega=w0)
        for nu in nu_values:
            point = find_eigenvalue(replace(dp, nu=nu), seed, opts)
            rows.append(SweepRow(nu=nu, mode=mode, q=point.q,
                                 omega=point.omega,
                                 delta_value=point.delta_value,
                                 converged=point.converged))
            seed = SpectralPoint(q=point.q, omega=point.omega)
    rows.sort(key=lambda r: (r.nu, r.mode))
    return rows
