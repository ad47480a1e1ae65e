import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from barmodes import asymptotic
from barmodes.params import DimensionlessParams

REF = DimensionlessParams(eps1=0.005, mu=0.008, nu=0.05, eta=7.0, delta=0.1)
OMEGA_1 = 0.3534042288
OMEGA_2 = 2.904816694
NU_CRIT = 0.0529760481


def dp_with(nu, base=REF):
    return DimensionlessParams(base.eps1, base.mu, nu, base.eta, base.delta)


# ---------------------------------------------------------------- eigenvalue

def test_corrected_eigenvalue_conservative_limit_is_exact():
    dp = DimensionlessParams(0.0, 0.0, 0.0, eta=7.0, delta=0.1)
    ev = asymptotic.corrected_eigenvalue(OMEGA_1, dp)
    assert ev.q == 0.0
    assert ev.omega == OMEGA_1


def test_corrected_eigenvalue_decays_below_critical_feedback():
    ev = asymptotic.corrected_eigenvalue(OMEGA_1, dp_with(0.05))
    assert ev.q < 0.0
    assert ev.omega == OMEGA_1


def test_corrected_eigenvalue_grows_above_critical_feedback():
    ev = asymptotic.corrected_eigenvalue(OMEGA_1, dp_with(0.06))
    assert ev.q > 0.0


# ------------------------------------------------------- excitation condition

def test_indicator_is_numerator_over_denominator():
    rep = asymptotic.excitation_indicator(1.7, REF)
    assert rep.indicator == pytest.approx(rep.numerator / rep.denominator, rel=1e-15)
    assert rep.excited == (rep.indicator <= 0)


def test_numerator_crosses_zero_at_critical_feedback():
    lo = asymptotic.excitation_indicator(OMEGA_1, dp_with(NU_CRIT - 1e-4)).numerator
    hi = asymptotic.excitation_indicator(OMEGA_1, dp_with(NU_CRIT + 1e-4)).numerator
    assert lo > 0 > hi


def test_not_excited_without_feedback():
    rep = asymptotic.excitation_indicator(OMEGA_1, dp_with(0.0))
    assert not rep.excited
    assert rep.numerator > 0


def test_neutral_when_all_dissipation_vanishes():
    dp = DimensionlessParams(0.0, 0.0, 0.0, eta=7.0, delta=0.1)
    rep = asymptotic.excitation_indicator(OMEGA_1, dp)
    assert rep.indicator == 0.0
    assert rep.excited  # equality counts as the self-vibration boundary


@given(w=st.floats(min_value=0.05, max_value=9.0),
       nu_a=st.floats(min_value=0.0, max_value=0.1),
       nu_b=st.floats(min_value=0.0, max_value=0.1))
def test_numerator_is_affine_in_nu(w, nu_a, nu_b):
    # N(w, .) affine: midpoint value equals mean of endpoint values exactly
    # (up to roundoff of the polynomial evaluation itself).
    n_a = asymptotic.excitation_indicator(w, dp_with(nu_a)).numerator
    n_b = asymptotic.excitation_indicator(w, dp_with(nu_b)).numerator
    n_mid = asymptotic.excitation_indicator(w, dp_with(0.5 * (nu_a + nu_b))).numerator
    scale = max(abs(n_a), abs(n_b), 1e-30)
    assert abs(n_mid - 0.5 * (n_a + n_b)) <= 1e-12 * scale


# ------------------------------------------------------------- critical feedback

def test_critical_feedback_reference_value():
    nu_c = asymptotic.critical_feedback(OMEGA_1, REF)
    assert nu_c == pytest.approx(NU_CRIT, abs=1e-4)


def test_second_frequency_never_excited():
    assert asymptotic.critical_feedback(OMEGA_2, REF) is None


def test_undamped_bar_destabilized_by_any_feedback():
    dp = DimensionlessParams(0.0, 0.0, 0.0, eta=7.0, delta=0.1)
    w = 0.3  # eta*delta*w^2 = 0.063 < 1
    assert asymptotic.critical_feedback(w, dp) == 0.0


def test_critical_feedback_degenerate_slope_raises():
    # Slope 2*eta*delta*(eta*delta*w^2 - 1) vanishes at w = 1/sqrt(eta*delta);
    # eta*delta = 0.25 makes that w = 2 exactly representable.
    dp = DimensionlessParams(eps1=0.005, mu=0.008, nu=0.0, eta=2.5, delta=0.1)
    with pytest.raises(ZeroDivisionError):
        asymptotic.critical_feedback(2.0, dp)


# ------------------------------------------------------------ boundary frequency

def test_boundary_frequency_meets_first_mode_at_critical_feedback():
    wb = asymptotic.boundary_frequency(NU_CRIT, REF)
    assert wb == pytest.approx(0.35340, abs=1e-4)


def test_boundary_frequency_reaches_zero_when_constant_term_vanishes():
    nu0 = REF.eps1 * (1 + REF.eta) / (2 * REF.eta * REF.delta)
    assert nu0 == pytest.approx(0.0285714286, abs=1e-9)
    wb = asymptotic.boundary_frequency(0.0285714286, REF)
    assert wb is not None
    assert abs(wb) < 1e-3


def test_no_boundary_without_feedback():
    assert asymptotic.boundary_frequency(0.0, REF) is None


def test_boundary_frequency_inverts_critical_feedback():
    for w in (0.25, 0.3534042288, 0.5, 0.9):
        nu_c = asymptotic.critical_feedback(w, REF)
        assert nu_c is not None and nu_c > 0
        back = asymptotic.boundary_frequency(nu_c, REF)
        assert back == pytest.approx(w, abs=1e-8)


# -------------------------------------------------------------- second method

def test_second_method_indicator_scales_with_c2():
    assert asymptotic.second_method_indicator(OMEGA_1, REF, C2=0.0) == 0.0
    one = asymptotic.second_method_indicator(OMEGA_1, REF, C2=1.0)
    three = asymptotic.second_method_indicator(OMEGA_1, REF, C2=3.0)
    assert three == pytest.approx(3 * one, rel=1e-12)


def test_second_method_pole_detected():
    with pytest.raises(ZeroDivisionError):
        asymptotic.second_method_indicator(np.pi, REF, C2=1.0, xbar=1.0)


def test_bracket_equals_excitation_numerator():
    rng = np.random.default_rng(99)
    for _ in range(1000):
        w = rng.uniform(1e-3, 10.0)
        dp = DimensionlessParams(
            eps1=rng.uniform(0.0, 0.1),
            mu=rng.uniform(0.0, 0.1),
            nu=rng.uniform(0.0, 0.1),
            eta=rng.uniform(0.1, 10.0),
            delta=rng.uniform(0.01, 2.0),
        )
        h = asymptotic.second_method_bracket(w, dp)
        n = asymptotic.excitation_indicator(w, dp).numerator
        assert abs(h - n) <= 1e-12 * max(abs(h), abs(n), 1e-300)


def test_bracket_zero_crossing_matches_critical_feedback():
    lo = asymptotic.second_method_bracket(OMEGA_1, dp_with(NU_CRIT - 1e-4))
    hi = asymptotic.second_method_bracket(OMEGA_1, dp_with(NU_CRIT + 1e-4))
    assert lo > 0 > hi


# --------------------------------------------------------------- forced mode

def test_forced_mode_b_coefficients():
    coeffs, x, u, res = asymptotic.forced_mode(np.pi / 2, A=1.0, dp=REF)
    assert coeffs.B1 == 0.0
    assert coeffs.B2 == pytest.approx(0.005 * (np.pi / 2) ** 2 / 2, rel=1e-12)
    assert coeffs.B2 == pytest.approx(0.0061685, abs=1e-6)
    assert u[0] == 0.0


def test_forced_mode_zero_everything_gives_zero_profile():
    dp = DimensionlessParams(0.0, 0.0, 0.0, eta=7.0, delta=0.1)
    _, _, u, res = asymptotic.forced_mode(1.3, A=2.0, dp=dp, C1=0.0, C2=0.0)
    assert np.all(u == 0.0)
    assert np.all(np.abs(res) < 1e-15)


def test_forced_mode_residual_oracle_sympy():
    # Independent check: differentiate the ansatz symbolically and evaluate
    # the forced-equation residual; with C2 = 0 it must vanish.
    omega, A, C1 = 0.77, 1.5, 0.4
    coeffs, xs, u, res = asymptotic.forced_mode(omega, A=A, dp=REF, C1=C1, C2=0.0,
                                                num_points=11)
    x = sympy.symbols("x")
    U = (coeffs.B1 + coeffs.B2 * x) * sympy.cos(omega * x) \
        + (coeffs.C1 + coeffs.C2 * x) * sympy.sin(omega * x)
    residual = sympy.diff(U, x, 2) + omega**2 * U \
        + REF.eps1 * A * omega**3 * sympy.sin(omega * x)
    f = sympy.lambdify(x, residual, "numpy")
    assert np.max(np.abs(f(xs))) < 1e-10
    assert np.max(np.abs(res)) < 1e-10
    # Sampled profile must agree with the symbolic ansatz too.
    g = sympy.lambdify(x, U, "numpy")
    assert np.max(np.abs(g(xs) - u)) < 1e-12


def test_forced_mode_residual_identity_with_free_c2():
    # With C2 != 0 the residual is exactly 2*C2*omega*cos(omega*x): the
    # x*sin term is the resonant particular solution, not a homogeneous one.
    omega, C2 = 1.1, 0.3
    _, xs, _, res = asymptotic.forced_mode(omega, A=0.7, dp=REF, C1=0.0, C2=C2)
    assert np.allclose(res, 2 * C2 * omega * np.cos(omega * xs), atol=1e-12)


def test_forced_mode_profile_starts_at_zero():
    for omega in (0.4, 1.0, 2.9):
        _, _, u, _ = asymptotic.forced_mode(omega, A=1.0, dp=REF, C1=0.3, C2=0.8)
        assert u[0] == 0.0
