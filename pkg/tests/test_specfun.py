"""Special-function layer: Wright/Mainardi evaluation and the discrete
Caputo/Riemann-Liouville operators.

Reference values were generated with an independent fixed-precision mpmath
series (140 digits, argument of rgamma formed in mpf) and are frozen here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from subdiff import (
    AccuracyError,
    AsymptoticParams,
    EvalPolicy,
    FractionalOrder,
    WrightIndex,
    caputo_l1,
    erf,
    erfc,
    l1_weights,
    mainardi,
    mainardi_deriv,
    recip_gamma,
    rl_integral,
    wright,
)

# (z, rho, beta, value) from the independent 140-digit series
FROZEN_WRIGHT = [
    (-0.7, -0.3, 1.0, 0.56382154508903688092),
    (-1.3, -0.45, 0.55, 0.34952679686436180942),
    (-2.2, -0.2, 0.6, 0.12007154046495014111),
    (-5.0, -0.35, 1.0, 0.0035909586416755945051),
    (-1.5, -0.4, 0.9, 0.28764091094980362891),
    (-30.0, -0.4, 0.6, 3.6105330751854197664e-42),
    (-12.0, -0.25, 0.75, 7.2843171702102135996e-7),
]


@pytest.mark.parametrize("z, rho, beta, ref", FROZEN_WRIGHT)
def test_wright_frozen_values(z, rho, beta, ref):
    got = wright(z, (rho, beta))
    assert_allclose(got, ref, rtol=5e-13)


def test_wright_at_zero_is_recip_gamma():
    for beta in (0.3, 0.75, 1.0, 1.6):
        assert_allclose(wright(0.0, (-0.4, beta)), recip_gamma(beta), rtol=1e-15)


def test_wright_erfc_identity():
    """W(-x; -1/2, 1) = erfc(x/2), both shallow and deep in x."""
    x = np.linspace(0.0, 12.0, 121)
    got = wright(-x, (-0.5, 1.0))
    assert_allclose(got, erfc(x / 2.0), rtol=2e-13, atol=1e-300)


def test_mainardi_gaussian_identity():
    """M_{1/2}(x) = exp(-x^2/4)/sqrt(pi)."""
    x = np.linspace(0.0, 30.0, 91)
    got = mainardi(x, 0.5)
    ref = np.exp(-(x**2) / 4.0) / math.sqrt(math.pi)
    assert_allclose(got, ref, rtol=1e-9)


def test_mainardi_at_origin():
    for nu in (0.15, 0.25, 0.4, 0.499):
        assert_allclose(mainardi(0.0, nu), 1.0 / math.gamma(1.0 - nu), rtol=1e-14)


def test_mainardi_deriv_matches_central_difference():
    # the difference quotient amplifies the evaluator's ~1e-12 relative
    # noise by 1/(2h); tolerance is set from that bound, not from the
    # evaluator's own accuracy (pinned elsewhere by closed forms)
    h = 1e-6
    for nu in (0.2, 0.35, 0.45):
        for x0 in (0.5, 1.0, 2.5, 4.0):
            cd = (mainardi(x0 + h, nu) - mainardi(x0 - h, nu)) / (2.0 * h)
            assert_allclose(mainardi_deriv(x0, nu), cd, rtol=1e-6)


def test_mainardi_deriv_halfint_closed_form():
    """At nu = 1/2 the derivative is -(x/2) M_{1/2}(x)."""
    x = np.linspace(0.1, 20.0, 40)
    got = mainardi_deriv(x, 0.5)
    ref = -(x / 2.0) * np.exp(-(x**2) / 4.0) / math.sqrt(math.pi)
    assert_allclose(got, ref, rtol=1e-9)


def test_wright_scalar_and_shape():
    v = wright(-1.0, (-0.3, 1.0))
    assert isinstance(v, float)
    z = -np.linspace(0.1, 3.0, 6).reshape(2, 3)
    out = wright(z, (-0.3, 1.0))
    assert out.shape == (2, 3)
    assert_allclose(out.ravel(), [wright(float(zz), (-0.3, 1.0)) for zz in z.ravel()])


def test_wright_rejects_bad_input():
    with pytest.raises(ValueError):
        wright(0.5, (-0.5, 1.0))
    with pytest.raises(ValueError):
        wright(np.array([-1.0, np.nan]), (-0.5, 1.0))
    with pytest.raises(ValueError):
        WrightIndex(rho=0.2, beta=1.0)
    with pytest.raises(ValueError):
        WrightIndex(rho=-1.0, beta=1.0)
    with pytest.raises(ValueError):
        WrightIndex(rho=-0.5, beta=float("inf"))


def test_eval_policy_validation():
    with pytest.raises(ValueError):
        EvalPolicy(rel_tol=0.0)
    with pytest.raises(ValueError):
        EvalPolicy(max_terms=0)
    with pytest.raises(ValueError):
        EvalPolicy(cancellation_limit=0.5)
    with pytest.raises(ValueError):
        EvalPolicy(crossover="sometimes")


def test_wright_index_family_detection():
    assert WrightIndex(-0.3, 0.7).family == "mainardi"
    assert WrightIndex(-0.3, 1.0).family == "integral"
    assert WrightIndex(-0.3, 0.4).family == "derivative"
    assert WrightIndex(-0.3, 0.9).family is None


def test_crossover_series_only_matches_auto_in_series_zone():
    x = np.linspace(0.2, 6.0, 13)
    a = wright(-x, (-0.35, 0.65))
    b = wright(-x, (-0.35, 0.65), EvalPolicy(crossover="series-only"))
    assert_allclose(a, b, rtol=1e-12)


def test_crossover_asymptotic_only_close_at_large_argument():
    # raw profile carries an O(1/Y) relative offset, nothing worse
    x = 40.0
    a = wright(-x, (-0.25, 0.75))
    b = wright(-x, (-0.25, 0.75), EvalPolicy(crossover="asymptotic-only"))
    assert abs(a - b) / abs(a) < 1e-2


def test_crossover_asymptotic_only_needs_known_family():
    with pytest.raises(AccuracyError):
        wright(-1.0, (-0.3, 0.9), EvalPolicy(crossover="asymptotic-only"))


def test_series_only_raises_beyond_precision_ceiling():
    # decay exponent far past what escalated precision can absorb
    with pytest.raises(AccuracyError):
        wright(-3000.0, (-0.25, 0.75), EvalPolicy(crossover="series-only"))


def test_no_profile_beyond_seam_raises():
    with pytest.raises(AccuracyError):
        wright(-3000.0, (-0.25, 0.9))


def test_fractional_order():
    assert FractionalOrder(0.6).nu == 0.3
    assert FractionalOrder(1.0).nu == 0.5
    for bad in (0.0, -0.2, 1.2, float("nan")):
        with pytest.raises(ValueError):
            FractionalOrder(bad)


def test_asymptotic_params_halfint():
    par = AsymptoticParams.for_nu(0.5)
    assert_allclose(par.a_nu, 1.0 / math.sqrt(math.pi))
    assert_allclose(par.b_nu, 1.0)
    assert_allclose(par.stretch_power, 2.0)
    assert_allclose(par.algebraic_power, 0.0)
    assert_allclose(par.exp_rate, 0.25)
    assert_allclose(par.decay_exponent(4.0), 4.0)  # (x/2)^2


def test_recip_gamma_poles_and_values():
    assert recip_gamma(0.0) == 0.0
    assert recip_gamma(-3.0) == 0.0
    assert_allclose(recip_gamma(1.5), 1.1283791670955126, rtol=1e-15)
    assert_allclose(recip_gamma(2.5), 0.7522527780636751, rtol=1e-15)
    out = recip_gamma(np.array([1.0, 0.0, -1.0, 0.5]))
    assert_allclose(out, [1.0, 0.0, 0.0, 0.5641895835477563], rtol=1e-15)


def test_erf_erfc_pinned():
    assert_allclose(erfc(1.0), 0.15729920705028513, rtol=1e-15)
    assert_allclose(erf(1.0) + erfc(1.0), 1.0, rtol=1e-15)


@settings(max_examples=25, deadline=None)
@given(
    nu=st.floats(min_value=0.05, max_value=0.5),
    xs=st.lists(
        st.floats(min_value=1e-3, max_value=25.0), min_size=2, max_size=20, unique=True
    ),
)
def test_mainardi_positive_bounded_monotone(nu, xs):
    """For nu <= 1/2: 0 < M_nu(x) < M_nu(0), decreasing along increasing x."""
    x = np.sort(np.asarray(xs))
    v = mainardi(x, nu)
    assert np.all(v > 0.0)
    assert np.all(v < 1.0 / math.gamma(1.0 - nu) + 1e-15)
    assert np.all(np.diff(v) < 0.0)


def test_mainardi_bell_shape_above_half():
    """For nu > 1/2 the profile peaks at an interior point, not at 0."""
    assert_allclose(mainardi(0.3, 0.75), 0.37150100110118916428, rtol=1e-12)
    assert_allclose(mainardi(1.0, 0.75), 0.60659854359027597898, rtol=1e-12)
    assert_allclose(mainardi(2.0, 0.75), 0.22514007014896749913, rtol=1e-12)
    assert mainardi(1.0, 0.75) > mainardi(0.0, 0.75)


@settings(max_examples=25, deadline=None)
@given(
    nu=st.floats(min_value=0.05, max_value=0.55),
    x=st.floats(min_value=0.0, max_value=20.0),
)
def test_tail_mass_in_unit_interval(nu, x):
    v = wright(-x, (-nu, 1.0))
    assert 0.0 < v <= 1.0


# ---------------------------------------------------------------------------
# discrete operators
# ---------------------------------------------------------------------------


def test_l1_weights_basic():
    b = l1_weights(0.5, 6)
    assert b[0] == 1.0
    assert np.all(np.diff(b) < 0.0)
    assert np.all(b > 0.0)
    assert_allclose(b.sum(), 6.0**0.5)  # telescoping


def test_caputo_l1_exact_on_linear():
    """The scheme integrates piecewise-linear data exactly."""
    dt = 0.05
    t = np.arange(0, 41) * dt
    for alpha in (0.3, 0.5, 0.8):
        u = 2.0 + 3.0 * t
        d = caputo_l1(u, alpha, dt)
        ref = 3.0 * t ** (1.0 - alpha) / math.gamma(2.0 - alpha)
        assert d[0] == 0.0
        assert_allclose(d[1:], ref[1:], rtol=1e-12)


def test_caputo_l1_constant_is_zero():
    u = np.full(12, 7.3)
    assert_allclose(caputo_l1(u, 0.4, 0.1), 0.0, atol=1e-14)


def test_caputo_l1_quadratic_convergence():
    """Error on u = t^2 shrinks like dt^(2-alpha)."""
    alpha = 0.5
    errs = []
    for n in (64, 128):
        dt = 1.0 / n
        t = np.arange(n + 1) * dt
        d = caputo_l1(t**2, alpha, dt)
        ref = 2.0 * t ** (2.0 - alpha) / math.gamma(3.0 - alpha)
        errs.append(np.max(np.abs(d[1:] - ref[1:])))
    ratio = errs[0] / errs[1]
    assert 2.0 < ratio < 4.0  # ~2^(2-alpha) = 2.83


def test_caputo_l1_extra_axes():
    dt = 0.1
    t = np.arange(9) * dt
    u = np.stack([1.0 + t, 2.0 - 0.5 * t], axis=1)
    d = caputo_l1(u, 0.6, dt)
    assert d.shape == u.shape
    ref0 = t ** (0.4) / math.gamma(1.4)
    assert_allclose(d[1:, 0], ref0[1:], rtol=1e-12)
    assert_allclose(d[1:, 1], -0.5 * ref0[1:], rtol=1e-12)


def test_caputo_l1_rejects_invalid_alpha():
    u = np.zeros(4)
    for alpha in (0.0, 1.0, -0.3, 1.7):
        with pytest.raises(ValueError):
            caputo_l1(u, alpha, 0.1)
    with pytest.raises(ValueError):
        caputo_l1(u, 0.5, 0.0)


def test_rl_integral_exact_on_linear():
    dt = 0.04
    t = np.arange(0, 26) * dt
    for mu in (0.3, 0.5, 0.9):
        got = rl_integral(1.5 + 2.0 * t, mu, dt)
        ref = 1.5 * t**mu / math.gamma(1.0 + mu) + 2.0 * t ** (1.0 + mu) / math.gamma(
            2.0 + mu
        )
        assert got[0] == 0.0
        assert_allclose(got[1:], ref[1:], rtol=1e-12)


def test_rl_integral_rejects_invalid_order():
    u = np.zeros(4)
    for mu in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(ValueError):
            rl_integral(u, mu, 0.1)


def test_rl_composition_inverts_caputo():
    """I^alpha(D^alpha u) converges to u - u(0), first order in dt."""
    alpha = 0.5
    errs = []
    for n in (200, 400):
        dt = 1.0 / n
        t = np.arange(n + 1) * dt
        u = np.sin(2.0 * t) + 3.0
        recovered = rl_integral(caputo_l1(u, alpha, dt), alpha, dt)
        errs.append(np.max(np.abs(recovered - (u - u[0]))))
    assert errs[1] < 2e-3
    assert 1.7 < errs[0] / errs[1] < 2.3


@settings(max_examples=20, deadline=None)
@given(
    alpha=st.floats(min_value=0.1, max_value=0.9),
    c0=st.floats(min_value=-3.0, max_value=3.0),
    c1=st.floats(min_value=-3.0, max_value=3.0),
)
def test_rl_integral_linear_in_samples(alpha, c0, c1):
    dt = 0.125
    t = np.arange(9) * dt
    u1 = np.cos(t)
    u2 = t**2
    lhs = rl_integral(c0 * u1 + c1 * u2, alpha, dt)
    rhs = c0 * rl_integral(u1, alpha, dt) + c1 * rl_integral(u2, alpha, dt)
    assert_allclose(lhs, rhs, rtol=1e-11, atol=1e-12)
