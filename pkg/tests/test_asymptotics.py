import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from sakde import asymptotics as asy
from sakde.kernels import gaussian_kernel
from sakde.sequences import bandwidth_plan, stepsize_plan

PHI0 = 1 / math.sqrt(2 * math.pi)


def test_classify_regime_balanced_float_and_rational():
    assert asy.classify_regime(0.2, 1.0, 1).regime == asy.BALANCED
    assert asy.classify_regime(Fraction(1, 5), 1, 1).regime == asy.BALANCED


def test_classify_regime_variance_dominated():
    r = asy.classify_regime(0.21, 1.0, 1)
    assert r.regime == asy.VARIANCE_DOMINATED
    assert r.bias_negligible and r.variance_leading_applies
    assert not r.h2_bias_applies and not r.variance_negligible


def test_classify_regime_d2():
    assert asy.classify_regime(0.17, 1.0, 2).regime == asy.VARIANCE_DOMINATED
    assert asy.classify_regime(0.15, 1.0, 2).regime == asy.BIAS_DOMINATED


def test_classify_regime_gain_limit_flags():
    # thresholds: min{2a, (1-ad)/2} = 0.395, max = 0.42 for a = 0.21, d = 1
    low = asy.classify_regime(0.21, 1.0, 1, gamma0=0.4)
    assert low.gain_limit_admissible and not low.both_expansions_valid
    high = asy.classify_regime(0.21, 1.0, 1, gamma0=0.79)
    assert high.gain_limit_admissible and high.both_expansions_valid
    default = asy.classify_regime(0.21, 1.0, 1)
    assert default.both_expansions_valid  # gamma0 defaults to +inf


def test_classify_regime_rejects_inadmissible_plans():
    with pytest.raises(ValueError):
        asy.classify_regime(0.21, 0.4, 1)
    with pytest.raises(ValueError):
        asy.classify_regime(0.6, 1.0, 2)  # a >= alpha/d


def test_bias_leading_plain_average():
    # xi = 1, a = 0.21: coefficient S/(2 * 0.58) per squared bandwidth
    step = stepsize_plan(1.0)
    bw = bandwidth_plan(1.0, 0.21)
    n = 400
    h2 = float(bw.value(n)) ** 2
    value = asy.bias_leading(-PHI0, bw, step, n)
    assert value / h2 == pytest.approx(-PHI0 / (2 * 0.58), rel=1e-13)
    assert value / h2 == pytest.approx(-0.3439158, abs=1e-6)


def test_bias_leading_reduces_to_baseline_when_xi_zero():
    step = stepsize_plan(1.0, alpha=0.7)  # xi = 0
    bw = bandwidth_plan(1.0, 0.1)
    n = 1000
    h = float(bw.value(n))
    assert asy.bias_leading(-0.4, bw, step, n) == pytest.approx(
        asy.rosenblatt_bias(-0.4, h), rel=1e-14)


def test_bias_leading_rejects_pole():
    step = stepsize_plan(0.3)  # xi = 1/0.3, 2*a*xi > 1 for a = 0.21
    with pytest.raises(ValueError):
        asy.bias_leading(-0.4, bandwidth_plan(1.0, 0.21), step, 100)


def test_variance_leading_plain_average():
    # gamma_n = 1/n: variance f R / ((1 + a d) n h^d)
    kern = gaussian_kernel(1)
    step = stepsize_plan(1.0)
    bw = bandwidth_plan(1.0, 0.21)
    n = 500
    h = float(bw.value(n))
    expected = PHI0 * kern.roughness / ((1 + 0.21) * n * h)
    assert asy.variance_leading(PHI0, kern, bw, step, n) == pytest.approx(expected, rel=1e-13)


def test_variance_leading_optimal_gain_matches_scaled_baseline():
    # gamma0 = 1 - ad makes the recursive variance (1-ad) times the baseline
    kern = gaussian_kernel(1)
    a = 0.21
    step = stepsize_plan(1.0 - a)
    bw = bandwidth_plan(1.0, a)
    n = 700
    h = float(bw.value(n))
    rec = asy.variance_leading(PHI0, kern, bw, step, n)
    ros = asy.rosenblatt_variance(PHI0, kern, n, h)
    assert rec == pytest.approx((1 - a) * ros, rel=1e-13)


def test_variance_leading_rejects_pole():
    kern = gaussian_kernel(1)
    step = stepsize_plan(0.3)  # xi = 10/3: 2 - 0.79 * xi < 0
    with pytest.raises(ValueError):
        asy.variance_leading(PHI0, kern, bandwidth_plan(1.0, 0.21), step, 100)


@pytest.mark.parametrize("d", [1, 2, 5])
def test_balanced_plan_bias_and_variance_ratios(d):
    # gamma0 = 4/(d+4), a = 1/(d+4): baseline/recursive bias 1/2, variance (d+4)/4
    kern = gaussian_kernel(d)
    a = 1.0 / (d + 4)
    step = stepsize_plan(4.0 / (d + 4))
    bw = bandwidth_plan(1.0, a)
    n = 900
    h = float(bw.value(n))
    ratio_bias = asy.rosenblatt_bias(1.0, h) / asy.bias_leading(1.0, bw, step, n)
    ratio_var = (asy.rosenblatt_variance(1.0, kern, n, h)
                 / asy.variance_leading(1.0, kern, bw, step, n))
    assert ratio_bias == pytest.approx(0.5, rel=1e-12)
    assert ratio_var == pytest.approx((d + 4) / 4.0, rel=1e-12)


def test_mse_optimal_plan_constants_and_oracle():
    kern = gaussian_kernel(1)
    f_x, s_x = PHI0, -PHI0
    plan = asy.mse_optimal_plan(f_x, s_x, kern)
    assert plan.bandwidth_constant == pytest.approx(0.733367, abs=5e-6)
    assert plan.step.gamma0 == 1.0

    # oracle: numeric minimisation of the leading MSE over the bandwidth constant
    n = 10**4

    def leading(h_const):
        bw = bandwidth_plan(h_const, 1.0 / 5)
        return (asy.bias_leading(s_x, bw, plan.step, n) ** 2
                + asy.variance_leading(f_x, kern, bw, plan.step, n))

    res = minimize_scalar(leading, bounds=(0.2, 2.5), method="bounded",
                          options={"xatol": 1e-10})
    assert plan.bandwidth_constant == pytest.approx(res.x, rel=1e-5)
    assert plan.mse(n) == pytest.approx(res.fun, rel=1e-10)


def test_mse_decay_exponent():
    plan = asy.mse_optimal_plan(PHI0, -PHI0, gaussian_kernel(1))
    assert plan.mse(2000) / plan.mse(1000) == pytest.approx(2.0 ** (-4 / 5), rel=1e-12)


def test_mse_optimal_plan_rejects_degenerate_inputs():
    kern = gaussian_kernel(1)
    with pytest.raises(ValueError):
        asy.mse_optimal_plan(PHI0, 0.0, kern)
    with pytest.raises(ValueError):
        asy.mse_optimal_plan(0.0, -1.0, kern)


def test_mse_first_order_condition():
    for d in (1, 2):
        kern = gaussian_kernel(d)
        plan = asy.mse_optimal_plan(0.35, -0.4, kern)
        n = 10**4

        def leading(h_const):
            bw = bandwidth_plan(h_const, 1.0 / (d + 4))
            return (asy.bias_leading(-0.4, bw, plan.step, n) ** 2
                    + asy.variance_leading(0.35, kern, bw, plan.step, n))

        base = leading(plan.bandwidth_constant)
        assert leading(plan.bandwidth_constant * 1.01) > base
        assert leading(plan.bandwidth_constant * 0.99) > base


def test_mise_leading_branch_dispatch():
    kern = gaussian_kernel(1)
    integral = 0.2115711
    n = 1000
    step = stepsize_plan(1.0)

    bias_only = asy.mise_leading(integral, kern, step, bandwidth_plan(1.0, 0.1), n)
    h = 1000.0**-0.1
    assert bias_only == pytest.approx(h**4 / (4 * (1 - 0.2) ** 2) * integral, rel=1e-13)

    var_only = asy.mise_leading(integral, kern, step, bandwidth_plan(1.0, 0.21), n)
    h = 1000.0**-0.21
    assert var_only == pytest.approx((1 / n) / h * kern.roughness / (2 - 0.79), rel=1e-13)

    both = asy.mise_leading(integral, kern, step, bandwidth_plan(1.0, 0.2), n)
    h = 1000.0**-0.2
    expected = (h**4 / (4 * (1 - 0.4) ** 2) * integral
                + (1 / n) / h * kern.roughness / (2 - 0.8))
    assert both == pytest.approx(expected, rel=1e-13)


def test_mise_optimal_plan_is_a_fixed_point_of_mise_leading():
    # evaluating the leading MISE at the optimal plan reproduces its constant
    kern = gaussian_kernel(1)
    integral = 3.0 / (8.0 * math.sqrt(math.pi))
    plan = asy.mise_optimal_plan(integral, kern)
    n = 10**5
    direct = asy.mise_leading(integral, kern, plan.step, plan.bandwidth, n)
    assert direct == pytest.approx(plan.mse(n), rel=1e-12)


def test_mise_optimal_plan_rejects_zero_curvature():
    with pytest.raises(ValueError):
        asy.mise_optimal_plan(0.0, gaussian_kernel(1))


def test_efficiency_ratio_values_and_shape():
    assert asy.efficiency_ratio(1) == pytest.approx(0.94320, abs=5e-6)
    rhos = np.array([asy.efficiency_ratio(d) for d in range(1, 51)])
    assert np.all(rhos < 1.0)
    amin = int(np.argmin(rhos))
    assert 0 < amin < 49  # interior minimum: decreases, then increases toward 1
    assert rhos[-1] > rhos[amin]
    assert rhos[-1] > 0.99 * rhos[-2]


def test_efficiency_ratio_matches_composed_optima():
    # oracle: compose the two optimal-MSE constants independently
    for d in (1, 2, 3):
        kern = gaussian_kernel(d)
        f_x, s_x = 0.35, -0.4
        rec = asy.mse_optimal_plan(f_x, s_x, kern)
        ros = asy.rosenblatt_mse_optimal(f_x, s_x, kern)
        assert ros.mse_constant / rec.mse_constant == pytest.approx(
            asy.efficiency_ratio(d), abs=1e-10)


def test_rosenblatt_optimum_against_numeric_minimisation():
    kern = gaussian_kernel(1)
    f_x, s_x = PHI0, -PHI0
    ros = asy.rosenblatt_mse_optimal(f_x, s_x, kern)
    n = 10**4

    def mse(h):
        return asy.rosenblatt_bias(s_x, h) ** 2 + asy.rosenblatt_variance(f_x, kern, n, h)

    res = minimize_scalar(mse, bounds=(0.01, 2.0), method="bounded",
                          options={"xatol": 1e-10})
    assert ros.bandwidth_constant * n ** (-1 / 5) == pytest.approx(res.x, rel=1e-5)
    assert ros.mse(n) == pytest.approx(res.fun, rel=1e-10)


def test_clt_params_pure_noise_limit():
    kern = gaussian_kernel(1)
    step = stepsize_plan(0.79)
    params = asy.clt_params(0.0, PHI0, -PHI0, kern, 0.21, step)
    assert params.asym_mean == 0.0
    assert params.asym_var == pytest.approx(PHI0 * kern.roughness, rel=1e-13)
    assert params.asym_var == pytest.approx(0.112540, abs=1e-6)
    assert not params.degenerate


def test_clt_params_zero_xi_substitution():
    kern = gaussian_kernel(1)
    step = stepsize_plan(1.0, alpha=0.7)  # xi = 0
    params = asy.clt_params(2.0, PHI0, -0.4, kern, 0.1, step)
    assert params.asym_mean == pytest.approx(math.sqrt(2.0) * -0.4 / 2.0, rel=1e-13)
    assert params.asym_var == pytest.approx(PHI0 * kern.roughness / 2.0, rel=1e-13)


def test_clt_params_degenerate_branch():
    kern = gaussian_kernel(1)
    step = stepsize_plan(1.0)
    params = asy.clt_params(math.inf, PHI0, -PHI0, kern, 0.1, step)
    assert params.degenerate
    assert params.asym_mean == pytest.approx(-PHI0 / (2 * 0.8), rel=1e-13)
    assert params.asym_var == 0.0


def test_clt_params_factorisation_invariant():
    # variance times (2 - (1-ad) xi) does not depend on the stepsize
    kern = gaussian_kernel(1)
    a = 0.21
    products = []
    for gamma0 in (0.5, 0.79, 1.0):
        step = stepsize_plan(gamma0)
        v = asy.clt_params(0.0, PHI0, -PHI0, kern, a, step).asym_var
        products.append(v * (2 - (1 - a) / gamma0))
    assert max(products) - min(products) < 1e-15


def test_clt_params_rejects_bad_inputs():
    kern = gaussian_kernel(1)
    with pytest.raises(ValueError):
        asy.clt_params(0.0, 0.0, -1.0, kern, 0.21, stepsize_plan(1.0))
    with pytest.raises(ValueError):
        asy.clt_params(-1.0, PHI0, -1.0, kern, 0.21, stepsize_plan(1.0))
    with pytest.raises(ValueError):
        asy.clt_params(1.0, PHI0, -1.0, kern, 0.21, stepsize_plan(0.3))


def test_ci_constant_named_values():
    a, d = 0.21, 1
    assert asy.ci_constant(1.0 - a, a, d) == pytest.approx(math.sqrt(1 - a), rel=1e-14)
    assert asy.ci_constant(1.0, a, d) == pytest.approx(1 / math.sqrt(1 + a), rel=1e-14)
    assert asy.ci_constant(1.0 - a / 2, a, d) == pytest.approx(1 - a / 2, rel=1e-14)


def test_ci_constant_minimum_is_strict_on_grid():
    a, d = 0.21, 1
    g_star, c_star = asy.ci_constant_minimum(a, d)
    assert g_star == pytest.approx(1 - a, rel=1e-15)
    assert c_star == pytest.approx(math.sqrt(1 - a), abs=1e-12)
    assert asy.ci_constant(g_star, a, d) == pytest.approx(c_star, abs=1e-12)
    grid = np.linspace(0.45, 4.0, 1001)
    vals = np.array([asy.ci_constant(g, a, d) for g in grid])
    assert np.all(vals >= c_star - 1e-12)
    off = np.abs(grid - g_star) > 1e-3
    assert np.all(vals[off] > c_star + 1e-9)


def test_ci_constant_rejects_pole():
    with pytest.raises(ValueError):
        asy.ci_constant(0.3, 0.21, 1)  # 2*gamma0 <= 1 - ad
    with pytest.raises(ValueError):
        asy.ci_constant(1.0, 0.6, 2)  # a*d >= 1


def test_lil_factor_matches_ci_constant():
    assert asy.lil_concentration_factor(0.79, 0.21, 1) == asy.ci_constant(0.79, 0.21, 1)


def test_lil_interval_endpoints():
    kern = gaussian_kernel(1)
    step = stepsize_plan(0.79)
    lo, hi = asy.lil_interval(0.0, -PHI0, PHI0, kern, 0.21, step)
    half = math.sqrt(PHI0 * kern.roughness / (2 - 1.0))
    assert lo == pytest.approx(-half, rel=1e-13)
    assert hi == pytest.approx(half, rel=1e-13)
    lo2, hi2 = asy.lil_interval(0.5, -PHI0, PHI0, kern, 0.21, step)
    center = math.sqrt(0.25) * -PHI0 / (2 * (1 - 0.42 / 0.79))
    assert (lo2 + hi2) / 2 == pytest.approx(center, rel=1e-12)
