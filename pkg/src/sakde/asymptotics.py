"""Leading-order asymptotics for the recursive estimator and its baseline.

Everything here is a pure function of the plan parameters and the kernel and
density constants: bias/variance regimes, pointwise and integrated MSE with
their optimal plans, the efficiency ratio against the nonrecursive baseline,
CLT parameters, and the confidence-interval / strong-concentration
calibration constants.  Parameter combinations that sit on a pole of a
formula raise ``ValueError`` instead of returning signed infinities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from sakde.kernels import Kernel
from sakde.sequences import BandwidthPlan, StepsizePlan, bandwidth_plan, stepsize_plan

BIAS_DOMINATED = "bias-dominated"
BALANCED = "balanced"
VARIANCE_DOMINATED = "variance-dominated"


def _compare_regime(a, alpha, d: int) -> int:
    """Sign of ``a - alpha/(d+4)``: exact for rational inputs, else 1e-12 tolerance."""
    if isinstance(a, (Fraction, int)) and isinstance(alpha, (Fraction, int)):
        lhs, rhs = Fraction(a) * (d + 4), Fraction(alpha)
        return (lhs > rhs) - (lhs < rhs)
    lhs, rhs = float(a) * (d + 4), float(alpha)
    if abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs)):
        return 0
    return 1 if lhs > rhs else -1


@dataclass(frozen=True)
class RegimeClassification:
    """Which leading-order expansions apply for a plan pair (a, alpha) in R^d."""

    a: float
    alpha: float
    d: int
    gamma0: float
    regime: str
    h2_bias_applies: bool          # squared-bandwidth bias expansion valid
    bias_negligible: bool          # bias is o(sqrt(gamma_n h_n^-d))
    variance_leading_applies: bool  # gamma/h^d variance expansion valid
    variance_negligible: bool      # variance is o(h_n^4)
    gain_limit_admissible: bool    # gamma0 above min{2a, (1-ad)/2}
    both_expansions_valid: bool    # gamma0 above max{2a, (1-ad)/2}


def classify_regime(a, alpha, d: int, gamma0: float = math.inf) -> RegimeClassification:
    """Classify the bias/variance trade-off of a plan pair.

    Requires ``alpha`` in (1/2, 1] and ``a`` in (0, alpha/d).  The boundary
    ``a = alpha/(d+4)`` is resolved exactly when both inputs are rational
    (``int`` / ``Fraction``) and within 1e-12 otherwise.
    """
    af, alphaf = float(a), float(alpha)
    if not 0.5 < alphaf <= 1.0:
        raise ValueError(f"alpha must lie in (1/2, 1], got {alpha}")
    if not 0.0 < af < alphaf / d:
        raise ValueError(f"a must lie in (0, alpha/d) = (0, {alphaf / d}), got {a}")
    cmp = _compare_regime(a, alpha, d)
    regime = BALANCED if cmp == 0 else (BIAS_DOMINATED if cmp < 0 else VARIANCE_DOMINATED)
    lo = min(2.0 * af, (1.0 - af * d) / 2.0)
    hi = max(2.0 * af, (1.0 - af * d) / 2.0)
    return RegimeClassification(
        a=af,
        alpha=alphaf,
        d=d,
        gamma0=gamma0,
        regime=regime,
        h2_bias_applies=cmp <= 0,
        bias_negligible=cmp > 0,
        variance_leading_applies=cmp >= 0,
        variance_negligible=cmp < 0,
        gain_limit_admissible=gamma0 > lo,
        both_expansions_valid=gamma0 > hi,
    )


def bias_leading(S_x: float, bandwidth: BandwidthPlan, step: StepsizePlan, n: int) -> float:
    """Leading bias ``h_n^2 S(x) / (2 (1 - 2 a xi))``.

    With ``xi = 0`` this reduces to the nonrecursive constant ``h_n^2 S(x)/2``.
    """
    a = bandwidth.a
    denom = 1.0 - 2.0 * a * step.xi
    if denom <= 0:
        raise ValueError(f"bias pole: 1 - 2*a*xi = {denom} must be positive")
    h = float(bandwidth.value(n))
    return h * h * S_x / (2.0 * denom)


def rosenblatt_bias(S_x: float, h: float) -> float:
    """Leading bias of the nonrecursive baseline, ``h^2 S(x) / 2``."""
    return h * h * S_x / 2.0


def variance_leading(f_x: float, kernel: Kernel, bandwidth: BandwidthPlan,
                     step: StepsizePlan, n: int) -> float:
    """Leading variance ``(gamma_n / h_n^d) f(x) R / (2 - (1 - a d) xi)``.

    Uses the closed-form gain ``step.seq.value(n)`` (the regular-variation
    equivalent for weight-induced plans).
    """
    a, d = bandwidth.a, kernel.dim
    denom = 2.0 - (1.0 - a * d) * step.xi
    if denom <= 0:
        raise ValueError(f"variance pole: 2 - (1-ad)*xi = {denom} must be positive")
    gamma_n = float(step.seq.value(n))
    h = float(bandwidth.value(n))
    return gamma_n / h**d * f_x * kernel.roughness / denom


def rosenblatt_variance(f_x: float, kernel: Kernel, n: int, h: float) -> float:
    """Leading variance of the nonrecursive baseline, ``f(x) R / (n h^d)``."""
    return f_x * kernel.roughness / (n * h**kernel.dim)


@dataclass(frozen=True)
class MseOptimalPlan:
    """Stepsize/bandwidth pair minimising the pointwise MSE, with its constant."""

    step: StepsizePlan
    bandwidth: BandwidthPlan
    bandwidth_constant: float
    mse_constant: float
    d: int

    def mse(self, n: int) -> float:
        return self.mse_constant * float(n) ** (-4.0 / (self.d + 4))


def _optimal_constants(quad_term: float, rough_term: float, d: int) -> Tuple[float, float]:
    # quad_term = S(x)^2 (pointwise) or the integrated squared curvature;
    # rough_term = f(x) R (pointwise) or R (integrated)
    h_const = (d * (d + 2) / (2.0 * (d + 4)) * rough_term / quad_term) ** (1.0 / (d + 4))
    mse_const = (
        (d + 4) ** ((3 * d + 8) / (d + 4))
        / (d ** (d / (d + 4)) * 4 ** ((d + 6) / (d + 4)) * (d + 2) ** ((2 * d + 4) / (d + 4)))
        * quad_term ** (d / (d + 4))
        * rough_term ** (4 / (d + 4))
    )
    return h_const, mse_const


def mse_optimal_plan(f_x: float, S_x: float, kernel: Kernel) -> MseOptimalPlan:
    """Plan minimising the pointwise MSE at a point with density f(x) and
    curvature S(x): unit gain limit, bandwidth ``const * gamma_n**(1/(d+4))``.
    """
    if f_x <= 0:
        raise ValueError("f(x) must be positive")
    if S_x == 0:
        raise ValueError("optimal bandwidth undefined where the curvature vanishes")
    d = kernel.dim
    h_const, mse_const = _optimal_constants(S_x * S_x, f_x * kernel.roughness, d)
    return MseOptimalPlan(
        step=stepsize_plan(1.0),
        bandwidth=bandwidth_plan(h_const, 1.0 / (d + 4)),
        bandwidth_constant=h_const,
        mse_constant=mse_const,
        d=d,
    )


@dataclass(frozen=True)
class RosenblattOptimal:
    """Optimal-bandwidth constants of the nonrecursive baseline."""

    bandwidth_constant: float
    mse_constant: float
    d: int

    def mse(self, n: int) -> float:
        return self.mse_constant * float(n) ** (-4.0 / (self.d + 4))


def rosenblatt_mse_optimal(f_x: float, S_x: float, kernel: Kernel) -> RosenblattOptimal:
    """Minimise ``(h^2 S/2)^2 + f R / (n h^d)`` over h for the baseline."""
    if f_x <= 0:
        raise ValueError("f(x) must be positive")
    if S_x == 0:
        raise ValueError("optimal bandwidth undefined where the curvature vanishes")
    d = kernel.dim
    quad = S_x * S_x / 4.0
    rough = f_x * kernel.roughness
    h_const = (d * rough / (4.0 * quad)) ** (1.0 / (d + 4))
    mse_const = quad * h_const**4 + rough * h_const ** (-d)
    return RosenblattOptimal(h_const, mse_const, d)


def mise_leading(curv_integral: float, kernel: Kernel, step: StepsizePlan,
                 bandwidth: BandwidthPlan, n: int) -> float:
    """Leading integrated MSE; the regime decides which terms contribute.

    ``curv_integral`` is the integral of the squared curvature functional
    (see :func:`sakde.densities.curvature_squared_integral`).
    """
    d = kernel.dim
    a, alpha, xi = bandwidth.a, step.alpha, step.xi
    cmp = _compare_regime(a, alpha, d)
    h = float(bandwidth.value(n))
    terms = 0.0
    if cmp <= 0:
        denom = 1.0 - 2.0 * a * xi
        if denom <= 0:
            raise ValueError(f"bias pole: 1 - 2*a*xi = {denom} must be positive")
        terms += h**4 / (4.0 * denom**2) * curv_integral
    if cmp >= 0:
        denom = 2.0 - (1.0 - a * d) * xi
        if denom <= 0:
            raise ValueError(f"variance pole: 2 - (1-ad)*xi = {denom} must be positive")
        terms += float(step.seq.value(n)) / h**d * kernel.roughness / denom
    return terms


def mise_optimal_plan(curv_integral: float, kernel: Kernel) -> MseOptimalPlan:
    """Plan minimising the integrated MSE; mirrors :func:`mse_optimal_plan`
    with the integrated squared curvature in place of S(x)^2 and the kernel
    roughness alone in place of f(x) R."""
    if curv_integral <= 0:
        raise ValueError("integrated squared curvature must be positive")
    d = kernel.dim
    h_const, mise_const = _optimal_constants(curv_integral, kernel.roughness, d)
    return MseOptimalPlan(
        step=stepsize_plan(1.0),
        bandwidth=bandwidth_plan(h_const, 1.0 / (d + 4)),
        bandwidth_constant=h_const,
        mse_constant=mise_const,
        d=d,
    )


def efficiency_ratio(d: int) -> float:
    """Ratio of the optimal baseline MSE to the optimal recursive MSE.

    Equals ``(2^4 (d+2)^(2d+4) / (d+4)^(2d+4))^(1/(d+4))``, always below 1.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    return (2.0**4 * (d + 2.0) ** (2 * d + 4) / (d + 4.0) ** (2 * d + 4)) ** (1.0 / (d + 4))


@dataclass(frozen=True)
class CltParams:
    """Parameters of the pointwise limit law.

    For finite ``c`` (the limit of ``gamma_n^{-1} h_n^{d+4}``) the scaled
    error is asymptotically normal with this mean and variance; ``c = inf``
    yields the degenerate limit where ``h_n^{-2}(f_n - f)`` converges in
    probability to ``asym_mean`` and ``asym_var`` is 0.
    """

    c: float
    asym_mean: float
    asym_var: float

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.c)


def clt_params(c: float, f_x: float, S_x: float, kernel: Kernel, a: float,
               step: StepsizePlan) -> CltParams:
    """Limit-law parameters for a plan with ``gamma_n^{-1} h_n^{d+4} -> c``."""
    if f_x <= 0:
        raise ValueError("f(x) must be positive")
    if c < 0:
        raise ValueError("c must be nonnegative (or inf)")
    d, xi = kernel.dim, step.xi
    if math.isinf(c):
        denom = 1.0 - 2.0 * a * xi
        if denom <= 0:
            raise ValueError(f"bias pole: 1 - 2*a*xi = {denom} must be positive")
        return CltParams(c, S_x / (2.0 * denom), 0.0)
    vdenom = 2.0 - (1.0 - a * d) * xi
    if vdenom <= 0:
        raise ValueError(f"variance pole: 2 - (1-ad)*xi = {vdenom} must be positive")
    if c == 0:
        mean = 0.0
    else:
        bdenom = 1.0 - 2.0 * a * xi
        if bdenom <= 0:
            raise ValueError(f"bias pole: 1 - 2*a*xi = {bdenom} must be positive")
        mean = math.sqrt(c) * S_x / (2.0 * bdenom)
    return CltParams(c, mean, f_x * kernel.roughness / vdenom)


def ci_constant(gamma0: float, a: float, d: int) -> float:
    """Interval calibration constant ``sqrt(gamma0 / (2 - (1 - a d)/gamma0))``.

    The same expression is the concentration half-width factor of the strong
    convergence law; see :func:`lil_concentration_factor`.
    """
    if gamma0 <= 0:
        raise ValueError("gamma0 must be positive")
    if a * d >= 1:
        raise ValueError("a*d must be below 1")
    denom = 2.0 - (1.0 - a * d) / gamma0
    if denom <= 0:
        raise ValueError(f"variance pole: 2*gamma0 = {2 * gamma0} must exceed 1 - a*d = {1 - a * d}")
    return math.sqrt(gamma0 / denom)


def ci_constant_minimum(a: float, d: int) -> Tuple[float, float]:
    """Minimiser and minimum of :func:`ci_constant`: ``(1 - a d, sqrt(1 - a d))``."""
    if a * d >= 1:
        raise ValueError("a*d must be below 1")
    return 1.0 - a * d, math.sqrt(1.0 - a * d)


def lil_concentration_factor(gamma0: float, a: float, d: int) -> float:
    """Half-width factor of the almost-sure limit interval (identical formula
    to :func:`ci_constant`)."""
    return ci_constant(gamma0, a, d)


def lil_interval(c1: float, S_x: float, f_x: float, kernel: Kernel, a: float,
                 step: StepsizePlan) -> Tuple[float, float]:
    """Endpoints of the almost-sure limit interval of the scaled error.

    ``c1`` is the limit of ``gamma_n^{-1} h_n^{d+4} / log(sum_k gamma_k)``;
    the interval is ``center +- halfwidth`` with the same bias/variance
    constants as the CLT.  Constants calculator only.
    """
    if c1 < 0:
        raise ValueError("c1 must be nonnegative")
    d, xi = kernel.dim, step.xi
    vdenom = 2.0 - (1.0 - a * d) * xi
    if vdenom <= 0:
        raise ValueError(f"variance pole: 2 - (1-ad)*xi = {vdenom} must be positive")
    if c1 == 0:
        center = 0.0
    else:
        bdenom = 1.0 - 2.0 * a * xi
        if bdenom <= 0:
            raise ValueError(f"bias pole: 1 - 2*a*xi = {bdenom} must be positive")
        center = math.sqrt(c1 / 2.0) * S_x / (2.0 * bdenom)
    halfwidth = math.sqrt(f_x * kernel.roughness / vdenom)
    return center - halfwidth, center + halfwidth
