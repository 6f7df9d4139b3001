"""Recursive (stochastic-approximation) density estimator, its weighted
closed form, and the nonrecursive Rosenblatt baseline.

The recursive estimator updates a grid of evaluation points per observation:

    f_n(x) = (1 - gamma_n) f_{n-1}(x) + gamma_n h_n^{-d} K((x - X_n) / h_n)

at O(#points) cost independent of n.  With the weight-induced stepsize
``gamma_n = w_n / sum_{k<=n} w_k`` it coincides with the weighted average

    f_n(x) = (sum w_k)^{-1} sum_k w_k h_k^{-d} K((x - X_k) / h_k),

an identity the test suite certifies to 1e-12.
"""

from __future__ import annotations

import numpy as np

from sakde.kernels import Kernel
from sakde.sequences import BandwidthPlan, SequencePlan, StepsizePlan, pi_product

# chunk length (in observations) for the vectorised closed-form sums
_CHUNK = 4096


def _as_points(points, dim) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None] if dim == 1 else pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise ValueError(f"points must have shape (m, {dim})")
    return pts


class RecursiveEstimator:
    """Streaming estimator state over a fixed grid of evaluation points.

    One instance is owned by one updater at a time; distinct instances are
    independent.  ``values`` holds the current estimate per grid point.
    """

    def __init__(self, kernel: Kernel, step: StepsizePlan, bandwidth: BandwidthPlan,
                 points, f0=0.0):
        self.kernel = kernel
        self.step = step
        self.bandwidth = bandwidth
        self.points = _as_points(points, kernel.dim)
        self.values = np.full(self.points.shape[0], 0.0) + np.asarray(f0, dtype=float)
        self.n = 0
        self._gammas = step.gamma_stream()

    def update(self, x_obs) -> None:
        """Absorb one observation."""
        x_obs = np.asarray(x_obs, dtype=float).reshape(self.kernel.dim)
        self.n += 1
        g = next(self._gammas)
        h = self.bandwidth.value(self.n)
        z = (self.points - x_obs) / h
        self.values = (1.0 - g) * self.values + g * self.kernel.fn(z) / h**self.kernel.dim

    def update_many(self, sample) -> None:
        for row in _as_points(sample, self.kernel.dim):
            self.update(row)


def recursion_weights(step: StepsizePlan, n: int) -> np.ndarray:
    """Coefficients ``c_k = gamma_k * prod_{j=k+1..n} (1 - gamma_j)``, k = 1..n.

    These expand the recursion as ``f_n = sum_k c_k Z_k + Pi_n f_0``.
    """
    g = step.gamma_values(n)
    one_minus = 1.0 - g
    rev = np.cumprod(one_minus[::-1])[::-1]
    tail = np.empty_like(rev)
    tail[:-1] = rev[1:]
    tail[-1] = 1.0
    return g * tail


def recursive_at_points(kernel: Kernel, step: StepsizePlan, bandwidth: BandwidthPlan,
                        sample, points, f0=0.0) -> np.ndarray:
    """Closed-form evaluation of the recursion after the whole sample.

    Equals driving :class:`RecursiveEstimator` over the sample, up to
    accumulation round-off.
    """
    sample = _as_points(sample, kernel.dim)
    pts = _as_points(points, kernel.dim)
    n = sample.shape[0]
    c = recursion_weights(step, n)
    h = np.asarray(bandwidth.value(np.arange(1, n + 1)), dtype=float)
    coef = c / h**kernel.dim
    out = np.zeros(pts.shape[0])
    for lo in range(0, n, _CHUNK):
        sl = slice(lo, min(lo + _CHUNK, n))
        z = (pts[None, :, :] - sample[sl, None, :]) / h[sl, None, None]
        out += coef[sl] @ kernel.fn(z)
    return out + pi_product(step, n) * np.asarray(f0, dtype=float)


def weighted_closed_form(kernel: Kernel, weights: SequencePlan, bandwidth: BandwidthPlan,
                         sample, points) -> np.ndarray:
    """Weighted-average estimator ``(sum w_k)^{-1} sum_k w_k h_k^{-d} K((x - X_k)/h_k)``."""
    sample = _as_points(sample, kernel.dim)
    pts = _as_points(points, kernel.dim)
    n = sample.shape[0]
    if n == 0:
        raise ValueError("sample must be nonempty")
    k = np.arange(1, n + 1)
    w = np.asarray(weights.value(k), dtype=float)
    h = np.asarray(bandwidth.value(k), dtype=float)
    coef = w / h**kernel.dim
    out = np.zeros(pts.shape[0])
    for lo in range(0, n, _CHUNK):
        sl = slice(lo, min(lo + _CHUNK, n))
        z = (pts[None, :, :] - sample[sl, None, :]) / h[sl, None, None]
        out += coef[sl] @ kernel.fn(z)
    return out / w.sum()


class RosenblattEstimator:
    """Nonrecursive baseline: one bandwidth ``h_n`` shared by all n observations.

    The sample is stored (O(n) memory) because ``h_n`` depends on the final
    sample size.
    """

    def __init__(self, dim: int, bandwidth: BandwidthPlan, sample):
        self.dim = dim
        self.bandwidth = bandwidth
        self.sample = _as_points(sample, dim)
        if self.sample.shape[0] == 0:
            raise ValueError("sample must be nonempty")

    @property
    def n(self) -> int:
        return self.sample.shape[0]

    def eval(self, kernel: Kernel, points, h: float | None = None) -> np.ndarray:
        """Evaluate at the given points; ``h`` defaults to the plan at the stored n."""
        if kernel.dim != self.dim:
            raise ValueError("kernel dimension mismatch")
        pts = _as_points(points, self.dim)
        if h is None:
            h = float(self.bandwidth.value(self.n))
        out = np.zeros(pts.shape[0])
        for lo in range(0, self.n, _CHUNK):
            sl = slice(lo, min(lo + _CHUNK, self.n))
            z = (pts[None, :, :] - self.sample[sl, None, :]) / h
            out += kernel.fn(z).sum(axis=0)
        return out / (self.n * h**self.dim)


def recursive_batch(kernel: Kernel, step: StepsizePlan, bandwidth: BandwidthPlan,
                    samples: np.ndarray, x) -> np.ndarray:
    """Recursive estimate at one point ``x`` for a batch of replication samples.

    ``samples`` has shape (reps, n, dim); returns shape (reps,).  Matches the
    streaming recursion (certified in the tests) but vectorises across
    replications for the Monte Carlo driver.
    """
    x = np.asarray(x, dtype=float).reshape(kernel.dim)
    reps, n, d = samples.shape
    c = recursion_weights(step, n)
    h = np.asarray(bandwidth.value(np.arange(1, n + 1)), dtype=float)
    coef = c / h**d
    z = (x[None, None, :] - samples) / h[None, :, None]
    return kernel.fn(z) @ coef


def rosenblatt_batch(kernel: Kernel, bandwidth: BandwidthPlan,
                     samples: np.ndarray, x) -> np.ndarray:
    """Rosenblatt estimate at one point ``x`` for a batch of replication samples."""
    x = np.asarray(x, dtype=float).reshape(kernel.dim)
    reps, n, d = samples.shape
    h = float(bandwidth.value(n))
    z = (x[None, None, :] - samples) / h
    return kernel.fn(z).sum(axis=1) / (n * h**d)
