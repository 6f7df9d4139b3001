"""Ground-truth densities with closed-form Hessians, samplers and curvature
functionals.

Two concrete families cover everything the Monte Carlo study needs: Gaussian
mixtures with full covariances, and invertible linear images ``X = A Y`` of
another model.  Both expose the same surface: ``pdf``, ``hessian``,
``hessian_diag``, ``sample``, ``mean``/``cov`` (used to size quadrature
boxes) and a human-readable ``label``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sakde.kernels import Kernel


class QuadratureError(RuntimeError):
    """Raised when a deterministic quadrature fails its self-consistency check."""


def _as_batch(x, dim):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[-1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got shape {x.shape}")
    return x, single


class GaussianMixture:
    """Mixture of Gaussians with full covariance matrices."""

    def __init__(self, weights, means, covs, label: str = "gaussian-mixture"):
        self.weights = np.asarray(weights, dtype=float)
        self.means = np.atleast_2d(np.asarray(means, dtype=float))
        covs = np.asarray(covs, dtype=float)
        if covs.ndim == 2:
            covs = covs[None, :, :]
        self.covs = covs
        self.label = label
        if self.weights.ndim != 1 or np.any(self.weights < 0):
            raise ValueError("weights must be a nonnegative vector")
        if not math.isclose(self.weights.sum(), 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValueError("weights must sum to 1")
        k, d = self.means.shape
        if self.weights.shape[0] != k or self.covs.shape != (k, d, d):
            raise ValueError("inconsistent mixture component shapes")
        self._chols = np.linalg.cholesky(self.covs)
        self._invs = np.linalg.inv(self.covs)
        dets = np.linalg.det(self.covs)
        self._norms = 1.0 / np.sqrt((2.0 * math.pi) ** d * dets)

    @property
    def dim(self) -> int:
        return self.means.shape[1]

    def _component_pdfs(self, x):
        # (n_points, n_components) matrix of component densities
        out = np.empty((x.shape[0], self.weights.shape[0]))
        for i in range(self.weights.shape[0]):
            delta = x - self.means[i]
            quad = np.einsum("nd,de,ne->n", delta, self._invs[i], delta)
            out[:, i] = self._norms[i] * np.exp(-0.5 * quad)
        return out

    def pdf(self, x):
        x, single = _as_batch(x, self.dim)
        vals = self._component_pdfs(x) @ self.weights
        return float(vals[0]) if single else vals

    def hessian(self, x):
        x, single = _as_batch(x, self.dim)
        comp = self._component_pdfs(x)
        h = np.zeros((x.shape[0], self.dim, self.dim))
        for i in range(self.weights.shape[0]):
            delta = x - self.means[i]
            u = delta @ self._invs[i]
            outer = u[:, :, None] * u[:, None, :] - self._invs[i]
            h += self.weights[i] * comp[:, i, None, None] * outer
        return h[0] if single else h

    def hessian_diag(self, x):
        x, single = _as_batch(x, self.dim)
        comp = self._component_pdfs(x)
        h = np.zeros((x.shape[0], self.dim))
        for i in range(self.weights.shape[0]):
            delta = x - self.means[i]
            u = delta @ self._invs[i]
            h += self.weights[i] * comp[:, i, None] * (u * u - np.diag(self._invs[i]))
        return h[0] if single else h

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if count < 1:
            raise ValueError("count must be positive")
        comp = rng.choice(self.weights.shape[0], size=count, p=self.weights)
        z = rng.standard_normal((count, self.dim))
        return self.means[comp] + np.einsum("nij,nj->ni", self._chols[comp], z)

    def mean(self) -> np.ndarray:
        return self.weights @ self.means

    def cov(self) -> np.ndarray:
        mu = self.mean()
        second = sum(
            w * (c + np.outer(m, m))
            for w, m, c in zip(self.weights, self.means, self.covs)
        )
        return second - np.outer(mu, mu)


class LinearImage:
    """Density of ``X = A Y`` for an invertible matrix A and base model Y."""

    def __init__(self, base, matrix, label: str | None = None):
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)
        d = base.dim
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix must be {d}x{d}")
        det = np.linalg.det(self.matrix)
        if det == 0:
            raise ValueError("matrix must be invertible")
        self._inv = np.linalg.inv(self.matrix)
        self._absdet = abs(det)
        self.label = label or f"linear-image({base.label})"

    @property
    def dim(self) -> int:
        return self.base.dim

    def pdf(self, x):
        x, single = _as_batch(x, self.dim)
        vals = self.base.pdf(x @ self._inv.T) / self._absdet
        vals = np.atleast_1d(vals)
        return float(vals[0]) if single else vals

    def hessian(self, x):
        x, single = _as_batch(x, self.dim)
        hy = self.base.hessian(x @ self._inv.T)
        if hy.ndim == 2:
            hy = hy[None, :, :]
        hx = np.einsum("ji,njk,kl->nil", self._inv, hy, self._inv) / self._absdet
        return hx[0] if single else hx

    def hessian_diag(self, x):
        h = self.hessian(x)
        return np.diagonal(h, axis1=-2, axis2=-1).copy()

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self.base.sample(rng, count) @ self.matrix.T

    def mean(self) -> np.ndarray:
        return self.matrix @ self.base.mean()

    def cov(self) -> np.ndarray:
        return self.matrix @ self.base.cov() @ self.matrix.T


def standard_gaussian(dim: int) -> GaussianMixture:
    """Standard normal density on R^d as a one-component mixture."""
    return GaussianMixture(
        [1.0], np.zeros((1, dim)), np.eye(dim)[None, :, :], label=f"gaussian(d={dim})"
    )


def curvature(model, kernel: Kernel, x) -> float:
    """Bias-driving curvature ``sum_j mu2[j] * d^2 f / dx_j^2`` at a point."""
    diag = model.hessian_diag(np.asarray(x, dtype=float))
    return float(np.dot(kernel.mu2, diag))


@dataclass(frozen=True)
class CurvatureIntegral:
    """Value of the integrated squared curvature with its quadrature metadata."""

    value: float
    points_per_axis: int
    halfwidth_sigmas: float
    rel_change: float


def curvature_squared_integral(
    model,
    kernel: Kernel,
    points_per_axis: int | None = None,
    halfwidth_sigmas: float = 10.0,
) -> CurvatureIntegral:
    """Integral of ``(sum_j mu2[j] f_jj(x))**2`` by tensor-grid trapezoid rule.

    The box spans ``halfwidth_sigmas`` marginal standard deviations around the
    model mean; the value is accepted only if halving the resolution moves it
    by less than 0.1%.
    """
    d = model.dim
    if d > 2:
        raise ValueError("quadrature grid is only supported for d <= 2")
    if points_per_axis is None:
        points_per_axis = 2048 if d == 1 else 512

    def integrate(npts):
        mu = np.atleast_1d(model.mean())
        sig = np.sqrt(np.diag(np.atleast_2d(model.cov())))
        axes = [
            np.linspace(mu[j] - halfwidth_sigmas * sig[j], mu[j] + halfwidth_sigmas * sig[j], npts)
            for j in range(d)
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        s = model.hessian_diag(pts) @ kernel.mu2
        vals = (s * s).reshape([npts] * d)
        for j in range(d):
            vals = np.trapezoid(vals, axes[j], axis=0)
        return float(vals)

    coarse = integrate(points_per_axis // 2)
    fine = integrate(points_per_axis)
    rel = abs(fine - coarse) / max(abs(fine), 1e-300)
    if rel > 1e-3:
        raise QuadratureError(
            f"curvature integral did not converge: rel change {rel:.2e} between "
            f"{points_per_axis // 2} and {points_per_axis} points per axis"
        )
    return CurvatureIntegral(fine, points_per_axis, halfwidth_sigmas, rel)
