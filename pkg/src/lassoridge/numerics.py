"""Dense linear-algebra and scalar-analysis kernel shared by the other modules.

All routines are pure functions of their inputs and are safe to call from
multiple threads.  Reductions that feed Monte Carlo summaries go through
:func:`pairwise_sum`, a fixed-order binary-tree sum, so aggregate statistics
are bit-identical regardless of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """An input lies outside the mathematical domain of the operation."""


class NumericError(ArithmeticError):
    """A numerical routine failed to reach its accuracy contract."""


# Gram matrices are PSD in exact arithmetic; eigenvalues above this negative
# threshold are treated as rounding and clamped to zero.
EIG_CLAMP = 1e-12

SYMMETRY_ATOL = 1e-12


@dataclass(frozen=True)
class SymEig:
    """Eigendecomposition of a symmetric PSD matrix.

    Attributes
    ----------
    eigenvalues : np.ndarray
        Sorted non-increasing, clamped at zero for tiny negatives.
    eigenvectors : np.ndarray
        Orthogonal matrix whose columns match ``eigenvalues``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        p = self.eigenvectors
        return (p * self.eigenvalues) @ p.T


def sym_eig(a: np.ndarray) -> SymEig:
    """Eigendecomposition of a symmetric matrix, eigenvalues non-increasing.

    Parameters
    ----------
    a : np.ndarray
        Square matrix, symmetric within ``1e-12`` elementwise.

    Raises
    ------
    DomainError
        If ``a`` is not square/symmetric or is empty.
    NumericError
        If the underlying eigensolver fails to converge.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.abs(a - a.T) <= SYMMETRY_ATOL):
        raise DomainError("matrix is not symmetric within 1e-12")
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericError(f"symmetric eigensolver failed: {exc}") from exc
    # eigh returns ascending order
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    tiny = (vals < 0) & (vals >= -EIG_CLAMP)
    vals[tiny] = 0.0
    return SymEig(eigenvalues=vals, eigenvectors=vecs)


def soft_threshold(z: float, t: float) -> float:
    """Soft-thresholding operator sign(z) * max(|z| - t, 0)."""
    if t < 0:
        raise DomainError(f"threshold must be nonnegative, got {t}")
    if z > t:
        return z - t
    if z < -t:
        return z + t
    return 0.0


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF, absolute error below 1e-12 (erfc based)."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def neumann_inverse(a: np.ndarray, terms: int) -> np.ndarray:
    """Truncated alternating Neumann series for (I + A)^{-1}.

    Computes ``sum_{j=0}^{terms} (-A)^j`` by Horner recursion.  Requires
    ``||A||_inf < 1`` (max absolute row sum), which makes the full series
    converge to the true inverse.  Used as a test oracle, not in solvers.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if terms < 0:
        raise DomainError("terms must be nonnegative")
    norm_inf = np.abs(a).sum(axis=1).max() if a.size else 0.0
    if norm_inf >= 1.0:
        raise DomainError(f"||A||_inf = {norm_inf} >= 1; series does not converge")
    eye = np.eye(a.shape[0])
    out = eye.copy()
    for _ in range(terms):
        out = eye - a @ out
    return out


def pairwise_sum(values: np.ndarray) -> float:
    """Sum with a fixed binary-tree reduction order.

    The tree depends only on the length of the input, never on chunking or
    thread count, which is what makes parallel Monte Carlo aggregation
    reproducible bit for bit.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 1:
        a = a.ravel()
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            a = np.concatenate((a[:-1:2] + a[1::2], a[-1:]))
        else:
            a = a[::2] + a[1::2]
    return float(a[0])


def pairwise_mean(values: np.ndarray) -> float:
    """Arithmetic mean through :func:`pairwise_sum`."""
    a = np.asarray(values, dtype=np.float64).ravel()
    if a.size == 0:
        raise DomainError("mean of empty array")
    return pairwise_sum(a) / a.size


def pairwise_mean_se(values: np.ndarray) -> tuple[float, float]:
    """Mean and standard error with deterministic reduction order."""
    a = np.asarray(values, dtype=np.float64).ravel()
    mean = pairwise_mean(a)
    if a.size < 2:
        return mean, 0.0
    var = pairwise_sum((a - mean) ** 2) / (a.size - 1)
    return mean, math.sqrt(max(var, 0.0) / a.size)
