"""Weighted arithmetic, harmonic, geometric and spectral geometric means.

All four take two positive definite matrices of equal size and a weight
``t`` in ``[0, 1]``. With ``t = 0`` each mean returns its first argument and
with ``t = 1`` its second.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, DomainError
from .linalg import as_symmetric, eigh, power, sym

__all__ = [
    "check_weight",
    "arithmetic_mean",
    "harmonic_mean",
    "geometric_mean",
    "spectral_geometric_mean",
    "spectral_residual",
]


def check_weight(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"weight t must lie in [0, 1], got {t}")
    return t


def _pair(A, B) -> tuple[np.ndarray, np.ndarray]:
    A = as_symmetric(A, "A")
    B = as_symmetric(B, "B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A, B


def _pd_split(X: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(X^{1/2}, X^{-1/2})`` from one eigendecomposition."""
    w, U = eigh(X)
    if w[0] <= 0.0:
        raise DomainError(f"{name} is not positive definite (lambda_min={w[0]:.6g})", float(w[0]))
    r = np.sqrt(w)
    return sym((U * r) @ U.T), sym((U / r) @ U.T)


def _require_pd(X: np.ndarray, name: str) -> np.ndarray:
    w, U = eigh(X)
    if w[0] <= 0.0:
        raise DomainError(f"{name} is not positive definite (lambda_min={w[0]:.6g})", float(w[0]))
    return sym((U / w) @ U.T)


def arithmetic_mean(A, B, t: float) -> np.ndarray:
    """``(1 - t) A + t B``."""
    t = check_weight(t)
    A, B = _pair(A, B)
    return sym((1.0 - t) * A + t * B)


def harmonic_mean(A, B, t: float) -> np.ndarray:
    """``((1 - t) A^{-1} + t B^{-1})^{-1}``."""
    t = check_weight(t)
    A, B = _pair(A, B)
    Ai = _require_pd(A, "A")
    Bi = _require_pd(B, "B")
    return _require_pd(sym((1.0 - t) * Ai + t * Bi), "weighted inverse sum")


def geometric_mean(A, B, t: float) -> np.ndarray:
    """Weighted geometric mean ``A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}``.

    Examples
    --------
    >>> geometric_mean(np.diag([1.0, 4.0]), np.diag([9.0, 16.0]), 0.5).round(12)
    array([[3., 0.],
           [0., 8.]])
    """
    t = check_weight(t)
    A, B = _pair(A, B)
    Ah, Aih = _pd_split(A, "A")
    _require_pd(B, "B")
    inner = sym(Aih @ B @ Aih)
    return sym(Ah @ power(inner, t) @ Ah)


def spectral_geometric_mean(A, B, t: float) -> np.ndarray:
    """Weighted spectral geometric mean ``G^t A G^t`` with ``G = A^{-1} # B``.

    ``#`` is the midpoint geometric mean. The closed form is used directly;
    :func:`spectral_residual` checks it against the fixed-point equation that
    characterizes the mean.
    """
    t = check_weight(t)
    A, B = _pair(A, B)
    Ai = _require_pd(A, "A")
    G = geometric_mean(Ai, B, 0.5)
    Gt = power(G, t)
    return sym(Gt @ A @ Gt)


def spectral_residual(A, B, t: float) -> float:
    """Max-norm residual of ``(A^{-1} # B)^t = A^{-1} # X`` at ``X = A natural_t B``."""
    t = check_weight(t)
    A, B = _pair(A, B)
    Ai = _require_pd(A, "A")
    X = spectral_geometric_mean(A, B, t)
    lhs = power(geometric_mean(Ai, B, 0.5), t)
    rhs = geometric_mean(Ai, X, 0.5)
    return float(np.max(np.abs(lhs - rhs)))
