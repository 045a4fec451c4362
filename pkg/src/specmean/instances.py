"""Seeded generation of positive definite matrices, isometries and unit vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SpectrumBounds, sym
from .rng import SplitMix64

__all__ = [
    "PINNED",
    "INTERIOR",
    "SEPARATED",
    "GenConfig",
    "normal_matrix",
    "orthonormalize",
    "random_orthogonal",
    "random_isometry",
    "random_unit_vector",
    "pd_with_spectrum",
    "random_pd_from",
    "random_pd",
]

PINNED = "pinned-endpoints"
INTERIOR = "interior"
SEPARATED = "separated-pair"
_MODES = (PINNED, INTERIOR, SEPARATED)


@dataclass(frozen=True)
class GenConfig:
    """Recipe for one random instance.

    ``separated`` holds the inner pair ``(m', M')`` and is required in
    separated-pair mode, where ``bounds.m <= m' < M' <= bounds.M``.
    """

    seed: int
    dim: int
    bounds: SpectrumBounds
    mode: str = PINNED
    separated: tuple[float, float] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {_MODES}")
        if self.mode == SEPARATED:
            if self.separated is None:
                raise ValueError("separated-pair mode needs the inner pair (m', M')")
            mi, Mi = self.separated
            if not (self.bounds.m <= mi < Mi <= self.bounds.M):
                raise ValueError(f"need m <= m' < M' <= M, got {self.bounds}, m'={mi}, M'={Mi}")


def normal_matrix(rng: SplitMix64, rows: int, cols: int) -> np.ndarray:
    """Standard normal matrix filled in row-major order."""
    return np.array([[rng.normal() for _ in range(cols)] for _ in range(rows)], dtype=np.float64)


def orthonormalize(X: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt (two passes) on the columns of ``X``.

    Each output column is flipped so its first entry of magnitude above
    ``1e-300`` is positive.
    """
    Q = np.array(X, dtype=np.float64, copy=True)
    n, k = Q.shape
    for j in range(k):
        for _ in range(2):
            for i in range(j):
                Q[:, j] -= (Q[:, i] @ Q[:, j]) * Q[:, i]
        norm = np.sqrt(Q[:, j] @ Q[:, j])
        if norm < 1e-12:
            raise ArithmeticError("columns are numerically dependent")
        Q[:, j] /= norm
        nz = np.flatnonzero(np.abs(Q[:, j]) > 1e-300)
        if nz.size and Q[nz[0], j] < 0:
            Q[:, j] = -Q[:, j]
    return Q


def random_orthogonal(rng: SplitMix64, n: int) -> np.ndarray:
    return orthonormalize(normal_matrix(rng, n, n))


def random_isometry(seed: int | SplitMix64, n: int, k: int) -> np.ndarray:
    """``n x k`` matrix with orthonormal columns."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    return orthonormalize(normal_matrix(rng, n, k))


def random_unit_vector(rng: SplitMix64, n: int) -> np.ndarray:
    return random_isometry(rng, n, 1)[:, 0]


def pd_with_spectrum(rng: SplitMix64, eigenvalues) -> np.ndarray:
    """``Q diag(eigenvalues) Q^T`` for a random orthogonal ``Q``."""
    w = np.asarray(eigenvalues, dtype=np.float64)
    Q = random_orthogonal(rng, w.size)
    return sym((Q * w) @ Q.T)


def random_pd_from(rng: SplitMix64, n: int, m: float, M: float, pinned: bool = True) -> np.ndarray:
    """Random matrix with spectrum in ``[m, M]``.

    When ``pinned`` the smallest eigenvalue is exactly ``m`` and the largest
    exactly ``M`` before conjugation (``n >= 2`` unless ``m == M``).
    """
    if pinned and n == 1 and m != M:
        raise ValueError("cannot pin both endpoints of a 1x1 spectrum with m < M")
    draws = [rng.uniform(m, M) for _ in range(n)]
    if pinned:
        draws[0] = m
        draws[-1] = M
    return pd_with_spectrum(rng, draws)


def random_pd(cfg: GenConfig):
    """Generate the matrix (or, in separated-pair mode, the pair) described by ``cfg``.

    Identical configurations give bit-identical output.
    """
    rng = SplitMix64(cfg.seed)
    m, M = cfg.bounds.m, cfg.bounds.M
    if cfg.mode == PINNED:
        return random_pd_from(rng, cfg.dim, m, M, pinned=True)
    if cfg.mode == INTERIOR:
        return random_pd_from(rng, cfg.dim, m, M, pinned=False)
    mi, Mi = cfg.separated
    pin = cfg.dim >= 2
    A = random_pd_from(rng, cfg.dim, m, mi, pinned=pin)
    B = random_pd_from(rng, cfg.dim, Mi, M, pinned=pin)
    return A, B
