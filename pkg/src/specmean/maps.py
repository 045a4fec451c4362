"""Unital positive linear maps on symmetric matrices.

Five concrete families are provided:

* ``identity``: ``A -> A``
* ``compression``: ``A -> V^T A V`` for an ``n x k`` isometry ``V``; with
  ``k = 1`` this is the vector state ``<A x, x>``
* ``pinching``: keeps the diagonal blocks of a contiguous index partition
* ``unitary-mixture``: ``A -> sum_i w_i U_i^T A U_i`` with orthogonal ``U_i``
  and convex weights ``w_i``
* ``normalized-trace``: ``A -> [tr(A) / n]`` (1 x 1 codomain)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatch
from .instances import random_isometry, random_orthogonal
from .linalg import sym
from .rng import SplitMix64

__all__ = [
    "MAP_KINDS",
    "MapSpec",
    "identity",
    "compression",
    "pinching",
    "unitary_mixture",
    "normalized_trace",
    "apply_map",
    "validate_map",
    "random_map",
]

MAP_KINDS = ("identity", "compression", "pinching", "unitary-mixture", "normalized-trace")


@dataclass(frozen=True)
class MapSpec:
    kind: str
    V: np.ndarray | None = field(default=None, repr=False)
    blocks: tuple[int, ...] | None = None
    unitaries: tuple[np.ndarray, ...] | None = field(default=None, repr=False)
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")

    def describe(self) -> dict:
        """JSON-friendly summary used in instance digests."""
        out: dict = {"kind": self.kind}
        if self.V is not None:
            out["k"] = int(self.V.shape[1])
        if self.blocks is not None:
            out["blocks"] = list(self.blocks)
        if self.weights is not None:
            out["weights"] = [float(w) for w in self.weights]
        return out


def identity() -> MapSpec:
    return MapSpec("identity")


def compression(V) -> MapSpec:
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if V.shape[0] == 1 and V.shape[1] > 1:
        V = V.T
    return MapSpec("compression", V=V)


def pinching(blocks) -> MapSpec:
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b < 1 for b in blocks):
        raise ValueError(f"block sizes must be positive, got {blocks}")
    return MapSpec("pinching", blocks=blocks)


def unitary_mixture(unitaries, weights) -> MapSpec:
    us = tuple(np.asarray(U, dtype=np.float64) for U in unitaries)
    ws = tuple(float(w) for w in weights)
    if len(us) != len(ws) or not us:
        raise ValueError("need one weight per orthogonal matrix")
    return MapSpec("unitary-mixture", unitaries=us, weights=ws)


def normalized_trace() -> MapSpec:
    return MapSpec("normalized-trace")


def _input_dim(phi: MapSpec) -> int | None:
    if phi.kind == "compression":
        return phi.V.shape[0]
    if phi.kind == "pinching":
        return sum(phi.blocks)
    if phi.kind == "unitary-mixture":
        return phi.unitaries[0].shape[0]
    return None


def apply_map(phi: MapSpec, A) -> np.ndarray:
    """Evaluate ``phi(A)``; the result lives in the codomain of ``phi``."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    n = A.shape[0]
    expected = _input_dim(phi)
    if A.ndim != 2 or A.shape[1] != n or (expected is not None and expected != n):
        raise DimensionMismatch(f"map {phi.kind} expects dimension {expected}, got {A.shape}")
    if phi.kind == "identity":
        return A.copy()
    if phi.kind == "compression":
        return sym(phi.V.T @ A @ phi.V)
    if phi.kind == "pinching":
        out = np.zeros_like(A)
        start = 0
        for b in phi.blocks:
            out[start:start + b, start:start + b] = A[start:start + b, start:start + b]
            start += b
        return out
    if phi.kind == "unitary-mixture":
        out = np.zeros_like(A)
        for U, w in zip(phi.unitaries, phi.weights):
            out += w * (U.T @ A @ U)
        return sym(out)
    return np.array([[np.trace(A) / n]])


def validate_map(phi: MapSpec, dim: int, tol: float = 1e-12) -> bool:
    """Check the structural invariants of ``phi`` and that ``phi(I) = I``."""
    expected = _input_dim(phi)
    if expected is not None and expected != dim:
        return False
    if phi.kind == "compression":
        V = phi.V
        if V.ndim != 2 or V.shape[1] > V.shape[0]:
            return False
        if np.max(np.abs(V.T @ V - np.eye(V.shape[1]))) > tol:
            return False
    elif phi.kind == "unitary-mixture":
        ws = np.asarray(phi.weights)
        if np.any(ws < 0) or abs(ws.sum() - 1.0) > tol:
            return False
        for U in phi.unitaries:
            if U.shape != (dim, dim) or np.max(np.abs(U.T @ U - np.eye(dim))) > tol:
                return False
    image = apply_map(phi, np.eye(dim))
    return bool(np.max(np.abs(image - np.eye(image.shape[0]))) <= tol)


def random_map(rng: SplitMix64, n: int, kind: str | None = None) -> MapSpec:
    """Draw a map on ``n x n`` matrices, the kind uniformly from :data:`MAP_KINDS` unless given."""
    kind = kind or rng.choice(MAP_KINDS)
    if kind == "identity":
        return identity()
    if kind == "compression":
        return compression(random_isometry(rng, n, rng.integers(1, n + 1)))
    if kind == "pinching":
        sizes = []
        left = n
        while left:
            b = rng.integers(1, left + 1)
            sizes.append(b)
            left -= b
        return pinching(sizes)
    if kind == "unitary-mixture":
        count = rng.integers(2, 4)
        raw = [rng.uniform(0.05, 1.0) for _ in range(count)]
        total = sum(raw)
        ws = [w / total for w in raw]
        ws[-1] = 1.0 - sum(ws[:-1])
        return unitary_mixture([random_orthogonal(rng, n) for _ in range(count)], ws)
    return normalized_trace()
