"""Dense real symmetric linear algebra.

Everything here works on plain ``float64`` numpy arrays. A "symmetric matrix"
is a square array equal to its own transpose bit for bit; every routine that
produces a matrix re-symmetrizes its output with :func:`sym` so asymmetry
from rounding can never accumulate.

Eigendecompositions use cyclic Jacobi rotations. The kernel is compiled with
numba when it is importable and runs as plain Python otherwise; both paths
execute the same sequence of floating point operations.
"""

from __future__ import annotations

import contextlib
import contextvars
import hashlib
import math
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .exceptions import DimensionMismatch, DomainError, NumericFailure

__all__ = [
    "EigenDecomp",
    "SpectrumBounds",
    "MAX_SWEEPS",
    "as_symmetric",
    "sym",
    "matrix_digest",
    "eigh",
    "eigvalsh",
    "apply_fn",
    "power",
    "sqrtm",
    "invm",
    "logm",
    "expm",
    "congruence",
    "loewner_margin",
    "spectrum_within",
    "is_positive_definite",
    "jacobi_precision",
]

MAX_SWEEPS = 100

# Rotation is skipped when |a_pq| <= rtol * sqrt(|a_pp a_qq|) or |a_pq| <= atol * ||A||_F.
_DEFAULT_RTOL = 2.0**-53
_DEFAULT_ATOL = 2.0**-60

_precision: contextvars.ContextVar[tuple[float, float]] = contextvars.ContextVar(
    "jacobi_precision", default=(_DEFAULT_RTOL, _DEFAULT_ATOL)
)


@contextlib.contextmanager
def jacobi_precision(rtol: float, atol: float) -> Iterator[None]:
    """Temporarily change the Jacobi skip thresholds for the current context."""
    token = _precision.set((rtol, atol))
    try:
        yield
    finally:
        _precision.reset(token)


class EigenDecomp(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class SpectrumBounds:
    """Scalars ``0 < m <= M`` bounding a spectrum from below and above."""

    m: float
    M: float

    def __post_init__(self):
        if not (self.m > 0 and self.M >= self.m and math.isfinite(self.M)):
            raise ValueError(f"need 0 < m <= M, got m={self.m}, M={self.M}")

    @property
    def ratio(self) -> float:
        return self.M / self.m


def sym(X: np.ndarray) -> np.ndarray:
    """Return ``(X + X^T) / 2``, which is exactly symmetric in floating point."""
    return 0.5 * (X + X.T)


def as_symmetric(A, name: str = "A", rtol: float = 1e-8) -> np.ndarray:
    """Validate ``A`` as a finite square symmetric matrix and return a float copy.

    Small asymmetry (relative to ``1 + max|A|``) is removed; anything larger is
    rejected.
    """
    A = np.array(A, dtype=np.float64, copy=True)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    asym = np.max(np.abs(A - A.T))
    if asym > rtol * (1.0 + np.max(np.abs(A))):
        raise ValueError(f"{name} is not symmetric (max asymmetry {asym:.3g})")
    return sym(A)


def matrix_digest(A: np.ndarray) -> str:
    """Short stable hex digest of a matrix's bytes, used in error messages and reports."""
    a = np.ascontiguousarray(A, dtype=np.float64)
    h = hashlib.sha256(repr(a.shape).encode())
    h.update(a.tobytes())
    return h.hexdigest()[:16]


def _check_same_shape(*mats: np.ndarray) -> None:
    shape = mats[0].shape
    for X in mats[1:]:
        if X.shape != shape:
            raise DimensionMismatch(f"dimension mismatch: {shape} vs {X.shape}")


def _jacobi_kernel(a, v, rtol, atol, max_sweeps):
    # In-place cyclic Jacobi on ``a`` accumulating rotations into ``v``.
    # Returns the number of sweeps used, or -1 when the cap is reached.
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    abs_tol = atol * math.sqrt(fro)
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                if abs(apq) <= abs_tol or abs(apq) <= rtol * math.sqrt(abs(app * aqq)):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                rotated = True
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = c * arp - s * arq
                        a[p, r] = a[r, p]
                        a[r, q] = s * arp + c * arq
                        a[q, r] = a[r, q]
                for r in range(n):
                    vrp = v[r, p]
                    vrq = v[r, q]
                    v[r, p] = c * vrp - s * vrq
                    v[r, q] = s * vrp + c * vrq
        if not rotated:
            return sweep + 1
    return -1


try:  # pragma: no cover - exercised implicitly
    from numba import njit

    _kernel = njit(cache=True, nogil=True)(_jacobi_kernel)
except ImportError:  # pragma: no cover
    _kernel = _jacobi_kernel


def eigh(A) -> EigenDecomp:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Eigenvalues come back in ascending order with eigenvectors as columns.
    The sweep order is fixed, so identical inputs give identical outputs.

    Raises
    ------
    NumericFailure
        If rotations are still needed after ``MAX_SWEEPS`` sweeps.
    """
    a = as_symmetric(A)
    n = a.shape[0]
    v = np.eye(n)
    if n > 1:
        rtol, atol = _precision.get()
        if _kernel(a, v, rtol, atol, MAX_SWEEPS) < 0:
            raise NumericFailure(f"Jacobi did not converge in {MAX_SWEEPS} sweeps", matrix_digest(A))
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomp(values[order], np.ascontiguousarray(v[:, order]))


def eigvalsh(A) -> np.ndarray:
    return eigh(A).values


def _rebuild(vectors: np.ndarray, values: np.ndarray) -> np.ndarray:
    return sym((vectors * values) @ vectors.T)


def apply_fn(A, fn: Callable[[np.ndarray], np.ndarray], *, positive: bool = False) -> np.ndarray:
    """Apply a scalar function to a symmetric matrix through its spectrum.

    Parameters
    ----------
    A : array_like
        Symmetric matrix.
    fn : callable
        Vectorized scalar function evaluated on the eigenvalues.
    positive : bool
        Require every eigenvalue to be strictly positive first.

    Returns
    -------
    ndarray
        ``U diag(fn(w)) U^T``, re-symmetrized.
    """
    w, U = eigh(A)
    if positive and w[0] <= 0.0:
        raise DomainError(f"matrix is not positive definite (lambda_min={w[0]:.6g})", float(w[0]))
    return _rebuild(U, np.asarray(fn(w), dtype=np.float64))


def power(A, p: float) -> np.ndarray:
    """Matrix power ``A^p``.

    Non-negative integer powers are defined for every symmetric matrix; any
    other exponent needs a positive definite ``A`` and is evaluated as
    ``exp(p log w)`` on the eigenvalues.
    """
    p = float(p)
    if p.is_integer() and p >= 0:
        return apply_fn(A, lambda w: w**p)
    return apply_fn(A, lambda w: np.exp(p * np.log(w)), positive=True)


def sqrtm(A) -> np.ndarray:
    return apply_fn(A, np.sqrt, positive=True)


def invm(A) -> np.ndarray:
    return apply_fn(A, lambda w: 1.0 / w, positive=True)


def logm(A) -> np.ndarray:
    return apply_fn(A, np.log, positive=True)


def expm(A) -> np.ndarray:
    return apply_fn(A, np.exp)


def congruence(C, X, mode: str = "half") -> np.ndarray:
    """Congruence of ``X`` by a power of a positive definite ``C``.

    ``mode="half"`` gives ``C^{1/2} X C^{1/2}``; ``mode="inv-half"`` gives
    ``C^{-1/2} X C^{-1/2}``.
    """
    X = as_symmetric(X, "X")
    C = as_symmetric(C, "C")
    _check_same_shape(C, X)
    if mode == "half":
        S = sqrtm(C)
    elif mode == "inv-half":
        S = apply_fn(C, lambda w: 1.0 / np.sqrt(w), positive=True)
    else:
        raise ValueError(f"unknown congruence mode {mode!r}")
    return sym(S @ X @ S)


def loewner_margin(L, R) -> float:
    """Smallest eigenvalue of ``R - L``; non-negative iff ``L <= R`` in Loewner order."""
    L = np.atleast_2d(np.asarray(L, dtype=np.float64))
    R = np.atleast_2d(np.asarray(R, dtype=np.float64))
    _check_same_shape(L, R)
    return float(eigh(sym(R - L)).values[0])


def spectrum_within(A, bounds: SpectrumBounds, tol: float = 1e-10) -> bool:
    """True iff ``m - tol <= lambda_min(A)`` and ``lambda_max(A) <= M + tol``."""
    w = eigvalsh(A)
    return bool(bounds.m - tol <= w[0] and w[-1] <= bounds.M + tol)


def is_positive_definite(A) -> bool:
    return bool(eigvalsh(A)[0] > 0.0)
