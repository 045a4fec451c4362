"""Generalized Kantorovich constants and the scalar bounds built from them.

Notation: ``x > 0`` is a spectral ratio ``M/m`` and ``t`` a real exponent.
The two-argument and three-argument Kantorovich constants are related by
``K(m, M, t) = K(M/m, t)`` since the three-argument form is homogeneous of
degree zero in ``(m, M)``.

Differences such as ``x^t - x`` and ``x^t - 1`` are evaluated through
``expm1`` on ``log x`` so the removable singularities at ``x = 1``, ``t = 0``
and ``t = 1`` cost no accuracy in their neighbourhood. Only the exact
singular points fall back to the analytic limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "kantorovich_x",
    "kantorovich_mM",
    "kantorovich_classic",
    "lower_bound_L",
    "kantorovich_dx",
    "delta",
    "delta_expr",
    "scalar_mean",
    "lemma33_gap",
    "holder_gap",
    "ConstantsBundle",
    "bundle",
]


def _pos(x: float, name: str = "x") -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"{name} must be a positive finite number, got {x}")
    return x


def _em_over(s: float, u: float) -> float:
    """``expm1(s u) / s`` with its limit ``u`` when ``s u`` is negligible."""
    z = s * u
    if abs(z) < 1e-150:
        return u
    return math.expm1(z) / s


def _ratio(s: float, u: float) -> float:
    """``s / expm1(s u)`` with its limit ``1/u`` at ``s = 0``."""
    return 1.0 / _em_over(s, u)


def kantorovich_x(x: float, t: float) -> float:
    """Generalized Kantorovich constant ``K(x, t)`` for ``x > 0`` and real ``t``.

    ``K(x, t) = (x^t - x) / ((t-1)(x-1)) * ((t-1)/t * (x^t - 1)/(x^t - x))^t``,
    extended by continuity with value 1 at ``x = 1``, ``t = 0`` and ``t = 1``.

    >>> round(kantorovich_x(4.0, 2.0), 12)
    1.5625
    """
    x = _pos(x)
    t = float(t)
    u = math.log(x)
    if u == 0.0 or t == 0.0 or t == 1.0:
        return 1.0
    s = t - 1.0
    q_s = _em_over(s, u)  # (x^t - x) / (x (t - 1))
    first = x * q_s / math.expm1(u)
    inner = _em_over(t, u) / (x * q_s)
    return first * math.exp(t * math.log(inner))


def kantorovich_mM(m: float, M: float, t: float) -> float:
    """Three-argument constant ``K(m, M, t)``; equals ``K(M/m, t)``."""
    m = _pos(m, "m")
    M = _pos(M, "M")
    return kantorovich_x(M / m, t)


def kantorovich_classic(m: float, M: float) -> float:
    """Classical Kantorovich constant ``(M + m)^2 / (4 M m)``."""
    return (M + m) ** 2 / (4.0 * M * m)


def lower_bound_L(x: float, t: float) -> float:
    """``L(x, t) = (x^t + x)/(x + 1) * ((x^t + 1)/(x^t + x))^t``."""
    x = _pos(x)
    t = float(t)
    xt = math.exp(t * math.log(x))
    return (xt + x) / (x + 1.0) * math.exp(t * math.log((xt + 1.0) / (xt + x)))


def kantorovich_dx(x: float, t: float) -> float:
    """Partial derivative of ``K(x, t)`` in ``x`` from its factorized closed form.

    The factorization is ``f_t(x) g_t(x) / ((1-t)(1-x^t)(x-1)^2)`` times the
    same ``t``-th power factor that appears in ``K``, with
    ``f_t(x) = 1 - x^t + x t - t`` and ``g_t(x) = t x^{t-1} - 1 + (1-t) x^t``.
    Undefined at ``x = 1`` and ``t in {0, 1}``.
    """
    x = _pos(x)
    t = float(t)
    if x == 1.0 or t == 0.0 or t == 1.0:
        raise ValueError(f"kantorovich_dx is singular at x={x}, t={t}")
    u = math.log(x)
    xt = math.exp(t * u)
    f = 1.0 - xt + x * t - t
    g = t * xt / x - 1.0 + (1.0 - t) * xt
    inner = _em_over(t, u) / (x * _em_over(t - 1.0, u))
    return f * g / ((1.0 - t) * (-math.expm1(t * u)) * (x - 1.0) ** 2) * math.exp(t * math.log(inner))


def delta_expr(x: float, t: float) -> float:
    """The comparison function for the two Ando-Hiai constants, without domain checks."""
    x = _pos(x)
    t = float(t)
    xt1 = math.exp((t + 1.0) * math.log(x))
    first = math.exp((t + 1.0) * math.log((x + 1.0) ** 2 / (4.0 * x)))
    return first - (xt1 + 1.0) ** 2 / (4.0 * xt1) * kantorovich_x(x, t) ** 2


def delta(x: float, t: float) -> float:
    """``((x+1)^2/(4x))^{t+1} - (x^{t+1}+1)^2/(4 x^{t+1}) K(x,t)^2`` for ``x > 1``.

    Its sign is the sign of ``kappa1 - kappa2`` at ``x = M/m`` (for ``r > 0``).
    """
    x = float(x)
    if not x > 1.0:
        raise ValueError(f"delta requires x > 1, got {x}")
    return delta_expr(x, t)


def scalar_mean(m: float, M: float, lam: float, kind: str) -> float:
    """Weighted arithmetic, geometric or harmonic mean of two positive scalars."""
    m = _pos(m, "m")
    M = _pos(M, "M")
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    if kind == "arith":
        return (1.0 - lam) * m + lam * M
    if kind == "geo":
        return math.exp((1.0 - lam) * math.log(m) + lam * math.log(M))
    if kind == "harm":
        return 1.0 / ((1.0 - lam) / m + lam / M)
    raise ValueError(f"unknown mean kind {kind!r}")


def lemma33_gap(x: float, t: float) -> float:
    """``(x+1)/(x-1) - (1-t)^2 (x+x^t)/(x-x^t) - t^2 (x^t+1)/(x^t-1)``.

    Non-negative for ``x > 1`` and ``0 <= t <= 1``; the sign flips when either
    ``x < 1`` or ``t`` leaves ``[0, 1]`` (but not both). The terms whose
    prefactor vanishes at ``t = 0`` or ``t = 1`` take their limit 0 there.
    """
    x = _pos(x)
    t = float(t)
    u = math.log(x)
    if u == 0.0:
        raise ValueError("lemma33_gap is undefined at x = 1")
    xt = math.exp(t * u)
    s = t - 1.0
    lhs = (x + 1.0) / math.expm1(u)
    term1 = -s * _ratio(s, u) * (x + xt) / x
    term2 = t * _ratio(t, u) * (xt + 1.0)
    return lhs - term1 - term2


def holder_gap(m: float, M: float, t: float) -> float:
    """``2^t (M^{t+1} + m^{t+1}) - (M + m)^{t+1}``; non-negative for ``t >= 0``."""
    return 2.0**t * (M ** (t + 1.0) + m ** (t + 1.0)) - (M + m) ** (t + 1.0)


@dataclass(frozen=True)
class ConstantsBundle:
    """Every scalar constant attached to a spectral interval ``[m, M]`` and weight ``t``.

    ``K_ratio`` is ``K(m/M, M/m, t)`` and ``K_sqrt_ratio`` is
    ``K(sqrt(m/M), sqrt(M/m), t)``. ``kappa1`` and ``kappa2`` are only set when
    the power ``r`` was supplied.
    """

    m: float
    M: float
    t: float
    lam: float
    K_mMt: float
    K_ratio: float
    K_sqrt_ratio: float
    xi: float
    C1: float
    C2: float
    K2: float
    beta: float
    eta: float
    Gamma: float
    r: float | None = None
    kappa1: float | None = None
    kappa2: float | None = None

    @property
    def arith_geo_factor(self) -> float:
        """``(m nabla_lam M) / (m sharp_lam M)``."""
        return scalar_mean(self.m, self.M, self.lam, "arith") / scalar_mean(self.m, self.M, self.lam, "geo")

    @property
    def reverse_ando_spec(self) -> float:
        return self.C1**self.t * self.K2 / self.K_ratio**2

    @property
    def kantorovich_spec(self) -> float:
        K_inv = kantorovich_mM(1.0 / self.M, 1.0 / self.m, self.t)
        return math.sqrt(self.C1) * self.K2 / K_inv**2

    def refined_envelope(self, m_inner: float, M_inner: float) -> float:
        """Upper envelope constant for separated spectra ``A <= m' < M' <= B``."""
        return self.K2 * (1.0 / kantorovich_classic(m_inner, M_inner)) ** self.lam


def bundle(m: float, M: float, t: float, r: float | None = None) -> ConstantsBundle:
    """Evaluate every constant for ``0 < m <= M``, ``0 <= t <= 1`` and optional ``0 <= r <= 1``."""
    m = _pos(m, "m")
    M = _pos(M, "M")
    t = float(t)
    if M < m:
        raise ValueError(f"need m <= M, got m={m}, M={M}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    lam = min(t, 1.0 - t)
    p = 1.0 + t
    Mp = M**p
    mp = m**p
    C1 = kantorovich_classic(m, M)
    xi = 2.0 * math.sqrt(Mp * mp) / (Mp + mp)
    K2 = (Mp + mp) ** 2 / (4.0 * Mp * mp)
    beta = (M + m) ** (2.0 * t) * (Mp + mp) ** 4 / (4.0 ** (2.0 + t) * M ** (2.0 + 3.0 * t) * m ** (2.0 + 3.0 * t))
    K_mMt = kantorovich_mM(m, M, t)
    K_ratio = kantorovich_mM(m / M, M / m, t)
    K_sqrt_ratio = kantorovich_mM(math.sqrt(m / M), math.sqrt(M / m), t)
    eta = C1**p / K_sqrt_ratio**2
    Gamma = K2 / K_ratio
    kappa1 = kappa2 = None
    if r is not None:
        r = float(r)
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {r}")
        mr, Mr = m**r, M**r
        base = (
            scalar_mean(mr, Mr, lam, "arith")
            / scalar_mean(mr, Mr, lam, "geo")
            * kantorovich_classic(mr, Mr) ** p
            / (K_mMt * kantorovich_mM(math.sqrt(mr / Mr), math.sqrt(Mr / mr), t) ** 2)
        )
        kappa1 = base * C1 ** (r * p) / K_sqrt_ratio ** (2.0 * r)
        kappa2 = base * K2**r
    return ConstantsBundle(
        m=m, M=M, t=t, lam=lam, K_mMt=K_mMt, K_ratio=K_ratio, K_sqrt_ratio=K_sqrt_ratio,
        xi=xi, C1=C1, C2=xi, K2=K2, beta=beta, eta=eta, Gamma=Gamma,
        r=r, kappa1=kappa1, kappa2=kappa2,
    )
