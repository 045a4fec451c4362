"""Registry of executable inequality checks.

Every check rearranges one inequality into ``LHS <= RHS`` (possibly several
at once) and reports the margin ``lambda_min(RHS - LHS)`` for matrices or
``RHS - LHS`` for scalars. Operator checks evaluate randomly sampled
instances that satisfy the inequality's hypothesis by construction; scalar
checks run over fixed grids.

Notation in the ``statement`` strings: ``#_t`` geometric mean, ``%_t``
spectral geometric mean, ``!_t`` harmonic mean, ``nabla_t`` arithmetic
mean, ``Phi`` a unital positive linear map, ``<Ax,x>`` a vector state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import constants as kc
from .exceptions import HypothesisViolation
from .instances import random_pd_from, random_unit_vector
from .linalg import (
    SpectrumBounds,
    eigvalsh,
    invm,
    jacobi_precision,
    loewner_margin,
    matrix_digest,
    power,
    spectrum_within,
    sym,
)
from .maps import MapSpec, apply_map, random_map
from .means import arithmetic_mean, geometric_mean, harmonic_mean, spectral_geometric_mean
from .rng import SplitMix64

__all__ = [
    "Instance",
    "CheckResult",
    "Check",
    "REGISTRY",
    "OPERATOR_CHECKS",
    "SCALAR_CHECKS",
    "X_GRID",
    "T_GRID_INNER",
    "T_GRID_UPPER",
    "T_GRID_LOWER",
    "sample_instance",
    "scalar_points",
    "run_check",
]

# Documented grids: 60 log-spaced ratios in [0.05, 20] (none within 1e-7 of 1)
# and 41 uniform exponents per regime.
X_GRID: tuple[float, ...] = tuple(
    float(x) for x in np.geomspace(0.05, 20.0, 60) if abs(x - 1.0) > 1e-7
)
T_GRID_INNER: tuple[float, ...] = tuple(float(t) for t in np.linspace(0.0, 1.0, 41))
T_GRID_UPPER: tuple[float, ...] = tuple(float(t) for t in np.linspace(1.0, 3.0, 41))
T_GRID_LOWER: tuple[float, ...] = tuple(float(t) for t in np.linspace(-2.0, 0.0, 41))
T_GRID_OUTER = T_GRID_UPPER + T_GRID_LOWER

Sides = list[tuple]

# Marks checks whose power r is drawn from the suite's configured r values.
SUITE_R = ("suite",)


@dataclass
class Instance:
    """One concrete input to a check."""

    check: str
    seed: int
    dim: int = 0
    t: float = 0.5
    r: float | None = None
    m: float = 1.0
    M: float = 1.0
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    x: np.ndarray | None = None
    phi: MapSpec | None = None
    extra: dict = field(default_factory=dict)

    def digest(self) -> dict:
        out = {"seed": self.seed, "dim": self.dim, "t": self.t, "r": self.r, "m": self.m, "M": self.M}
        if self.phi is not None:
            out["map"] = self.phi.describe()
        out.update(self.extra)
        mats = [X for X in (self.A, self.B) if X is not None]
        if mats:
            out["matrices"] = matrix_digest(np.concatenate(mats, axis=0))
        return out


@dataclass(frozen=True)
class CheckResult:
    id: str
    margin: float
    passed: bool
    scale: float
    instance_digest: dict
    reevaluated: bool = False

    @property
    def relative_margin(self) -> float:
        return self.margin / self.scale


@dataclass(frozen=True)
class Check:
    id: str
    statement: str
    kind: str  # "operator" or "scalar"
    sides: Callable[[Instance], Sides]
    recipe: str = "shared"
    r_values: tuple[float, ...] | None = None
    falsification: bool = False


REGISTRY: dict[str, Check] = {}


def _register(id, statement, kind="operator", recipe="shared", r_values=None, falsification=False):
    def deco(fn):
        REGISTRY[id] = Check(id, statement, kind, fn, recipe, r_values, falsification)
        return fn

    return deco


def _state(X: np.ndarray, x: np.ndarray) -> float:
    return float(x @ X @ x)


def _bundle(inst: Instance) -> kc.ConstantsBundle:
    return kc.bundle(inst.m, inst.M, inst.t, inst.r)


def _phi(inst: Instance, X: np.ndarray) -> np.ndarray:
    return apply_map(inst.phi, X)


# -- background operator inequalities ---------------------------------------


@_register("MEANS_ORDER", "A !_t B <= A #_t B <= A nabla_t B")
def _means_order(inst):
    A, B, t = inst.A, inst.B, inst.t
    G = geometric_mean(A, B, t)
    return [(harmonic_mean(A, B, t), G), (G, arithmetic_mean(A, B, t))]


@_register("ANDO_MAP", "Phi(A #_t B) <= Phi(A) #_t Phi(B)")
def _ando_map(inst):
    A, B, t = inst.A, inst.B, inst.t
    return [(_phi(inst, geometric_mean(A, B, t)), geometric_mean(_phi(inst, A), _phi(inst, B), t))]


@_register("ANDO_VECTOR", "<A #_t B x,x> <= <Ax,x>^(1-t) <Bx,x>^t")
def _ando_vector(inst):
    A, B, t, x = inst.A, inst.B, inst.t, inst.x
    return [(_state(geometric_mean(A, B, t), x), _state(A, x) ** (1 - t) * _state(B, x) ** t)]


@_register(
    "REVERSE_ANDO_MAP",
    "Phi(A) #_t Phi(B) <= K(m,M,t)^-1 Phi(A #_t B), with mA <= B <= MA",
    recipe="independent",
)
def _reverse_ando_map(inst):
    A, B, t = inst.A, inst.B, inst.t
    Aih = power(A, -0.5)
    w = eigvalsh(sym(Aih @ B @ Aih))
    inst.extra["m_rel"], inst.extra["M_rel"] = float(w[0]), float(w[-1])
    c = 1.0 / kc.kantorovich_mM(w[0], w[-1], t)
    return [(geometric_mean(_phi(inst, A), _phi(inst, B), t), c * _phi(inst, geometric_mean(A, B, t)))]


@_register(
    "TWO_PARAM_REVERSE",
    "Phi(A) # Phi(B) <= (sqrt(M1 M2) + sqrt(m1 m2)) / (2 (M1 m1 M2 m2)^(1/4)) Phi(A # B)",
    recipe="independent",
)
def _two_param_reverse(inst):
    A, B = inst.A, inst.B
    m1, M1, m2, M2 = (inst.extra[k] for k in ("m1", "M1", "m2", "M2"))
    c = (math.sqrt(M1 * M2) + math.sqrt(m1 * m2)) / (2.0 * (M1 * m1 * M2 * m2) ** 0.25)
    return [(geometric_mean(_phi(inst, A), _phi(inst, B), 0.5), c * _phi(inst, geometric_mean(A, B, 0.5)))]


@_register("CHOI_DAVIS", "Phi(A)^-1 <= Phi(A^-1) and Phi(A^t) <= Phi(A)^t")
def _choi_davis(inst):
    A, t = inst.A, inst.t
    PA = _phi(inst, A)
    return [(invm(PA), _phi(inst, invm(A))), (_phi(inst, power(A, t)), power(PA, t))]


@_register("POWER_REVERSE", "Phi(A)^t <= K(m,M,t)^-1 Phi(A^t)")
def _power_reverse(inst):
    A, t = inst.A, inst.t
    c = 1.0 / kc.kantorovich_mM(inst.m, inst.M, t)
    return [(power(_phi(inst, A), t), c * _phi(inst, power(A, t)))]


@_register("KANTOROVICH_INV", "Phi(A^-1) <= (M+m)^2/(4Mm) Phi(A)^-1")
def _kantorovich_inv(inst):
    A = inst.A
    c = kc.kantorovich_classic(inst.m, inst.M)
    return [(_phi(inst, invm(A)), c * invm(_phi(inst, A)))]


@_register("SQUARE_ORDER", "A^2 <= (M+m)^2/(4Mm) B^2, with 0 < A <= B and m <= A <= M", recipe="dominating")
def _square_order(inst):
    A, B = inst.A, inst.B
    c = kc.kantorovich_classic(inst.m, inst.M)
    return [(sym(A @ A), c * sym(B @ B))]


@_register(
    "POWER_ARITH",
    "(A nabla_t B)^r <= K(m,M,t)^-1 A^r nabla_t B^r",
    r_values=SUITE_R,
    falsification=True,
)
def _power_arith(inst):
    A, B, t, r = inst.A, inst.B, inst.t, inst.r
    c = 1.0 / kc.kantorovich_mM(inst.m, inst.M, t)
    return [(power(arithmetic_mean(A, B, t), r), c * arithmetic_mean(power(A, r), power(B, r), t))]


@_register("MCCARTHY_I", "<Ax,x>^r <= <A^r x,x> for r >= 1", r_values=(1.0, 1.25, 1.5, 2.0, 3.0))
def _mccarthy_i(inst):
    return [(_state(inst.A, inst.x) ** inst.r, _state(power(inst.A, inst.r), inst.x))]


@_register("MCCARTHY_II", "<A^r x,x> <= <Ax,x>^r for 0 <= r <= 1", r_values=(0.1, 0.3, 0.5, 0.7, 0.9))
def _mccarthy_ii(inst):
    return [(_state(power(inst.A, inst.r), inst.x), _state(inst.A, inst.x) ** inst.r)]


@_register("MCCARTHY_III", "<Ax,x>^r <= <A^r x,x> for r <= 0", r_values=(-0.25, -0.5, -1.0, -2.0))
def _mccarthy_iii(inst):
    return [(_state(inst.A, inst.x) ** inst.r, _state(power(inst.A, inst.r), inst.x))]


@_register("GEO_POWER_MAP", "Phi(A # B)^t <= (Phi(A) # Phi(B))^t")
def _geo_power_map(inst):
    A, B, t = inst.A, inst.B, inst.t
    lhs = power(_phi(inst, geometric_mean(A, B, 0.5)), t)
    return [(lhs, power(geometric_mean(_phi(inst, A), _phi(inst, B), 0.5), t))]


# -- spectral geometric mean versus the other means -------------------------


@_register("SPEC_INNER_UPPER", "<A %_t B x,x> <= K2 <Ax,x>^(1-t) <Bx,x>^t")
def _spec_inner_upper(inst):
    A, B, t, x = inst.A, inst.B, inst.t, inst.x
    K2 = _bundle(inst).K2
    return [(_state(spectral_geometric_mean(A, B, t), x), K2 * _state(A, x) ** (1 - t) * _state(B, x) ** t)]


@_register("SPEC_ENVELOPE", "K2^-1 A !_t B <= A %_t B <= K2 A nabla_t B")
def _spec_envelope(inst):
    A, B, t = inst.A, inst.B, inst.t
    K2 = _bundle(inst).K2
    S = spectral_geometric_mean(A, B, t)
    return [(harmonic_mean(A, B, t) / K2, S), (S, K2 * arithmetic_mean(A, B, t))]


@_register(
    "SPEC_REFINED",
    "A %_t B <= K2 (4M'm'/(M'+m')^2)^min(t,1-t) A nabla_t B, with m <= A <= m' < M' <= B <= M",
    recipe="separated",
)
def _spec_refined(inst):
    A, B, t = inst.A, inst.B, inst.t
    c = _bundle(inst).refined_envelope(inst.extra["m_inner"], inst.extra["M_inner"])
    return [(spectral_geometric_mean(A, B, t), c * arithmetic_mean(A, B, t))]


@_register("SPEC_LE_GEO", "A %_t B <= Gamma(m,M,t) A #_t B")
def _spec_le_geo(inst):
    A, B, t = inst.A, inst.B, inst.t
    return [(spectral_geometric_mean(A, B, t), _bundle(inst).Gamma * geometric_mean(A, B, t))]


@_register("INNER_LE_SPEC", "<Ax,x>^(1-t) <Bx,x>^t <= eta(m,M,t) <A %_t B x,x>")
def _inner_le_spec(inst):
    A, B, t, x = inst.A, inst.B, inst.t, inst.x
    eta = _bundle(inst).eta
    return [(_state(A, x) ** (1 - t) * _state(B, x) ** t, eta * _state(spectral_geometric_mean(A, B, t), x))]


@_register("GEO_LE_SPEC", "A #_t B <= eta(m,M,t) A %_t B")
def _geo_le_spec(inst):
    A, B, t = inst.A, inst.B, inst.t
    return [(geometric_mean(A, B, t), _bundle(inst).eta * spectral_geometric_mean(A, B, t))]


# -- Ando-type inequalities for the spectral geometric mean -----------------


@_register("ANDO_SPEC", "Phi(A %_t B) <= beta Phi(A) %_t Phi(B)")
def _ando_spec(inst):
    A, B, t = inst.A, inst.B, inst.t
    beta = _bundle(inst).beta
    rhs = beta * spectral_geometric_mean(_phi(inst, A), _phi(inst, B), t)
    return [(_phi(inst, spectral_geometric_mean(A, B, t)), rhs)]


@_register(
    "REVERSE_ANDO_SPEC",
    "Phi(A) %_t Phi(B) <= K(m/M,M/m,t)^-2 ((M+m)/(2 sqrt(Mm)))^(2t) K2 Phi(A %_t B)",
)
def _reverse_ando_spec(inst):
    A, B, t = inst.A, inst.B, inst.t
    c = _bundle(inst).reverse_ando_spec
    lhs = spectral_geometric_mean(_phi(inst, A), _phi(inst, B), t)
    return [(lhs, c * _phi(inst, spectral_geometric_mean(A, B, t)))]


@_register(
    "KANTOROVICH_SPEC",
    "Phi(A) %_t Phi(A^-1) <= K(1/M,1/m,t)^-2 ((M+m)/(2 sqrt(Mm))) K2 I",
    falsification=True,
)
def _kantorovich_spec(inst):
    A, t = inst.A, inst.t
    c = _bundle(inst).kantorovich_spec
    lhs = spectral_geometric_mean(_phi(inst, A), _phi(inst, invm(A)), t)
    return [(lhs, c * np.eye(lhs.shape[0]))]


@_register(
    "ARITH_LE_SPEC",
    "A nabla_t B <= (m nabla_l M)/(m #_l M) eta(m,M,t) A %_t B, l = min(t,1-t)",
)
def _arith_le_spec(inst):
    A, B, t = inst.A, inst.B, inst.t
    b = _bundle(inst)
    return [(arithmetic_mean(A, B, t), b.arith_geo_factor * b.eta * spectral_geometric_mean(A, B, t))]


@_register("ARITH_LE_GEO_SCALAR", "A nabla_t B <= (m nabla_l M)/(m #_l M) A #_t B, l = min(t,1-t)")
def _arith_le_geo_scalar(inst):
    A, B, t = inst.A, inst.B, inst.t
    return [(arithmetic_mean(A, B, t), _bundle(inst).arith_geo_factor * geometric_mean(A, B, t))]


@_register(
    "ANDO_HIAI_SPEC",
    "(A %_t B)^r <= min(kappa1, kappa2) A^r %_t B^r",
    r_values=SUITE_R,
)
def _ando_hiai_spec(inst):
    A, B, t, r = inst.A, inst.B, inst.t, inst.r
    b = _bundle(inst)
    c = min(b.kappa1, b.kappa2)
    return [(power(spectral_geometric_mean(A, B, t), r), c * spectral_geometric_mean(power(A, r), power(B, r), t))]


# -- scalar checks ------------------------------------------------------------


def _oriented(lesser: float, greater: float, flip: bool) -> tuple[float, float]:
    return (greater, lesser) if flip else (lesser, greater)


@_register(
    "RATIO_BOUND",
    "(x+1)/(x-1) >= (1-t)^2 (x+x^t)/(x-x^t) + t^2 (x^t+1)/(x^t-1) for x > 1, t in [0,1]; "
    "reversed when exactly one of x < 1, t outside [0,1] holds",
    kind="scalar",
)
def _ratio_bound(inst):
    x, t = inst.extra["x"], inst.t
    gap = kc.lemma33_gap(x, t)
    flip = (x < 1.0) != (not 0.0 <= t <= 1.0)
    return [(0.0, -gap) if flip else (0.0, gap)]


@_register("L_VS_K", "L(x,t) <= K(x,t) for t in [0,1]; reversed otherwise", kind="scalar")
def _l_vs_k(inst):
    x, t = inst.extra["x"], inst.t
    return [_oriented(kc.lower_bound_L(x, t), kc.kantorovich_x(x, t), not 0.0 <= t <= 1.0)]


@_register("K_SQUARE", "K(x^2,t) <= K(x,t)^2 for t in [0,1]; reversed otherwise", kind="scalar")
def _k_square(inst):
    x, t = inst.extra["x"], inst.t
    return [_oriented(kc.kantorovich_x(x * x, t), kc.kantorovich_x(x, t) ** 2, not 0.0 <= t <= 1.0)]


@_register(
    "K_MONOTONE",
    "for 0<t<1, K(.,t) increases on (0,1), decreases on (1,inf), max 1 at x=1; opposite for t<0 or t>1",
    kind="scalar",
)
def _k_monotone(inst):
    x0, x1, t = inst.extra["x"], inst.extra["x_next"], inst.t
    k0, k1 = kc.kantorovich_x(x0, t), kc.kantorovich_x(x1, t)
    outer = not 0.0 < t < 1.0
    # x0 < x1 on the same side of 1
    increasing = (x1 <= 1.0) != outer
    return [_oriented(k0, k1, not increasing), _oriented(k0, 1.0, outer), _oriented(k1, 1.0, outer)]


@_register(
    "K_RATIO_ORDER",
    "M1/m1 <= M2/m2 implies K(m1,M1,t) >= K(m2,M2,t) for 0<t<1; reversed for t<0 or t>1",
    kind="scalar",
)
def _k_ratio_order(inst):
    e, t = inst.extra, inst.t
    k1 = kc.kantorovich_mM(e["m1"], e["M1"], t)
    k2 = kc.kantorovich_mM(e["m2"], e["M2"], t)
    return [_oriented(k2, k1, not 0.0 < t < 1.0)]


@_register("ETA_LE_GAMMA", "eta(m,M,t) <= Gamma(m,M,t) for t in [0,1]", kind="scalar")
def _eta_le_gamma(inst):
    b = kc.bundle(inst.m, inst.M, inst.t)
    return [(b.eta, b.Gamma)]


@_register("HOLDER_STEP", "(M+m)^(t+1) <= 2^t (M^(t+1) + m^(t+1)) for t in [0,1]", kind="scalar")
def _holder_step(inst):
    m, M, t = inst.m, inst.M, inst.t
    return [((M + m) ** (t + 1.0), 2.0**t * (M ** (t + 1.0) + m ** (t + 1.0)))]


FINAL_REMARK_VALUE = -0.0171811
FINAL_REMARK_TOL = 1e-6


@_register(
    "FINAL_REMARK",
    "2 x^(1/4)/(sqrt(x)+1) - L(x,t) ~ -0.0171811 < 0 at x=10, t=0.1 (L is not bounded by min_t K)",
    kind="scalar",
)
def _final_remark(inst):
    x, t = inst.extra["x"], inst.t
    value = 2.0 * x**0.25 / (math.sqrt(x) + 1.0) - kc.lower_bound_L(x, t)
    inst.extra["value"] = value
    return [(value, 0.0), (abs(value - FINAL_REMARK_VALUE), FINAL_REMARK_TOL)]


KAPPA_POINTS = ((1.0, 10.0, 0.1, 0.5, +1), (1.0, 10.0, 0.9, 0.5, -1))


@_register(
    "KAPPA_INCOMPARABLE",
    "kappa1 > kappa2 at M/m=10, t=0.1 and kappa1 < kappa2 at M/m=10, t=0.9 (no ordering)",
    kind="scalar",
)
def _kappa_incomparable(inst):
    b = kc.bundle(inst.m, inst.M, inst.t, inst.r)
    inst.extra["kappa1"], inst.extra["kappa2"] = b.kappa1, b.kappa2
    inst.extra["delta"] = kc.delta(inst.M / inst.m, inst.t)
    return [_oriented(b.kappa2, b.kappa1, inst.extra["expected_sign"] < 0)]


OPERATOR_CHECKS: tuple[str, ...] = tuple(k for k, c in REGISTRY.items() if c.kind == "operator")
SCALAR_CHECKS: tuple[str, ...] = tuple(k for k, c in REGISTRY.items() if c.kind == "scalar")


# -- instance construction ------------------------------------------------------


def _interval(rng: SplitMix64, wide: bool) -> tuple[float, float]:
    m = rng.log_uniform(0.25, 2.0)
    ratio = rng.log_uniform(1.01, 1000.0) if wide else rng.log_uniform(1.5, 40.0)
    return m, m * ratio


def _pd(rng: SplitMix64, n: int, m: float, M: float) -> np.ndarray:
    return random_pd_from(rng, n, m, M, pinned=n >= 2)


def sample_instance(
    check_id: str, seed: int, dim: int, t: float, r: float | None = None, wide: bool = False
) -> Instance:
    """Build a hypothesis-conforming instance for an operator check from ``seed``.

    ``wide`` draws spectral intervals with ratios up to 1000 instead of 40.
    """
    check = REGISTRY[check_id]
    rng = SplitMix64(seed)
    m, M = _interval(rng, wide)
    inst = Instance(check_id, seed, dim, float(t), r, m, M)
    if check.r_values is not None and r is None:
        if check.r_values is SUITE_R:
            raise ValueError(f"{check_id} needs an explicit r")
        inst.r = rng.choice(check.r_values)
    if check.recipe == "shared":
        inst.A = _pd(rng, dim, m, M)
        inst.B = _pd(rng, dim, m, M)
    elif check.recipe == "independent":
        m2, M2 = _interval(rng, wide)
        inst.A = _pd(rng, dim, m, M)
        inst.B = _pd(rng, dim, m2, M2)
        inst.extra.update(m1=m, M1=M, m2=m2, M2=M2)
    elif check.recipe == "dominating":
        inst.A = _pd(rng, dim, m, M)
        spread = rng.uniform(0.0, M)
        P = random_pd_from(rng, dim, 0.0, spread, pinned=False)
        inst.B = sym(inst.A + P)
    elif check.recipe == "separated":
        m_in = m * rng.uniform(1.0, 3.0)
        M_in = m_in * rng.uniform(1.2, 3.0)
        inst.M = M_in * rng.uniform(1.0, 3.0)
        low = _pd(rng, dim, m, m_in)
        high = _pd(rng, dim, M_in, inst.M)
        swap = rng.random() < 0.5
        inst.A, inst.B = (high, low) if swap else (low, high)
        inst.extra.update(m_inner=m_in, M_inner=M_in, swapped=swap)
    else:  # pragma: no cover
        raise ValueError(f"unknown recipe {check.recipe!r}")
    inst.x = random_unit_vector(rng, dim)
    inst.phi = random_map(rng, dim)
    return inst


def _validate(inst: Instance) -> None:
    check = REGISTRY[inst.check]
    if check.kind != "operator":
        return
    tol = 1e-9 * (1.0 + inst.M)
    if check.recipe in ("shared", "dominating"):
        if not spectrum_within(inst.A, SpectrumBounds(inst.m, inst.M), tol):
            raise HypothesisViolation(f"{inst.check}: A outside [m, M]")
    if check.recipe == "shared" and not spectrum_within(inst.B, SpectrumBounds(inst.m, inst.M), tol):
        raise HypothesisViolation(f"{inst.check}: B outside [m, M]")
    if check.recipe == "dominating" and loewner_margin(inst.A, inst.B) < -tol:
        raise HypothesisViolation(f"{inst.check}: A <= B fails")
    if check.recipe == "independent":
        e = inst.extra
        if not (spectrum_within(inst.A, SpectrumBounds(e["m1"], e["M1"]), tol)
                and spectrum_within(inst.B, SpectrumBounds(e["m2"], e["M2"]), tol)):
            raise HypothesisViolation(f"{inst.check}: spectra outside their intervals")
    if check.recipe == "separated":
        e = inst.extra
        low, high = (inst.B, inst.A) if e["swapped"] else (inst.A, inst.B)
        if not (spectrum_within(low, SpectrumBounds(inst.m, e["m_inner"]), tol)
                and spectrum_within(high, SpectrumBounds(e["M_inner"], inst.M), tol)):
            raise HypothesisViolation(f"{inst.check}: spectra are not separated")


def scalar_points(check_id: str, seed: int, trials: int) -> list[Instance]:
    """Grid (and, where the statement calls for it, random) points for a scalar check."""
    points: list[Instance] = []

    def add(t, m=1.0, M=1.0, r=None, **extra):
        points.append(Instance(check_id, seed, 0, float(t), r, m, M, extra=extra))

    if check_id in ("RATIO_BOUND", "L_VS_K", "K_SQUARE"):
        for x in X_GRID:
            for t in T_GRID_INNER + T_GRID_OUTER:
                add(t, x=x)
    elif check_id == "K_MONOTONE":
        lower = [x for x in X_GRID if x < 1.0]
        upper = [x for x in X_GRID if x > 1.0]
        ts = [t for t in T_GRID_INNER + T_GRID_OUTER if t not in (0.0, 1.0)]
        for side in (lower, upper):
            for x0, x1 in zip(side, side[1:]):
                for t in ts:
                    add(t, x=x0, x_next=x1)
    elif check_id == "K_RATIO_ORDER":
        rng = SplitMix64(seed)
        for _ in range(trials):
            ratios = sorted(rng.log_uniform(1.0, 50.0) for _ in range(2))
            m1, m2 = rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0)
            t = rng.choice((rng.uniform(0.0, 1.0), rng.uniform(1.0, 3.0), rng.uniform(-2.0, 0.0)))
            add(t, m1=m1, M1=m1 * ratios[0], m2=m2, M2=m2 * ratios[1])
    elif check_id in ("ETA_LE_GAMMA", "HOLDER_STEP"):
        for x in X_GRID:
            for t in T_GRID_INNER:
                add(t, m=min(1.0, x), M=max(1.0, x))
        rng = SplitMix64(seed)
        for _ in range(trials):
            m = rng.log_uniform(0.05, 20.0)
            add(rng.uniform(0.0, 1.0), m=m, M=m * rng.log_uniform(1.0, 400.0))
    elif check_id == "FINAL_REMARK":
        add(0.1, x=10.0)
    elif check_id == "KAPPA_INCOMPARABLE":
        for m, M, t, r, sign in KAPPA_POINTS:
            add(t, m=m, M=M, r=r, expected_sign=sign)
    else:
        raise KeyError(check_id)
    return points


# -- evaluation ---------------------------------------------------------------------


def _as_matrix(v) -> np.ndarray:
    return np.atleast_2d(np.asarray(v, dtype=np.float64))


def _measure(sides: Sides) -> tuple[float, float]:
    margin = math.inf
    scale = 1.0
    for lhs, rhs in sides:
        if np.ndim(lhs) == 0 and np.ndim(rhs) == 0:
            margin = min(margin, float(rhs) - float(lhs))
            scale = max(scale, 1.0 + max(abs(float(lhs)), abs(float(rhs))))
        else:
            L, R = _as_matrix(lhs), _as_matrix(rhs)
            margin = min(margin, loewner_margin(L, R))
            scale = max(scale, 1.0 + max(np.max(np.abs(L)), np.max(np.abs(R))))
    return margin, scale


def run_check(check_id: str, instance: Instance, tol: float = 1e-8) -> CheckResult:
    """Evaluate one check on one instance.

    The check passes when ``margin >= -tol * scale`` with
    ``scale = 1 + max(|LHS|_max, |RHS|_max)``. A failing instance is
    re-evaluated once with tighter Jacobi thresholds before it is reported,
    so rounding noise is not mistaken for a violation.
    """
    check = REGISTRY[check_id]
    if instance.check != check_id:
        raise HypothesisViolation(f"instance was built for {instance.check}, not {check_id}")
    _validate(instance)
    margin, scale = _measure(check.sides(instance))
    passed = margin >= -tol * scale
    reevaluated = False
    if not passed:
        reevaluated = True
        if instance.A is not None:
            instance.A = sym(instance.A)
        if instance.B is not None:
            instance.B = sym(instance.B)
        with jacobi_precision(2.0**-60, 2.0**-70):
            margin, scale = _measure(check.sides(instance))
        passed = margin >= -tol * scale
    return CheckResult(check_id, float(margin), bool(passed), float(scale), instance.digest(), reevaluated)


def iter_ids(ids: Sequence[str] | None) -> list[str]:
    if ids is None:
        return list(REGISTRY)
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown check ids: {unknown}")
    return list(ids)
