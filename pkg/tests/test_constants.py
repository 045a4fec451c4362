import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specmean import constants as kc
from specmean.checks import T_GRID_INNER, T_GRID_LOWER, T_GRID_UPPER, X_GRID

import oracle

ALL_T = T_GRID_INNER + T_GRID_UPPER + T_GRID_LOWER


def close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


class TestKantorovich:
    def test_half_closed_form(self):
        for x in X_GRID:
            assert close(kc.kantorovich_x(x, 0.5), 2 * x**0.25 / (math.sqrt(x) + 1))

    @pytest.mark.parametrize("t", [2.0, -1.0])
    def test_two_and_minus_one_closed_form(self, t):
        for x in X_GRID:
            assert close(kc.kantorovich_x(x, t), (x + 1) ** 2 / (4 * x))

    def test_k_4_2(self):
        assert kc.kantorovich_x(4.0, 2.0) == pytest.approx(1.5625, rel=1e-15)

    @pytest.mark.parametrize("t", [-3.0, -0.4, 0.0, 0.3, 1.0, 2.7])
    def test_x_one_limit(self, t):
        assert kc.kantorovich_x(1.0, t) == 1.0

    def test_t_endpoint_limits(self):
        for x in X_GRID:
            assert kc.kantorovich_x(x, 0.0) == 1.0 and kc.kantorovich_x(x, 1.0) == 1.0

    def test_continuity_near_singularities(self):
        # the formula is evaluated right up to the singular points
        for eps in (1e-6, 1e-9, 1e-12):
            assert abs(kc.kantorovich_x(1.0 + eps, 0.3) - 1.0) < 1e-9
            assert abs(kc.kantorovich_x(7.0, eps) - 1.0) < 10 * eps
            assert abs(kc.kantorovich_x(7.0, 1.0 - eps) - 1.0) < 10 * eps

    def test_against_multiprecision_definition(self):
        worst = 0.0
        for x in X_GRID:
            for t in ALL_T:
                if t in (0.0, 1.0):
                    continue
                ref = float(oracle.kantorovich(x, t))
                worst = max(worst, abs(kc.kantorovich_x(x, t) - ref) / ref)
        assert worst <= 1e-12

    def test_near_singular_against_multiprecision(self):
        for x, t in [(1.0 + 1e-8, 0.3), (3.0, 1e-8), (3.0, 1 - 1e-8), (1 - 1e-9, 2.5)]:
            mp.mp.dps = 60
            ref = float(oracle.kantorovich(x, t))
            assert close(kc.kantorovich_x(x, t), ref, 1e-12)

    def test_symmetries(self):
        for x in X_GRID:
            for t in ALL_T:
                k = kc.kantorovich_x(x, t)
                assert close(kc.kantorovich_x(1 / x, t), k)
                assert close(kc.kantorovich_x(x, 1 - t), k)

    def test_square_bounded_by_one_inside(self):
        for x in X_GRID:
            for t in T_GRID_INNER:
                assert kc.kantorovich_x(x, t) ** 2 <= 1 + 1e-15

    def test_three_argument_form(self):
        assert kc.kantorovich_mM(2.0, 2.0, 0.3) == 1.0
        assert close(kc.kantorovich_mM(1.0, 4.0, 0.5), 2 * 4**0.25 / 3)
        assert close(kc.kantorovich_mM(1.0, 4.0, 0.5), kc.kantorovich_x(4.0, 0.5))
        for m, M in [(0.5, 3.0), (2.0, 11.0), (0.1, 0.7)]:
            assert close(kc.kantorovich_mM(m, M, 2.0), (M + m) ** 2 / (4 * M * m))
            assert close(kc.kantorovich_mM(m, M, -1.0), kc.kantorovich_classic(m, M))
            for t in (0.2, 0.5, 1.7, -0.6):
                assert close(kc.kantorovich_mM(m, M, t), float(oracle.kantorovich_mM(m, M, t)))
                # K(m/M, M/m, t) = K(x^2, t) and K(sqrt(m/M), sqrt(M/m), t) = K(x, t)
                assert close(kc.kantorovich_mM(m / M, M / m, t), kc.kantorovich_x((M / m) ** 2, t))
                s = math.sqrt(m / M)
                assert close(kc.kantorovich_mM(s, 1 / s, t), kc.kantorovich_x(M / m, t))

    def test_rejects_non_positive(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                kc.kantorovich_x(bad, 0.5)


class TestLowerBound:
    def test_half_from_definition(self):
        # substituting t = 1/2 into L gives x^{1/4} (sqrt(x)+1) / (x+1)
        for x in X_GRID:
            assert close(kc.lower_bound_L(x, 0.5), x**0.25 * (math.sqrt(x) + 1) / (x + 1))

    @pytest.mark.parametrize("t", [2.0, -1.0])
    def test_two_and_minus_one_closed_form(self, t):
        for x in X_GRID:
            assert close(kc.lower_bound_L(x, t), (x * x + 1) ** 2 / (x * (x + 1) ** 2))

    def test_against_multiprecision_definition(self):
        for x in X_GRID[::3]:
            for t in ALL_T[::4]:
                assert close(kc.lower_bound_L(x, t), float(oracle.lower_L(x, t)))

    def test_symmetries_and_unit(self):
        for x in X_GRID:
            for t in ALL_T:
                v = kc.lower_bound_L(x, t)
                assert close(kc.lower_bound_L(1 / x, t), v)
                assert close(kc.lower_bound_L(x, 1 - t), v)
        for t in ALL_T:
            assert kc.lower_bound_L(1.0, t) == pytest.approx(1.0, rel=1e-15)

    def test_ordering_against_k(self):
        for x in X_GRID:
            for t in T_GRID_INNER:
                assert kc.lower_bound_L(x, t) <= kc.kantorovich_x(x, t) * (1 + 1e-12)
            for t in T_GRID_UPPER + T_GRID_LOWER:
                assert kc.lower_bound_L(x, t) >= kc.kantorovich_x(x, t) * (1 - 1e-12)


class TestDerivative:
    @staticmethod
    def fd(x, t, h):
        return (kc.kantorovich_x(x + h, t) - kc.kantorovich_x(x - h, t)) / (2 * h)

    def test_example_point(self):
        assert kc.kantorovich_dx(2.0, 0.3) == pytest.approx(self.fd(2.0, 0.3, 1e-5), rel=1e-6)

    def test_matches_finite_differences(self):
        xs = [x / 10 for x in range(2, 51) if x != 10]
        ts = [0.1 * k for k in range(1, 10)] + [1.5, 2.0, -1.0]
        for x in xs:
            for t in ts:
                assert kc.kantorovich_dx(x, t) == pytest.approx(self.fd(x, t, 1e-5 * x), rel=1e-6)

    def test_against_multiprecision_derivative(self):
        mp.mp.dps = 40
        for x, t in [(0.3, 0.4), (2.0, 0.3), (5.0, 1.5), (0.7, -1.0)]:
            ref = float(mp.diff(lambda y: oracle.kantorovich(y, t), x))
            assert close(kc.kantorovich_dx(x, t), ref, 1e-10)

    def test_sign_pattern(self):
        for x in X_GRID:
            for t in ALL_T:
                if t in (0.0, 1.0):
                    continue
                d = kc.kantorovich_dx(x, t)
                inner = 0 < t < 1
                assert (d > 0) == ((x < 1) == inner), (x, t, d)

    @pytest.mark.parametrize("x,t", [(1.0, 0.5), (2.0, 0.0), (2.0, 1.0)])
    def test_singular_points_rejected(self, x, t):
        with pytest.raises(ValueError):
            kc.kantorovich_dx(x, t)


class TestDelta:
    def test_printed_values(self):
        assert kc.delta(10.0, 0.1) == pytest.approx(0.10068, abs=1e-4)
        assert kc.delta(10.0, 0.9) == pytest.approx(-10.011, abs=1e-2)

    def test_frozen_full_precision(self):
        # cross-checked against the 50-digit evaluation below
        assert kc.delta(10.0, 0.1) == pytest.approx(0.10068024209500503, rel=1e-13)
        assert kc.delta(10.0, 0.9) == pytest.approx(-10.010959355244387, rel=1e-13)

    def test_against_multiprecision(self):
        for x, t in [(10.0, 0.1), (10.0, 0.9), (3.0, 0.5), (50.0, 0.3)]:
            X, T = mp.mpf(x), mp.mpf(t)
            ref = ((X + 1) ** 2 / (4 * X)) ** (T + 1) - (X ** (T + 1) + 1) ** 2 / (4 * X ** (T + 1)) * oracle.kantorovich(x, t) ** 2
            assert close(kc.delta(x, t), float(ref), 1e-11)

    def test_zero_at_t_zero(self):
        for x in (1.5, 10.0, 100.0):
            assert abs(kc.delta(x, 0.0)) <= 1e-14 * (x + 1) ** 2 / x

    def test_domain(self):
        with pytest.raises(ValueError):
            kc.delta(1.0, 0.5)
        # the unchecked form is still defined below 1
        assert math.isfinite(kc.delta_expr(0.5, 0.5))


def test_final_remark_value():
    value = 2 * 10**0.25 / (math.sqrt(10) + 1) - kc.lower_bound_L(10.0, 0.1)
    assert value == pytest.approx(-0.0171811, abs=1e-6)
    assert value == pytest.approx(-0.017181065930967798, rel=1e-13)


class TestScalarInequalities:
    def test_lemma_gap_signs(self):
        for x in X_GRID:
            for t in ALL_T:
                gap = kc.lemma33_gap(x, t)
                flip = (x < 1) != (not 0 <= t <= 1)
                assert (-gap if flip else gap) >= -1e-12

    def test_lemma_gap_against_direct_formula(self):
        for x, t in [(3.0, 0.3), (0.2, 0.6), (12.0, 1.8), (0.5, -0.7)]:
            X, T = mp.mpf(x), mp.mpf(t)
            xt = X**T
            ref = (X + 1) / (X - 1) - (1 - T) ** 2 * (X + xt) / (X - xt) - T**2 * (xt + 1) / (xt - 1)
            assert abs(kc.lemma33_gap(x, t) - float(ref)) <= 1e-12 * (1 + abs(float(ref)))

    def test_lemma_gap_limits(self):
        assert kc.lemma33_gap(4.0, 0.0) == pytest.approx(kc.lemma33_gap(4.0, 1e-9), abs=1e-7)
        assert kc.lemma33_gap(4.0, 1.0) == pytest.approx(kc.lemma33_gap(4.0, 1 - 1e-9), abs=1e-7)
        with pytest.raises(ValueError):
            kc.lemma33_gap(1.0, 0.5)

    def test_k_square(self):
        for x in X_GRID:
            for t in ALL_T:
                a, b = kc.kantorovich_x(x * x, t), kc.kantorovich_x(x, t) ** 2
                if 0 <= t <= 1:
                    assert a <= b * (1 + 1e-12)
                else:
                    assert a >= b * (1 - 1e-12)

    def test_holder(self):
        for m, M in [(1.0, 1.0), (0.1, 5.0), (2.0, 300.0)]:
            for t in T_GRID_INNER:
                assert kc.holder_gap(m, M, t) >= -1e-12 * (M + m) ** (t + 1)


class TestScalarMean:
    @pytest.mark.parametrize("kind", ["arith", "geo", "harm"])
    def test_unit(self, kind):
        assert kc.scalar_mean(1.0, 1.0, 0.3, kind) == pytest.approx(1.0, rel=1e-15)

    def test_examples(self):
        assert kc.scalar_mean(1.0, 4.0, 0.5, "geo") == pytest.approx(2.0, rel=1e-15)
        assert kc.scalar_mean(2.0, 8.0, 0.25, "arith") == 3.5
        assert kc.scalar_mean(2.0, 8.0, 0.5, "harm") == pytest.approx(3.2, rel=1e-15)

    def test_errors(self):
        with pytest.raises(ValueError):
            kc.scalar_mean(1.0, 2.0, 0.5, "quadratic")
        with pytest.raises(ValueError):
            kc.scalar_mean(-1.0, 2.0, 0.5, "arith")


class TestBundle:
    def test_degenerate_interval(self):
        b = kc.bundle(1.0, 1.0, 0.4, 0.5)
        for name in ("xi", "C1", "C2", "K2", "beta", "eta", "Gamma", "kappa1", "kappa2", "K_mMt", "K_ratio"):
            assert getattr(b, name) == pytest.approx(1.0, rel=1e-14), name

    def test_beta_cross_check(self):
        b = kc.bundle(1.0, 2.0, 0.5)
        assert close(b.beta, b.C1**b.t * b.K2 / b.C2**2)

    def test_eta_le_gamma_example(self):
        b = kc.bundle(1.0, 3.0, 0.4)
        assert b.eta <= b.Gamma

    def test_lambda_and_optional_kappa(self):
        b = kc.bundle(1.0, 5.0, 0.7)
        assert b.lam == pytest.approx(0.3) and b.kappa1 is None and b.kappa2 is None
        assert kc.bundle(1.0, 5.0, 0.7, 0.5).kappa1 is not None

    def test_kappa_sign_follows_delta(self):
        for ratio in (2.0, 5.0, 10.0, 40.0):
            for t in (0.1, 0.3, 0.5, 0.7, 0.9):
                for r in (0.25, 0.5, 1.0):
                    b = kc.bundle(1.0, ratio, t, r)
                    d = kc.delta(ratio, t)
                    if abs(d) > 1e-9:
                        assert (b.kappa1 > b.kappa2) == (d > 0), (ratio, t, r)

    def test_kappa_incomparable(self):
        up = kc.bundle(1.0, 10.0, 0.1, 0.5)
        down = kc.bundle(1.0, 10.0, 0.9, 0.5)
        assert up.kappa1 > up.kappa2 and down.kappa1 < down.kappa2

    @pytest.mark.parametrize("args", [(2.0, 1.0, 0.5), (0.0, 1.0, 0.5), (1.0, 2.0, 1.5), (1.0, 2.0, 0.5, 2.0)])
    def test_errors(self, args):
        with pytest.raises(ValueError):
            kc.bundle(*args)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 100.0), st.floats(1.0, 500.0), st.floats(0.0, 1.0))
def test_bundle_invariants(m, ratio, t):
    b = kc.bundle(m, m * ratio, t, 0.5)
    assert close(b.xi, b.C2)
    assert close(b.xi**2, 1 / b.K2)
    assert close(b.beta, b.C1**t * b.K2 / b.C2**2, 1e-11)
    assert b.eta <= b.Gamma * (1 + 1e-12)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(-3.0, 4.0))
def test_kantorovich_properties(x, t):
    k = kc.kantorovich_x(x, t)
    assert close(kc.kantorovich_x(1 / x, t), k, 1e-11)
    assert close(kc.kantorovich_x(x, 1 - t), k, 1e-11)
    if 0 <= t <= 1:
        assert k <= 1 + 1e-15 and kc.lower_bound_L(x, t) <= k * (1 + 1e-11)
    else:
        assert k >= 1 - 1e-15 and kc.lower_bound_L(x, t) >= k * (1 - 1e-11)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 20.0), st.floats(1.0, 50.0), st.floats(0.05, 20.0), st.floats(1.0, 50.0), st.floats(0.01, 0.99))
def test_ratio_ordering(m1, q1, m2, q2, t):
    q1, q2 = sorted((q1, q2))
    k1 = kc.kantorovich_mM(m1, m1 * q1, t)
    k2 = kc.kantorovich_mM(m2, m2 * q2, t)
    assert k1 >= k2 * (1 - 1e-12)
