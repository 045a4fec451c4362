import math

import numpy as np
import pytest

from specmean.instances import (
    INTERIOR,
    PINNED,
    SEPARATED,
    GenConfig,
    orthonormalize,
    random_isometry,
    random_orthogonal,
    random_pd,
    random_pd_from,
    random_unit_vector,
)
from specmean.linalg import SpectrumBounds, eigvalsh, spectrum_within
from specmean.rng import SplitMix64, derive_seed, mix64


class TestSplitMix64:
    def test_reference_stream(self):
        # published reference output of SplitMix64 seeded with 1234567
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ]
        assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF

    def test_uniform_range_and_mean(self):
        rng = SplitMix64(1)
        xs = [rng.random() for _ in range(20000)]
        assert min(xs) >= 0.0 and max(xs) < 1.0
        assert abs(sum(xs) / len(xs) - 0.5) < 0.01

    def test_normal_moments(self):
        rng = SplitMix64(2)
        xs = np.array([rng.normal() for _ in range(20000)])
        assert abs(xs.mean()) < 0.03 and abs(xs.std() - 1.0) < 0.03

    def test_integers_and_choice(self):
        rng = SplitMix64(3)
        vals = {rng.integers(2, 5) for _ in range(200)}
        assert vals == {2, 3, 4}
        assert rng.choice(("a",)) == "a"
        with pytest.raises(ValueError):
            rng.integers(3, 3)

    def test_log_uniform_bounds(self):
        rng = SplitMix64(4)
        assert all(0.5 <= rng.log_uniform(0.5, 8.0) < 8.0 for _ in range(1000))

    def test_seed_validation(self):
        with pytest.raises(ValueError):
            SplitMix64(-1)
        with pytest.raises(ValueError):
            SplitMix64(2**64)

    def test_derive_seed(self):
        assert derive_seed(42, "A", 3) == derive_seed(42, "A", 3)
        seeds = {derive_seed(42, "A", i) for i in range(1000)}
        assert len(seeds) == 1000
        assert derive_seed(42, "A") != derive_seed(42, "B") != derive_seed(43, "A")
        assert derive_seed(7) == 7

    def test_split_does_not_depend_on_state(self):
        rng = SplitMix64(9)
        child = rng.split("x")
        rng.next_u64()
        assert rng.split("x").next_u64() == child.next_u64()

    def test_mix64_is_a_bijection_sample(self):
        outs = {mix64(i) for i in range(5000)}
        assert len(outs) == 5000


class TestOrthogonal:
    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_orthogonal(self, n):
        Q = random_orthogonal(SplitMix64(n), n)
        assert np.max(np.abs(Q.T @ Q - np.eye(n))) <= 1e-12

    @pytest.mark.parametrize("n,k", [(3, 1), (5, 2), (6, 6)])
    def test_isometry(self, n, k):
        V = random_isometry(11, n, k)
        assert V.shape == (n, k)
        assert np.max(np.abs(V.T @ V - np.eye(k))) <= 1e-12

    def test_isometry_rejects_k_above_n(self):
        with pytest.raises(ValueError):
            random_isometry(1, 2, 3)

    def test_sign_convention(self):
        Q = orthonormalize(np.array([[-2.0, 1.0], [0.0, -3.0]]))
        np.testing.assert_allclose(Q, [[1.0, 0.0], [0.0, 1.0]], atol=1e-15)

    def test_dependent_columns_rejected(self):
        with pytest.raises(ArithmeticError):
            orthonormalize(np.array([[1.0, 2.0], [1.0, 2.0]]))

    def test_unit_vector(self):
        x = random_unit_vector(SplitMix64(5), 3)
        assert x.shape == (3,) and abs(x @ x - 1) <= 1e-15


class TestRandomPD:
    def test_one_by_one_interior(self):
        A = random_pd(GenConfig(seed=1, dim=1, bounds=SpectrumBounds(2.0, 2.0), mode=INTERIOR))
        np.testing.assert_array_equal(A, [[2.0]])

    def test_pinned_endpoints(self):
        A = random_pd(GenConfig(seed=5, dim=4, bounds=SpectrumBounds(1.0, 3.0)))
        w = eigvalsh(A)
        assert abs(w[0] - 1.0) <= 1e-10 and abs(w[-1] - 3.0) <= 1e-10

    def test_pinned_ratio_over_1000_draws(self):
        for s in range(1000):
            n = 2 + s % 7
            m = 0.5 + s / 1000
            M = m * (1.5 + s % 13)
            w = eigvalsh(random_pd(GenConfig(seed=s, dim=n, bounds=SpectrumBounds(m, M))))
            assert abs(w[-1] / w[0] - M / m) <= 1e-10 * M / m
            assert spectrum_within(random_pd(GenConfig(seed=s, dim=n, bounds=SpectrumBounds(m, M))), SpectrumBounds(m, M))

    def test_deterministic(self):
        cfg = GenConfig(seed=77, dim=6, bounds=SpectrumBounds(0.3, 9.0))
        assert random_pd(cfg).tobytes() == random_pd(cfg).tobytes()
        other = GenConfig(seed=78, dim=6, bounds=SpectrumBounds(0.3, 9.0))
        assert random_pd(cfg).tobytes() != random_pd(other).tobytes()

    def test_interior_inside_bounds(self):
        b = SpectrumBounds(1.0, 2.0)
        for s in range(50):
            assert spectrum_within(random_pd(GenConfig(seed=s, dim=5, bounds=b, mode=INTERIOR)), b)

    def test_separated_pair(self):
        b = SpectrumBounds(1.0, 10.0)
        cfg = GenConfig(seed=3, dim=4, bounds=b, mode=SEPARATED, separated=(2.0, 5.0))
        A, B = random_pd(cfg)
        assert spectrum_within(A, SpectrumBounds(1.0, 2.0)) and spectrum_within(B, SpectrumBounds(5.0, 10.0))

    def test_config_validation(self):
        b = SpectrumBounds(1.0, 3.0)
        with pytest.raises(ValueError):
            GenConfig(seed=1, dim=0, bounds=b)
        with pytest.raises(ValueError):
            GenConfig(seed=1, dim=2, bounds=b, mode="sparse")
        with pytest.raises(ValueError):
            GenConfig(seed=1, dim=2, bounds=b, mode=SEPARATED)
        with pytest.raises(ValueError):
            GenConfig(seed=1, dim=2, bounds=b, mode=SEPARATED, separated=(2.5, 2.0))

    def test_pinned_dim_one_is_impossible(self):
        with pytest.raises(ValueError):
            random_pd(GenConfig(seed=1, dim=1, bounds=SpectrumBounds(1.0, 3.0)))
        with pytest.raises(ValueError):
            random_pd_from(SplitMix64(1), 1, 1.0, 3.0, pinned=True)
        np.testing.assert_allclose(random_pd_from(SplitMix64(1), 1, 2.0, 2.0), [[2.0]])

    def test_two_by_two_pinned_spectrum_is_exact(self):
        A = random_pd(GenConfig(seed=42, dim=2, bounds=SpectrumBounds(1.0, 4.0)))
        w = eigvalsh(A)
        assert math.isclose(w[0], 1.0, rel_tol=1e-14) and math.isclose(w[1], 4.0, rel_tol=1e-14)
        assert A[0, 1] == A[1, 0]
