import numpy as np
import pytest

from odeco.numkit import (
    RootFindingError,
    exact_integer_rank,
    poly_roots,
    random_orthonormal,
)


class TestRandomOrthonormal:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_orthonormal_across_seeds(self, n):
        for seed in range(10):
            q = random_orthonormal(n, seed)
            assert np.max(np.abs(q.T @ q - np.eye(n))) < 1e-12

    def test_deterministic(self):
        assert np.array_equal(random_orthonormal(3, 7), random_orthonormal(3, 7))

    def test_one_dimensional(self):
        q = random_orthonormal(1, 123)
        assert q.shape == (1, 1)
        assert abs(abs(q[0, 0]) - 1.0) < 1e-15

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            random_orthonormal(0, 1)


class TestExactIntegerRank:
    def test_identity(self):
        assert exact_integer_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3

    def test_proportional_rows(self):
        assert exact_integer_rank([[1, 2], [2, 4]]) == 1

    def test_zero_matrix(self):
        assert exact_integer_rank([[0, 0], [0, 0]]) == 0

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            exact_integer_rank([[1, 2], [3]])

    def test_big_integers_survive(self):
        big = 10**30
        assert exact_integer_rank([[big, 1], [1, big]]) == 2
        assert exact_integer_rank([[big, big], [big, big]]) == 1

    def test_agrees_with_floating_point_rank(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            r = int(rng.integers(1, 13))
            c = int(rng.integers(1, 13))
            m = rng.integers(-5, 6, size=(r, c))
            if rng.random() < 0.4:
                k = int(rng.integers(1, min(r, c) + 1))
                m = rng.integers(-3, 4, (r, k)) @ rng.integers(-3, 4, (k, c))
            sv = np.linalg.svd(m.astype(float), compute_uv=False)
            expected = int(np.sum(sv > 1e-8 * max(sv[0], 1.0)))
            assert exact_integer_rank(m.tolist()) == expected


class TestPolyRoots:
    def test_quadratic(self):
        roots = sorted(poly_roots([-1, 0, 1]), key=lambda z: z.real)
        assert abs(roots[0] + 1) < 1e-10
        assert abs(roots[1] - 1) < 1e-10

    def test_cube_roots_of_unity(self):
        roots = poly_roots([-1, 0, 0, 1])
        expected = [np.exp(2j * np.pi * k / 3) for k in range(3)]
        for e in expected:
            assert min(abs(r - e) for r in roots) < 1e-10

    def test_double_root_clusters(self):
        # x^3 - x^2: double root at 0 detectable only up to ~sqrt(tol)
        tol = 1e-10
        roots = poly_roots([0, 0, -1, 1], tol=tol)
        near_zero = [r for r in roots if abs(r) < 2 * tol**0.5]
        near_one = [r for r in roots if abs(r - 1) < 1e-8]
        assert len(near_zero) == 2 and len(near_one) == 1
        coeffs = np.array([0, 0, -1, 1], dtype=complex)
        for r in roots:
            assert abs(np.polyval(coeffs[::-1], r)) <= tol * 2 * max(1, abs(r)) ** 3

    def test_reconstruction_of_random_polynomials(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 25:
            deg = int(rng.integers(2, 11))
            true = rng.uniform(-2, 2, deg) + 1j * rng.uniform(-2, 2, deg)
            gaps = [abs(a - b) for i, a in enumerate(true) for b in true[i + 1 :]]
            if min(gaps) < 0.15:
                continue
            lead = complex(rng.uniform(0.5, 2.0))
            coeffs = lead * np.poly(true)[::-1]  # ascending
            found = poly_roots(coeffs)
            rebuilt = lead * np.poly(found)[::-1]
            assert np.max(np.abs(rebuilt - coeffs)) < 1e-6 * np.max(np.abs(coeffs))
            checked += 1

    def test_failure_is_explicit(self):
        with pytest.raises(RootFindingError):
            poly_roots([0, 0, -1, 1], tol=1e-300, max_iter=5)

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            poly_roots([3.0])
