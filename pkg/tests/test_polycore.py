import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyest.exceptions import ConvergenceError, DomainError
from polyest.polycore import (
    Polynomial,
    bernstein_eval,
    chebyshev_first_kind,
    compose_affine,
    discrete_chebyshev,
    falling_factorial,
    phi,
    remez,
    shifted_chebyshev_PL,
)

from oracles import binom_pmf, cheb_T, falling, poisson_pmf


class TestPolynomial:
    def test_horner_matches_power_sum(self):
        p = Polynomial([1.0, -2.0, 0.5, 3.0])
        x = np.linspace(-2, 2, 11)
        np.testing.assert_allclose(p(x), 1 - 2 * x + 0.5 * x**2 + 3 * x**3, rtol=1e-14)

    def test_degree(self):
        assert Polynomial([1.0, 2.0, 0.0]).degree == 1
        assert Polynomial([0.0, 0.0]).degree == 0

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            Polynomial([1.0, np.nan])

    def test_scalar_in_scalar_out(self):
        assert isinstance(Polynomial([1.0, 1.0])(2.0), float)

    def test_compose_affine(self):
        c = compose_affine([0.0, 0.0, 1.0], 2.0, -1.0)  # (2x - 1)^2
        np.testing.assert_allclose(c, [1.0, -4.0, 4.0])


class TestChebyshev:
    @pytest.mark.parametrize(
        "L, expected",
        [(0, [1]), (1, [0, 1]), (2, [-1, 0, 2]), (4, [1, 0, -8, 0, 8])],
    )
    def test_coefficients(self, L, expected):
        np.testing.assert_array_equal(chebyshev_first_kind(L).coeffs, expected)

    @pytest.mark.parametrize("L", range(0, 31))
    def test_value_at_one(self, L):
        assert abs(chebyshev_first_kind(L)(1.0) - 1.0) <= 1e-9

    @pytest.mark.parametrize("L", [3, 7, 12])
    def test_cosine_identity(self, L):
        theta = np.linspace(0, np.pi, 50)
        np.testing.assert_allclose(
            chebyshev_first_kind(L)(np.cos(theta)), np.cos(L * theta), atol=1e-10
        )

    def test_degree_cap(self):
        chebyshev_first_kind(64)
        with pytest.raises(DomainError):
            chebyshev_first_kind(65)


class TestShiftedChebyshev:
    def test_degree_one(self):
        np.testing.assert_allclose(shifted_chebyshev_PL(1, 1, 3).coeffs, [-1.0, 0.5])

    def test_degree_two(self):
        np.testing.assert_allclose(shifted_chebyshev_PL(2, 1, 3).coeffs, [-1.0, 8 / 7, -2 / 7])

    @pytest.mark.parametrize("L, l, r", [(1, 0.1, 2.0), (4, 1e-4, 9e-3), (6, 1e-6, 3.45e-5), (9, 0.2, 0.9)])
    def test_passes_through_minus_one(self, L, l, r):
        assert abs(shifted_chebyshev_PL(L, l, r).coeffs[0] + 1.0) <= 1e-9

    @pytest.mark.parametrize("L, l, r", [(2, 1.0, 3.0), (4, 0.01, 0.5), (6, 0.1, 4.0), (8, 1.0, 50.0)])
    def test_matches_trigonometric_definition(self, L, l, r):
        P = shifted_chebyshev_PL(L, l, r)
        denom = cheb_T(L, (-r - l) / (r - l))
        for x in np.linspace(0, r, 23):
            expected = -cheb_T(L, (2 * x - r - l) / (r - l)) / denom
            assert P(x) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("L, l, r", [(3, 1.0, 10.0), (4, 1e-4, 9.2e-3), (6, 0.2, 6.9), (8, 0.05, 2.0)])
    def test_sup_norm_on_interval(self, L, l, r):
        P = shifted_chebyshev_PL(L, l, r)
        grid = np.linspace(l, r, 10_000)
        bound = 1.0 / abs(cheb_T(L, (-r - l) / (r - l)))
        assert np.max(np.abs(P(grid))) == pytest.approx(bound, abs=1e-6)

    @pytest.mark.parametrize("l, r", [(0.0, 1.0), (-1.0, 1.0), (2.0, 2.0), (3.0, 1.0)])
    def test_domain_errors(self, l, r):
        with pytest.raises(DomainError):
            shifted_chebyshev_PL(3, l, r)


def _check_equioscillation(res, f, rel_tol=1e-9):
    x = res.alternation_points
    e = f(x) - res.evaluate(x)
    assert x.size == res.poly.coeffs.size + 1
    assert np.all(np.diff(x) > 0)
    assert np.all(np.abs(e) >= res.error * (1 - rel_tol))
    assert np.all(np.abs(e) <= res.error * (1 + 1e-12))
    assert np.all(np.sign(e[1:]) == -np.sign(e[:-1]))


class TestRemez:
    def test_cube_degree_two(self):
        res = remez(lambda x: x**3, -1, 1, 2)
        assert res.error == pytest.approx(0.25, abs=1e-8)
        np.testing.assert_allclose(res.poly.coeffs, [0.0, 0.75, 0.0], atol=1e-7)

    def test_identity_degree_zero(self):
        res = remez(lambda x: x, 0, 1, 0)
        assert res.error == pytest.approx(0.5, abs=1e-9)
        np.testing.assert_allclose(res.poly.coeffs, [0.5], atol=1e-9)

    def test_phi_degree_one(self):
        # equioscillation at 0, 1/e, 1 forces the constant 1/(2e)
        res = remez(phi, 0, 1, 1)
        assert res.error == pytest.approx(1 / (2 * math.e), abs=1e-9)
        np.testing.assert_allclose(res.poly([0.0, 1.0]), 1 / (2 * math.e), atol=1e-9)
        assert res.alternation_points[1] == pytest.approx(1 / math.e, abs=1e-6)

    @pytest.mark.parametrize("L", range(1, 9))
    def test_monomial_deviation(self, L):
        res = remez(lambda x: x ** (L + 1), -1, 1, L)
        assert abs(res.error - 2.0**-L) <= 1e-8

    @pytest.mark.parametrize(
        "f, a, b, L",
        [
            (phi, 0.0, 1.0, 4),
            (phi, 0.0, 1.0, 12),
            (phi, 0.0, 1.0, 18),
            (np.exp, -1.0, 2.0, 5),
            (np.abs, -1.0, 1.0, 6),
            (lambda x: np.sqrt(x), 0.0, 1.0, 7),
        ],
    )
    def test_equioscillation(self, f, a, b, L):
        _check_equioscillation(remez(f, a, b, L), f)

    @pytest.mark.parametrize("L", [2, 5, 8])
    def test_monomial_form_agrees_at_moderate_degree(self, L):
        res = remez(phi, 0, 1, L)
        x = np.linspace(0, 1, 201)
        np.testing.assert_allclose(res.poly(x), res.evaluate(x), atol=1e-11)

    def test_scalar_only_function(self):
        res = remez(lambda x: math.cos(3 * x), 0, 2, 3)
        _check_equioscillation(res, lambda x: np.cos(3 * x))

    def test_exact_polynomial_has_zero_error(self):
        res = remez(lambda x: 1 + 2 * x - x**2, -1, 1, 3)
        assert res.error <= 1e-13
        np.testing.assert_allclose(res.poly.coeffs[:3], [1, 2, -1], atol=1e-12)

    def test_convergence_error_carries_best(self):
        with pytest.raises(ConvergenceError) as info:
            remez(phi, 0, 1, 10, rel_tol=1e-15, max_iter=3)
        assert info.value.best is not None
        assert info.value.best.error > 0

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            remez(phi, 1, 0, 2)

    def test_indistinguishable_nodes(self):
        with pytest.raises(DomainError):
            remez(lambda x: x, 1.0, 1.0 + 4e-16, 5)


class TestBernstein:
    def test_reproduces_affine(self):
        assert bernstein_eval(lambda x: x, 7, 0.3) == pytest.approx(0.3, abs=1e-14)

    def test_square(self):
        assert bernstein_eval(lambda x: x**2, 2, 0.5) == pytest.approx(0.375, abs=1e-14)

    def test_phi_half(self):
        assert bernstein_eval(phi, 2, 0.5) == pytest.approx(0.5 * math.log(2) / 2, abs=1e-12)
        assert bernstein_eval(phi, 2, 0.5) == pytest.approx(0.173287, abs=1e-6)

    @pytest.mark.parametrize("n", [1, 5, 17, 40])
    @pytest.mark.parametrize("x", [0.0, 0.13, 0.5, 0.91, 1.0])
    def test_matches_exhaustive_sum(self, n, x):
        exact = math.fsum(binom_pmf(n, x, j) * (j / n) ** 1.5 for j in range(n + 1))
        assert bernstein_eval(lambda t: t**1.5, n, x) == pytest.approx(exact, rel=1e-11, abs=1e-14)

    def test_large_n(self):
        # concentration: B_n f(x) -> f(x)
        assert bernstein_eval(phi, 10**6, 0.2) == pytest.approx(phi(0.2), abs=1e-5)

    def test_sandwich(self):
        xs = np.linspace(0.01, 0.99, 99)
        for n in range(2, 11):
            for x in xs:
                bn, bn1 = bernstein_eval(phi, n, x), bernstein_eval(phi, n + 1, x)
                assert bn < bn1 < phi(x)

    def test_outside_unit_interval(self):
        with pytest.raises(DomainError):
            bernstein_eval(phi, 3, 1.2)


class TestDiscreteChebyshev:
    def test_small_cases(self):
        np.testing.assert_array_equal(discrete_chebyshev(0, 3).coeffs, [1.0])
        np.testing.assert_array_equal(discrete_chebyshev(1, 3).coeffs, [-2.0, 2.0])
        t1 = discrete_chebyshev(1, 3)
        assert sum(t1(j) ** 2 for j in range(3)) == pytest.approx(8.0)

    @pytest.mark.parametrize("m, n", [(2, 5), (3, 7), (5, 12)])
    def test_values_match_difference_formula(self, m, n):
        t = discrete_chebyshev(m, n)
        for x in range(n):
            diff = sum(
                (-1) ** j * math.comb(m, j) * falling(x + m - j, m) * falling(x + m - j - n, m)
                for j in range(m + 1)
            )
            assert t(float(x)) == pytest.approx(diff / math.factorial(m), rel=1e-12, abs=1e-9)

    def test_orthogonality(self):
        for n in range(2, 41):
            top = min(8, n - 1)
            grid = np.arange(n, dtype=float)
            T = [discrete_chebyshev(m, n)(grid) for m in range(top + 1)]
            for m in range(top + 1):
                norm = falling(n + m, 2 * m + 1) / (2 * m + 1)
                for l in range(top + 1):
                    s = float(np.dot(T[m], T[l]))
                    if m == l:
                        assert s == pytest.approx(norm, rel=1e-9)
                    else:
                        scale = math.sqrt(norm * falling(n + l, 2 * l + 1) / (2 * l + 1))
                        assert abs(s) <= 1e-9 * scale

    def test_domain(self):
        with pytest.raises(DomainError):
            discrete_chebyshev(3, 3)


class TestFallingFactorial:
    def test_examples(self):
        assert falling_factorial(5, 2) == 20
        assert falling_factorial(3, 5) == 0
        assert falling_factorial(2.7, 0) == 1

    @given(st.floats(-50, 50), st.integers(0, 8))
    def test_matches_product(self, x, m):
        assert falling_factorial(x, m) == pytest.approx(falling(x, m), rel=1e-12, abs=1e-12)

    def test_array_input(self):
        np.testing.assert_array_equal(falling_factorial(np.arange(5), 2), [0, 0, 2, 6, 12])

    def test_unbiased_binomial(self):
        for n in range(1, 13):
            for m in range(n + 1):
                for p in np.arange(1, 10) / 10:
                    e = math.fsum(
                        binom_pmf(n, p, j) * falling_factorial(j, m) / falling_factorial(n, m)
                        for j in range(n + 1)
                    )
                    assert abs(e - p**m) <= 1e-12

    def test_unbiased_poisson(self):
        for n in (1, 5, 20):
            for m in range(7):
                for p in np.arange(1, 10) / 10:
                    e = math.fsum(
                        poisson_pmf(n * p, j) * falling_factorial(j, m) / n**m for j in range(201)
                    )
                    assert abs(e - p**m) <= 1e-9


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.floats(0.01, 5.0), st.floats(0.05, 5.0))
def test_shifted_chebyshev_property(L, l, width):
    r = l + width
    P = shifted_chebyshev_PL(L, l, r)
    assert P(0.0) == pytest.approx(-1.0, abs=1e-9)
    grid = np.linspace(l, r, 257)
    bound = 1.0 / abs(cheb_T(L, (-r - l) / (r - l)))
    assert np.max(np.abs(P(grid))) <= bound * (1 + 1e-7) + 1e-9
