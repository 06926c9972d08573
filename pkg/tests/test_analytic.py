from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspec.analytic import (
    AliasingError,
    CirclePlan,
    CoeffVector,
    binomial_coeffs,
    circle_values,
    coeffs_from_samples,
    derivative,
    evaluate,
    h2_norm,
    hp_mean,
    hp_membership_classifier,
)

coeff_lists = st.lists(
    st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False), min_size=1, max_size=24
)


class TestCoeffVector:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CoeffVector([1.0, np.nan])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            CoeffVector([])

    def test_order_and_immutability(self):
        f = CoeffVector([1, 2, 3])
        assert f.truncation_order == 2
        with pytest.raises(ValueError):
            f.coeffs[0] = 5


class TestCirclePlan:
    def test_radius_inside_disc(self):
        with pytest.raises(ValueError):
            CirclePlan(1.0, 8)

    def test_sample_count_multiple_of_four(self):
        with pytest.raises(ValueError):
            CirclePlan(0.5, 10)

    def test_for_order(self):
        assert CirclePlan.for_order(7).sample_count == 32


class TestEvaluate:
    def test_constant(self):
        assert evaluate(CoeffVector([1, 0, 0]), 0.5) == 1

    def test_identity(self):
        assert evaluate(CoeffVector([0, 1]), 0.3 + 0.4j) == pytest.approx(0.3 + 0.4j, abs=1e-15)

    def test_geometric(self):
        assert evaluate(CoeffVector([1, 1, 1, 1]), 0.5) == pytest.approx(1.875, abs=1e-15)

    def test_rejects_outside_disc(self):
        with pytest.raises(ValueError):
            evaluate(CoeffVector([1, 1]), 1.5)


class TestDerivative:
    def test_examples(self):
        np.testing.assert_array_equal(derivative(CoeffVector([1, 0, 0])).coeffs, [0, 0])
        np.testing.assert_array_equal(derivative(CoeffVector([0, 0, 1])).coeffs, [0, 2])
        np.testing.assert_array_equal(derivative(CoeffVector([1, 1, 1, 1])).coeffs, [1, 2, 3])

    def test_order_zero(self):
        d = derivative(CoeffVector([5.0]))
        assert d.truncation_order == 0 and d.coeffs[0] == 0


class TestSampling:
    def test_constant_samples(self):
        plan = CirclePlan(0.7, 16)
        f, _ = coeffs_from_samples(np.ones(16), plan, 3)
        np.testing.assert_allclose(f.coeffs, [1, 0, 0, 0], atol=1e-15)

    def test_identity_samples(self):
        plan = CirclePlan(0.5, 8)
        f, _ = coeffs_from_samples(plan.points(), plan, 2)
        np.testing.assert_allclose(f.coeffs, [0, 1, 0], atol=1e-14)

    def test_geometric_series(self):
        plan = CirclePlan(0.5, 64)
        z = plan.points()
        f, alias = coeffs_from_samples(1.0 / (1.0 - z), plan, 4)
        np.testing.assert_allclose(f.coeffs, np.ones(5), atol=1e-15)
        # the first aliased coefficient is c_64 r^64 r^-4 = 0.5^60
        assert alias <= 10 * 0.5**60

    def test_aliasing_rejected(self):
        plan = CirclePlan(0.5, 8)
        with pytest.raises(AliasingError):
            coeffs_from_samples(np.ones(8), plan, 4)

    @given(coeff_lists)
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, c):
        N = len(c) - 1
        plan = CirclePlan.for_order(N, radius=0.8)
        f, _ = coeffs_from_samples(circle_values(c, plan), plan, N)
        scale = max(1.0, np.max(np.abs(c)))
        np.testing.assert_allclose(f.coeffs, c, atol=1e-12 * scale * 0.8**-N)


class TestNorms:
    def test_h2_examples(self):
        assert h2_norm(CoeffVector([1, 0, 0])) == 1
        assert h2_norm(CoeffVector([3, 4])) == 5
        assert h2_norm(CoeffVector([1, 1, 1, 1])) == 2

    def test_hp_mean_examples(self):
        plan = CirclePlan(0.5, 16)
        for p in (1, 2, 3.5):
            assert hp_mean([1.0], p, plan) == pytest.approx(1.0, abs=1e-15)
        assert hp_mean([0.0, 1.0], 2, plan) == pytest.approx(0.5, abs=1e-15)

    def test_hp_mean_geometric_oracle(self):
        c = np.ones(513)
        plan = CirclePlan(0.9, 4 * 513)
        expected = np.sqrt(np.sum(0.81 ** np.arange(513)))
        assert hp_mean(c, 2, plan) == pytest.approx(expected, abs=1e-6)

    @given(coeff_lists, st.floats(0.05, 0.95))
    @settings(max_examples=50, deadline=None)
    def test_hp_mean_p2_matches_coefficients(self, c, r):
        c = np.asarray(c)
        plan = CirclePlan.for_order(len(c) - 1, radius=r)
        expected = np.sqrt(np.sum(np.abs(c) ** 2 * r ** (2 * np.arange(c.size))))
        assert abs(hp_mean(c, 2, plan) - expected) <= 1e-10 * max(1.0, expected)

    @given(coeff_lists, st.floats(1.0, 4.0))
    @settings(max_examples=30, deadline=None)
    def test_hp_mean_nondecreasing(self, c, p):
        N = len(c) - 1
        means = [hp_mean(c, p, CirclePlan(r, 4 * (N + 1) * 4)) for r in (0.2, 0.4, 0.6, 0.8)]
        scale = max(1.0, max(means))
        assert np.all(np.diff(means) >= -1e-10 * scale)


class TestBinomial:
    def test_examples(self):
        np.testing.assert_allclose(binomial_coeffs(1).sequence(6), np.ones(6))
        np.testing.assert_allclose(binomial_coeffs(0).sequence(4), [1, 0, 0, 0])
        np.testing.assert_allclose(binomial_coeffs(2).sequence(6), np.arange(1, 7))

    def test_nonpositive_integer_gives_polynomial(self):
        np.testing.assert_allclose(binomial_coeffs(-2).sequence(5), [1, -2, 1, 0, 0])

    def test_exact_rational_recurrence(self):
        lam = Fraction(3, 7)
        c = binomial_coeffs(lam)
        for n in (0, 1, 17, 250, 999):
            assert (n + 1) * c(n + 1) - n * c(n) == lam * c(n)

    def test_float_recurrence(self):
        lam = 0.3 + 0.2j
        c = binomial_coeffs(lam).sequence(1002)
        n = np.arange(1001)
        np.testing.assert_allclose((n + 1) * c[1:] - n * c[:-1], lam * c[:-1], rtol=1e-12, atol=1e-300)

    def test_matches_function_values(self):
        lam = 0.7
        c = binomial_coeffs(lam).sequence(400)
        z = 0.3 - 0.2j
        assert evaluate(CoeffVector(c), z) == pytest.approx((1 - z) ** (-lam), abs=1e-13)


class TestMembership:
    def test_constant_is_member(self):
        res = hp_membership_classifier(lambda n: (np.asarray(n) == 0).astype(float), 2)
        assert res.verdict == "member"
        assert abs(res.slope) < 1e-6

    def test_geometric_is_nonmember(self):
        res = hp_membership_classifier(lambda n: np.ones(np.shape(n)), 2)
        assert res.verdict == "nonmember"
        assert res.slope == pytest.approx(0.5, abs=0.02)

    @pytest.mark.parametrize("lam,verdict", [(0.25, "member"), (0.45, "member"), (0.55, "nonmember"), (0.75, "nonmember")])
    def test_strip_boundary(self, lam, verdict):
        assert hp_membership_classifier(binomial_coeffs(lam), 2).verdict == verdict

    def test_boundary_case_is_indeterminate(self):
        # Re lambda = 1/p is the logarithmic boundary, left open by design
        assert hp_membership_classifier(binomial_coeffs(0.5), 2).verdict == "indeterminate"

    def test_radii_validated(self):
        with pytest.raises(ValueError):
            hp_membership_classifier(binomial_coeffs(0.25), 2, radii_schedule=[0.5, 0.4])
