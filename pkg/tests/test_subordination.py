import json
import warnings

import mpmath
import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from subspec.analytic import CoeffVector, evaluate
from subspec.matrices import cesaro_matrix, composition_matrix_affine, resolvent_solve
from subspec.semiflows import eigenfunction, get_flow
from subspec.spectral import disc_probe_points
from subspec.subordination import (
    AdmissibilityError,
    BorelMeasure,
    PlanTooSmallError,
    QuadraturePlan,
    SpectralCaveatWarning,
    averaging_apply,
    check_measure_regularity,
    dirac_measure,
    exp_poly_measure,
    exponential_measure,
    general_subordinated_apply,
    laplace_transform,
    measure_from_spec,
    plan_for,
    subordinate_matrix,
    tail_bound,
)

AFFINE = get_flow("affine")
Z = disc_probe_points(32, 0.9)


def one(s):
    return np.ones_like(np.asarray(s, dtype=complex))


def ident(s):
    return np.asarray(s, dtype=complex)


class TestMeasures:
    def test_negative_atom_rejected(self):
        with pytest.raises(ValueError):
            BorelMeasure(atoms=((-1.0, 1.0),))

    def test_declared_bound_spot_checked(self):
        with pytest.raises(ValueError):
            BorelMeasure(density=lambda t: np.exp(-0.5 * t), bound=(1.0, 1.0))

    def test_margin_positive(self):
        with pytest.raises(ValueError):
            exponential_measure(1.0, margin=0.0)

    def test_admissibility(self):
        ok, _ = exponential_measure(1.0).admissibility(0.5)
        assert ok
        ok, reason = exponential_measure(0.52).admissibility(0.5)
        assert not ok and "omega_0 + delta" in reason

    def test_json_round_trip(self):
        data = {"atoms": [[0.5, 2.0, 0.0]], "density": {"name": "exp-poly", "power": 1, "lambda": [2.0, 0.5]}, "margin_delta": 0.1}
        nu = measure_from_spec(json.dumps(data))
        assert json.loads(nu.to_json()) == data
        z = 0.7 + 0.1j
        expected = 2.0 * np.exp(-0.5 * z) + 1.0 / (z + 2.0 + 0.5j) ** 2
        assert laplace_transform(nu, z) == pytest.approx(expected, abs=1e-12)

    def test_measure_json_errors(self):
        with pytest.raises(ValueError):
            measure_from_spec({"density": {"name": "gauss"}})
        with pytest.raises(ValueError):
            measure_from_spec({"atoms": [[1.0]]})
        with pytest.raises(ValueError):
            measure_from_spec("[1, 2]")


class TestLaplace:
    def test_examples(self):
        assert laplace_transform(dirac_measure(0.0), 0.3 - 2j) == 1
        assert laplace_transform(exponential_measure(1.0), 1.0) == pytest.approx(0.5, abs=1e-14)
        z = 0.3 + 0.4j
        assert laplace_transform(exponential_measure(1.0), z) == pytest.approx(1 / (1.3 + 0.4j), abs=1e-14)

    def test_closed_form_grid(self):
        zs = np.linspace(-0.5, 2.0, 5)[None, :] + 1j * np.linspace(-1, 1, 5)[:, None]
        for lam in (1.0, 2.0, 1.5 + 0.7j):
            got = laplace_transform(exponential_measure(lam), zs)
            assert np.max(np.abs(got - 1.0 / (zs + lam))) <= 1e-10

    def test_divergence_rejected(self):
        with pytest.raises(ValueError):
            laplace_transform(exponential_measure(1.0), -1.0)

    def test_singular_density(self):
        nu = exp_poly_measure(-0.5, 1.0)
        for z in (0.0, 0.5 + 0.5j, 3.0):
            expected = gamma_fn(0.5) / (z + 1.0) ** 0.5
            assert laplace_transform(nu, z) == pytest.approx(expected, abs=1e-12)

    def test_against_mpmath_quadrature(self):
        nu = exp_poly_measure(2.5, 1.2 + 0.3j)
        z = 0.4 - 0.6j
        ref = mpmath.quad(lambda t: t**2.5 * mpmath.exp(-(1.2 + 0.3j + z) * t), [0, 1, 10, mpmath.inf])
        assert abs(laplace_transform(nu, z) - complex(ref)) <= 1e-11


class TestPlans:
    def test_tail_below_tolerance(self):
        nu = exponential_measure(1.0)
        plan = plan_for(nu, (1.0, 0.5), 1e-12)
        assert plan.tail_bound <= 1e-13
        assert plan.breakpoints()[0] == 0 and plan.breakpoints()[-1] == pytest.approx(plan.T_max)

    def test_plan_too_small(self):
        nu = exponential_measure(1.0)
        with pytest.raises(PlanTooSmallError) as info:
            subordinate_matrix(AFFINE, nu, 4, plan=QuadraturePlan(T_max=5.0))
        assert info.value.required_T_max > 5.0
        assert tail_bound(nu, AFFINE.growth_bound(2.0), info.value.required_T_max) <= 1e-12 * 1.0001

    def test_inadmissible_measure(self):
        with pytest.raises(AdmissibilityError):
            subordinate_matrix(AFFINE, exponential_measure(0.5), 4)


class TestSubordinateMatrix:
    def test_dirac_at_zero_is_identity(self):
        A = subordinate_matrix(AFFINE, dirac_measure(0.0), 6)
        np.testing.assert_array_equal(A.entries, np.eye(7))

    def test_dirac_is_composition(self):
        t0 = 0.7
        A = subordinate_matrix(AFFINE, dirac_measure(t0), 6)
        e = np.exp(-t0)
        np.testing.assert_allclose(A.entries, composition_matrix_affine(e, 1 - e, 6).entries, atol=1e-15)
        B = subordinate_matrix(get_flow("hyp-auto"), dirac_measure(t0), 6)
        # column 1 holds the coefficients of phi_t0(z)
        z = disc_probe_points(8, 0.5)
        vals = evaluate(CoeffVector(B.entries[:, 1]), z)
        from subspec.semiflows import phi

        assert np.max(np.abs(vals - phi(get_flow("hyp-auto"), t0, z))) <= 1e-5

    def test_beta_integral_oracle(self):
        N = 64
        A = subordinate_matrix(AFFINE, exponential_measure(1.0), N)
        m, k = np.indices((N + 1, N + 1))
        oracle = np.where(k >= m, 1.0 / (k + 1.0), 0.0)
        assert np.max(np.abs(A.entries - oracle)) <= 1e-10
        np.testing.assert_allclose(oracle, cesaro_matrix(N).entries.T)
        assert A.structure == "upper" and A.exactness == "exact-upper"

    @pytest.mark.parametrize("lam", [1.0, 2.0, 1.5 + 0.7j])
    def test_matches_resolvent_solve(self, lam):
        N = 40
        A = subordinate_matrix(AFFINE, exponential_measure(lam), N)
        f = np.zeros(N + 1)
        f[:3] = [0.0, 3.0, 1.0]
        g = resolvent_solve(AFFINE, lam, CoeffVector(f)).coeffs
        assert np.max(np.abs(A.entries @ f - g)) <= 1e-10

    def test_hyperbolic_automorphism_pointwise(self):
        flow = get_flow("hyp-auto")
        lam = 2.0
        A = subordinate_matrix(flow, exponential_measure(lam), 48)
        f = np.zeros(49)
        f[1] = 1.0
        z = disc_probe_points(16, 0.5)
        coeff_side = evaluate(CoeffVector(A.entries @ f), z)
        point_side = averaging_apply(flow, lam, ident, z)
        assert np.max(np.abs(coeff_side - point_side)) <= 1e-10

    def test_elliptic_power_against_closed_forms(self):
        # with u = e^{-t}: H 1 = 1 and H z = int_0^1 (1 - (1-z)^u) du = 1 + z / log(1 - z)
        A = subordinate_matrix(get_flow("elliptic-pow"), exponential_measure(1.0), 48).entries
        z = disc_probe_points(16, 0.5)
        np.testing.assert_allclose(A[:, 0], np.eye(49)[0], atol=1e-12)
        col1 = evaluate(CoeffVector(A[:, 1]), z)
        assert np.max(np.abs(col1 - (1 + z / np.log(1 - z)))) <= 1e-10
        z2 = complex(mpmath.quad(lambda u: (1 - (1 - mpmath.mpf(0.3)) ** u) ** 2, [0, 1]))
        assert evaluate(CoeffVector(A[:, 2]), 0.3) == pytest.approx(z2, abs=1e-10)


class TestAveraging:
    def test_examples(self):
        assert averaging_apply(AFFINE, 1.0, one, 0.3 - 0.2j) == pytest.approx(1.0, abs=1e-12)
        assert averaging_apply(AFFINE, 1.0, ident, 0.4) == pytest.approx(0.7, abs=1e-12)
        assert averaging_apply(AFFINE, 2.0, ident, 0.0) == pytest.approx(1 / 6, abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            averaging_apply(AFFINE, 0.0, one, 0.2)
        with pytest.raises(ValueError):
            averaging_apply(AFFINE, 1.0, one, 1.0)

    def test_spectral_caveat_flagged(self):
        with pytest.warns(SpectralCaveatWarning):
            averaging_apply(AFFINE, 0.3, one, 0.2)

    def test_closed_form_below_type(self):
        # for 0 < Re lam the integral still equals the formula on polynomials
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SpectralCaveatWarning)
            val = averaging_apply(AFFINE, 0.3, ident, 0.2)
        # (lam - Delta) g = z with g = a + b z: b = 1/(lam + 1), a = b / lam
        b = 1 / 1.3
        assert val == pytest.approx(b / 0.3 + b * 0.2, abs=1e-10)

    def test_eigenfunction_near_boundary(self):
        mu = 0.4
        f = eigenfunction(AFFINE, mu)
        z = np.array([0.999, -0.99, 0.9j])
        got = averaging_apply(AFFINE, 1.0, f, z)
        assert np.max(np.abs(got - f(z) / (1 - mu))) <= 1e-8 * np.max(np.abs(f(z)))


class TestGeneralApply:
    def test_examples(self):
        assert general_subordinated_apply(AFFINE, exponential_measure(1.0), one, 0.3) == pytest.approx(1.0, abs=1e-12)
        assert general_subordinated_apply(AFFINE, exponential_measure(2.0), ident, 0.0) == pytest.approx(1 / 6, abs=1e-12)
        assert general_subordinated_apply(AFFINE, exp_poly_measure(1, 2.0), one, 0.0) == pytest.approx(0.25, abs=1e-12)

    def test_bare_density_needs_plan(self):
        with pytest.raises(ValueError):
            general_subordinated_apply(AFFINE, lambda t: np.exp(-t), one, 0.0)
        plan = plan_for(exponential_measure(1.0))
        val = general_subordinated_apply(AFFINE, lambda t: np.exp(-t), one, 0.1, plan=plan)
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_error_estimate(self):
        val, err = general_subordinated_apply(AFFINE, exponential_measure(1.0), ident, 0.5, return_error=True)
        assert abs(val - 0.75) <= max(err, 1e-14)
        assert err <= 1e-10

    @pytest.mark.parametrize("name", ["affine", "hyp-auto"])
    @pytest.mark.parametrize("lam", [1.0, 2.0, 1.5 + 0.7j])
    def test_agrees_with_averaging(self, name, lam):
        flow = get_flow(name)

        def f(s):
            s = np.asarray(s, dtype=complex)
            return s**2 + 3 * s

        a = averaging_apply(flow, lam, f, Z)
        b = general_subordinated_apply(flow, exponential_measure(lam), f, Z)
        assert np.max(np.abs(a - b)) <= 1e-10

    def test_atoms(self):
        nu = dirac_measure(1.0, 2.0)
        from subspec.semiflows import phi

        got = general_subordinated_apply(AFFINE, nu, ident, Z)
        np.testing.assert_allclose(got, 2.0 * phi(AFFINE, 1.0, Z), atol=1e-15)


class TestRegularity:
    OMEGA0, DELTA, XI = 0.5, 0.1, 0.5

    def test_smooth_exponential_passes(self):
        nu = exponential_measure(self.OMEGA0 + 2 * self.DELTA)
        assert check_measure_regularity(nu, self.OMEGA0, self.DELTA, 1.0, self.XI).verdict == "pass"

    def test_growing_density_fails(self):
        rep = check_measure_regularity(exponential_measure(-1.0), self.OMEGA0, self.DELTA, 1.0, self.XI)
        assert rep.verdict == "fail"
        assert "moment" in rep.reason

    def test_singular_density_passes_with_matching_eta(self):
        nu = exp_poly_measure(-0.5, self.OMEGA0 + 2 * self.DELTA)
        assert check_measure_regularity(nu, self.OMEGA0, self.DELTA, 0.5, self.XI).verdict == "pass"

    def test_singular_density_with_eta_one_not_passed(self):
        nu = exp_poly_measure(-0.5, self.OMEGA0 + 2 * self.DELTA)
        assert check_measure_regularity(nu, self.OMEGA0, self.DELTA, 1.0, self.XI).verdict != "pass"

    def test_missing_extension_fails(self):
        nu = BorelMeasure(density=lambda t: np.exp(-t), bound=(1.0, 1.0))
        rep = check_measure_regularity(nu, self.OMEGA0, self.DELTA, 1.0, self.XI)
        assert rep.verdict == "fail" and "sector extension" in rep.reason

    def test_parameter_ranges(self):
        nu = exponential_measure(1.0)
        with pytest.raises(ValueError):
            check_measure_regularity(nu, 0.5, 0.1, 0.0, 0.5)
        with pytest.raises(ValueError):
            check_measure_regularity(nu, 0.5, 0.1, 1.0, 1.0)
