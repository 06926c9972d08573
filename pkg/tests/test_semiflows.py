import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspec.semiflows import (
    FLOW_NAMES,
    catalog,
    classify,
    eigenfunction,
    estimate_strip_widths,
    get_flow,
    in_koenigs_domain,
    koenigs,
    koenigs_inv,
    phi,
    phi_complement,
)
from subspec.spectral import disc_probe_points

GRID = disc_probe_points(64, 0.95)
KOENIGS_FLOWS = [f for f in FLOW_NAMES if get_flow(f).has_koenigs]

disc_points = st.builds(
    lambda r, a: r * np.exp(1j * a), st.floats(0.0, 0.95), st.floats(0.0, 2 * np.pi)
)
times = st.floats(0.0, 5.0)


def fd4(f, x, h=1e-3):
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


@pytest.mark.parametrize("name", FLOW_NAMES)
def test_phi_zero_is_identity(name):
    flow = get_flow(name)
    assert np.max(np.abs(phi(flow, 0.0, GRID) - GRID)) <= 1e-13


@pytest.mark.parametrize("name", FLOW_NAMES)
@given(t=times, s=times, z=disc_points)
@settings(max_examples=100, deadline=None)
def test_semigroup_law(name, t, s, z):
    flow = get_flow(name)
    assert abs(phi(flow, t + s, z) - phi(flow, t, phi(flow, s, z))) <= 1e-12


@pytest.mark.parametrize("name", FLOW_NAMES)
@given(t=times, z=disc_points)
@settings(max_examples=50, deadline=None)
def test_self_map_and_complement(name, t, z):
    flow = get_flow(name)
    w = phi(flow, t, z)
    assert abs(w) < 1.0
    assert abs(phi_complement(flow, t, z) - (1.0 - w)) <= 1e-14


@pytest.mark.parametrize("name", FLOW_NAMES)
def test_generator_is_time_derivative(name):
    flow = get_flow(name)
    z = disc_probe_points(64, 0.8)
    lhs = fd4(lambda t: phi(flow, t, z), 0.7)
    assert np.max(np.abs(lhs - flow.G(phi(flow, 0.7, z)))) <= 1e-8


def test_phi_examples():
    affine, hyp = get_flow("affine"), get_flow("hyp-auto")
    for t in (0.3, 1.0, 4.0):
        assert phi(affine, t, 0.0) == pytest.approx(1 - np.exp(-t), abs=1e-15)
    assert phi(hyp, 1.0, 0.0) == pytest.approx((np.e - 1) / (np.e + 1), abs=1e-15)
    assert phi(hyp, 1.0, 0.0) == pytest.approx(0.46212, abs=1e-5)


def test_phi_rejects_bad_input():
    flow = get_flow("affine")
    with pytest.raises(ValueError):
        phi(flow, 1.0, 1.0)
    with pytest.raises(ValueError):
        phi(flow, -0.1, 0.2)


def test_hyperbolic_automorphism_closed_form():
    flow = get_flow("hyp-auto")
    t = 0.8
    e = np.exp(t)
    expected = ((e + 1) * GRID + (e - 1)) / ((e - 1) * GRID + (e + 1))
    assert np.max(np.abs(phi(flow, t, GRID) - expected)) <= 1e-14


def test_parabolic_closed_form():
    flow = get_flow("para-auto")
    t = 1.3
    expected = ((1 - 1j * t) * GRID + 1j * t) / (-1j * t * GRID + 1 + 1j * t)
    assert np.max(np.abs(phi(flow, t, GRID) - expected)) <= 1e-14


def test_elliptic_closed_forms():
    t = 0.6
    e = np.exp(-t)
    rot = e * GRID / ((e - 1) * GRID + 1)
    assert np.max(np.abs(phi(get_flow("elliptic-rot"), t, GRID) - rot)) <= 1e-14
    power = 1 - (1 - GRID) ** e
    assert np.max(np.abs(phi(get_flow("elliptic-pow"), t, GRID) - power)) <= 1e-14
    for name in ("elliptic-rot", "elliptic-pow"):
        assert phi(get_flow(name), 2.0, 0.0) == 0.0


class TestKoenigs:
    def test_examples(self):
        affine, hyp = get_flow("affine"), get_flow("hyp-auto")
        assert koenigs(affine, 0.0) == 0
        assert koenigs(affine, 0.5) == pytest.approx(np.log(2), abs=1e-15)
        assert koenigs(hyp, np.tanh(0.5)) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("name", KOENIGS_FLOWS)
    def test_normalisation_and_inverse(self, name):
        flow = get_flow(name)
        assert abs(koenigs(flow, 0.0)) <= 1e-15
        assert np.max(np.abs(koenigs_inv(flow, koenigs(flow, GRID)) - GRID)) <= 1e-12

    @pytest.mark.parametrize("name", KOENIGS_FLOWS)
    @given(t=times, z=disc_points)
    @settings(max_examples=100, deadline=None)
    def test_conjugacy(self, name, t, z):
        flow = get_flow(name)
        assert abs(flow.h_inv(koenigs(flow, z) + t) - phi(flow, t, z)) <= 1e-10

    @pytest.mark.parametrize("name", KOENIGS_FLOWS)
    def test_generator_relation(self, name):
        flow = get_flow(name)
        z = disc_probe_points(64, 0.8)
        assert np.max(np.abs(flow.G(z) * fd4(flow.h, z) - 1.0)) <= 1e-8

    def test_parabolic_candidate_needs_rotation(self):
        # z/(1-z) conjugates the parabolic flow to w -> w + i t, so the stored
        # Koenigs function is -i z/(1-z), which gives translation by t
        flow = get_flow("para-auto")
        t = 0.9
        cand = GRID / (1 - GRID)
        moved = phi(flow, t, GRID) / (1 - phi(flow, t, GRID))
        assert np.max(np.abs(moved - (cand + 1j * t))) <= 1e-12
        assert np.max(np.abs(koenigs(flow, GRID) - (-1j * cand))) <= 1e-14

    @pytest.mark.parametrize("name", ["elliptic-rot", "elliptic-pow"])
    def test_elliptic_rejected(self, name):
        flow = get_flow(name)
        with pytest.raises(ValueError):
            koenigs(flow, 0.1)
        with pytest.raises(ValueError):
            eigenfunction(flow, 0.5)

    def test_domain_membership(self):
        affine, hyp = get_flow("affine"), get_flow("hyp-auto")
        assert in_koenigs_domain(affine, 3.0 + 1.5j)
        assert not in_koenigs_domain(affine, 1.5j)
        assert not in_koenigs_domain(affine, -5.0 + 1.5j)
        assert in_koenigs_domain(hyp, 100.0 + 1.5j)
        assert not in_koenigs_domain(hyp, 1.6j)
        with pytest.raises(ValueError):
            koenigs_inv(hyp, 2.0j)

    def test_eigenfunction_closed_form(self):
        f = eigenfunction(get_flow("affine"), 0.3 + 0.2j)
        np.testing.assert_allclose(f(GRID), (1 - GRID) ** (-(0.3 + 0.2j)), rtol=1e-13)


class TestClassification:
    def test_examples(self):
        assert classify(get_flow("affine")) == ("hyperbolic", np.pi, None, False)
        assert classify(get_flow("hyp-auto")) == ("hyperbolic", np.pi, np.pi, True)
        cls, gamma, beta, _ = classify(get_flow("para-auto"))
        assert (cls, gamma, beta) == ("parabolic", None, None)
        assert classify(get_flow("elliptic-rot"))[0] == "elliptic"

    def test_catalog_names(self):
        assert [f.name for f in catalog()] == list(FLOW_NAMES)

    def test_unknown_flow(self):
        with pytest.raises(ValueError):
            get_flow("spiral")


@pytest.mark.parametrize("name", ["affine", "hyp-auto"])
def test_denjoy_wolff_attraction(name):
    flow = get_flow(name)
    ts = np.linspace(0, 10, 41)
    d = np.array([abs(phi(flow, t, 0.0) - flow.dw_point) for t in ts])
    assert np.all(np.diff(d) < 0)
    assert d[-1] < 0.05


def test_affine_boundary_derivative():
    flow = get_flow("affine")
    delta = 1e-6
    for t in (0.5, 1.0, 2.0):
        assert phi_complement(flow, t, 1 - delta) / delta == pytest.approx(np.exp(-t), abs=1e-6)


class TestStripWidths:
    def test_affine(self):
        est = estimate_strip_widths(get_flow("affine"))
        assert np.pi - 0.05 <= est.gamma <= np.pi
        assert est.beta_max is None

    def test_hyperbolic_automorphism(self):
        est = estimate_strip_widths(get_flow("hyp-auto"))
        assert np.pi - 0.05 <= est.gamma <= np.pi
        assert np.pi - 0.05 <= est.beta_max <= np.pi

    def test_scaled_entry(self):
        est = estimate_strip_widths(get_flow("hyp-auto", alpha=2.0))
        assert est.gamma == pytest.approx(2 * np.pi, abs=0.1)
