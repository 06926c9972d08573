"""Catalog of holomorphic semiflows on the unit disc.

Each entry bundles the closed-form flow phi_t, its generator G, and, for
non-elliptic flows, a Koenigs function h with h(phi_t(z)) = h(z) + t.
The hyperbolic entries share the shape h(z) = -c log(1 - z) + h_reg(z) with
h_reg analytic near z = 1; the averaging quadrature relies on that split.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

FLOW_NAMES = ("affine", "hyp-auto", "para-auto", "elliptic-rot", "elliptic-pow")


def _as_disc_points(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("semiflows act on the open unit disc; got |z| >= 1")
    return z


def _unwrap(x):
    return x[()] if np.ndim(x) == 0 else x


@dataclass(frozen=True, eq=False)
class Semiflow:
    name: str
    kind: str
    classification: str
    params: dict
    phi_raw: Callable = field(repr=False)
    G: Callable = field(repr=False)
    dw_point: complex = 1.0
    h: Callable | None = field(default=None, repr=False)
    h_inv: Callable | None = field(default=None, repr=False)
    h_prime: Callable | None = field(default=None, repr=False)
    domain_test: Callable | None = field(default=None, repr=False)
    gamma: float | None = None
    beta_max: float | None = None
    contains_strip: bool | None = None
    # G(z) = g0 + g1 z + g2 z^2, or None when G is not a polynomial
    G_poly: tuple | None = None
    # hyperbolic split h = -c log(1 - z) + h_reg(z)
    log_weight: float | None = None
    h_regular: Callable | None = field(default=None, repr=False)
    # 1 - phi_t(z) and h as a function of w = 1 - z, both free of cancellation near z = 1
    phi_complement_raw: Callable | None = field(default=None, repr=False)
    h_of_complement: Callable | None = field(default=None, repr=False)
    # (1 - s) h'(s) as a function of w = 1 - s; regular at w = 0 for hyperbolic flows
    q_of_complement: Callable | None = field(default=None, repr=False)
    # (M, omega) from ||C_phi||_p^p <= (1 + |phi(0)|) / (1 - |phi(0)|)
    growth_fn: Callable | None = field(default=None, repr=False)

    @property
    def has_koenigs(self):
        return self.h is not None

    def type_bound(self, p=2.0):
        """Exponential type of t -> ||C_phi_t|| on H^p."""
        if self.classification == "hyperbolic":
            return np.pi / (p * self.gamma)
        return 0.0

    def growth_bound(self, p=2.0):
        """(M, omega) with ||C_phi_t||_{H^p} <= M exp(omega t) for all t >= 0."""
        return self.growth_fn(p)

    def is_polynomial_generator(self):
        return self.G_poly is not None


def phi(flow, t, z):
    """phi_t(z) for t >= 0 and |z| < 1 (vectorised over z)."""
    if t < 0:
        raise ValueError("the flow is only defined for t >= 0")
    return _unwrap(flow.phi_raw(float(t), _as_disc_points(z)))


def phi_complement(flow, t, z):
    """1 - phi_t(z), accurate to full relative precision as phi_t(z) -> 1."""
    if t < 0:
        raise ValueError("the flow is only defined for t >= 0")
    return _unwrap(flow.phi_complement_raw(float(t), _as_disc_points(z)))


@dataclass(frozen=True, eq=False)
class DiscFunction:
    """Analytic function given through w = 1 - s.

    Quadratures near the boundary point 1 hand over w exactly; a plain
    callable of s would only see the rounded value of 1 - w.
    """

    of_complement: Callable

    def __call__(self, s):
        return self.of_complement(1.0 - np.asarray(s, dtype=complex))


def evaluate_near_one(f, s, w):
    """f at s = 1 - w, using the complement form when f provides one."""
    if isinstance(f, DiscFunction):
        return f.of_complement(w)
    return f(s)


def eigenfunction(flow, mu):
    """exp(mu h), the eigenfunction of the generator for the eigenvalue mu."""
    if not flow.has_koenigs:
        raise ValueError(f"no Koenigs function stored for the {flow.name} flow")
    mu = complex(mu)
    return DiscFunction(lambda w: np.exp(mu * flow.h_of_complement(np.asarray(w, dtype=complex))))


def koenigs(flow, z):
    if not flow.has_koenigs:
        raise ValueError(f"no Koenigs function stored for the {flow.name} flow")
    return _unwrap(flow.h(_as_disc_points(z)))


def in_koenigs_domain(flow, w):
    """Membership w in h(D), i.e. |h^-1(w)| < 1, evaluated without cancellation."""
    if not flow.has_koenigs:
        raise ValueError(f"no Koenigs function stored for the {flow.name} flow")
    w = np.asarray(w, dtype=complex)
    if flow.domain_test is not None:
        return flow.domain_test(w)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.abs(flow.h_inv(w)) < 1.0


def koenigs_inv(flow, w):
    if not flow.has_koenigs:
        raise ValueError(f"no Koenigs function stored for the {flow.name} flow")
    w = np.asarray(w, dtype=complex)
    if not np.all(in_koenigs_domain(flow, w)):
        raise ValueError("point outside the Koenigs domain h(D)")
    return _unwrap(flow.h_inv(w))


def classify(flow):
    """(classification, gamma, beta_max, contains_strip) from the catalog."""
    return flow.classification, flow.gamma, flow.beta_max, flow.contains_strip


# -- catalog -----------------------------------------------------------------


def affine_flow():
    def phi_raw(t, z):
        return np.exp(-t) * z - np.expm1(-t)

    def phi_complement_raw(t, z):
        return np.exp(-t) * (1.0 - z)

    def h(z):
        return -np.log1p(-z)

    def h_inv(w):
        return -np.expm1(-w)

    def domain_test(w):
        # |1 - e^-w| < 1  <=>  2 cos(Im w) > e^(-Re w)
        return 2.0 * np.cos(w.imag) > np.exp(-w.real)

    def growth(p):
        # phi_t(0) = 1 - e^-t gives (1 + |phi_t(0)|)/(1 - |phi_t(0)|) <= 2 e^t
        return 2.0 ** (1.0 / p), 1.0 / p

    return Semiflow(
        name="affine",
        kind="affine-hyperbolic",
        classification="hyperbolic",
        params={},
        phi_raw=phi_raw,
        G=lambda z: 1.0 - np.asarray(z, dtype=complex),
        h=h,
        h_inv=h_inv,
        h_prime=lambda z: 1.0 / (1.0 - np.asarray(z, dtype=complex)),
        phi_complement_raw=phi_complement_raw,
        h_of_complement=lambda w: -np.log(w),
        q_of_complement=lambda w: np.ones_like(w),
        domain_test=domain_test,
        gamma=np.pi,
        beta_max=None,
        contains_strip=False,
        G_poly=(1.0, -1.0, 0.0),
        log_weight=1.0,
        h_regular=lambda z: np.zeros_like(np.asarray(z, dtype=complex)),
        growth_fn=growth,
    )


def hyperbolic_automorphism_flow(alpha=1.0):
    """Automorphisms fixing +1 and -1; Koenigs domain is the strip |Im w| < alpha pi / 2."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError("strip scale alpha must be positive")

    def phi_raw(t, z):
        e = np.exp(t / alpha)
        return ((e + 1.0) * z + (e - 1.0)) / ((e - 1.0) * z + (e + 1.0))

    def phi_complement_raw(t, z):
        e = np.exp(t / alpha)
        return 2.0 * (1.0 - z) / ((e - 1.0) * z + (e + 1.0))

    def h(z):
        return alpha * (np.log1p(z) - np.log1p(-z))

    def h_inv(w):
        return np.tanh(w / (2.0 * alpha))

    def domain_test(w):
        # 1 - |tanh u|^2 has the sign of cos(2 Im u) inside the principal band
        return np.abs(w.imag) < 0.5 * alpha * np.pi

    def growth(p):
        # phi_t(0) = tanh(t / 2 alpha): the Littlewood ratio is exactly e^(t/alpha)
        return 1.0, 1.0 / (alpha * p)

    return Semiflow(
        name="hyp-auto",
        kind="hyperbolic-automorphism",
        classification="hyperbolic",
        params={"alpha": alpha},
        phi_raw=phi_raw,
        G=lambda z: (1.0 - np.asarray(z, dtype=complex) ** 2) / (2.0 * alpha),
        h=h,
        h_inv=h_inv,
        h_prime=lambda z: 2.0 * alpha / (1.0 - np.asarray(z, dtype=complex) ** 2),
        phi_complement_raw=phi_complement_raw,
        h_of_complement=lambda w: alpha * (np.log(2.0 - w) - np.log(w)),
        q_of_complement=lambda w: 2.0 * alpha / (2.0 - w),
        domain_test=domain_test,
        gamma=alpha * np.pi,
        beta_max=alpha * np.pi,
        contains_strip=True,
        G_poly=(0.5 / alpha, 0.0, -0.5 / alpha),
        log_weight=alpha,
        h_regular=lambda z: alpha * np.log1p(np.asarray(z, dtype=complex)),
        growth_fn=growth,
    )


_PARA_OMEGA = 0.1


def _para_growth(p):
    # ||C_phi_t||_p <= (4 (1 + t^2))^(1/p); absorb the polynomial into e^(0.1 t)
    t = np.linspace(0.0, 400.0, 40001)
    M = float(np.max((4.0 * (1.0 + t**2)) ** (1.0 / p) * np.exp(-_PARA_OMEGA * t)))
    return 1.001 * M, _PARA_OMEGA


def parabolic_automorphism_flow():
    def phi_raw(t, z):
        return ((1.0 - 1j * t) * z + 1j * t) / (-1j * t * z + 1.0 + 1j * t)

    def phi_complement_raw(t, z):
        return (1.0 - z) / (-1j * t * z + 1.0 + 1j * t)

    def h(z):
        z = np.asarray(z, dtype=complex)
        return -1j * z / (1.0 - z)

    def h_inv(w):
        w = np.asarray(w, dtype=complex)
        return 1j * w / (1.0 + 1j * w)

    return Semiflow(
        name="para-auto",
        kind="parabolic-automorphism",
        classification="parabolic",
        params={},
        phi_raw=phi_raw,
        G=lambda z: 1j * (1.0 - np.asarray(z, dtype=complex)) ** 2,
        h=h,
        h_inv=h_inv,
        h_prime=lambda z: -1j / (1.0 - np.asarray(z, dtype=complex)) ** 2,
        phi_complement_raw=phi_complement_raw,
        h_of_complement=lambda w: -1j * (1.0 - w) / w,
        domain_test=lambda w: w.imag < 0.5,
        gamma=None,
        beta_max=None,
        contains_strip=None,
        G_poly=(1j, -2j, 1j),
        growth_fn=_para_growth,
    )


def elliptic_rotationlike_flow():
    def phi_raw(t, z):
        e = np.exp(-t)
        return e * z / ((e - 1.0) * z + 1.0)

    def phi_complement_raw(t, z):
        e = np.exp(-t)
        return (1.0 - z) / ((e - 1.0) * z + 1.0)

    return Semiflow(
        name="elliptic-rot",
        kind="elliptic-rotationlike",
        classification="elliptic",
        params={},
        phi_raw=phi_raw,
        G=lambda z: np.asarray(z, dtype=complex) ** 2 - np.asarray(z, dtype=complex),
        phi_complement_raw=phi_complement_raw,
        dw_point=0.0,
        G_poly=(0.0, -1.0, 1.0),
        # phi_t(0) = 0, so Littlewood subordination gives contractions
        growth_fn=lambda p: (1.0, 0.0),
    )


def elliptic_power_flow():
    def phi_raw(t, z):
        return 1.0 - (1.0 - z) ** np.exp(-t)

    def G(z):
        w = 1.0 - np.asarray(z, dtype=complex)
        return w * np.log(w)

    return Semiflow(
        name="elliptic-pow",
        kind="elliptic-power",
        classification="elliptic",
        params={},
        phi_raw=phi_raw,
        G=G,
        phi_complement_raw=lambda t, z: (1.0 - z) ** np.exp(-t),
        dw_point=0.0,
        G_poly=None,
        growth_fn=lambda p: (1.0, 0.0),
    )


_FACTORIES = {
    "affine": affine_flow,
    "hyp-auto": hyperbolic_automorphism_flow,
    "para-auto": parabolic_automorphism_flow,
    "elliptic-rot": elliptic_rotationlike_flow,
    "elliptic-pow": elliptic_power_flow,
}


def get_flow(name, **params):
    """Catalog entry by CLI name; only "hyp-auto" takes a parameter (alpha)."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown flow {name!r}; choose from {', '.join(FLOW_NAMES)}") from None
    return factory(**params)


def catalog():
    return [get_flow(name) for name in FLOW_NAMES]


# -- strip geometry ------------------------------------------------------------


@dataclass(frozen=True)
class StripEstimate:
    gamma: float
    beta_max: float | None
    height_step: float
    r_max: float


def estimate_strip_widths(flow, grid_spec=None):
    """Sampled widths of the smallest strip containing h(D) and the widest strip inside it.

    gamma is sup - inf of Im h over a polar grid reaching radius r_max.
    beta_max is the length of the longest run of heights c such that
    c i + x lies in h(D) for every sampled x in [-R, R]; None if no height
    passes.  Both are lower estimates limited by the sampling resolution.
    """
    spec = {"n_radii": 48, "n_angles": 4096, "r_max": 1.0 - 1e-4, "n_heights": 2001, "R": 50.0, "n_x": 401}
    spec.update(grid_spec or {})
    if not flow.has_koenigs:
        raise ValueError(f"no Koenigs function stored for the {flow.name} flow")

    depth = -np.log10(1.0 - spec["r_max"])
    radii = 1.0 - np.logspace(0.0, -depth, spec["n_radii"])
    radii[0] = 0.0
    theta = 2.0 * np.pi * np.arange(spec["n_angles"]) / spec["n_angles"]
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    im = flow.h(z).imag
    lo, hi = float(im.min()), float(im.max())
    gamma_hat = hi - lo

    pad = 0.1 * gamma_hat
    heights = np.linspace(lo - pad, hi + pad, spec["n_heights"])
    dc = heights[1] - heights[0]
    x = np.linspace(-spec["R"], spec["R"], spec["n_x"])
    ok = np.all(in_koenigs_domain(flow, x[None, :] + 1j * heights[:, None]), axis=1)
    if not ok.any():
        return StripEstimate(gamma_hat, None, dc, spec["r_max"])
    best = run = 0
    for flag in ok:
        run = run + 1 if flag else 0
        best = max(best, run)
    return StripEstimate(gamma_hat, float((best - 1) * dc) if best > 1 else 0.0, dc, spec["r_max"])
