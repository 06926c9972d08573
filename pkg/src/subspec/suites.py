"""Verification suites behind ``subspec verify``.

Each suite runs a list of named checks and returns a SuiteReport.  A check
records the measured value, the tolerance it was held to, its status and
its runtime.  Random probe points come from a generator seeded by
SUBSPEC_SEED (default 0), so reports are reproducible.
"""

import json
import os
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analytic import CirclePlan, as_coeff_vector, binomial_coeffs, coeffs_from_samples, hp_membership_classifier
from .matrices import cesaro_matrix, composition_matrix_affine, composition_matrix_general, resolvent_solve
from .semiflows import catalog, eigenfunction, get_flow, koenigs, phi, phi_complement
from .spectral import (
    annulus,
    circle,
    disc_probe_points,
    eigenfield_witness,
    generator_point_spectrum_region,
    generator_spectrum_region,
    local_radius_trace,
    map_region_laplace,
    map_region_resolvent,
    negate,
    pseudospectral_radius,
    semigroup_spectrum_region,
    sigma_min,
    spectral_radius_formula,
)
from .subordination import (
    averaging_apply,
    check_measure_regularity,
    exp_poly_measure,
    exponential_measure,
    general_subordinated_apply,
    laplace_transform,
    measure_from_spec,
    subordinate_matrix,
)

MAX_ORDER = 4096
MAX_RESOLUTION = 400


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


def probe_rng():
    return np.random.default_rng(int(os.environ.get("SUBSPEC_SEED", "0")))


# -- configuration -----------------------------------------------------------------


@dataclass
class ExperimentConfig:
    flow: str = "affine"
    flow_params: dict = field(default_factory=dict)
    measure: dict | None = None
    N: int | None = None
    p: float = 2.0
    t: float | None = None
    box: tuple | None = None
    resolution: tuple | None = None
    suite: str | None = None
    out: str | None = None
    tolerances: dict = field(default_factory=dict)
    operator: str | None = None
    x: str | None = None
    n_max: int | None = None

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        flow = data.pop("flow", "affine")
        if isinstance(flow, dict):
            flow = dict(flow)
            data["flow_params"] = {**flow, **data.get("flow_params", {})}
            data["flow_params"].pop("name", None)
            flow = flow.get("name", "affine")
        if "res" in data:
            data["resolution"] = data.pop("res")
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls(flow=flow, **data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.N is not None and not 0 <= int(self.N) <= MAX_ORDER:
            raise ConfigError(f"N must lie in [0, {MAX_ORDER}]")
        if self.resolution is not None:
            nx, ny = self.resolution
            if not (0 < nx <= MAX_RESOLUTION and 0 < ny <= MAX_RESOLUTION):
                raise ConfigError(f"resolution is capped at {MAX_RESOLUTION} x {MAX_RESOLUTION}")
        if self.box is not None:
            x0, x1, y0, y1 = self.box
            if not (x1 > x0 and y1 > y0):
                raise ConfigError("box must satisfy x0 < x1 and y0 < y1")
        if self.suite is not None and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; registered: {', '.join(SUITES)}")
        if self.p is not None and self.p < 1:
            raise ConfigError("p must be at least 1")
        if self.t is not None and self.t < 0:
            raise ConfigError("t must be non-negative")
        try:
            self.semiflow()
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if self.measure is not None:
            try:
                self.borel_measure()
            except (TypeError, ValueError, KeyError) as exc:
                raise ConfigError(f"bad measure: {exc}") from None

    def semiflow(self):
        return get_flow(self.flow, **self.flow_params)

    def borel_measure(self):
        if self.measure is None:
            return exponential_measure(1.0)
        return measure_from_spec(self.measure)

    def tol(self, name, default):
        return float(self.tolerances.get(name, default))


# -- reports -----------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if np.isfinite(v) else repr(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class CheckRecord:
    name: str
    status: str  # "pass" | "fail" | "skip"
    value: object
    tolerance: object
    runtime: float
    detail: str = ""

    def to_dict(self):
        out = {
            "name": self.name,
            "status": self.status,
            "value": _jsonable(self.value),
            "tolerance": _jsonable(self.tolerance),
            "runtime": round(self.runtime, 3),
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    @property
    def status(self):
        live = [c for c in self.checks if c.status != "skip"]
        return "pass" if live and all(c.status == "pass" for c in live) else "fail"

    @property
    def passed(self):
        return self.status == "pass"

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "suite": self.suite,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "artifacts": list(self.artifacts),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Checks:
    """Collects check records; tolerances can be overridden by the config."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.records = []

    def _run(self, name, fn, judge, tolerance):
        start = time.perf_counter()
        try:
            value = fn()
            status = "pass" if judge(value) else "fail"
            detail = ""
        except Exception as exc:  # a crashing check is a failing check
            value, status, detail = None, "fail", f"{type(exc).__name__}: {exc}"
        self.records.append(CheckRecord(name, status, value, tolerance, time.perf_counter() - start, detail))
        return value

    def at_most(self, name, fn, tol):
        tol = self.cfg.tol(name, tol)
        return self._run(name, fn, lambda v: v is not None and v <= tol, tol)

    def within(self, name, fn, lo, hi):
        return self._run(name, fn, lambda v: v is not None and lo <= v <= hi, [lo, hi])

    def equals(self, name, fn, expected):
        return self._run(name, fn, lambda v: v == expected, expected)

    def truth(self, name, fn):
        return self._run(name, fn, lambda v: bool(v), True)

    def skip(self, name, reason):
        self.records.append(CheckRecord(name, "skip", None, None, 0.0, reason))


# -- semiflow identities -----------------------------------------------------------


def _disc_grid(count=64, radius=0.8):
    return disc_probe_points(count, radius)


def _fd4(f, x, h):
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def suite_semiflow_identities(cfg):
    ck = _Checks(cfg)
    z = _disc_grid()
    rng = probe_rng()
    t_rand = rng.uniform(0.0, 5.0, 100)
    s_rand = rng.uniform(0.0, 5.0, 100)
    z_rand = 0.95 * np.sqrt(rng.uniform(0.0, 1.0, 100)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 100))
    for flow in catalog():
        tag = flow.name
        ck.at_most(f"{tag}: phi_0 = id", lambda: float(np.max(np.abs(phi(flow, 0.0, z) - z))), 1e-13)

        def law():
            errs = [abs(phi(flow, t + s, zz) - phi(flow, t, phi(flow, s, zz))) for t, s, zz in zip(t_rand, s_rand, z_rand)]
            return float(max(errs))

        ck.at_most(f"{tag}: semigroup law", law, 1e-12)

        def generator_ode():
            # d/dt phi_t = G(phi_t), fourth-order difference in t
            t0 = 0.7
            lhs = _fd4(lambda t: phi(flow, t, z), t0, 1e-3)
            return float(np.max(np.abs(lhs - flow.G(phi(flow, t0, z)))))

        ck.at_most(f"{tag}: d/dt phi = G(phi)", generator_ode, 1e-8)
        if not flow.has_koenigs:
            continue
        ck.at_most(f"{tag}: h(0) = 0", lambda: float(abs(koenigs(flow, 0.0))), 1e-15)
        ck.at_most(
            f"{tag}: h_inv(h(z)) = z",
            lambda: float(np.max(np.abs(flow.h_inv(koenigs(flow, z)) - z))),
            1e-12,
        )

        def conjugacy():
            errs = [abs(flow.h_inv(koenigs(flow, zz) + t) - phi(flow, t, zz)) for t, zz in zip(t_rand, z_rand)]
            return float(max(errs))

        ck.at_most(f"{tag}: Koenigs conjugacy", conjugacy, 1e-10)
        ck.at_most(
            f"{tag}: G h' = 1",
            lambda: float(np.max(np.abs(flow.G(z) * _fd4(flow.h, z, 1e-3) - 1.0))),
            1e-8,
        )
        if flow.classification != "hyperbolic":
            continue

        def attraction():
            ts = np.linspace(0.0, 10.0, 41)
            d = np.array([abs(phi(flow, t, 0.0) - flow.dw_point) for t in ts])
            return bool(np.all(np.diff(d) < 0) and d[-1] < 0.05)

        ck.truth(f"{tag}: Denjoy-Wolff attraction", attraction)
        if flow.name == "affine":

            def boundary_derivative():
                delta = 1e-6
                errs = []
                for t in (0.5, 1.0, 2.0):
                    slope = phi_complement(flow, t, 1.0 - delta) / delta
                    errs.append(abs(slope - np.exp(-t)))
                return float(max(errs))

            ck.at_most(f"{tag}: phi_t'(1) = e^-t", boundary_derivative, 1e-6)
    return ck.records


# -- subordination identities ----------------------------------------------------


def _poly_test_functions():
    return {"1": [1.0], "z": [0.0, 1.0], "z^2+3z": [0.0, 3.0, 1.0]}


def suite_resolvent_threeway(cfg):
    """Banded solve, quadrature subordination and the averaging integral agree."""
    ck = _Checks(cfg)
    N = cfg.N or 128
    flow = get_flow("affine")
    plan = CirclePlan(0.9, 32)
    z = plan.points()
    tol = 1e-8
    for lam in (1.0, 2.0, 1.5 + 0.7j):
        H = subordinate_matrix(flow, exponential_measure(lam), N).entries
        for label, c in _poly_test_functions().items():
            f = as_coeff_vector(c).padded(N)
            solve = resolvent_solve(flow, lam, f).coeffs
            quad = H @ f

            def poly(s, c=c):
                return np.polyval(c[::-1], s)

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                vals = averaging_apply(flow, lam, poly, z)
            avg, _ = coeffs_from_samples(vals, plan, 15)
            avg = avg.padded(N)
            name = f"lambda={lam:g}, f={label}"
            ck.at_most(f"{name}: solve vs quadrature", lambda: float(np.max(np.abs(solve - quad))), tol)
            ck.at_most(f"{name}: solve vs averaging", lambda: float(np.max(np.abs(solve - avg))), tol)
            ck.at_most(f"{name}: quadrature vs averaging", lambda: float(np.max(np.abs(quad - avg))), tol)
    return ck.records


def suite_cesaro_transpose(cfg):
    ck = _Checks(cfg)
    N = cfg.N or 64
    flow = get_flow("affine")

    def entry_error():
        H = subordinate_matrix(flow, exponential_measure(1.0), N)
        return float(np.max(np.abs(H.entries - cesaro_matrix(N).entries.T)))

    ck.at_most(f"H_nu = transpose of Cesaro, N={N}", entry_error, 1e-10)
    ck.equals(
        "exactness flag", lambda: subordinate_matrix(flow, exponential_measure(1.0), min(N, 8)).exactness, "exact-upper"
    )
    return ck.records


def suite_cesaro_as_resolvent(cfg):
    ck = _Checks(cfg)
    N = cfg.N or 64

    def entry_error():
        H = subordinate_matrix(get_flow("elliptic-pow"), exponential_measure(1.0), N)
        return float(np.max(np.abs(H.entries - cesaro_matrix(N).entries)))

    ck.at_most(f"elliptic-pow subordination = Cesaro, N={N}", entry_error, 1e-4)

    def transpose_error():
        H = subordinate_matrix(get_flow("elliptic-pow"), exponential_measure(1.0), N)
        return float(np.max(np.abs(H.entries - cesaro_matrix(N).entries.T)))

    # diagnostic: the same subordination compared with the transposed Cesaro matrix
    ck.at_most(f"elliptic-pow subordination = Cesaro transpose, N={N}", transpose_error, 1e-4)
    return ck.records


# -- eigenvector fields ------------------------------------------------------------


def eigen_mu_grid():
    re = np.linspace(-1.0, 0.4, 5)
    im = np.linspace(-0.5, 0.5, 5)
    return re[None, :] + 1j * im[:, None]


def suite_eigenfield(cfg):
    ck = _Checks(cfg)
    flow = get_flow("affine")
    nu = exponential_measure(1.0)
    report = {}

    def grid_residual():
        report["r"] = eigenfield_witness(flow, nu, eigen_mu_grid(), p=cfg.p or 2.0)
        return report["r"].max_residual

    ck.at_most("pointwise residual on 5x5 mu grid", grid_residual, 1e-8)
    ck.at_most("discrete Cauchy residual per cell", lambda: report["r"].max_cauchy, 1e-8)
    z = disc_probe_points()
    for mu in (0.0, -1.0, 0.3 + 0.2j):

        def kernel(mu=mu):
            lam_mu = laplace_transform(nu, -mu)
            Hf = averaging_apply(flow, 1.0, eigenfunction(flow, mu), z)
            return float(np.max(np.abs(Hf - lam_mu * (1.0 - z) ** (-mu))))

        ck.at_most(f"kernel inclusion via averaging, mu={mu:g}", kernel, 1e-8)
    return ck.records


# -- membership ------------------------------------------------------------------


def suite_membership(cfg):
    ck = _Checks(cfg)
    p = cfg.p or 2.0
    for lam, expected in ((0.25, "member"), (0.45, "member"), (0.55, "nonmember"), (0.75, "nonmember")):
        ck.equals(
            f"(1-z)^-{lam:g} in H^{p:g}",
            lambda lam=lam: hp_membership_classifier(binomial_coeffs(lam), p).verdict,
            expected,
        )
    return ck.records


# -- pseudospectra ----------------------------------------------------------------


def cesaro_probes(rng, count=24, margin=0.1):
    """Probe points at distance >= margin inside and outside disk{1, 1}."""
    inside, outside = [], []
    while len(inside) < count or len(outside) < count:
        w = complex(rng.uniform(-0.5, 2.5), rng.uniform(-1.5, 1.5))
        d = abs(w - 1.0) - 1.0
        if d <= -margin and len(inside) < count:
            inside.append(w)
        elif d >= margin and len(outside) < count:
            outside.append(w)
    return np.array(inside), np.array(outside)


def suite_pseudospectra_disk(cfg):
    ck = _Checks(cfg)
    inside, outside = cesaro_probes(probe_rng())
    orders = (50, 100, 200)
    vals = {}

    def compute():
        for n in orders:
            A = cesaro_matrix(n)
            vals[n] = (sigma_min(A, inside), sigma_min(A, outside))
        return True

    ck.truth("sigma_min evaluation", compute)
    ck.truth(
        "inside probes: sigma_min decreases as N doubles",
        lambda: all(np.all(vals[b][0] < vals[a][0]) for a, b in zip(orders, orders[1:])),
    )
    ck.truth(
        "outside probes: sigma_min stable within 10% as N doubles",
        lambda: all(np.all(vals[b][1] >= 0.9 * vals[a][1]) for a, b in zip(orders, orders[1:])),
    )
    ck.at_most("sigma_min(C_100 - 1)", lambda: sigma_min(cesaro_matrix(100), 1.0), 1e-3)
    eps = cfg.tol("eps", 1e-4)
    ck.within(
        f"pseudospectral radius of C_200 at eps={eps:g}",
        lambda: pseudospectral_radius(cesaro_matrix(cfg.N or 200), eps),
        1.85,
        2.05,
    )
    return ck.records


def composition_operator(flow, t, N):
    if flow.name == "affine":
        e = np.exp(-t)
        return composition_matrix_affine(e, 1.0 - e, N)
    A, _ = composition_matrix_general(lambda z: phi(flow, t, z), N)
    return A


def suite_radius_formula(cfg):
    ck = _Checks(cfg)
    flow = cfg.semiflow()
    p = cfg.p or 2.0
    t = 1.0 if cfg.t is None else cfg.t
    N = cfg.N or 200
    target = spectral_radius_formula(flow, p, t)
    eps = cfg.tol("eps", 1e-4)
    ck.within(
        f"pseudospectral radius of C_phi_{t:g} ({flow.name}, N={N}) vs exp(pi t/(gamma p)) = {target:.6g}",
        lambda: pseudospectral_radius(composition_operator(flow, t, N), eps),
        target - 0.15,
        target + 0.05,
    )
    return ck.records


# -- regions ----------------------------------------------------------------------


def _cloud_agreement(closed, cloud, probes):
    """Probes classified differently by the two regions, beyond the cloud's resolution."""
    a = closed.contains(probes)
    b = cloud.contains(probes)
    far = closed.boundary_distance(probes) > cloud.resolution
    return int(np.sum((a != b) & far))


def suite_region_coherence(cfg):
    ck = _Checks(cfg)
    rng = probe_rng()
    affine, hyp = get_flow("affine"), get_flow("hyp-auto")
    para = get_flow("para-auto")
    sigma = generator_spectrum_region(affine, 2.0)
    for lam in (1.0, 2.0, 1.5 + 0.7j):

        def mismatches(lam=lam):
            res = map_region_resolvent(sigma, lam)
            lap = map_region_laplace(negate(sigma), exponential_measure(lam), sampling=300).region
            c0 = complex(*res.params["closed_form"]["outer_disk"]["center"])
            r0 = res.params["closed_form"]["outer_disk"]["radius"]
            probes = c0 + 1.3 * r0 * (rng.uniform(-1, 1, 1000) + 1j * rng.uniform(-1, 1, 1000))
            return _cloud_agreement(res, lap, probes)

        ck.equals(f"resolvent map vs Laplace map, lambda={lam:g}", mismatches, 0)

    probes = rng.uniform(-3, 3, 4000) + 1j * rng.uniform(-3, 3, 4000)

    def predicate_mismatch(region, pred):
        return int(np.sum(region.contains(probes, tol=0.0) != pred(probes)))

    for p in (1.0, 2.0, 4.0):
        ck.equals(
            f"sigma(Delta) affine p={p:g} is Re <= 1/p",
            lambda p=p: predicate_mismatch(generator_spectrum_region(affine, p), lambda z: z.real <= 1 / p),
            0,
        )
    ck.equals(
        "sigma(Delta) hyp-auto p=2 is |Re| <= 1/2",
        lambda: predicate_mismatch(generator_spectrum_region(hyp, 2.0), lambda z: np.abs(z.real) <= 0.5),
        0,
    )
    ck.equals(
        "inner point spectrum affine p=2 is Re < 1/2",
        lambda: predicate_mismatch(generator_point_spectrum_region(affine, 2.0)[0], lambda z: z.real < 0.5),
        0,
    )
    ck.equals(
        "resolvent image at lambda=1 is disk{1,1} union {0}",
        lambda: predicate_mismatch(map_region_resolvent(sigma, 1.0), lambda z: np.abs(z - 1.0) <= 1.0),
        0,
    )
    ck.equals(
        "sigma(C_phi_1) hyp-auto p=2 is the annulus [e^-1/2, e^1/2]",
        lambda: predicate_mismatch(
            semigroup_spectrum_region(hyp, 2.0, 1.0),
            annulus(0.0, np.exp(-0.5), np.exp(0.5)).contains,
        ),
        0,
    )
    ck.truth(
        "sigma(C_phi_t) para-auto is the unit circle",
        lambda: semigroup_spectrum_region(para, 2.0, 1.0).to_dict() == circle(0.0, 1.0).to_dict(),
    )
    ck.equals(
        "sigma(C_phi_1) affine p=2 is the disk of radius e^1/2",
        lambda: predicate_mismatch(semigroup_spectrum_region(affine, 2.0, 1.0), lambda z: np.abs(z) <= np.exp(0.5)),
        0,
    )
    return ck.records


# -- measures ------------------------------------------------------------------------


def regularity_examples(omega0=0.5, delta=0.1):
    """The three sector-regularity examples with their expected verdicts."""
    rate = omega0 + 2 * delta
    return [
        ("exp(-(omega0 + 2 delta) t), eta=1", exponential_measure(rate), 1.0, "pass"),
        ("exp(+t)", exponential_measure(-1.0), 1.0, "fail"),
        ("t^-1/2 exp(-(omega0 + 2 delta) t), eta=1/2", exp_poly_measure(-0.5, rate), 0.5, "pass"),
    ]


def suite_measure_regularity(cfg, omega0=0.5, delta=0.1, xi=0.5):
    ck = _Checks(cfg)
    for label, nu, eta, expected in regularity_examples(omega0, delta):
        ck.equals(
            label,
            lambda nu=nu, eta=eta: check_measure_regularity(nu, omega0, delta, eta, xi).verdict,
            expected,
        )
    return ck.records


# -- local radius ------------------------------------------------------------------


def cesaro_power_norms(N, n_max):
    """||P_N C^n e_0|| by the running-mean recurrence, without forming the matrix."""
    v = np.zeros(N + 1)
    v[0] = 1.0
    k = np.arange(1, N + 2, dtype=float)
    out = np.empty(n_max)
    for n in range(n_max):
        v = np.cumsum(v) / k
        out[n] = np.linalg.norm(v)
    return out


def stirling_power_norms(N, n_max):
    """Norms of the coefficients |s(k, n)| / k! of (-log(1 - z))^n / n!, k <= N.

    Rows of unsigned Stirling numbers of the first kind divided by k! obey
    a_{k+1, n} = (k a_{k, n} + a_{k, n-1}) / (k + 1).
    """
    a = np.zeros(N + 1)
    a[0] = 1.0
    out = np.empty(n_max)
    k = np.arange(N, dtype=float)
    for n in range(1, n_max + 1):
        b = np.zeros(N + 1)
        for j in range(N):
            b[j + 1] = (k[j] * b[j] + a[j]) / (k[j] + 1.0)
        a = b
        out[n - 1] = np.linalg.norm(a)
    return out


def suite_local_radius(cfg):
    ck = _Checks(cfg)
    N = cfg.N or 4096
    n_max = cfg.n_max or 40
    A = cesaro_matrix(N)
    x = np.zeros(N + 1)
    x[0] = 1.0
    state = {}

    def trace():
        state["tr"] = local_radius_trace(A, x, n_max)
        return bool(np.all(np.isfinite(state["tr"].r)))

    ck.truth("trace finite", trace)
    ck.truth(f"r_n strictly increasing over n = 2..{n_max}", lambda: state["tr"].strictly_increasing(2, n_max))
    n = np.arange(1, n_max + 1)

    def rel_err(ref):
        return float(np.max(np.abs(state["tr"].r - ref ** (1.0 / n)) / ref ** (1.0 / n)))

    ck.at_most("matches the Stirling-recurrence oracle", lambda: rel_err(stirling_power_norms(N, n_max)), 1e-10)
    ck.at_most("matches the running-mean recurrence", lambda: rel_err(cesaro_power_norms(N, n_max)), 1e-10)

    def schedule():
        other = local_radius_trace(A, x, n_max, renorm_every=7)
        return float(np.max(np.abs(other.r - state["tr"].r) / state["tr"].r))

    ck.at_most("renormalisation schedule independence", schedule, 1e-10)
    ck.truth("exact-section flag", lambda: state["tr"].exact_sections)
    return ck.records


SUITES = {
    "semiflow-identities": suite_semiflow_identities,
    "resolvent-threeway": suite_resolvent_threeway,
    "cesaro-transpose": suite_cesaro_transpose,
    "eigenfield": suite_eigenfield,
    "membership": suite_membership,
    "pseudospectra-disk": suite_pseudospectra_disk,
    "radius-formula": suite_radius_formula,
    "cesaro-as-resolvent": suite_cesaro_as_resolvent,
    "measure-regularity": suite_measure_regularity,
    "local-radius": suite_local_radius,
    "region-coherence": suite_region_coherence,
}


def run_suite(name, cfg=None):
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; registered: {', '.join(SUITES)}")
    cfg = cfg or ExperimentConfig(suite=name)
    return SuiteReport(name, SUITES[name](cfg))
