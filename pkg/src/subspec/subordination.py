"""Measures on [0, inf), their Laplace transforms, and subordinated operators.

For a measure nu and a composition semigroup T_t f = f o phi_t the
subordinated operator is H_nu f = int T_t f dnu(t).  The matrix of H_nu is
assembled by quadrature in t; for hyperbolic flows H_nu also has pointwise
representations along the segment from z to the Denjoy-Wolff point 1.
"""

import json
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gamma as gamma_fn

from .analytic import CirclePlan, coeffs_from_samples
from .matrices import OperatorMatrix, composition_matrix_affine
from .quadrature import composite_gauss_legendre, gauss_jacobi_left, gauss_legendre
from .semiflows import evaluate_near_one

DEFAULT_TOL = 1e-12
_NEAR_ZERO_PANELS = 64
_FAR_PANEL_WIDTH = 0.5
_MAX_T = 5.0e4


class AdmissibilityError(ValueError):
    """The measure does not decay fast enough for the semigroup."""


class PlanTooSmallError(ValueError):
    def __init__(self, required_T_max, tail_bound, tol):
        super().__init__(
            f"quadrature tail bound {tail_bound:.3e} exceeds tolerance {tol:.1e}; "
            f"T_max must be at least {required_T_max:.6g}"
        )
        self.required_T_max = required_T_max


class SpectralCaveatWarning(UserWarning):
    """The averaging formula is evaluated outside the resolvent set on H^2."""


@dataclass(frozen=True, eq=False)
class BorelMeasure:
    """Atoms plus an optional density with |rho(t)| <= M t^min(k, 0) exp(-omega t).

    ``singular_power`` k describes the behaviour rho(t) ~ t^k at 0; non-integer
    k triggers a Gauss-Jacobi rule on the first panel.  ``log_extension`` is
    log rho on a sector around the positive axis, used by the regularity
    checker.  ``laplace_closed`` is an optional closed form of the transform.
    """

    atoms: tuple = ()
    density: Callable | None = field(default=None, repr=False)
    bound: tuple | None = None
    margin: float = 0.05
    singular_power: float = 0.0
    log_extension: Callable | None = field(default=None, repr=False)
    laplace_closed: Callable | None = field(default=None, repr=False)
    label: str = ""
    spec: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        atoms = tuple((float(t), complex(w)) for t, w in self.atoms)
        if any(t < 0 for t, _ in atoms):
            raise ValueError("atoms must sit at t >= 0")
        object.__setattr__(self, "atoms", atoms)
        if self.margin <= 0:
            raise ValueError("the moment margin delta must be positive")
        if self.density is None:
            return
        if self.bound is None:
            raise ValueError("a density needs a declared bound (M_rho, omega_rho)")
        if self.singular_power <= -1.0:
            raise ValueError("density must be integrable at 0 (power > -1)")
        M, omega = self.bound
        t = np.linspace(0.05, 40.0, 64)
        envelope = M * t ** min(self.singular_power, 0.0) * np.exp(-omega * t)
        if np.any(np.abs(self.density(t)) > 1.01 * envelope):
            raise ValueError("density violates its declared exponential bound")

    @property
    def omega(self):
        """Declared decay rate of the density (inf when there is none)."""
        return np.inf if self.density is None else float(self.bound[1])

    @property
    def has_sector_extension(self):
        return self.log_extension is not None

    def sector_extension(self, z):
        return np.exp(self.log_extension(np.asarray(z, dtype=complex)))

    def admissibility(self, omega0):
        """(ok, reason) for the moment condition with margin delta."""
        if self.density is None:
            return True, "atoms only"
        need = omega0 + self.margin
        if self.omega > need:
            return True, f"omega_rho = {self.omega:.6g} > omega_0 + delta = {need:.6g}"
        return False, f"omega_rho = {self.omega:.6g} must exceed omega_0 + delta = {need:.6g}"

    def total_mass_atoms(self, at_zero_only=False):
        return sum(w for t, w in self.atoms if (t == 0.0 or not at_zero_only))

    def to_json(self):
        if self.spec is None:
            raise ValueError("only measures built from a specification serialise")
        return json.dumps(self.spec, sort_keys=True)


def _exp_poly_parts(power, lam):
    lam = complex(lam)
    k = float(power)
    if k <= -1.0:
        raise ValueError("exp-poly power must exceed -1")
    a = lam.real
    if k <= 0.0:
        M, omega = 1.0, a
    else:
        # t^k e^(-theta t) peaks at t = k / theta
        theta = max(0.1 * abs(a), 0.05)
        M, omega = (k / (np.e * theta)) ** k, a - theta

    if k == 0.0:
        def rho(t):
            return np.exp(-lam * np.asarray(t))
    else:
        def rho(t):
            t = np.asarray(t, dtype=float)
            return t**k * np.exp(-lam * t)

    def log_ext(z):
        return k * np.log(z) - lam * z

    def closed(z):
        return gamma_fn(k + 1.0) / (np.asarray(z, dtype=complex) + lam) ** (k + 1.0)

    return rho, (M * 1.0000001, omega), log_ext, closed


def exponential_measure(lam, margin=0.05):
    """rho(t) = exp(-lam t)."""
    return exp_poly_measure(0.0, lam, margin)


def exp_poly_measure(power, lam, margin=0.05):
    """rho(t) = t^power exp(-lam t), power > -1."""
    rho, bound, log_ext, closed = _exp_poly_parts(power, lam)
    lam = complex(lam)
    spec = {"atoms": [], "margin_delta": margin}
    if power == 0:
        spec["density"] = {"name": "exp", "lambda": [lam.real, lam.imag]}
    else:
        spec["density"] = {"name": "exp-poly", "power": float(power), "lambda": [lam.real, lam.imag]}
    return BorelMeasure(
        density=rho,
        bound=bound,
        margin=margin,
        singular_power=float(power),
        log_extension=log_ext,
        laplace_closed=closed,
        label=f"t^{power:g} exp(-({lam:g}) t)" if power else f"exp(-({lam:g}) t)",
        spec=spec,
    )


def dirac_measure(t0=0.0, weight=1.0, margin=0.05):
    weight = complex(weight)
    spec = {"atoms": [[float(t0), weight.real, weight.imag]], "margin_delta": margin}
    return BorelMeasure(
        atoms=((t0, weight),),
        margin=margin,
        laplace_closed=lambda z: weight * np.exp(-np.asarray(z, dtype=complex) * t0),
        label=f"{weight:g} delta_{t0:g}",
        spec=spec,
    )


def measure_from_spec(spec):
    """Measure from the JSON form {"atoms": [[t, re, im], ...], "density": {...}, "margin_delta": d}."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict):
        raise ValueError("measure specification must be a JSON object")
    margin = float(spec.get("margin_delta", 0.05))
    atoms = []
    for entry in spec.get("atoms", []):
        if len(entry) not in (2, 3):
            raise ValueError(f"atom {entry!r} must be [t, re] or [t, re, im]")
        t, re = entry[0], entry[1]
        im = entry[2] if len(entry) == 3 else 0.0
        atoms.append((float(t), complex(re, im)))
    dens = spec.get("density")
    if dens is None:
        closed = None
        if atoms:
            def closed(z):
                z = np.asarray(z, dtype=complex)
                return sum(w * np.exp(-z * t) for t, w in atoms)
        return BorelMeasure(atoms=tuple(atoms), margin=margin, laplace_closed=closed, spec=spec)
    name = dens.get("name")
    lam = dens.get("lambda", [1.0, 0.0])
    lam = complex(*lam) if isinstance(lam, (list, tuple)) else complex(lam)
    if name == "exp":
        power = 0.0
    elif name == "exp-poly":
        power = float(dens.get("power", 0.0))
    else:
        raise ValueError(f"unknown density {name!r}; expected 'exp' or 'exp-poly'")
    rho, bound, log_ext, closed = _exp_poly_parts(power, lam)

    def closed_all(z):
        z = np.asarray(z, dtype=complex)
        return closed(z) + sum(w * np.exp(-z * t) for t, w in atoms)

    return BorelMeasure(
        atoms=tuple(atoms),
        density=rho,
        bound=bound,
        margin=margin,
        singular_power=power,
        log_extension=log_ext,
        laplace_closed=closed_all,
        spec=spec,
    )


# -- quadrature in t -------------------------------------------------------------


@dataclass(frozen=True)
class QuadraturePlan:
    """Composite Gauss-Legendre on [0, T_max].

    Panels are uniform in u = exp(-t) over (1/64, 1], which resolves the
    smooth structure of exp(-m t) (1 - exp(-t))^j near t = 0, followed by
    panels of width 0.5 in t.
    """

    T_max: float
    nodes_per_panel: int = 24
    tail_bound: float = 0.0
    tol: float = DEFAULT_TOL
    scheme: str = "composite-gauss-legendre"

    def breakpoints(self):
        j = np.arange(_NEAR_ZERO_PANELS)
        near = -np.log1p(-j / _NEAR_ZERO_PANELS)
        near = near[near < self.T_max]
        start = near[-1] if near.size else 0.0
        n_far = max(1, int(np.ceil((self.T_max - start) / _FAR_PANEL_WIDTH)))
        far = np.linspace(start, self.T_max, n_far + 1)
        return np.concatenate([near[:-1], far]) if near.size else far

    @property
    def panels(self):
        return self.breakpoints().size - 1


def tail_bound(measure, growth, T):
    """Bound on int_T^inf |rho(t)| M_f exp(omega_f t) dt."""
    if measure.density is None:
        return 0.0
    M_rho, omega_rho = measure.bound
    M_f, omega_f = growth
    gap = omega_rho - omega_f
    if gap <= 0:
        return np.inf
    return M_rho * M_f * np.exp(-gap * T) / gap


def required_T_max(measure, growth, tol):
    if measure.density is None:
        return 0.0
    M_rho, omega_rho = measure.bound
    M_f, omega_f = growth
    gap = omega_rho - omega_f
    if gap <= 0:
        raise AdmissibilityError(
            f"density decay omega_rho = {omega_rho:.6g} does not beat the growth rate {omega_f:.6g}"
        )
    return max(1.0, np.log(max(M_rho * M_f / (gap * tol), 1.0)) / gap)


def plan_for(measure, growth=(1.0, 0.0), tol=DEFAULT_TOL, nodes_per_panel=24):
    """Smallest plan whose tail bound is below tol / 10."""
    T = required_T_max(measure, growth, tol / 10.0)
    if T > _MAX_T:
        raise AdmissibilityError(f"decay margin too small: T_max would be {T:.3g}")
    return QuadraturePlan(T, nodes_per_panel, tail_bound(measure, growth, T), tol)


def check_plan(plan, measure, growth):
    bound = tail_bound(measure, growth, plan.T_max)
    if bound > plan.tol:
        raise PlanTooSmallError(required_T_max(measure, growth, plan.tol), bound, plan.tol)
    return bound


def density_rule(measure, plan):
    """Nodes t and weights w rho(t) for integrals int rho(t) g(t) dt over [0, T_max]."""
    bp = plan.breakpoints()
    n = plan.nodes_per_panel
    k = measure.singular_power
    if float(k).is_integer() and k >= 0:
        t, w = composite_gauss_legendre(bp, n)
        return t, w * measure.density(t)
    # rho(t) = t^k r(t): Gauss-Jacobi on the first panel
    t0, w0 = gauss_jacobi_left(bp[1], k, n)
    t1, w1 = composite_gauss_legendre(bp[1:], n)
    t = np.concatenate([t0, t1])
    w = np.concatenate([w0 * measure.density(t0) / t0**k, w1 * measure.density(t1)])
    return t, w


def laplace_transform(measure, z, tol=1e-13):
    """int exp(-z t) dnu(t), by quadrature for the density part."""
    z_arr = np.asarray(z, dtype=complex)
    out = np.zeros(z_arr.shape, dtype=complex)
    for t0, w in measure.atoms:
        out += w * np.exp(-z_arr * t0)
    if measure.density is not None:
        re_min = float(np.min(z_arr.real)) if z_arr.size else 0.0
        if re_min <= -measure.omega:
            raise ValueError(
                f"Laplace integral diverges: Re z = {re_min:.6g} <= -omega_rho = {-measure.omega:.6g}"
            )
        # the integrand is bounded by M exp(-(omega + Re z) t)
        plan = plan_for(measure, (1.0, -re_min), tol)
        t, w = density_rule(measure, plan)
        flat = z_arr.reshape(-1)
        vals = np.array([np.sum(w * np.exp(-zz * t)) for zz in flat])
        out += vals.reshape(z_arr.shape)
    return out[()] if out.ndim == 0 else out


# -- subordinated matrices ---------------------------------------------------


def subordinate_matrix(flow, measure, N, plan=None, tol=DEFAULT_TOL, circle_plan=None):
    """Compression of H_nu = int C_phi_t dnu(t) on H^2.

    The affine flow uses exact upper-triangular compressions at every node;
    other flows accumulate sum w rho(t) phi_t(z_j)^k on a sampling circle
    and extract coefficients with a single FFT.
    """
    ok, reason = measure.admissibility(flow.type_bound(2.0))
    if not ok:
        raise AdmissibilityError(f"measure not admissible for the {flow.name} flow on H^2: {reason}")
    growth = flow.growth_bound(2.0)
    if measure.density is not None:
        if plan is None:
            plan = plan_for(measure, growth, tol)
        else:
            check_plan(plan, measure, growth)

    affine = flow.name == "affine"
    if affine:
        out = np.zeros((N + 1, N + 1), dtype=complex)
        for t0, w in measure.atoms:
            e = np.exp(-t0)
            out += w * composition_matrix_affine(e, 1.0 - e, N).entries
        if measure.density is not None:
            t, w = density_rule(measure, plan)
            out += _affine_weighted_sum(t, w, N)
        return OperatorMatrix(out, "upper", "exact-upper")

    cp = circle_plan or CirclePlan.for_order(N)
    z = cp.points()
    acc = np.zeros((cp.sample_count, N + 1), dtype=complex)
    nodes, weights = [], []
    if measure.atoms:
        nodes.append(np.array([t for t, _ in measure.atoms]))
        weights.append(np.array([w for _, w in measure.atoms]))
    if measure.density is not None:
        t, w = density_rule(measure, plan)
        nodes.append(t)
        weights.append(w)
    t_all = np.concatenate(nodes)
    w_all = np.concatenate(weights)
    for start in range(0, t_all.size, 256):
        tc, wc = t_all[start : start + 256], w_all[start : start + 256]
        W = flow.phi_raw(tc[:, None], z[None, :])
        P = np.broadcast_to(wc[:, None], W.shape).astype(complex)
        for k in range(N + 1):
            acc[:, k] += P.sum(axis=0)
            P = P * W
    head, _ = coeffs_from_samples(acc, cp, N)
    return OperatorMatrix(head)


def _affine_weighted_sum(t, w, N):
    """sum_j w_j M(phi_{t_j}) for the affine flow, built column by column."""
    a = np.exp(-t)
    b = -np.expm1(-t)
    out = np.zeros((N + 1, N + 1), dtype=complex)
    col = np.zeros((t.size, N + 1))
    col[:, 0] = 1.0
    out[0, 0] = w.sum()
    for k in range(1, N + 1):
        nxt = b[:, None] * col[:, : k + 1]
        nxt[:, 1:] += a[:, None] * col[:, :k]
        col[:, : k + 1] = nxt
        out[: k + 1, k] = w @ col[:, : k + 1]
    return out


# -- pointwise representations --------------------------------------------------


def _require_hyperbolic_split(flow):
    if flow.log_weight is None:
        raise ValueError(f"the {flow.name} flow has no averaging representation")


def _averaging_rule(exponent, panels=64, nodes=16):
    """Rule for int_0^1 u^exponent F(u) du: geometric panels plus Gauss-Jacobi at 0.

    The panel [1/2, 1] is split further: u near 1 is s near z, and for z
    close to the boundary the integrand can have a nearby singularity there
    (at s = -1 for the automorphism flow).
    """
    edges = 2.0 ** -np.arange(panels + 1, dtype=float)
    edges = np.concatenate([np.linspace(1.0, 0.5, 9)[:-1], edges[1:]])
    panels = edges.size - 1
    u_parts, w_parts = [], []
    x, w = gauss_legendre(0.0, 1.0, nodes)
    for j in range(panels):
        lo, hi = edges[j + 1], edges[j]
        u = lo + (hi - lo) * x
        u_parts.append(u)
        w_parts.append((hi - lo) * w * u**exponent)
    u0, w0 = gauss_jacobi_left(edges[-1], exponent, nodes)
    u_parts.append(u0)
    w_parts.append(w0)
    return np.concatenate(u_parts), np.concatenate(w_parts)


def averaging_apply(flow, lam, f, z):
    """(H f)(z) = e^(lam h(z)) int_z^1 h'(s) e^(-lam h(s)) f(s) ds, i.e. nu = e^(-lam t) dt.

    With s = 1 - (1 - z) u and h = -c log(1 - z) + h_reg the integral becomes
    int_0^1 u^(c lam - 1) q(s) e^(lam (h_reg(z) - h_reg(s))) f(s) du with
    q(s) = h'(s) (1 - s).  The real part of the endpoint exponent goes into
    Gauss-Jacobi weights; u^(i c Im lam) stays in the integrand.
    """
    _require_hyperbolic_split(flow)
    lam = complex(lam)
    if lam.real <= 0:
        raise ValueError(f"Re lambda must be positive for the averaging integral, got {lam}")
    if lam.real <= flow.type_bound(2.0):
        warnings.warn(
            f"Re lambda = {lam.real:.4g} lies inside the generator spectrum on H^2",
            SpectralCaveatWarning,
            stacklevel=2,
        )
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1.0):
        raise ValueError("evaluation point outside the open unit disc")
    c = flow.log_weight
    u, w = _averaging_rule(c * lam.real - 1.0)
    flat = z_arr.reshape(-1, 1)
    one_minus_s = (1.0 - flat) * u[None, :]
    s = 1.0 - one_minus_s
    q = flow.q_of_complement(one_minus_s)
    phase = np.exp(1j * c * lam.imag * np.log(u))[None, :]
    shift = np.exp(lam * (flow.h_regular(flat) - flow.h_regular(s)))
    vals = evaluate_near_one(f, s, one_minus_s)
    out = (phase * q * shift * vals) @ w
    out = out.reshape(z_arr.shape)
    return out[()] if out.ndim == 0 else out


def general_subordinated_apply(flow, rho, f, z, plan=None, f_growth=0.0, return_error=False):
    """(H_nu f)(z) = int_0^inf rho(t) f(phi_t(z)) dt for nu = rho(t) dt.

    Along the trajectory s = phi_t(z) one has h'(s) ds = dt, so this is the
    Koenigs-coordinate form of int_z^1 h'(s) rho(h(s) - h(z)) f(s) ds.
    ``rho`` is a BorelMeasure (its atoms are added exactly) or a plain
    density together with an explicit plan.  ``f_growth`` is the rate omega_f
    in |f(phi_t(z))| <= C exp(omega_f t) used for the tail bound.
    """
    if isinstance(rho, BorelMeasure):
        measure = rho
    else:
        if plan is None:
            raise ValueError("a bare density needs an explicit QuadraturePlan")
        measure = None
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1.0):
        raise ValueError("evaluation point outside the open unit disc")
    flat = z_arr.reshape(-1, 1)

    def integrate(t, w):
        comp = flow.phi_complement_raw(t[None, :], flat)
        vals = evaluate_near_one(f, 1.0 - comp, comp)
        return vals @ w

    out = np.zeros(flat.shape[0], dtype=complex)
    error = 0.0
    if measure is not None:
        for t0, wt in measure.atoms:
            out += wt * integrate(np.array([t0]), np.array([1.0]))
        if measure.density is not None:
            if plan is None:
                plan = plan_for(measure, (1.0, f_growth))
            t, w = density_rule(measure, plan)
            out += integrate(t, w)
            if return_error:
                coarse = QuadraturePlan(plan.T_max, plan.nodes_per_panel - 8, plan.tail_bound, plan.tol)
                tc, wc = density_rule(measure, coarse)
                error = float(np.max(np.abs(integrate(tc, wc) - integrate(t, w)))) + plan.tail_bound
    else:
        t, w = composite_gauss_legendre(plan.breakpoints(), plan.nodes_per_panel)
        out += integrate(t, w * rho(t))
    out = out.reshape(z_arr.shape)
    value = out[()] if out.ndim == 0 else out
    return (value, error) if return_error else value


# -- Sector regularity -------------------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    verdict: str  # "pass" | "fail" | "indeterminate"
    reason: str
    sup_small: float = np.nan
    sup_large: float = np.nan
    ratio_small: float = np.nan
    ratio_large: float = np.nan
    witnesses: tuple = ()


def _sector_sups(measure, omega0, delta, eta, xi, samples):
    decades = np.log2(samples)
    n_angles = max(9, samples // 8 + 1)
    arg = xi * (1.0 - 1e-9) * np.linspace(-1.0, 1.0, n_angles)
    radii_small = np.logspace(-decades, 0.0, samples)
    radii_large = np.logspace(0.0, decades, samples)
    rate = omega0 + delta

    def sup(radii, log_weight):
        z = radii[:, None] * np.exp(1j * arg)[None, :]
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            log_val = (log_weight(z) + measure.log_extension(z)).real
        i = np.unravel_index(np.nanargmax(log_val), log_val.shape)
        return float(np.exp(min(log_val[i], 700.0))), complex(z[i])

    small, z_small = sup(radii_small, lambda z: (1.0 - eta) * np.log(z))
    large, z_large = sup(radii_large, lambda z: (1.0 + xi) * np.log(z) + rate * z)
    return small, large, z_small, z_large


def check_measure_regularity(measure, omega0, delta, eta, xi, samples=64):
    """Sampled sector bounds for the density of nu.

    Checks sup |z^(1-eta) rho(z)| over |z| <= 1 and
    sup |z^(1+xi) exp((omega0 + delta) z) rho(z)| over |z| >= 1 in the
    sector |arg z| < xi.  The radial range grows with the sample count, so a
    sup that is finite stays put when ``samples`` doubles (ratio < 1.1 passes)
    while growth by 10x or more fails.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    if not 0.0 < xi < 1.0:
        raise ValueError("xi must lie in (0, 1)")
    if measure.density is None:
        return RegularityReport("fail", "measure has no density")
    if measure.omega <= omega0 + delta:
        return RegularityReport(
            "fail",
            f"exponential moment diverges: omega_rho = {measure.omega:.6g} <= omega_0 + delta = {omega0 + delta:.6g}",
        )
    if not measure.has_sector_extension:
        return RegularityReport("fail", "density has no declared sector extension")

    s1, l1, zs1, zl1 = _sector_sups(measure, omega0, delta, eta, xi, samples)
    s2, l2, zs2, zl2 = _sector_sups(measure, omega0, delta, eta, xi, 2 * samples)
    witnesses = (("small", zs2, s2), ("large", zl2, l2))
    if not (np.isfinite(s2) and np.isfinite(l2)):
        return RegularityReport("fail", "non-finite sector values", s2, l2, np.inf, np.inf, witnesses)
    rs, rl = s2 / s1, l2 / l1
    worst = max(rs, rl)
    if worst < 1.1:
        verdict, reason = "pass", "both suprema stable under sample doubling"
    elif worst >= 10.0:
        verdict, reason = "fail", "a supremum grows at least tenfold under sample doubling"
    else:
        verdict, reason = "indeterminate", "suprema still drifting under sample doubling"
    return RegularityReport(verdict, reason, s2, l2, rs, rl, witnesses)
