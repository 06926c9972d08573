"""Spectral regions, their images under resolvent and Laplace maps, and
finite-section spectral evidence (pseudospectra, local radius traces,
eigenvector fields).

Eigenvalues of a non-normal compression say little about the operator, so
the numerical evidence here is smallest singular values of A - zI and
norms of powers, never the eigenvalues of the truncated matrix.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import zeta

from .analytic import CirclePlan, binomial_coeffs, coeffs_from_samples
from .quadrature import gauss_legendre
from .semiflows import eigenfunction
from .subordination import general_subordinated_apply, laplace_transform, subordinate_matrix


def _c(z):
    return complex(z)


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True, eq=False)
class SpectralRegion:
    """Subset of C with a membership predicate and a boundary sampler.

    ``contains(z, tol)`` widens closed boundaries by ``tol`` so that sampled
    boundary points test as members.
    """

    kind: str
    params: dict
    _contains: Callable = field(repr=False)
    _boundary: Callable = field(repr=False)
    _sample: Callable | None = field(default=None, repr=False)
    _boundary_distance: Callable | None = field(default=None, repr=False)

    def contains(self, z, tol=1e-9):
        out = self._contains(np.asarray(z, dtype=complex), tol)
        return out[()] if np.ndim(out) == 0 else out

    def boundary_sample(self, count):
        return self._boundary(int(count))

    def sample_points(self, n):
        if self._sample is None:
            raise ValueError(f"no interior sampler for {self.kind} regions")
        return self._sample(int(n))

    def boundary_distance(self, z):
        if self._boundary_distance is None:
            raise ValueError(f"no closed-form boundary for {self.kind} regions")
        return self._boundary_distance(np.asarray(z, dtype=complex))

    @property
    def resolution(self):
        return self.params.get("resolution")

    def to_dict(self):
        if self.kind == "cloud":
            return {"kind": "cloud", "points": self.params["points"], "resolution": self.params["resolution"]}
        return {"kind": self.kind, "params": self.params}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _tan_heights(count):
    j = np.arange(count)
    return np.tan(np.pi * (j + 0.5) / count - 0.5 * np.pi)


def _right_halfplane_samples(n):
    # Moebius image (1 + w)/(1 - w) of a polar grid on the unit disc
    r = np.sqrt((np.arange(n) + 0.5) / n)
    theta = 2.0 * np.pi * np.arange(n) / n
    w = np.concatenate([[0.0], (r[:, None] * np.exp(1j * theta)[None, :]).ravel()])
    return np.concatenate([(1.0 + w) / (1.0 - w), 1j * _tan_heights(n)])


def halfplane(c, side="le", closed=True):
    """{Re z <= c} (side "le") or {Re z >= c} (side "ge"); open when closed=False."""
    c = float(c)
    sgn = 1.0 if side == "le" else -1.0
    if side not in ("le", "ge"):
        raise ValueError("side must be 'le' or 'ge'")

    def contains(z, tol):
        x = sgn * (z.real - c)
        return x <= tol if closed else x < 0.0

    return SpectralRegion(
        "halfplane",
        {"c": c, "side": side, "closed": closed},
        contains,
        lambda n: c + 1j * _tan_heights(n),
        lambda n: c - sgn * _right_halfplane_samples(n),
        lambda z: np.abs(z.real - c),
    )


def strip(a, b, left_closed=True, right_closed=True):
    """{a <= Re z <= b}, each side open or closed."""
    a, b = float(a), float(b)
    if a > b:
        raise ValueError("strip needs a <= b")

    def contains(z, tol):
        x = z.real
        left = x >= a - tol if left_closed else x > a
        right = x <= b + tol if right_closed else x < b
        return left & right

    def boundary(n):
        y = _tan_heights(max(1, n // 2))
        return np.concatenate([a + 1j * y, b + 1j * y])

    def sample(n):
        x = np.linspace(a, b, n)
        return (x[:, None] + 1j * _tan_heights(n)[None, :]).ravel()

    return SpectralRegion(
        "strip",
        {"a": a, "b": b, "left_closed": left_closed, "right_closed": right_closed},
        contains,
        boundary,
        sample,
        lambda z: np.minimum(np.abs(z.real - a), np.abs(z.real - b)),
    )


def _circle_points(center, radius, n):
    theta = 2.0 * np.pi * np.arange(n) / n
    return center + radius * np.exp(1j * theta)


def _polar_fill(center, r_in, r_out, n):
    r = np.sqrt(np.linspace(r_in**2, r_out**2, n))
    theta = 2.0 * np.pi * np.arange(n) / n
    ring = (center + r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    # a zero inner radius collapses the first ring onto the centre
    return ring[n - 1 :] if r_in == 0.0 else ring


def disk(center, radius):
    center, radius = _c(center), float(radius)
    return SpectralRegion(
        "disk",
        {"center": _pair(center), "radius": radius},
        lambda z, tol: np.abs(z - center) <= radius + tol,
        lambda n: _circle_points(center, radius, n),
        lambda n: _polar_fill(center, 0.0, radius, n),
        lambda z: np.abs(np.abs(z - center) - radius),
    )


def circle(center, radius):
    center, radius = _c(center), float(radius)
    return SpectralRegion(
        "circle",
        {"center": _pair(center), "radius": radius},
        lambda z, tol: np.abs(np.abs(z - center) - radius) <= tol,
        lambda n: _circle_points(center, radius, n),
        lambda n: _circle_points(center, radius, n * n),
        lambda z: np.abs(np.abs(z - center) - radius),
    )


def annulus(center, r_in, r_out):
    center, r_in, r_out = _c(center), float(r_in), float(r_out)
    if not 0.0 <= r_in <= r_out:
        raise ValueError("annulus needs 0 <= r_in <= r_out")

    def boundary(n):
        half = max(1, n // 2)
        return np.concatenate([_circle_points(center, r_in, half), _circle_points(center, r_out, half)])

    def contains(z, tol):
        d = np.abs(z - center)
        return (d >= r_in - tol) & (d <= r_out + tol)

    return SpectralRegion(
        "annulus",
        {"center": _pair(center), "r_in": r_in, "r_out": r_out},
        contains,
        boundary,
        lambda n: _polar_fill(center, r_in, r_out, n),
        lambda z: np.minimum(np.abs(np.abs(z - center) - r_in), np.abs(np.abs(z - center) - r_out)),
    )


def point_cloud(points, resolution=None):
    """Sampled region: z belongs when it lies within ``resolution`` of a sample."""
    pts = np.asarray(points, dtype=complex).ravel()
    xy = np.column_stack([pts.real, pts.imag])
    tree = cKDTree(xy)
    if resolution is None:
        d, _ = tree.query(xy, k=2)
        resolution = float(d[:, 1].max()) if pts.size > 1 else 0.0

    def contains(z, tol):
        q = np.column_stack([z.real.ravel(), z.imag.ravel()])
        d, _ = tree.query(q)
        return (d <= resolution + tol).reshape(z.shape)

    def boundary(n):
        idx = np.linspace(0, pts.size - 1, min(n, pts.size)).astype(int)
        return pts[idx]

    return SpectralRegion(
        "cloud",
        {"points": [[p.real, p.imag] for p in pts], "resolution": resolution},
        contains,
        boundary,
        lambda n: pts,
    )


def negate(region):
    """The region -S (used for sigma(-Delta) from sigma(Delta))."""
    p = region.params
    if region.kind == "halfplane":
        return halfplane(-p["c"], "ge" if p["side"] == "le" else "le", p["closed"])
    if region.kind == "strip":
        return strip(-p["b"], -p["a"], p["right_closed"], p["left_closed"])
    if region.kind in ("disk", "circle"):
        ctor = disk if region.kind == "disk" else circle
        return ctor(-complex(*p["center"]), p["radius"])
    if region.kind == "annulus":
        return annulus(-complex(*p["center"]), p["r_in"], p["r_out"])
    raise ValueError(f"cannot negate a {region.kind} region")


# -- closed-form spectra of the catalog --------------------------------------------


def _require_hyperbolic(flow):
    if flow.classification != "hyperbolic":
        raise ValueError(f"the {flow.name} flow is {flow.classification}; closed forms cover hyperbolic flows")


def generator_spectrum_region(flow, p):
    """sigma(Delta; H^p) for a hyperbolic flow."""
    _require_hyperbolic(flow)
    edge = np.pi / (p * flow.gamma)
    if flow.contains_strip:
        if flow.beta_max != flow.gamma:
            raise ValueError("closed form known only when h(D) is itself a strip")
        return strip(-edge, edge)
    return halfplane(edge)


def generator_point_spectrum_region(flow, p):
    """(inner, outer) with inner contained in sigma_p(Delta; H^p) contained in outer."""
    _require_hyperbolic(flow)
    right = np.pi / (p * flow.gamma)
    if not flow.contains_strip:
        return halfplane(right, closed=False), halfplane(right, closed=True)
    left = -np.pi / (p * flow.beta_max)
    return strip(left, right, False, False), strip(left, right, False, True)


def semigroup_spectrum_region(flow, p, t):
    """sigma(C_phi_t; H^p): closure of exp(t sigma(Delta)) for the catalog."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if flow.classification == "parabolic":
        return circle(0.0, 1.0)
    _require_hyperbolic(flow)
    r = np.exp(np.pi * t / (p * flow.gamma))
    if flow.contains_strip:
        return annulus(0.0, 1.0 / r, r)
    return disk(0.0, r)


def spectral_radius_formula(flow, p, t):
    """r(C_phi_t; H^p) = phi_t'(1)^(-1/p) = exp(pi t / (p gamma))."""
    if t == 0:
        return 1.0
    _require_hyperbolic(flow)
    return float(np.exp(np.pi * t / (p * flow.gamma)))


# -- images under spectral maps -------------------------------------------------------


def _disk_from_line(d):
    """Image of {Re zeta >= d} (d > 0) or {Re zeta <= d} (d < 0) under 1/zeta."""
    return 1.0 / (2.0 * d), 1.0 / (2.0 * abs(d))


def map_region_resolvent(region, lam):
    """{0} union {1/(lam - z) : z in region} for a half-plane or strip base.

    Other bases give a point cloud of mapped samples.
    """
    lam = complex(lam)
    if region.contains(lam, tol=0.0):
        raise ValueError(f"lambda = {lam} lies in the region; the resolvent map is undefined")
    base = region.params
    if region.kind == "halfplane":
        d = lam.real - base["c"]
        c0, r0 = _disk_from_line(d)
        disks = [(c0, r0)]
        holes = []
    elif region.kind == "strip":
        d1, d2 = lam.real - base["b"], lam.real - base["a"]
        near, far = (d1, d2) if abs(d1) < abs(d2) else (d2, d1)
        disks = [_disk_from_line(near)]
        holes = [_disk_from_line(far)]
    else:
        pts = region.sample_points(128)
        return point_cloud(np.concatenate([1.0 / (lam - pts), [0.0]]))

    def contains(w, tol):
        out = np.ones(w.shape, dtype=bool)
        for c0, r0 in disks:
            out &= np.abs(w - c0) <= r0 + tol
        for c0, r0 in holes:
            out &= np.abs(w - c0) >= r0 - tol
        return out | (np.abs(w) <= tol)

    def boundary(n):
        pts = region.boundary_sample(n)
        return np.concatenate([1.0 / (lam - pts), [0.0]])

    def sample(n):
        pts = region.sample_points(n)
        return np.concatenate([1.0 / (lam - pts), [0.0]])

    def bdist(w):
        out = np.full(w.shape, np.inf)
        for c0, r0 in disks + holes:
            out = np.minimum(out, np.abs(np.abs(w - c0) - r0))
        return out

    closed = {"outer_disk": {"center": _pair(disks[0][0]), "radius": disks[0][1]}}
    if holes:
        closed["inner_disk"] = {"center": _pair(holes[0][0]), "radius": holes[0][1]}
    params = {"map": "resolvent", "lambda": _pair(lam), "base": region.to_dict(), "closed_form": closed}
    return SpectralRegion("mapped", params, contains, boundary, sample, bdist)


@dataclass(frozen=True)
class LaplaceImage:
    region: SpectralRegion
    violations: int
    used_closed_form: bool


def map_region_laplace(region, measure, include_infinity=True, sampling=200):
    """Point cloud of L(nu)(z) over samples of the region, plus L(nu)(inf).

    L(nu)(inf) is the total weight of atoms at t = 0 (zero for a pure
    density).  Samples where the transform diverges are dropped and counted.
    """
    pts = region.sample_points(sampling)
    ok = np.ones(pts.shape, dtype=bool)
    if measure.density is not None:
        ok = pts.real > -measure.omega
    closed = measure.laplace_closed is not None
    good = pts[ok]
    vals = measure.laplace_closed(good) if closed else laplace_transform(measure, good)
    vals = vals[np.isfinite(vals)]
    if include_infinity:
        vals = np.concatenate([vals, [measure.total_mass_atoms(at_zero_only=True)]])
    cloud = point_cloud(vals)
    return LaplaceImage(cloud, int((~ok).sum()), closed)


# -- pseudospectra -------------------------------------------------------------------


def _threads():
    env = os.environ.get("SUBSPEC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sigma_min(A, z, chunk=32):
    """Smallest singular value of A - z I for each z (array in, array out)."""
    M = A.entries if hasattr(A, "entries") else np.asarray(A, dtype=complex)
    z_arr = np.asarray(z, dtype=complex).ravel()
    n = M.shape[0]
    eye = np.eye(n)
    blocks = [z_arr[i : i + chunk] for i in range(0, z_arr.size, chunk)]

    def work(zs):
        stack = M[None, :, :] - zs[:, None, None] * eye[None, :, :]
        return np.linalg.svd(stack, compute_uv=False)[:, -1]

    workers = min(_threads(), max(1, len(blocks)))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    out = np.concatenate(parts) if parts else np.zeros(0)
    return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])


@dataclass(frozen=True, eq=False)
class PseudospectrumGrid:
    box: tuple
    resolution: tuple
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray  # values[j, i] at x[i] + 1j y[j]
    order: int

    def rows(self):
        """(re, im, sigma_min) triples in row-major order (y outer, x inner)."""
        X, Y = np.meshgrid(self.x, self.y)
        return np.column_stack([X.ravel(), Y.ravel(), self.values.ravel()])

    def nearest(self, z):
        i = int(np.argmin(np.abs(self.x - z.real)))
        j = int(np.argmin(np.abs(self.y - z.imag)))
        return self.values[j, i]


def pseudospectrum_grid(A, box, resolution):
    x0, x1, y0, y1 = map(float, box)
    nx, ny = map(int, resolution)
    if nx > 400 or ny > 400:
        raise ValueError("grid resolution is capped at 400 x 400")
    if not (x1 > x0 and y1 > y0):
        raise ValueError("box must satisfy x0 < x1 and y0 < y1")
    x = np.linspace(x0, x1, nx)
    y = np.linspace(y0, y1, ny)
    values = np.empty((ny, nx))
    real = np.all(A.entries.imag == 0)
    mirrored = real and np.allclose(y, -y[::-1], atol=1e-12, rtol=0.0)
    rows = np.arange(ny) if not mirrored else np.arange(ny // 2, ny)
    Z = x[None, :] + 1j * y[rows][:, None]
    values[rows] = sigma_min(A, Z)
    if mirrored:
        # sigma_min(A - conj(z)) = sigma_min(A - z) for real A
        values[: ny // 2] = values[ny - 1 - np.arange(ny // 2)]
    return PseudospectrumGrid((x0, x1, y0, y1), (nx, ny), x, y, values, A.order)


def _march_rays(A, thetas, eps, r_start, min_step):
    """Outermost crossing r with sigma_min(A - r e^{i theta}) <= eps on each ray.

    sigma_min(A - zI) is 1-Lipschitz in z, so a step of sigma_min - eps
    cannot jump over a crossing; ``min_step`` only bounds the work near
    thin components.  Rays that fall below the best crossing found so far
    are dropped, since they cannot raise the maximum.  Returns
    (r_hit, r_prev) with sigma_min > eps at r_prev.
    """
    u = np.exp(1j * thetas)
    r = np.full(thetas.size, r_start)
    prev = r.copy()
    hit = np.full(thetas.size, np.nan)
    active = np.ones(thetas.size, dtype=bool)
    while active.any():
        idx = np.flatnonzero(active)
        s = np.atleast_1d(sigma_min(A, r[idx] * u[idx]))
        done = s <= eps
        hit[idx[done]] = r[idx[done]]
        active[idx[done]] = False
        go = idx[~done]
        prev[go] = r[go]
        r[go] -= np.maximum(s[~done] - eps, min_step)
        floor = np.nanmax(hit) if np.any(~np.isnan(hit)) else 0.0
        active[go[r[go] < floor]] = False
    return hit, prev


def _bisect_radius(A, theta, r_in, r_out, eps, tol):
    """Bisection for the crossing between r_in (sigma_min <= eps) and r_out."""
    u = np.exp(1j * theta)
    lo, hi = r_in, r_out
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sigma_min(A, mid * u) <= eps:
            lo = mid
        else:
            hi = mid
    return lo


def pseudospectral_radius(A, eps, n_angles=64, min_step=1e-3, tol=1e-3):
    """max |z| with sigma_min(A - zI) <= eps.

    Rays are marched inward from ||A|| + eps (beyond that radius
    sigma_min > eps) with Lipschitz-safe steps, the first crossing on each
    ray is bisected, and the best ray is refined over nearby angles.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    r_start = float(np.linalg.norm(A.entries, 2)) + eps
    if np.all(A.entries.imag == 0):
        # conjugate symmetry: the upper half-plane suffices
        thetas = np.pi * np.arange(n_angles // 2 + 1) / (n_angles // 2)
    else:
        thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    hit, _ = _march_rays(A, thetas, eps, r_start, min_step)
    if np.all(np.isnan(hit)):
        return 0.0
    best = int(np.nanargmax(hit))
    dtheta = 2.0 * np.pi / n_angles
    local = thetas[best] + dtheta * np.linspace(-1.0, 1.0, 17)
    hit, prev = _march_rays(A, local, eps, r_start, min_step)
    radius = 0.0
    for theta, r_in, r_out in zip(local, hit, prev):
        if not np.isnan(r_in):
            radius = max(radius, _bisect_radius(A, theta, r_in, max(r_out, r_in), eps, tol))
    return radius


# -- local spectral radius -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class LocalRadiusTrace:
    n: np.ndarray
    r: np.ndarray
    log_norms: np.ndarray
    nilpotent_at: int | None
    exact_sections: bool
    note: str

    def strictly_increasing(self, n_from=2, n_to=None):
        n_to = int(self.n[-1]) if n_to is None else n_to
        sel = (self.n >= n_from) & (self.n <= n_to)
        return bool(np.all(np.diff(self.r[sel]) > 0))

    def rows(self):
        return np.column_stack([self.n, self.r])


def local_radius_trace(A, x, n_max, renorm_every=1):
    """r_n = ||A^n x||^(1/n), n = 1..n_max, by renormalised powering.

    The log of the accumulated scale is carried separately so the trace
    neither overflows nor underflows.
    """
    v = np.array(x.coeffs if hasattr(x, "coeffs") else x, dtype=complex)
    if v.size != A.order + 1:
        raise ValueError("vector length does not match the matrix order")
    norm0 = np.linalg.norm(v)
    if norm0 == 0:
        raise ValueError("x must be nonzero")
    log_scale = np.log(norm0)
    v = v / norm0
    M = A.entries
    logs = np.empty(n_max)
    nilpotent_at = None
    for n in range(1, n_max + 1):
        v = M @ v
        s = np.linalg.norm(v)
        if s == 0.0:
            nilpotent_at = n
            logs[n - 1 :] = -np.inf
            break
        logs[n - 1] = log_scale + np.log(s)
        if n % renorm_every == 0 or s > 1e100 or s < 1e-100:
            log_scale += np.log(s)
            v = v / s
    n_arr = np.arange(1, n_max + 1)
    with np.errstate(over="ignore"):
        r = np.exp(logs / n_arr)
    exact = A.exactness == "exact-lower"
    note = (
        "lower-triangular compression: values are exact norms of P_N T^n x"
        if exact
        else "values are norms of powers of the compression"
    )
    if nilpotent_at is not None:
        note += f"; nilpotent at truncation from n = {nilpotent_at}"
    return LocalRadiusTrace(n_arr, r, logs, nilpotent_at, exact, note)


# -- eigenvector fields ------------------------------------------------------------


def disc_probe_points(count=32, radius=0.9):
    """Deterministic spiral of points filling |z| <= radius."""
    j = np.arange(count)
    golden = np.pi * (3.0 - np.sqrt(5.0))
    return radius * np.sqrt((j + 0.5) / count) * np.exp(1j * golden * j)


@dataclass(frozen=True, eq=False)
class EigenfieldReport:
    mode: str
    mu: np.ndarray
    eigenvalues: np.ndarray
    residuals: np.ndarray
    tolerances: np.ndarray
    constant: np.ndarray
    cauchy_residuals: np.ndarray

    @property
    def max_residual(self):
        return float(np.max(self.residuals))

    @property
    def max_cauchy(self):
        return float(np.max(self.cauchy_residuals)) if self.cauchy_residuals.size else 0.0


def _cell_contour_integrals(F, mu, nodes=16):
    """Contour integral of F around each grid cell (counter-clockwise)."""
    x, w = gauss_legendre(0.0, 1.0, nodes)
    ny, nx = mu.shape
    out = np.zeros((max(ny - 1, 0), max(nx - 1, 0)))
    for j in range(ny - 1):
        for i in range(nx - 1):
            corners = [mu[j, i], mu[j, i + 1], mu[j + 1, i + 1], mu[j + 1, i]]
            total = 0.0
            for a, b in zip(corners, corners[1:] + corners[:1]):
                total += (b - a) * np.sum(w * F(a + (b - a) * x))
            out[j, i] = abs(total)
    return out


def _eigen_coefficients(flow, mu, N):
    if flow.name == "affine":
        return binomial_coeffs(mu).sequence(N + 1)
    plan = CirclePlan(0.9, 4 * 4 * (N + 1))
    head, _ = coeffs_from_samples(eigenfunction(flow, mu)(plan.points()), plan, N)
    return head.coeffs


def eigenfield_witness(flow, measure, mu_grid, p=2.0, mode="pointwise", points=None, N=128):
    """Residuals of H_nu e^(mu h) = L(nu)(-mu) e^(mu h) over a grid of mu.

    ``mu_grid`` is a 2-D array (rows of constant Im mu) so that the
    analyticity of mu -> L(nu)(-mu) can also be checked cell by cell through
    contour integrals, which vanish for holomorphic functions.
    """
    mu = np.atleast_2d(np.asarray(mu_grid, dtype=complex))
    inner, _ = generator_point_spectrum_region(flow, p)
    if not np.all(inner.contains(mu, tol=0.0)):
        raise ValueError("mu outside the inner point-spectrum region: e^(mu h) is not in H^p")
    flat = mu.ravel()
    eig = np.asarray(laplace_transform(measure, -flat), dtype=complex)
    residuals = np.empty(flat.size)
    tolerances = np.zeros(flat.size)
    constants = np.zeros(flat.size)
    if mode == "pointwise":
        z = disc_probe_points() if points is None else np.asarray(points, dtype=complex)
        for i, m in enumerate(flat):
            f = eigenfunction(flow, m)
            Hf = general_subordinated_apply(flow, measure, f, z, f_growth=max(m.real, 0.0))
            residuals[i] = np.max(np.abs(Hf - eig[i] * f(z)))
    elif mode == "coefficient":
        A = subordinate_matrix(flow, measure, N)
        half = N // 2 + 1
        amax = float(np.max(np.abs(A.entries)))
        for i, m in enumerate(flat):
            x = _eigen_coefficients(flow, m, N)
            r = A.entries @ x - eig[i] * x
            residuals[i] = np.max(np.abs(r[:half]))
            k = np.arange(1, N + 1)
            C = amax * float(np.max(np.abs(x[1:]) * k ** (1.0 - m.real)))
            s = 1.0 - m.real
            tail = zeta(s, N + 1) if s > 1.0 else np.inf
            constants[i] = C
            tolerances[i] = C * tail
    else:
        raise ValueError("mode must be 'pointwise' or 'coefficient'")
    cauchy = _cell_contour_integrals(lambda m: laplace_transform(measure, -m), mu)
    return EigenfieldReport(mode, flat, eig, residuals, tolerances, constants, cauchy)
