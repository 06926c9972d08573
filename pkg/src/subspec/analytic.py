"""Truncated power series on the unit disc.

A function f(z) = sum c_n z^n is carried by its first N+1 Taylor
coefficients.  Circle sampling, coefficient extraction and integral means
are done with the FFT; every routine here is a pure function of its inputs.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import numpy as np
from scipy.optimize import minimize_scalar


class AliasingError(ValueError):
    """Too few circle samples for the requested number of coefficients."""


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Taylor coefficients c_0..c_N of an analytic function on the disc."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a coefficient vector needs at least one entry")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation_order(self):
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def padded(self, N):
        """Coefficients as an array of length N+1 (zero-padded or cut)."""
        out = np.zeros(N + 1, dtype=complex)
        m = min(N + 1, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def __repr__(self):
        return f"CoeffVector(N={self.truncation_order}, coeffs={self.coeffs!r})"


@dataclass(frozen=True)
class CirclePlan:
    """K equispaced samples on the circle |z| = radius."""

    radius: float = 0.9
    sample_count: int = 64

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ValueError(f"sampling radius must lie in (0, 1), got {self.radius}")
        if self.sample_count <= 0 or self.sample_count % 4:
            raise ValueError(
                f"sample count must be a positive multiple of 4, got {self.sample_count}"
            )

    @classmethod
    def for_order(cls, N, radius=0.9):
        """Default plan for N+1 coefficients: K = 4(N+1)."""
        return cls(radius=radius, sample_count=4 * (N + 1))

    def points(self):
        j = np.arange(self.sample_count)
        return self.radius * np.exp(2j * np.pi * j / self.sample_count)


def evaluate(f, z):
    """Horner evaluation of the truncated series at z (scalar or array), |z| <= 1."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) > 1.0 + 1e-15):
        raise ValueError("evaluation point outside the closed unit disc")
    acc = np.zeros_like(z_arr)
    for c in f.coeffs[::-1]:
        acc = acc * z_arr + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(f):
    N = f.truncation_order
    if N == 0:
        return CoeffVector(np.zeros(1))
    n = np.arange(1, N + 1)
    return CoeffVector(n * f.coeffs[1:])


def circle_values(coeffs, plan):
    """Values of sum c_n z^n at the plan's sample points.

    Coefficients are folded modulo K before a single inverse FFT, which is
    algebraically the same sum that Horner evaluation computes.
    """
    c = np.asarray(coeffs, dtype=complex)
    K = plan.sample_count
    scaled = c * plan.radius ** np.arange(c.size)
    if c.size > K:
        pad = (-c.size) % K
        scaled = np.concatenate([scaled, np.zeros(pad)]).reshape(-1, K).sum(axis=0)
    else:
        scaled = np.concatenate([scaled, np.zeros(K - c.size)])
    return np.fft.ifft(scaled) * K


def coeffs_from_samples(samples, plan, N):
    """Recover c_0..c_N from samples at r*omega^j, omega = exp(2 pi i / K).

    Returns ``(CoeffVector, alias_estimate)``.  The estimate extrapolates the
    decay of the upper FFT bins to predict the size of the first aliased
    coefficient c_{n+K} r^K and scales it by the r^-N amplification; it is a
    diagnostic, not a rigorous bound.
    """
    s = np.asarray(samples, dtype=complex)
    K = plan.sample_count
    if s.shape[0] != K:
        raise ValueError(f"expected {K} samples, got {s.shape[0]}")
    if K < 2 * (N + 1):
        raise AliasingError(f"K={K} samples cannot resolve {N + 1} coefficients without aliasing")
    bins = np.fft.fft(s, axis=0) / K
    r = plan.radius
    scale = r ** (-np.arange(N + 1, dtype=float))
    head = bins[: N + 1] * (scale if s.ndim == 1 else scale[:, None])
    alias = _alias_estimate(bins, N, K, r)
    if s.ndim == 1:
        return CoeffVector(head), alias
    return head, alias


def _alias_estimate(bins, N, K, r):
    mags = np.abs(bins)
    if mags.ndim > 1:
        mags = mags.max(axis=1)
    # the decay between bins K/4 and K/2 predicts the size of bins n + K
    lo, hi = max(N + 1, K // 4), K // 2
    if hi <= lo:
        return float(r ** (-N) * mags[N + 1 :].sum())
    b_lo, b_hi = mags[lo], mags[hi]
    floor = 1e-15 * max(mags.max(), np.finfo(float).tiny)
    if b_hi <= floor:
        return float(r ** (-N) * b_hi)
    q = (b_hi / max(b_lo, floor)) ** (1.0 / (hi - lo))
    if q >= 1.0:
        return float(r ** (-N) * b_hi * (K - hi))
    return float(r ** (-N) * b_hi * q ** (K - hi) / (1.0 - q**K))


def h2_norm(f):
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def hp_mean(f, p, plan):
    """Integral mean M_p(r, f) on the plan's circle, discretised with K nodes."""
    if not 1.0 <= p < np.inf:
        raise ValueError(f"p must satisfy 1 <= p < inf, got {p}")
    coeffs = f.coeffs if isinstance(f, CoeffVector) else np.asarray(f, dtype=complex)
    vals = np.abs(circle_values(coeffs, plan))
    return float(np.mean(vals**p) ** (1.0 / p))


@dataclass(frozen=True)
class BinomialCoefficients:
    """Coefficients of (1 - z)^(-lam): c_0 = 1, c_{n+1} = c_n (lam + n) / (n + 1).

    Calling with an integer returns c_n; calling with an integer array
    returns the matching coefficients.  A ``Fraction`` (or int) ``lam`` with
    an integer argument is evaluated in exact rational arithmetic.
    """

    lam: complex

    def __call__(self, n):
        if isinstance(n, (int, np.integer)) and isinstance(self.lam, (Fraction, int)):
            c = Fraction(1)
            for k in range(int(n)):
                c = c * (self.lam + k) / (k + 1)
            return c
        idx = np.asarray(n, dtype=np.int64)
        if idx.size == 0:
            return np.zeros(0, dtype=complex)
        if np.any(idx < 0):
            raise ValueError("coefficient index must be non-negative")
        m = int(idx.max()) + 1
        return self.sequence(m)[idx]

    def sequence(self, count):
        lam = complex(self.lam)
        k = np.arange(count - 1, dtype=float)
        out = np.empty(count, dtype=complex)
        out[0] = 1.0
        if count > 1:
            out[1:] = np.cumprod((lam + k) / (k + 1.0))
        return out


def binomial_coeffs(lam):
    return BinomialCoefficients(lam if isinstance(lam, (Fraction, int)) else complex(lam))


def default_radii():
    j = np.arange(3, 15)
    return 1.0 - 2.0 ** (-j.astype(float))


@dataclass(frozen=True, eq=False)
class MembershipResult:
    verdict: str  # "member" | "nonmember" | "indeterminate"
    slope: float
    kappa: float | None
    growth_exponent: float
    radii: np.ndarray = field(repr=False)
    means: np.ndarray = field(repr=False)
    overflow: bool = False
    method: str = "slope"


def _coefficients_for_radius(coeff_source, r, start=None):
    """Enough coefficients that the tail beyond them is negligible at radius r."""
    n = start or int(np.ceil(40.0 / (1.0 - r))) + 16
    while True:
        c = np.asarray(coeff_source(np.arange(n)), dtype=complex)
        weights = np.abs(c) * r ** np.arange(n, dtype=float)
        head = weights.max()
        tail = weights[-max(8, n // 64):].max()
        if head == 0.0 or tail <= 1e-17 * head or n > 2**24:
            return c
        n *= 2


def _mean_at_radius(coeff_source, p, r):
    c = _coefficients_for_radius(coeff_source, r)
    K = 4
    while K < 2 * c.size:
        K *= 2
    with np.errstate(over="ignore", invalid="ignore"):
        return hp_mean(c, p, CirclePlan(radius=r, sample_count=K))


def _fit_kappa(u, powered):
    """Exponent k in  M_p^p(r) ~ A + D u + B E_k(u) + C u E_k(u),  u = 1 - r.

    E_k(u) = (u^k - 1) / k tends to log(1/u) at k = 0, so the logarithmic
    boundary case sits at an interior, well-conditioned point of the model.
    The linear coefficients are eliminated (variable projection) and k is
    found by a scan followed by bounded refinement.  The scan stays above
    k = -0.9: near k = -1 the correction column u^(k+1) can itself mimic a
    logarithm and produces spurious minima.  Growth that fast is already
    caught by the raw slope threshold.
    """
    ones = np.ones_like(u)
    log_u = np.log(u)

    def cost(k):
        e = -log_u if abs(k) < 1e-12 else np.expm1(k * log_u) / k
        X = np.stack([ones, u, e, u * e], axis=1) / powered[:, None]
        coef, *_ = np.linalg.lstsq(X, ones, rcond=None)
        return float(np.sum((X @ coef - 1.0) ** 2))

    grid = np.linspace(-0.9, 1.5, 481)
    costs = np.array([cost(k) for k in grid])
    i = int(np.argmin(costs))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(cost, bounds=(lo, hi), method="bounded", options={"xatol": 1e-6})
    return float(res.x)


def hp_membership_classifier(
    coeff_source,
    p,
    radii_schedule=None,
    slope_tol=0.02,
    nonmember_slope=0.1,
    kappa_tol=0.05,
):
    """Decide numerically whether sum c_n z^n belongs to H^p.

    First the slope of log M_p(r_j) against log 1/(1 - r_j) is fitted:
    slope <= ``slope_tol`` gives "member", slope >= ``nonmember_slope`` gives
    "nonmember".  Between the two thresholds the local slope is still far
    from its limit, so the exponent k of the expansion
    M_p^p = A + D u + B E_k(u) + C u E_k(u), E_k(u) = (u^k - 1)/k, u = 1 - r,
    is fitted instead: k >= kappa_tol
    means the means converge (member), k <= -kappa_tol means they grow like
    u^(k/p) (nonmember), and |k| < kappa_tol is reported as indeterminate.
    On the boundary of membership (k = 0, logarithmic growth) the answer is
    indeterminate by design.
    """
    radii = default_radii() if radii_schedule is None else np.asarray(radii_schedule, dtype=float)
    if np.any(np.diff(radii) <= 0) or radii[0] <= 0 or radii[-1] >= 1:
        raise ValueError("radii must increase strictly inside (0, 1)")
    means = np.array([_mean_at_radius(coeff_source, p, r) for r in radii])
    if not np.all(np.isfinite(means)):
        return MembershipResult("nonmember", np.inf, None, np.inf, radii, means, overflow=True)

    x = np.log(1.0 / (1.0 - radii))
    slope = float(np.polyfit(x, np.log(means), 1)[0])
    if slope <= slope_tol:
        return MembershipResult("member", slope, None, 0.0, radii, means)
    if slope >= nonmember_slope:
        return MembershipResult("nonmember", slope, None, slope, radii, means)

    kappa = _fit_kappa(1.0 - radii, means**p)
    growth = max(0.0, -kappa) / p
    if kappa >= kappa_tol:
        verdict = "member"
    elif kappa <= -kappa_tol:
        verdict = "nonmember"
    else:
        verdict = "indeterminate"
    return MembershipResult(verdict, slope, kappa, growth, radii, means, method="asymptotic-fit")


def as_coeff_vector(values):
    if isinstance(values, CoeffVector):
        return values
    if isinstance(values, Number):
        return CoeffVector([values])
    return CoeffVector(values)
