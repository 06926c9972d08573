"""Finite compressions of operators on H^2 in the monomial basis.

entry[m][k] is coefficient m of the image of z^k.  A lower-triangular
operator (images of z^k start at degree k) and an upper-triangular one
(images of z^k have degree <= k) both compress exactly under products,
which is what the exactness flag records.
"""

from dataclasses import dataclass

import numpy as np

from .analytic import CirclePlan, CoeffVector, as_coeff_vector, coeffs_from_samples

STRUCTURES = ("lower", "upper", "banded", "general")
EXACTNESS = ("exact-lower", "exact-upper", "approximate")


class SingularResolventError(ArithmeticError):
    def __init__(self, index, pivot):
        super().__init__(f"pivot {abs(pivot):.3e} at index {index} is below the pivot tolerance")
        self.index = index
        self.pivot = pivot


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    structure: str = "general"
    exactness: str = "approximate"
    bandwidths: tuple | None = None  # (lower, upper) for banded matrices

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("an operator compression must be a square matrix")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}")
        if self.exactness not in EXACTNESS:
            raise ValueError(f"unknown exactness flag {self.exactness!r}")
        if self.exactness == "exact-lower" and self.structure != "lower":
            raise ValueError("exact-lower compressions must be lower triangular")
        if self.exactness == "exact-upper" and self.structure != "upper":
            raise ValueError("exact-upper compressions must be upper triangular")
        if self.structure == "banded" and self.bandwidths is None:
            raise ValueError("banded structure needs (lower, upper) bandwidths")
        mask = _zero_mask(a.shape[0], self.structure, self.bandwidths)
        if mask is not None and np.any(a[mask] != 0):
            raise ValueError(f"entries violate the declared {self.structure} structure")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def order(self):
        return self.entries.shape[0] - 1

    def __repr__(self):
        return f"OperatorMatrix(N={self.order}, structure={self.structure}, exactness={self.exactness})"


def _zero_mask(n, structure, bandwidths):
    if structure == "general":
        return None
    m, k = np.indices((n, n))
    if structure == "lower":
        return k > m
    if structure == "upper":
        return m > k
    lo, up = bandwidths
    return (m - k > lo) | (k - m > up)


def identity_matrix(N):
    return OperatorMatrix(np.eye(N + 1), "upper", "exact-upper")


def cesaro_matrix(N):
    """(C a)_n = (a_0 + ... + a_n) / (n + 1)."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    n = np.arange(N + 1)
    entries = np.tril(np.ones((N + 1, N + 1))) / (n + 1.0)[:, None]
    return OperatorMatrix(entries, "lower", "exact-lower")


def composition_matrix_affine(a, b, N):
    """Compression of f -> f(a z + b); column k holds (a z + b)^k."""
    a, b = complex(a), complex(b)
    if abs(a) + abs(b) > 1.0 + 1e-12:
        raise ValueError(f"a z + b is not a self-map of the disc (|a| + |b| = {abs(a) + abs(b):.6g})")
    out = np.zeros((N + 1, N + 1), dtype=complex)
    col = np.zeros(N + 1, dtype=complex)
    col[0] = 1.0
    out[:, 0] = col
    for k in range(1, N + 1):
        nxt = b * col
        nxt[1:] += a * col[:-1]
        col = nxt
        out[:, k] = col
    return OperatorMatrix(out, "upper", "exact-upper")


def composition_matrix_general(symbol, N, plan=None):
    """Compression of f -> f(phi) by sampling phi^k on a circle.

    Returns ``(OperatorMatrix, alias_estimate)``.
    """
    plan = plan or CirclePlan.for_order(N)
    w = np.asarray(symbol(plan.points()), dtype=complex)
    if np.any(np.abs(w) >= 1.0):
        raise ValueError("symbol leaves the unit disc at a sample point")
    powers = np.cumprod(np.concatenate([np.ones((plan.sample_count, 1)), np.repeat(w[:, None], N, axis=1)], axis=1), axis=1)
    head, alias = coeffs_from_samples(powers, plan, N)
    return OperatorMatrix(head), alias


def generator_matrix(flow, N):
    """Compression of f -> G f' for a polynomial generator G = g0 + g1 z + g2 z^2."""
    if flow.G_poly is None:
        raise ValueError(f"the {flow.name} flow has a non-polynomial generator")
    g0, g1, g2 = flow.G_poly
    k = np.arange(1, N + 1, dtype=float)
    out = np.zeros((N + 1, N + 1), dtype=complex)
    idx = np.arange(1, N + 1)
    out[idx - 1, idx] = k * g0
    out[idx, idx] = k * g1
    out[idx[:-1] + 1, idx[:-1]] = k[:-1] * g2
    lo = 1 if g2 != 0 else 0
    up = 1 if g0 != 0 else 0
    return OperatorMatrix(out, "banded", "approximate", (lo, up))


def resolvent_solve(flow, lam, f, pivot_tol=1e-12):
    """g with (lam I - Delta) g = f on the compression, Delta the generator matrix.

    The matrix is tridiagonal for every polynomial generator, so the solve
    is a Thomas elimination without pivoting; a pivot smaller than
    ``pivot_tol`` raises SingularResolventError naming its index.
    """
    f = as_coeff_vector(f)
    N = f.truncation_order
    if flow.G_poly is None:
        raise ValueError(f"the {flow.name} flow has a non-polynomial generator")
    g0, g1, g2 = flow.G_poly
    k = np.arange(N + 1, dtype=float)
    diag = lam - k * g1
    upper = -(k[1:] * g0)  # entry [m][m+1]
    lower = -(k[:-1] * g2)  # entry [m+1][m]
    d = np.array(diag, dtype=complex)
    rhs = np.array(f.coeffs, dtype=complex)
    # forward sweep
    for m in range(N + 1):
        if abs(d[m]) < pivot_tol:
            raise SingularResolventError(m, d[m])
        if m < N and lower[m] != 0:
            factor = lower[m] / d[m]
            d[m + 1] -= factor * upper[m]
            rhs[m + 1] -= factor * rhs[m]
    g = np.empty(N + 1, dtype=complex)
    g[N] = rhs[N] / d[N]
    for m in range(N - 1, -1, -1):
        g[m] = (rhs[m] - upper[m] * g[m + 1]) / d[m]
    return CoeffVector(g)


def _check_orders(*mats):
    orders = {m.order for m in mats}
    if len(orders) != 1:
        raise ValueError(f"order mismatch: {sorted(orders)}")


def matrix_apply(A, f):
    c = f.coeffs if isinstance(f, CoeffVector) else np.asarray(f, dtype=complex)
    if c.size != A.order + 1:
        raise ValueError(f"vector of length {c.size} does not match order {A.order}")
    return CoeffVector(A.entries @ c)


def _product_flags(A, B):
    if A.structure == B.structure and A.structure in ("lower", "upper"):
        structure = A.structure
        both = A.exactness == B.exactness == f"exact-{structure}"
        return structure, (f"exact-{structure}" if both else "approximate"), None
    if A.structure == "banded" and B.structure == "banded":
        bw = (A.bandwidths[0] + B.bandwidths[0], A.bandwidths[1] + B.bandwidths[1])
        return "banded", "approximate", bw
    return "general", "approximate", None


def matrix_product(A, B):
    _check_orders(A, B)
    structure, exactness, bw = _product_flags(A, B)
    out = A.entries @ B.entries
    mask = _zero_mask(out.shape[0], structure, bw)
    if mask is not None:
        out[mask] = 0.0
    return OperatorMatrix(out, structure, exactness, bw)


def _identity_like(A):
    eye = np.eye(A.order + 1)
    if A.structure in ("lower", "upper"):
        return OperatorMatrix(eye, A.structure, A.exactness)
    if A.structure == "banded":
        return OperatorMatrix(eye, "banded", "approximate", (0, 0))
    return OperatorMatrix(eye)


def matrix_power(A, n):
    if n < 0:
        raise ValueError("only non-negative powers are supported")
    result, base = _identity_like(A), A
    while n:
        if n & 1:
            result = matrix_product(result, base)
        n >>= 1
        if n:
            base = matrix_product(base, base)
    return result


def adjoint_matrix(A):
    """Conjugate transpose, the adjoint for the l^2 = H^2 inner product."""
    flip = {"lower": "upper", "upper": "lower"}
    structure = flip.get(A.structure, A.structure)
    exactness = {"exact-lower": "exact-upper", "exact-upper": "exact-lower"}.get(A.exactness, A.exactness)
    bw = None if A.bandwidths is None else A.bandwidths[::-1]
    return OperatorMatrix(A.entries.conj().T, structure, exactness, bw)
