"""Gauss rules on intervals, shared by the Laplace, subordination and averaging code."""

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


@lru_cache(maxsize=64)
def _legendre(n):
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=64)
def _jacobi_left(n, alpha):
    # weight (1+x)^alpha on [-1, 1]
    x, w = roots_jacobi(n, 0.0, alpha)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(a, b, n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [a, b]."""
    x, w = _legendre(int(n))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def composite_gauss_legendre(breakpoints, n):
    """Concatenated Gauss-Legendre rules over consecutive panels.

    Nodes are returned in increasing order so sums over them have a fixed
    evaluation order.
    """
    breakpoints = np.asarray(breakpoints, dtype=float)
    x, w = _legendre(int(n))
    a = breakpoints[:-1, None]
    half = 0.5 * np.diff(breakpoints)[:, None]
    nodes = a + half * (x + 1.0)
    weights = half * w
    return nodes.ravel(), weights.ravel()


def gauss_jacobi_left(b, alpha, n):
    """Rule for the integral of u**alpha * F(u) over [0, b], alpha > -1.

    The returned weights already contain the u**alpha factor, so the
    quadrature is ``sum(w * F(u))``.
    """
    if alpha <= -1.0:
        raise ValueError(f"Jacobi exponent must exceed -1, got {alpha}")
    x, w = _jacobi_left(int(n), float(alpha))
    # u = b (1 + x) / 2  =>  u^alpha du = (b/2)^(alpha+1) (1+x)^alpha dx
    u = 0.5 * b * (1.0 + x)
    return u, w * (0.5 * b) ** (alpha + 1.0)
