"""Low-level numerical helpers: compensated sums, quadrature panels, maximizers."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


def kahan_sum(values) -> complex:
    """Compensated sum of an iterable of floats/complex (exact-rounding via fsum)."""
    re = math.fsum(float(np.real(v)) for v in values)
    im = math.fsum(float(np.imag(v)) for v in values)
    return complex(re, im) if im != 0.0 else re


def csum(arr: np.ndarray) -> complex:
    """Compensated sum of a 1-D numpy array."""
    a = np.asarray(arr)
    if np.iscomplexobj(a):
        return complex(math.fsum(a.real.tolist()), math.fsum(a.imag.tolist()))
    return math.fsum(a.tolist())


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    acc = Fraction(0)
    for j in range(n):
        acc += math.comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def gauss_legendre_panels(a: float, b: float, nodes_per_panel: int, panels: int):
    """Composite Gauss-Legendre rule on [a, b]: flat arrays (nodes, weights)."""
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    return ((mids[:, None] + halfs[:, None] * x[None, :]).ravel(),
            (halfs[:, None] * w[None, :]).ravel())


def golden_max(f, lo: float, hi: float, tol: float = 1e-12, seed_points: int = 257):
    """Maximize a scalar function on [lo, hi]: coarse grid then golden-section polish.

    Returns (argmax, max).  The coarse grid guards against multimodality; the
    golden-section stage refines the best bracket to ``tol``.
    """
    xs = np.linspace(lo, hi, seed_points)
    vals = np.array([f(x) for x in xs])
    k = int(np.argmax(vals))
    a = xs[max(k - 1, 0)]
    b = xs[min(k + 1, seed_points - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    return xm, max(fc, fd, f(xm))


def bisect_root(f, lo: float, hi: float, tol: float = 1e-13, max_iter: int = 200) -> float:
    """Plain bisection for a sign change of f on [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("bisect_root: no sign change on the bracket")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < tol:
            return mid
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def wrap_angle(d: np.ndarray) -> np.ndarray:
    """Wrap angle differences into (-pi, pi]."""
    return d - 2.0 * np.pi * np.round(d / (2.0 * np.pi))
