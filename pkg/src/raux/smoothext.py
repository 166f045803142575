"""Smooth C^2 extensions of weights and their Mellin-transform bound.

A weight f on [1, N] with |f| <= 1, x|f'| <= 1, x^2|f''| <= 1 extends to a
compactly supported g on (0, inf) with support in [1/e, e N] and

    |g| <= 10/9,   x|g'| <= 7/3,   x^2|g''| <= 41/5.

In the log variable the junction pieces are "caps": C^2 functions on [0,1]
with a zero 2-jet at one end and prescribed data at the other, kept small in
the norms  ||phi||, ||phi'||, ||phi'' - phi'||  (the combination x^2 g''
becomes G'' - G' under x = e^y).  Any admissible data triple is a convex
combination of sign patterns, so four vertex polynomials per side suffice.
The Mellin transform h(t) = int g(x) x^{it} dx/x of such an extension obeys
|h(t)| <= b (log N + 2)/(1 + t^2) with b = m(1+a^2) < 8.775, where
M/m = a sqrt(1+a^2), M = 41/5, m = 10/9.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, PreconditionError
from .numerics import bisect_root, gauss_legendre_panels
from .reports import InequalityReport

CAP_BOUNDS = (Fraction(10, 9), Fraction(7, 3), Fraction(41, 5))


@dataclass(frozen=True)
class CapPoly:
    """One vertex cap: exact rational coefficients, ascending degree."""

    index: int
    coefficients: tuple[Fraction, ...]

    def _float_coeffs(self, deriv: int = 0) -> np.ndarray:
        c = np.array([float(x) for x in self.coefficients])
        for _ in range(deriv):
            c = np.polynomial.polynomial.polyder(c)
        return c

    def __call__(self, x, deriv: int = 0):
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float),
                                                self._float_coeffs(deriv))

    def exact(self, x: Fraction, deriv: int = 0) -> Fraction:
        c = list(self.coefficients)
        for _ in range(deriv):
            c = [k * c[k] for k in range(1, len(c))]
        acc = Fraction(0)
        for coef in reversed(c):
            acc = acc * x + coef
        return acc


def _poly(fracs) -> tuple[Fraction, ...]:
    return tuple(Fraction(*f) if isinstance(f, tuple) else Fraction(f) for f in fracs)


# Left caps: zero 2-jet at 0; at 1 the data (phi, phi', phi''-phi') hits the
# sign patterns (1,1,1), (1,1,-1), (1,-1,1), (1,-1,-1).
_PHI = (
    CapPoly(1, _poly([0, 0, 0, 7, -10, 4])),
    CapPoly(2, _poly([0, 0, 0, 6, -8, 3])),
    CapPoly(3, _poly([0, 0, 0, (112, 5), -50, (178, 5), 0, (-28, 5), (-28, 5), (21, 5)])),
    CapPoly(4, _poly([0, 0, 0, (114, 5), (-261, 5), (381, 10), 0, (-28, 5), -7, (49, 10)])),
)

# Right caps: data (rho, rho', rho''-rho') at 0, zero 2-jet at 1.  Constructed
# by minimax search over (1-u)^3 * q(u), certified below the same bounds.
def _right_cap(index, beta, delta, free):
    c0, c1, c2 = 1, beta + 3, Fraction(delta + 7 * beta + 12, 2)
    q = _poly([c0, c1, c2, *free])
    # rho = (1-u)^3 q(u): expand exactly in Fractions
    cube = (Fraction(1), Fraction(-3), Fraction(3), Fraction(-1))
    out = [Fraction(0)] * (len(q) + 3)
    for i, a in enumerate(cube):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return CapPoly(index, tuple(out))


_RHO = (
    _right_cap(1, +1, +1, [Fraction(-2791, 100), Fraction(14957, 100),
                           Fraction(-26650, 100), Fraction(16824, 100)]),
    _right_cap(2, +1, -1, [Fraction(-2719, 100), Fraction(16701, 100),
                           Fraction(-33593, 100), Fraction(22939, 100)]),
    _right_cap(3, -1, +1, [0, 0, 0, 0]),
    _right_cap(4, -1, -1, [0, 0, 0, 0]),
)

_SIGN_TO_LEFT = {(1, 1): 0, (1, -1): 1, (-1, 1): 2, (-1, -1): 3}


def cap_polynomials() -> list[CapPoly]:
    """The four left vertex caps with exact rational coefficients."""
    return list(_PHI)


def right_cap_polynomials() -> list[CapPoly]:
    """The four right-junction vertex caps (artifact construction)."""
    return list(_RHO)


@dataclass(frozen=True)
class WeightFn:
    """A C^2 weight with certified sup-bounds.

    For caps on [0,1] (from build_cap), bound_cert certifies
    (sup|phi|, sup|phi'|, sup|phi''-phi'|).  For extensions on (0, inf)
    (from extend_weight), bound_cert certifies (sup|g|, sup x|g'|,
    sup x^2|g''|); support is the interval outside which g vanishes.
    """

    eval0: Callable
    eval1: Callable
    eval2: Callable
    support: tuple[float, float]
    bound_cert: tuple[float, float, float]

    def __call__(self, x):
        return self.eval0(x)


def _combo_coeffs(a: float, b: float, d: float, family) -> np.ndarray:
    """Float coefficient vector of sum_eps w_eps * (+-vertex cap).

    w_eps = (1+e1 a)(1+e2 b)(1+e3 d)/8 over eps in {+-1}^3; pattern
    (+1, e2, e3) maps to cap (e2, e3), (-1, e2, e3) to -cap(-e2, -e3).
    """
    deg = max(len(c.coefficients) for c in family)
    out = np.zeros(deg)
    for e1 in (1, -1):
        for e2 in (1, -1):
            for e3 in (1, -1):
                w = (1 + e1 * a) * (1 + e2 * b) * (1 + e3 * d) / 8.0
                if w == 0.0:
                    continue
                cap = family[_SIGN_TO_LEFT[(e1 * e2, e1 * e3)]]
                cf = cap._float_coeffs()
                out[: len(cf)] += e1 * w * cf
    return out


def _grid_sup(coeffs: np.ndarray, combo: str, n: int = 4096) -> float:
    """Certified sup on [0,1] of |p|, |p'| or |p''-p'|: dense grid plus a
    Lipschitz margin from the grid max of the next derivative."""
    P = np.polynomial.polynomial
    if combo == "0":
        target = coeffs
    elif combo == "1":
        target = P.polyder(coeffs)
    elif combo == "21":
        target = P.polysub(P.polyder(coeffs, 2), P.polyder(coeffs))
    else:
        raise ValueError(combo)
    x = np.linspace(0.0, 1.0, n + 1)
    vals = np.abs(P.polyval(x, target))
    slope = np.max(np.abs(P.polyval(x, P.polyder(target)))) if len(target) > 1 else 0.0
    return float(np.max(vals) + 0.5 * slope / n)


def build_cap(a: float, b: float, c: float) -> WeightFn:
    """C^2 cap phi on [0,1]: zero 2-jet at 0; phi(1)=a, phi'(1)=b, phi''(1)=c.

    Requires |a| <= 1, |b| <= 1, |c-b| <= 1.  The result satisfies
    ||phi|| <= 10/9, ||phi'|| <= 7/3, ||phi''-phi'|| <= 41/5.
    """
    d = c - b
    for name, v in (("a", a), ("b", b), ("c-b", d)):
        if abs(v) > 1.0 + 1e-12:
            raise DomainError(f"build_cap: |{name}| = {abs(v):g} exceeds 1")
    coeffs = _combo_coeffs(a, b, d, _PHI)
    P = np.polynomial.polynomial
    d1 = P.polyder(coeffs)
    d2 = P.polyder(coeffs, 2)
    cert = (_grid_sup(coeffs, "0"), _grid_sup(coeffs, "1"), _grid_sup(coeffs, "21"))
    return WeightFn(
        eval0=lambda x: P.polyval(np.asarray(x, dtype=float), coeffs),
        eval1=lambda x: P.polyval(np.asarray(x, dtype=float), d1),
        eval2=lambda x: P.polyval(np.asarray(x, dtype=float), d2),
        support=(0.0, 1.0),
        bound_cert=cert,
    )


def _build_right_cap(a: float, b: float, d: float):
    """Right-junction cap with data (rho, rho', rho''-rho') = (a, b, d) at 0."""
    coeffs = _combo_coeffs(a, b, d, _RHO)
    P = np.polynomial.polynomial
    return coeffs, P.polyder(coeffs), P.polyder(coeffs, 2)


def _precheck_weight(f: WeightFn, N: int, n_grid: int = 2048) -> None:
    x = np.linspace(1.0, float(N), n_grid)
    for label, vals, bound in (
        ("|f|", np.abs(f.eval0(x)), 1.0),
        ("x|f'|", np.abs(x * f.eval1(x)), 1.0),
        ("x^2|f''|", np.abs(x * x * f.eval2(x)), 1.0),
    ):
        k = int(np.argmax(vals))
        if vals[k] > bound + 1e-9:
            raise PreconditionError(
                f"extend_weight: {label} = {vals[k]:.6g} > 1 at x = {x[k]:.6g}")


def extend_weight(f: WeightFn, N: int) -> WeightFn:
    """Extend a weight from [1, N] to a C^2 function supported in [1/e, e N].

    The extension agrees with f on [1, N] and satisfies |g| <= 10/9,
    x|g'| <= 7/3, x^2|g''| <= 41/5 (certified in bound_cert).
    """
    if N < 2:
        raise DomainError("extend_weight needs N >= 2")
    _precheck_weight(f, N)
    L = float(np.log(N))
    # left junction data: F(y) = f(e^y) at y = 0
    a0, b0 = float(f.eval0(1.0)), float(f.eval1(1.0))
    c0 = float(f.eval2(1.0)) + b0
    phi = build_cap(a0, b0, c0)
    # right junction data at y = L in the log variable
    aN = float(f.eval0(float(N)))
    bN = float(N * f.eval1(float(N)))
    dN = float(N * N * f.eval2(float(N)))
    for name, v in (("|f(N)|", aN), ("N f'(N)", bN), ("N^2 f''(N)", dN)):
        if abs(v) > 1.0 + 1e-12:
            raise PreconditionError(f"extend_weight: {name} = {v:g} out of range")
    rc0, rc1, rc2 = _build_right_cap(aN, bN, dN)
    P = np.polynomial.polynomial

    lo, hi = float(np.exp(-1.0)), float(np.exp(1.0)) * N

    def g0(x):
        x = np.asarray(x, dtype=float)
        y = np.log(np.maximum(x, 1e-300))
        out = np.zeros_like(x)
        mid = (x >= 1.0) & (x <= N)
        out[mid] = f.eval0(x[mid])
        left = (x >= lo) & (x < 1.0)
        out[left] = phi.eval0(1.0 + y[left])
        right = (x > N) & (x <= hi)
        out[right] = P.polyval(y[right] - L, rc0)
        return out

    def g1(x):
        x = np.asarray(x, dtype=float)
        y = np.log(np.maximum(x, 1e-300))
        out = np.zeros_like(x)
        mid = (x >= 1.0) & (x <= N)
        out[mid] = f.eval1(x[mid])
        left = (x >= lo) & (x < 1.0)
        out[left] = phi.eval1(1.0 + y[left]) / x[left]
        right = (x > N) & (x <= hi)
        out[right] = P.polyval(y[right] - L, rc1) / x[right]
        return out

    def g2(x):
        x = np.asarray(x, dtype=float)
        y = np.log(np.maximum(x, 1e-300))
        out = np.zeros_like(x)
        mid = (x >= 1.0) & (x <= N)
        out[mid] = f.eval2(x[mid])
        left = (x >= lo) & (x < 1.0)
        u = 1.0 + y[left]
        out[left] = (phi.eval2(u) - phi.eval1(u)) / x[left] ** 2
        right = (x > N) & (x <= hi)
        v = y[right] - L
        out[right] = (P.polyval(v, rc2) - P.polyval(v, rc1)) / x[right] ** 2
        return out

    # certify the three weighted sup-bounds piecewise
    left_cert = phi.bound_cert
    rcoef = np.zeros(max(len(rc0), 1))
    rcoef[: len(rc0)] = rc0
    right_cert = (_grid_sup(rcoef, "0"), _grid_sup(rcoef, "1"), _grid_sup(rcoef, "21"))
    xs = np.linspace(1.0, float(N), 4096)
    f_cert = (float(np.max(np.abs(f.eval0(xs)))),
              float(np.max(np.abs(xs * f.eval1(xs)))),
              float(np.max(np.abs(xs * xs * f.eval2(xs)))))
    margin = 1.0 + 2.0 / 4096  # grid slack on the f piece (precondition-checked)
    cert = tuple(max(lc, rc, fc * margin)
                 for lc, rc, fc in zip(left_cert, right_cert, f_cert))
    return WeightFn(eval0=g0, eval1=g1, eval2=g2, support=(lo, hi), bound_cert=cert)


def constant_b() -> tuple[float, float]:
    """Solve M/m = a sqrt(1+a^2) for a (M = 41/5, m = 10/9); b = m (1+a^2) < 8.775."""
    ratio = float(CAP_BOUNDS[2] / CAP_BOUNDS[0])
    a = bisect_root(lambda x: x * np.sqrt(1.0 + x * x) - ratio, 2.0, 3.0, tol=1e-14)
    b = float(CAP_BOUNDS[0]) * (1.0 + a * a)
    assert b < 8.775, f"constant b = {b} out of expected range"
    return a, b


def mellin_transform(g: WeightFn, ts, nodes: int = 256):
    """h(t) = int g(x) x^{it} dx/x by quadrature in u = log x over the support."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    ulo, uhi = np.log(g.support[0]), np.log(g.support[1])
    t_max = float(np.max(np.abs(ts))) if len(ts) else 0.0
    panels = max(8, nodes // 16, int(0.4 * t_max * (uhi - ulo) / np.pi) + 1)
    u, w = gauss_legendre_panels(ulo, uhi, 16, panels)
    u2, w2 = gauss_legendre_panels(ulo, uhi, 16, 2 * panels)
    gu = g.eval0(np.exp(u))
    gu2 = g.eval0(np.exp(u2))
    h = (w * gu) @ np.exp(1j * np.outer(u, ts))
    h2 = (w2 * gu2) @ np.exp(1j * np.outer(u2, ts))
    err = float(np.max(np.abs(h - h2)))
    if err > 1e-6:
        raise ConvergenceError(f"mellin_transform quadrature unstable: {err:.2e}")
    return h2


def mellin_bound_check(g: WeightFn, N: int, t_grid) -> InequalityReport:
    """Check |h(t)| (1+t^2) <= b (log N + 2) over t_grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    _, b = constant_b()
    h = mellin_transform(g, t_grid)
    lhs_all = np.abs(h) * (1.0 + t_grid ** 2)
    rhs = b * (np.log(N) + 2.0)
    k = int(np.argmax(lhs_all)) if len(lhs_all) else 0
    lhs = float(lhs_all[k]) if len(lhs_all) else 0.0
    return InequalityReport(name="mellin_bound", lhs=lhs, rhs=rhs,
                            witness=f"t = {t_grid[k]:.6g}" if len(t_grid) else "empty grid")


def mellin_inversion(g: WeightFn, x: float, t_cut: float = 200.0, nodes: int = 4096) -> float:
    """(1/2pi) int_{|t|<=t_cut} h(t) x^{-it} dt; reproduces g(x) up to the tail."""
    panels = max(16, nodes // 16)
    t, w = gauss_legendre_panels(-t_cut, t_cut, 16, panels)
    h = mellin_transform(g, t)
    val = np.sum(w * h * np.exp(-1j * np.log(x) * t)) / (2.0 * np.pi)
    return float(val.real)
