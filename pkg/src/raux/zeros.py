"""Locating and counting zeros of R(s) by the argument principle.

Winding numbers come from tracking the continuous boundary phase of R along
rectangle boundaries with adaptive refinement (per-step phase change < pi/2).
Zeros are isolated by recursive quadrisection and polished by Newton steps on
the high-accuracy route (contour oracle where tractable).  Counts per band
K (t in (2 pi K^2, 2 pi (K+1)^2], where the Dirichlet length is the constant
K) aggregate into N(alpha, T).

Rectangles are half-open in t -- [sigma_lo, sigma_hi] x (t_lo, t_hi] -- so
band tilings are exact; membership of a located zero follows its isolation
box, which keeps "sum of multiplicities == winding count" an exact identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryZeroError, ConvergenceError, DomainError
from .auxfn import (TWO_PI, T_SUM_MIN, band_range, eval_r_batch, power_sum,
                    r_aux, r_aux_integral, _sum_c0_single)
from .meanvalue import DirichletPoly, SeparatedSet
from .numerics import wrap_angle
from .reports import InequalityReport

WINDING_FLOOR = 1e-9          # refinement floor: below this a boundary zero is declared
SUBDIV_FLOOR = 1e-7           # quadrisection floor: unresolved winding >= 2 -> cluster
ISOLATE_SIZE = 0.04           # box size at which a single zero goes to Newton polish
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class Rectangle:
    """Half-open search region [sigma_lo, sigma_hi] x (t_lo, t_hi]."""

    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise DomainError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.sigma_hi - self.sigma_lo

    @property
    def height(self) -> float:
        return self.t_hi - self.t_lo

    def contains(self, beta: float, gamma: float) -> bool:
        return (self.sigma_lo <= beta <= self.sigma_hi
                and self.t_lo < gamma <= self.t_hi)

    def nudged(self, k: int) -> "Rectangle":
        """Deterministic retry sequence for boundary-zero repositioning."""
        d = 1e-6 * (k + 1) * (1 + 0.618 * k)
        return Rectangle(self.sigma_lo - d, self.sigma_hi + d,
                         self.t_lo - d, self.t_hi + d)


@dataclass(frozen=True)
class ZeroRecord:
    beta: float
    gamma: float
    multiplicity: int
    residual: float
    band: int
    method: str = "newton"

    def key(self) -> tuple:
        return (round(self.beta, 6), round(self.gamma, 6))


# ---------------------------------------------------------------------------
# winding numbers
# ---------------------------------------------------------------------------

def _boundary_points(rect: Rectangle, step: float):
    """Closed counterclockwise boundary polyline parameter points."""
    nb = max(4, int(math.ceil(rect.width / step)))
    nr = max(4, int(math.ceil(rect.height / step)))
    bottom_s = np.linspace(rect.sigma_lo, rect.sigma_hi, nb, endpoint=False)
    right_t = np.linspace(rect.t_lo, rect.t_hi, nr, endpoint=False)
    top_s = np.linspace(rect.sigma_hi, rect.sigma_lo, nb, endpoint=False)
    left_t = np.linspace(rect.t_hi, rect.t_lo, nr, endpoint=False)
    pts = np.concatenate([
        bottom_s + 1j * rect.t_lo,
        rect.sigma_hi + 1j * right_t,
        top_s + 1j * rect.t_hi,
        rect.sigma_lo + 1j * left_t,
    ])
    return np.append(pts, pts[0])


def winding_count(rect: Rectangle, prefer: str = "fast",
                  max_rounds: int = 48) -> int:
    """Zeros (with multiplicity) strictly inside rect, by boundary phase.

    Adaptive bisection of boundary segments until each wrapped phase step is
    below pi/2; total phase / 2 pi must be an integer to 1e-3.  Raises
    BoundaryZeroError when refinement hits the floor (a zero sits on or too
    near the contour) and ConvergenceError when the budget is exhausted.
    """
    scale = max(1.0, math.log(1.0 + rect.t_hi / TWO_PI))
    pts = _boundary_points(rect, step=min(0.45 / scale, rect.height / 3, rect.width / 3))
    vals, _ = eval_r_batch(pts, prefer=prefer)
    phases = np.angle(vals)
    for _ in range(max_rounds):
        d = wrap_angle(np.diff(phases))
        bad = np.where(np.abs(d) >= 0.5 * math.pi)[0]
        if len(bad) == 0:
            total = float(np.sum(d))
            w = total / (2.0 * math.pi)
            if abs(w - round(w)) > 1e-3:
                raise ConvergenceError(
                    f"winding not integral on {rect}: {w:.6f}")
            return int(round(w))
        seglen = np.abs(np.diff(pts))
        if np.min(seglen[bad]) < WINDING_FLOOR:
            raise BoundaryZeroError(
                f"phase jump persists at segment < {WINDING_FLOOR:g} on {rect}")
        mids = 0.5 * (pts[bad] + pts[bad + 1])
        mval, _ = eval_r_batch(mids, prefer=prefer)
        pts = np.insert(pts, bad + 1, mids)
        phases = np.insert(phases, bad + 1, np.angle(mval))
    raise ConvergenceError(f"winding refinement budget exhausted on {rect}")


def winding_with_retry(rect: Rectangle, prefer: str = "fast",
                       retries: int = 8) -> tuple[int, Rectangle]:
    """winding_count with the boundary-zero reposition loop."""
    last = None
    for k in range(retries):
        r = rect if k == 0 else rect.nudged(k - 1)
        try:
            return winding_count(r, prefer=prefer), r
        except BoundaryZeroError as e:
            last = e
    raise BoundaryZeroError(f"could not reposition {rect}: {last}")


# ---------------------------------------------------------------------------
# polishing
# ---------------------------------------------------------------------------

def _precise_eval(s: complex):
    t = s.imag
    if T_SUM_MIN <= t <= 5e4:
        try:
            return r_aux_integral(s)
        except ConvergenceError:
            return r_aux(s)
    if t > 5e4:
        return _sum_c0_single(s)
    return r_aux(s)


def _newton_polish(s0: complex, box: Rectangle, tol: float):
    """Newton iteration with numerically differenced R from the precise route.

    Returns (root, residual, err_at_root) or None if it fails to settle.
    """
    s = s0
    h = 1e-5 * max(1.0, math.sqrt(abs(s0.imag)) / 100.0)
    margin = 4.0 * max(box.width, box.height) + 10.0 * h
    for _ in range(30):
        r = _precise_eval(s)
        f = r.value
        if abs(f) <= max(tol, 3.0 * r.err):
            fp = (_precise_eval(s + h).value - _precise_eval(s - h).value) / (2.0 * h)
            if fp != 0 and abs(f / fp) < h:  # converged beyond the step scale
                return s, abs(f), r.err
        fp = (_precise_eval(s + h).value - _precise_eval(s - h).value) / (2.0 * h)
        if fp == 0:
            return None
        step = f / fp
        s = s - step
        if (abs(s.real - 0.5 * (box.sigma_lo + box.sigma_hi)) > margin
                or abs(s.imag - 0.5 * (box.t_lo + box.t_hi)) > margin):
            return None
        if abs(step) < 1e-13 * max(1.0, abs(s.imag)):
            r = _precise_eval(s)
            return s, abs(r.value), r.err
    r = _precise_eval(s)
    if abs(r.value) <= max(tol, 10.0 * r.err):
        return s, abs(r.value), r.err
    return None


# ---------------------------------------------------------------------------
# subdivision search
# ---------------------------------------------------------------------------

def _split(rect: Rectangle, prefer: str):
    """Split the longer side at a nudged midpoint; returns (sub1, sub2, w1).

    Only one sub-winding is evaluated; the other follows by additivity and
    is verified lazily by recursion.
    """
    vertical = rect.height >= rect.width
    for k in range(7):
        frac = 0.5 + (0.0 if k == 0 else (-1) ** k * 0.04 * k)
        try:
            if vertical:
                tm = rect.t_lo + frac * rect.height
                sub1 = Rectangle(rect.sigma_lo, rect.sigma_hi, rect.t_lo, tm)
                sub2 = Rectangle(rect.sigma_lo, rect.sigma_hi, tm, rect.t_hi)
            else:
                sm = rect.sigma_lo + frac * rect.width
                sub1 = Rectangle(rect.sigma_lo, sm, rect.t_lo, rect.t_hi)
                sub2 = Rectangle(sm, rect.sigma_hi, rect.t_lo, rect.t_hi)
            w1 = winding_count(sub1, prefer=prefer)
            return sub1, sub2, w1
        except BoundaryZeroError:
            continue
    raise BoundaryZeroError(f"no clean split line found for {rect}")


def locate_zeros(rect: Rectangle, tol: float = DEFAULT_TOL,
                 prefer: str = "fast", band: int | None = None):
    """All zeros of R in rect (with multiplicity): quadrisection + Newton.

    Membership follows the isolation box, so the multiplicities of the
    returned records always sum to winding_count(rect) evaluated on the same
    route.  Returns (records, winding, rect_used).
    """
    w, rect_n = winding_with_retry(rect, prefer=prefer)
    records: list[ZeroRecord] = []
    stack = [(rect_n, w)]
    while stack:
        box, wb = stack.pop()
        if wb == 0:
            continue
        K = band if band is not None else (
            band_of_gamma(0.5 * (box.t_lo + box.t_hi)))
        if wb == 1 and max(box.width, box.height) <= ISOLATE_SIZE:
            c = complex(0.5 * (box.sigma_lo + box.sigma_hi),
                        0.5 * (box.t_lo + box.t_hi))
            got = _newton_polish(c, box, tol)
            if got is None:
                got = _shrink_then_polish(box, tol, prefer)
            s, resid, err = got
            records.append(ZeroRecord(beta=float(s.real), gamma=float(s.imag),
                                      multiplicity=1, residual=float(resid),
                                      band=K, method="newton"))
            continue
        if max(box.width, box.height) <= SUBDIV_FLOOR:
            c = complex(0.5 * (box.sigma_lo + box.sigma_hi),
                        0.5 * (box.t_lo + box.t_hi))
            r = _precise_eval(c)
            records.append(ZeroRecord(beta=c.real, gamma=c.imag,
                                      multiplicity=wb, residual=abs(r.value),
                                      band=K, method="cluster"))
            continue
        sub1, sub2, w1 = _split(box, prefer)
        stack.append((sub1, w1))
        stack.append((sub2, wb - w1))
    return records, w, rect_n


def _shrink_then_polish(box: Rectangle, tol: float, prefer: str):
    """Fallback: subdivide the isolation box until Newton sticks."""
    stack = [box]
    for _ in range(40):
        b = stack.pop()
        if max(b.width, b.height) <= SUBDIV_FLOOR:
            c = complex(0.5 * (b.sigma_lo + b.sigma_hi), 0.5 * (b.t_lo + b.t_hi))
            r = _precise_eval(c)
            return c, abs(r.value), r.err
        sub1, sub2, w1 = _split(b, prefer)
        nxt = sub1 if w1 == 1 else sub2
        c = complex(0.5 * (nxt.sigma_lo + nxt.sigma_hi), 0.5 * (nxt.t_lo + nxt.t_hi))
        got = _newton_polish(c, nxt, tol)
        if got is not None:
            return got
        stack.append(nxt)
    raise ConvergenceError(f"polish failed inside {box}")


def band_of_gamma(gamma: float) -> int:
    if gamma <= TWO_PI:
        return 0
    return max(1, math.ceil(math.sqrt(gamma / TWO_PI)) - 1)


# ---------------------------------------------------------------------------
# band counts and N(alpha, T)
# ---------------------------------------------------------------------------

SIGMA_RIGHT_SAFE = 2.5  # sum_{n>=2} n^{-2.5} + worst evaluation error < 1


def band_count(K: int, sigma: float, sigma_hi: float = 1.0) -> int:
    """N_K(sigma): zeros in [sigma, sigma_hi] x (2 pi K^2, 2 pi (K+1)^2]."""
    if K < 2:
        raise DomainError("band_count needs K >= 2")
    lo, hi = band_range(K)
    w, _ = winding_with_retry(Rectangle(sigma, sigma_hi, lo, hi))
    return w


def n_alpha_T(alpha: float, T: float, sigma_hi: float = 1.0) -> int:
    """N(alpha, T): zeros with alpha <= beta <= sigma_hi and 0 < gamma <= T."""
    if T <= 8 * math.pi:
        w, _ = winding_with_retry(Rectangle(alpha, sigma_hi, 1e-3, T),
                                  prefer="oracle")
        return w
    total = 0
    w0, _ = winding_with_retry(Rectangle(alpha, sigma_hi, 1e-3, 8 * math.pi),
                               prefer="oracle")
    total += w0
    K = 2
    while band_range(K)[1] <= T:
        total += band_count(K, alpha, sigma_hi)
        K += 1
    lo, _ = band_range(K)
    if T > lo:
        w, _ = winding_with_retry(Rectangle(alpha, sigma_hi, lo, T))
        total += w
    return total


# ---------------------------------------------------------------------------
# separated subsets and the detection polynomial
# ---------------------------------------------------------------------------

def select_separated(zs) -> list[ZeroRecord]:
    """Greedy sweep keeping each zero whose gamma exceeds the last by >= 1."""
    out: list[ZeroRecord] = []
    last = -math.inf
    for z in sorted(zs, key=lambda z: z.gamma):
        if z.gamma - last >= 1.0:
            out.append(z)
            last = z.gamma
    return out


def to_separated_set(zs, alpha: float, K: int) -> SeparatedSet:
    """Map band-K zeros (beta >= alpha) to the shifted rectangle of the
    large-values theorem: points (beta - alpha, gamma - 2 pi K^2)."""
    lo, hi = band_range(K)
    pts = tuple((z.beta - alpha, z.gamma - lo) for z in zs)
    return SeparatedSet(points=pts, delta=1.0 - alpha, T=hi - lo)


def detection_poly(K: int, alpha: float) -> DirichletPoly:
    """D(s) = sum_{n=2}^{K} n^{-alpha - 2 pi i K^2} n^{-s}  (a_1 = 0)."""
    n = np.arange(1, K + 1, dtype=float)
    coeffs = n ** complex(-alpha, -TWO_PI * K * K)
    coeffs[0] = 0.0
    return DirichletPoly(coeffs)


def d_shift_identity_residual(K: int, alpha: float, rho: complex) -> float:
    """| sum_{n<=K} n^{-rho} - (1 + D(rho - alpha - 2 pi i K^2)) |; algebraically 0."""
    D = detection_poly(K, alpha)
    shifted = rho - alpha - 1j * TWO_PI * K * K
    return abs(power_sum(rho, K) - (1.0 + D.eval(shifted)))


def d_polynomial_check(K: int, alpha: float, zs) -> InequalityReport:
    """min_j |D(rho_j - alpha - 2 pi i K^2)| vs the detection threshold 1/2.

    At a zero, 0 = R(rho) = 1 + D(rho - alpha - 2 pi i K^2) + tail, so |D|
    should sit near 1 with deviation O(K^-alpha); the fraction below 1/2 is
    reported in the witness.
    """
    D = detection_poly(K, alpha)
    vals = []
    for z in zs:
        shifted = complex(z.beta, z.gamma) - alpha - 1j * TWO_PI * K * K
        vals.append(abs(D.eval(shifted)))
    if not vals:
        return InequalityReport(name="d_polynomial", lhs=0.5, rhs=math.inf,
                                witness="no zeros supplied", tolerance=math.inf)
    vals = np.array(vals)
    frac = float(np.mean(vals >= 0.5))
    return InequalityReport(name="d_polynomial", lhs=0.5, rhs=float(vals.min()),
                            witness=f"J={len(vals)} fraction>=1/2: {frac:.3f}",
                            tolerance=math.inf)


def strip_count_check(alpha: float, T_list) -> InequalityReport:
    """Unit-strip counts: max over T of count([alpha,1]x(T,T+1]) / ((3-alpha) log T).

    Informational: reports the empirical constant; lhs is the worst count,
    rhs the corresponding (3-alpha) log T.
    """
    worst = (0.0, 1.0, "no strips")
    for T in T_list:
        if T < math.e:
            raise DomainError("strip_count_check needs T >= e")
        w, _ = winding_with_retry(Rectangle(alpha, 1.0, float(T), float(T) + 1.0))
        denom = (3.0 - alpha) * math.log(T)
        if w / denom > worst[0] / worst[1]:
            worst = (float(w), denom, f"T = {T:g}")
    return InequalityReport(name="strip_count", lhs=worst[0], rhs=worst[1],
                            witness=worst[2], tolerance=math.inf)
