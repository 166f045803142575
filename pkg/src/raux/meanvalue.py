"""Dirichlet-polynomial mean values, bilinear inequalities, and large values.

Implemented checks (all proved inequalities; a failing report beyond
roundoff tolerance indicates an implementation bug, not new mathematics):

* exact mean value of |A(it)|^2 over an interval, and the bound
  (T + 4 pi/3) sum |a_n|^2 + (8 pi/3) sum n |a_n|^2;
* the bilinear Hilbert-type inequality with constant 3 pi/2, and the
  sharper constant pi sqrt(1 + (2/3) sqrt(6/5));
* the kernel-sum bound sum_k 1/(1+(t-t_k)^2) <= pi coth pi for unit-separated
  ordinates, with the sharper far-band bound;
* the weighted-coefficient bound through the Mellin machinery (L1 and L2
  forms, constant b < 8.775);
* the well-separated large-values bound with constant 25 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, DomainError, PreconditionError
from .numerics import csum, gauss_legendre_panels
from .reports import InequalityReport
from .smoothext import WeightFn, constant_b

PI = math.pi
PI_COTH_PI = PI / math.tanh(PI)
MONTGOMERY_CONST = 1.5 * PI
PREISSMAN_CONST = PI * math.sqrt(1.0 + (2.0 / 3.0) * math.sqrt(6.0 / 5.0))


@dataclass(frozen=True)
class DirichletPoly:
    """A(s) = sum_{n=1}^{N} a_n n^{-s}; coeffs[k] is a_{k+1}."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) < 1:
            raise DomainError("DirichletPoly needs a 1-D coefficient vector, N >= 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def eval(self, s) -> complex:
        n = np.arange(1, self.N + 1)
        return complex(csum(self.coeffs * n ** (-complex(s))))

    def eval_it(self, ts: np.ndarray) -> np.ndarray:
        """A(i t) over a real grid (vectorized)."""
        ts = np.asarray(ts, dtype=float)
        ln = np.log(np.arange(1, self.N + 1))
        return np.exp(-1j * np.outer(ts, ln)) @ self.coeffs


@dataclass(frozen=True)
class SeparatedSet:
    """Well-separated points s_j = sigma_j + i t_j in [0, Delta] x [0, T]."""

    points: tuple
    delta: float
    T: float

    def validate(self) -> None:
        ts = np.array([t for _, t in self.points])
        sg = np.array([s for s, _ in self.points])
        if self.T < 4.0:
            raise PreconditionError(f"SeparatedSet: T = {self.T:g} < 4")
        if self.delta + self.delta ** 2 > 1.0 + 1e-12:
            raise PreconditionError(
                f"SeparatedSet: Delta + Delta^2 = {self.delta + self.delta**2:g} > 1")
        if len(ts) == 0:
            return
        if np.any(sg < -1e-12) or np.any(sg > self.delta + 1e-12):
            raise PreconditionError("SeparatedSet: some sigma_j outside [0, Delta]")
        if np.any(ts < -1e-12) or np.any(ts > self.T + 1e-12):
            raise PreconditionError("SeparatedSet: some t_j outside [0, T]")
        d = np.diff(np.sort(ts))
        if len(d) and d.min() < 1.0 - 1e-12:
            raise PreconditionError(
                f"SeparatedSet: minimal ordinate gap {d.min():g} < 1")


def mean_value_exact(p: DirichletPoly, U: float, T: float) -> float:
    """Exact value of int_U^{U+T} |A(it)|^2 dt (closed form, O(N^2))."""
    if T <= 0:
        raise DomainError("mean_value_exact needs T > 0")
    n = np.arange(1, p.N + 1)
    a = p.coeffs * n ** (-1j * U)  # the U-shift absorbed into coefficients
    diag = T * float(np.sum(np.abs(a) ** 2))
    if p.N == 1:
        return diag
    ln = np.log(n)
    dl = ln[None, :] - ln[:, None]          # log m - log n at (n, m)
    outer = a[:, None] * np.conj(a[None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        kern = (np.exp(1j * T * dl) - 1.0) / (1j * dl)
    np.fill_diagonal(kern, 0.0)
    off = complex(np.sum(outer * kern))
    return diag + off.real


def mean_value_rhs(p: DirichletPoly, T: float) -> float:
    n = np.arange(1, p.N + 1)
    sq = np.abs(p.coeffs) ** 2
    return (T + 4 * PI / 3) * float(np.sum(sq)) + (8 * PI / 3) * float(np.sum(n * sq))


def mean_value_check(p: DirichletPoly, U: float, T: float) -> InequalityReport:
    lhs = mean_value_exact(p, U, T)
    rhs = mean_value_rhs(p, T)
    return InequalityReport(name="mean_value", lhs=lhs, rhs=rhs,
                            witness=f"N={p.N} U={U:g} T={T:g}")


def hilbert_bilinear_check(x, y, lam) -> list[InequalityReport]:
    """Bilinear |sum_{m != n} x_m y_n / (lam_m - lam_n)| against both constants."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    lam = np.asarray(lam, dtype=float)
    if len(set(lam.tolist())) != len(lam):
        raise DegenerateError("hilbert_bilinear_check: coincident frequencies")
    diff = lam[:, None] - lam[None, :]
    with np.errstate(divide="ignore"):
        kern = 1.0 / diff
    np.fill_diagonal(kern, 0.0)
    lhs = abs(complex(x @ kern @ y))
    if len(lam) == 1:
        delta = np.array([math.inf])
    else:
        ad = np.abs(diff) + np.where(np.eye(len(lam), dtype=bool), math.inf, 0.0)
        delta = ad.min(axis=1)
    weight = math.sqrt(float(np.sum(np.abs(x) ** 2 / delta))) \
        * math.sqrt(float(np.sum(np.abs(y) ** 2 / delta)))
    wit = f"J={len(lam)}"
    return [
        InequalityReport(name="bilinear_montgomery", lhs=lhs,
                         rhs=MONTGOMERY_CONST * weight, witness=wit),
        InequalityReport(name="bilinear_preissman", lhs=lhs,
                         rhs=PREISSMAN_CONST * weight, witness=wit),
    ]


def kernel_sum_check(t: float, tks, T: float) -> list[InequalityReport]:
    """sum_k 1/(1+(t-t_k)^2) vs pi coth pi; far-band variant when applicable."""
    tks = np.sort(np.asarray(tks, dtype=float))
    if len(tks) and (tks[0] < -1e-12 or tks[-1] > T + 1e-12):
        raise PreconditionError("kernel_sum_check: ordinates outside [0, T]")
    gaps = np.diff(tks)
    if len(gaps) and gaps.min() < 1.0 - 1e-12:
        raise PreconditionError(f"kernel_sum_check: gap {gaps.min():g} < 1")
    total = float(np.sum(1.0 / (1.0 + (t - tks) ** 2)))
    out = [InequalityReport(name="kernel_global", lhs=total, rhs=PI_COTH_PI,
                            witness=f"t={t:g} n={len(tks)}")]
    m = math.floor(t / T) if t >= 0 else -math.ceil(-t / T)
    if t >= 0 and m >= 2:
        rhs = 1.0 / ((m - 1) ** 2 * T ** 2) + math.atan((m - 1) * T) - math.atan((m - 2) * T)
        out.append(InequalityReport(name="kernel_far_band", lhs=total, rhs=rhs,
                                    witness=f"t={t:g} m={m} T={T:g}"))
    elif t < 0 and -m >= 2:
        mm = -m
        rhs = 1.0 / ((mm - 1) ** 2 * T ** 2) + math.atan((mm - 1) * T) - math.atan((mm - 2) * T)
        out.append(InequalityReport(name="kernel_far_band", lhs=total, rhs=rhs,
                                    witness=f"t={t:g} m={mm} T={T:g}"))
    return out


def _cauchy_weight_integrals(p: DirichletPoly, t0: float, t_cut: float = 1e3,
                             nodes_inner: int = 2048, nodes_outer: int = 1024):
    """Quadrature of int |A(i(t0+t))|^p dt/(1+t^2) for p = 1, 2, |t| <= t_cut.

    Returns (I1, I2, tail_bound_1, tail_bound_2); the tails use
    sup |A| <= sum |a_n|.
    """
    inner_t, inner_w = gauss_legendre_panels(-40.0, 40.0, 16, max(32, nodes_inner // 16))
    outer_lo, wlo = gauss_legendre_panels(-t_cut, -40.0, 16, max(16, nodes_outer // 32))
    outer_hi, whi = gauss_legendre_panels(40.0, t_cut, 16, max(16, nodes_outer // 32))
    t = np.concatenate([outer_lo, inner_t, outer_hi])
    w = np.concatenate([wlo, inner_w, whi])
    vals = np.abs(p.eval_it(t0 + t))
    cw = w / (1.0 + t * t)
    I1 = float(np.sum(cw * vals))
    I2 = float(np.sum(cw * vals ** 2))
    sup = float(np.sum(np.abs(p.coeffs)))
    tail = PI - 2.0 * math.atan(t_cut)
    return I1, I2, sup * tail, sup * sup * tail


def weighted_poly_check(p: DirichletPoly, f: WeightFn, t0: float) -> list[InequalityReport]:
    """|sum a_n f(n) n^{-i t0}| against the L1 and L2 Mellin-route bounds."""
    N = p.N
    xs = np.linspace(1.0, float(N), 512)
    for label, vals in (("|f|", np.abs(f.eval0(xs))),
                        ("x|f'|", np.abs(xs * f.eval1(xs))),
                        ("x^2|f''|", np.abs(xs * xs * f.eval2(xs)))):
        if np.max(vals) > 1.0 + 1e-9:
            raise PreconditionError(f"weighted_poly_check: {label} exceeds 1 on [1, N]")
    n = np.arange(1, N + 1)
    lhs = abs(complex(csum(p.coeffs * f.eval0(n.astype(float)) * n ** (-1j * t0))))
    _, b = constant_b()
    I1, I2, tail1, tail2 = _cauchy_weight_integrals(p, t0)
    logf = math.log(N) + 2.0
    rhs1 = b / (2 * PI) * logf * I1
    rhs2 = b / (2 * math.sqrt(PI)) * logf * math.sqrt(I2)
    wit = f"N={N} t0={t0:g} (tail bounds {tail1:.2e}, {tail2:.2e} not added to rhs)"
    return [
        InequalityReport(name="weighted_poly_l1", lhs=lhs, rhs=rhs1, witness=wit),
        InequalityReport(name="weighted_poly_l2", lhs=lhs, rhs=rhs2, witness=wit),
    ]


def large_values_check(p: DirichletPoly, S: SeparatedSet) -> InequalityReport:
    """sum_j |A(s_j)|^2 <= 25 pi (log N + 2)^2 * mean-value bound."""
    S.validate()
    lhs = 0.0
    worst = ""
    worst_val = -1.0
    for sg, t in S.points:
        v = abs(p.eval(complex(sg, t))) ** 2
        lhs += v
        if v > worst_val:
            worst_val, worst = v, f"s = {sg:g}+{t:g}i"
    rhs = 25 * PI * (math.log(p.N) + 2.0) ** 2 * mean_value_rhs(p, S.T)
    return InequalityReport(name="large_values", lhs=lhs, rhs=rhs,
                            witness=f"J={len(S.points)} peak at {worst}")


# ---------------------------------------------------------------------------
# seeded random instances for the property suites
# ---------------------------------------------------------------------------

def random_poly(rng: np.random.Generator, N: int) -> DirichletPoly:
    """Coefficients uniform on the complex unit disk."""
    r = np.sqrt(rng.uniform(0.0, 1.0, N))
    ph = rng.uniform(0.0, 2 * PI, N)
    return DirichletPoly(r * np.exp(1j * ph))


def random_separated(rng: np.random.Generator, J: int, T: float,
                     delta: float) -> SeparatedSet:
    """J unit-separated ordinates in [0, T]: gaps 1 + jitter, random offset."""
    if J > int(T) + 1:
        raise DomainError(f"cannot place {J} unit-separated points in [0, {T:g}]")
    slack = (T - (J - 1)) * rng.uniform(0.3, 0.95)
    extra = rng.uniform(0.0, 1.0, max(J - 1, 0))
    if len(extra):
        extra = extra / max(float(extra.sum()), 1e-30) * slack
    ts = np.concatenate([[0.0], np.cumsum(1.0 + extra)]) if J > 1 else np.zeros(1)
    ts = ts + rng.uniform(0.0, max(1e-12, T - float(ts[-1])))
    sg = rng.uniform(0.0, delta, J)
    return SeparatedSet(points=tuple(zip(sg.tolist(), ts.tolist())),
                        delta=delta, T=T)
