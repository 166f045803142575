"""Evaluation of Riemann's auxiliary function R(s) by independent routes.

Routes:

* band sum: R(s) ~ sum_{n<=N} n^{-s} with N = floor(sqrt(t/2pi)), plus the
  leading saddle correction built from the fractional part of sqrt(t/2pi);
  fast, O(sqrt(t)) terms, calibrated error field.
* contour integral: the defining integral over a line of slope +1 crossing
  the real axis between consecutive integers near the saddle (the residues of
  the crossed poles are restored as an explicit partial sum); high-accuracy
  oracle with a node-doubling error estimate.
* lower half-plane (Im s < 0): saddle-point expansion at the conjugate
  stationary point, plus a reflection through the functional equation for
  large positive sigma.

Derived real quantities: Z(t) = 2 Re{e^{i theta(t)} R(1/2+it)} and the
rotated field e^{i theta(t)} R(1/2+it) for complex t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .numerics import csum, gauss_legendre_panels
from .special import EvalResult, _theta_vec, zeta_euler_maclaurin, _log_gamma_vec, LOG_PI

TWO_PI = 2.0 * math.pi
T_SUM_MIN = 3.0 * math.pi          # stated validity floor of the band approximation
T_LOWER_ASYMPTOTIC = -10.0         # below this, the saddle expansion takes over
SIGMA_REFLECT = 30.0               # lower half: reflect through the functional equation
ROOT_QUARTER = complex(np.exp(1j * math.pi / 4))


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------

def load_calibration(version: str = "v1") -> dict:
    """Read the versioned key->value calibration file shipped with the package."""
    text = resources.files("raux.data").joinpath(f"calibration_{version}.txt").read_text()
    out = {"version": version}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, val = line.split("=", 1)
        out[key.strip()] = float(val.strip())
    return out


_CAL = None


def calibration() -> dict:
    global _CAL
    if _CAL is None:
        _CAL = load_calibration()
    return _CAL


def _c_sum(sigma):
    """Calibrated constant for the raw band-sum error  c * K^(-sigma)."""
    cal = calibration()
    return np.where(np.abs(sigma - 0.5) <= 2.5, cal["c_sum_core"], cal["c_sum_wide"])


def _c_corr(sigma):
    """Calibrated constant for the corrected-sum error  c * a^(-sigma-1)."""
    cal = calibration()
    sig = np.asarray(sigma, dtype=float)
    return np.select(
        [np.abs(sig - 0.5) <= 0.55, np.abs(sig - 0.5) <= 2.5, np.abs(sig - 0.5) <= 8.0],
        [cal["c_corr_strip"], cal["c_corr_core"], cal["c_corr_mid"]],
        default=cal["c_corr_wide"],
    )


# ---------------------------------------------------------------------------
# bands and partial sums
# ---------------------------------------------------------------------------

def band_of(t: float) -> int:
    """Band index K with t in (2 pi K^2, 2 pi (K+1)^2]."""
    if t <= TWO_PI:
        raise DomainError(f"t = {t:g} below the first band (needs t > 2*pi)")
    return max(1, math.ceil(math.sqrt(t / TWO_PI)) - 1)


def band_range(K: int) -> tuple[float, float]:
    """The half-open t-interval (lo, hi] covered by band K."""
    if K < 1:
        raise DomainError("band index must be >= 1")
    return TWO_PI * K * K, TWO_PI * (K + 1) * (K + 1)


def power_sum(s: complex, N: int) -> complex:
    """sum_{n=1}^{N} n^{-s} with compensated summation (extended-precision
    phases above t = 1e4)."""
    if N < 1:
        return 0.0 + 0.0j
    s = complex(s)
    n = np.arange(1, N + 1)
    if abs(s.imag) > 1e4:
        ln = np.log(n.astype(np.longdouble))
        two_pi = 2 * np.arccos(np.longdouble(-1.0))
        ph = np.mod(np.longdouble(s.imag) * ln, two_pi).astype(float)
        return complex(csum(n ** (-s.real) * np.exp(-1j * ph)))
    return complex(csum(n ** (-s)))


def r_aux_sum(s, K: int) -> EvalResult:
    """Band partial sum sum_{n<=K} n^{-s}; err = c * K^(-sigma) (calibrated)."""
    if K < 1:
        raise DomainError("r_aux_sum needs K >= 1")
    s = complex(s)
    val = power_sum(s, K)
    err = float(_c_sum(s.real)) * K ** (-s.real) + 4e-16 * K * max(1.0, K ** (-s.real))
    return EvalResult(value=val, err=err, method="sum")


# ---------------------------------------------------------------------------
# the correction kernel F and the corrected band sum
# ---------------------------------------------------------------------------

def _f_kernel(z):
    """F(z) = (e^{pi i (z^2/2 + 3/8)} - i sqrt2 cos(pi z/2)) / (2 cos pi z).

    Entire; the removable points z = +-1/2 are handled by a local Taylor
    ratio. 2 Re F(1-2p) is the classical first Riemann-Siegel correction.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    num = np.exp(1j * np.pi * (z * z / 2 + 0.375)) - 1j * math.sqrt(2) * np.cos(np.pi * z / 2)
    den = 2 * np.cos(np.pi * z)
    near = np.minimum(np.abs(z - 0.5), np.abs(z + 0.5)) < 0.02
    out = np.empty_like(z)
    safe = ~near
    out[safe] = num[safe] / den[safe]
    if np.any(near):
        zz = z[near]
        z0 = np.where(zz.real > 0, 0.5, -0.5).astype(complex)
        h = zz - z0
        E0 = np.exp(1j * np.pi * (z0 * z0 / 2 + 0.375))
        g1 = 1j * np.pi * z0
        g2 = 1j * np.pi
        e_der = [E0, g1 * E0, (g2 + g1 ** 2) * E0, (3 * g1 * g2 + g1 ** 3) * E0,
                 (3 * g2 ** 2 + 6 * g1 ** 2 * g2 + g1 ** 4) * E0]
        w = np.pi / 2
        cw, sw = np.cos(w * z0), np.sin(w * z0)
        c_der = [-1j * math.sqrt(2) * d for d in
                 (cw, -w * sw, -w * w * cw, w ** 3 * sw, w ** 4 * cw)]
        wp = np.pi
        cp, sp = np.cos(wp * z0), np.sin(wp * z0)
        d_der = [2 * cp, -2 * wp * sp, -2 * wp * wp * cp, 2 * wp ** 3 * sp, 2 * wp ** 4 * cp]
        fact = [1.0, 1.0, 2.0, 6.0, 24.0]
        # numerator and denominator both vanish at z0: ratio of shifted series
        numer = sum((e_der[k] + c_der[k]) / fact[k] * h ** (k - 1) for k in range(1, 5))
        denom = sum(d_der[k] / fact[k] * h ** (k - 1) for k in range(1, 5))
        out[near] = numer / denom
    return out


def _sum_c0_batch(sigma, t):
    """Corrected band evaluation, vectorized over points with real t >= 3 pi.

    Returns (values, errs).  sigma and t are broadcast 1-D arrays.
    """
    sigma = np.asarray(sigma, dtype=float)
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    N = np.floor(a).astype(int)
    p = 1.0 - 2.0 * (a - N)
    omega = 0.5 * t * np.log(t / TWO_PI) - 0.5 * t - np.pi / 8
    corr = np.where(N % 2 == 1, 1.0, -1.0) * a ** (-sigma) \
        * np.exp(-1j * omega) * _f_kernel(p)
    vals = np.empty(len(t), dtype=complex)
    ln_all = np.log(np.arange(1, (int(N.max()) if len(N) else 1) + 1, dtype=float))
    for m in np.unique(N):
        idx = np.where(N == m)[0]
        s_sub = sigma[idx] + 1j * t[idx]
        ln = ln_all[:m]
        vals[idx] = np.exp(-s_sub[:, None] * ln[None, :]).sum(axis=1)
    vals += corr
    errs = _c_corr(sigma) * a ** (-sigma - 1.0) \
        + (2e-16 * t + 4e-16 * N) * np.maximum(1.0, a ** (-sigma))
    return vals, errs


def _sum_c0_single(s: complex) -> EvalResult:
    """Corrected band evaluation at one point, extended-precision phases."""
    sigma, t = s.real, s.imag
    a = math.sqrt(t / TWO_PI)
    N = int(a)
    p = 1.0 - 2.0 * (a - N)
    if t > 1e4:
        ld = np.longdouble
        two_pi_ld = 2 * np.arccos(ld(-1.0))
        t_ld = ld(t)
        a_ld = np.sqrt(t_ld / two_pi_ld)
        omega = float(np.mod(0.5 * t_ld * np.log(t_ld / two_pi_ld) - 0.5 * t_ld, two_pi_ld)) \
            - np.pi / 8
        p = float(1.0 - 2.0 * (a_ld - ld(N)))
    else:
        omega = 0.5 * t * math.log(t / TWO_PI) - 0.5 * t - np.pi / 8
    ssum = power_sum(s, N)
    corr = (1.0 if N % 2 == 1 else -1.0) * a ** (-sigma) \
        * complex(np.exp(-1j * omega)) * complex(_f_kernel(p)[0])
    err = float(_c_corr(sigma)) * a ** (-sigma - 1.0) \
        + (6e-20 * t if t > 1e4 else 2e-16 * t) * max(1.0, a ** (-sigma))
    return EvalResult(value=ssum + corr, err=err, method="sum")


# ---------------------------------------------------------------------------
# contour-integral oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Contour parameters for the integral oracle.

    node_count: total Gauss-Legendre node budget (>= 32).
    truncation_radius: half-length of the integration interval along the line.
    path_anchor: crossing point in (0,1) used when no saddle crossing applies.
    precision_dps: if set, evaluate with mpmath at that many digits instead of
        binary64 (rescues cancellation-dominated regimes, e.g. moderate
        negative t).
    """

    node_count: int = 384
    truncation_radius: float = 6.5
    path_anchor: float = 0.5
    precision_dps: int | None = None

    def __post_init__(self):
        if self.node_count < 32:
            raise DomainError("node_count must be >= 32")
        if not 0.0 < self.path_anchor < 1.0:
            raise DomainError("path_anchor must lie in (0,1)")
        if self.truncation_radius < 3.0:
            raise DomainError("truncation_radius too small for the integrand tail")


DEFAULT_QUAD = QuadratureSpec()


def _crossing(s: complex, anchor: float) -> tuple[int, float]:
    """Crossing point of the integration line: (m, x_c) with m = #poles left of x_c."""
    t = s.imag
    if t > 0:
        a = math.sqrt(t / TWO_PI)
        if a >= 1.15:
            m = int(a)
            xc = m + min(max(a - m, 0.15), 0.85)
            return m, xc
        if a > 0.45:
            return 0, min(a, 0.85)
        return 0, anchor
    if s.real > 4.0:
        # keep the integrand scale comparable to the tail of the series
        m = int(min(s.real / 4.0, 25.0))
        return m, m + 0.5
    return 0, anchor


def _ln_integrand(x: np.ndarray, s: complex) -> np.ndarray:
    """log of x^{-s} e^{pi i x^2} / (e^{pi i x} - e^{-pi i x}), branch-stable."""
    ln_num = -s * np.log(x) + 1j * np.pi * x * x
    imx = x.imag
    ln_den = np.empty_like(x)
    mid = np.abs(imx) <= 2.0
    xm = x[mid]
    ln_den[mid] = np.log(np.exp(1j * np.pi * xm) - np.exp(-1j * np.pi * xm))
    up = imx > 2.0
    ln_den[up] = -1j * np.pi * x[up] + 1j * np.pi + np.log1p(-np.exp(2j * np.pi * x[up]))
    dn = imx < -2.0
    ln_den[dn] = 1j * np.pi * x[dn] + np.log1p(-np.exp(-2j * np.pi * x[dn]))
    return ln_num - ln_den


def _u_grid(spec: QuadratureSpec, halve: bool = False):
    """Panelled Gauss-Legendre grid on [-U, U], denser near the crossing."""
    U = spec.truncation_radius
    per = 12
    budget = spec.node_count // (2 if halve else 1)
    inner_panels = max(8, int(budget * 0.75 / per))
    outer_panels = max(4, int(budget * 0.25 / per))
    u1, w1 = gauss_legendre_panels(-3.0, 3.0, per, inner_panels)
    u0, w0 = gauss_legendre_panels(-U, -3.0, per, outer_panels // 2 + 1)
    u2, w2 = gauss_legendre_panels(3.0, U, per, outer_panels // 2 + 1)
    return np.concatenate([u0, u1, u2]), np.concatenate([w0, w1, w2])


def _integral_once(s: complex, m: int, xc: float, u, w):
    x = xc + u * ROOT_QUARTER
    lnh = _ln_integrand(x, s)
    M = float(np.max(lnh.real))
    vals = np.exp(lnh - M)
    tail = -ROOT_QUARTER * math.exp(min(M, 700.0)) * complex(np.sum(w * vals))
    return power_sum(s, m) + tail, M


def r_aux_integral(s, spec: QuadratureSpec | None = None) -> EvalResult:
    """R(s) by the defining contour integral (oracle route).

    The line of slope +1 crosses the real axis near the saddle sqrt(t/2pi)
    (between consecutive integers); residues of the poles left of the
    crossing are restored as an explicit partial sum.  err comes from a
    node-doubled comparison plus a cancellation estimate.
    """
    spec = spec or DEFAULT_QUAD
    s = complex(s)
    if spec.precision_dps:
        return _integral_mpmath(s, spec)
    m, xc = _crossing(s, spec.path_anchor)
    u2, w2 = _u_grid(spec)
    u1, w1 = _u_grid(spec, halve=True)
    coarse, _ = _integral_once(s, m, xc, u1, w1)
    fine, M = _integral_once(s, m, xc, u2, w2)
    quad_err = abs(fine - coarse)
    # cancellation floor: the integrand peak times roundoff
    floor = math.exp(min(M, 690.0)) * 3e-16 * math.sqrt(len(u2))
    err = quad_err + floor + abs(s.imag) * 0.6e-16 * abs(fine)
    if quad_err > 0.05 * max(abs(fine), 100.0 * floor):
        raise ConvergenceError(
            f"contour quadrature cannot stabilize at s={s:g}: doubling moved the value"
            f" by {quad_err:.2e} (|R| ~ {abs(fine):.2e});"
            " pass QuadratureSpec(precision_dps=...) for an arbitrary-precision run")
    return EvalResult(value=fine, err=float(err), method="integral")


def _integral_mpmath(s: complex, spec: QuadratureSpec) -> EvalResult:
    import mpmath as mp

    m, xc = _crossing(s, spec.path_anchor)
    tau = -s.imag if s.imag < 0 else 0.0
    dps = max(spec.precision_dps, int(3 * math.pi * tau / 4 / math.log(10)) + 25)
    with mp.workdps(dps):
        sm = mp.mpc(s)
        e = mp.expjpi(mp.mpf(1) / 4)

        def h(u):
            x = xc + u * e
            return mp.e ** (-sm * mp.log(x) + mp.pi * 1j * x * x) \
                / (mp.expjpi(x) - mp.expjpi(-x))

        U = mp.sqrt((3 * mp.pi * tau / 4 + dps * mp.log(10)) / mp.pi) + 4
        val, q_err = mp.quad(h, [-U, -U / 2, 0, U / 2, U], error=True)
        tail = -e * val
        head = mp.nsum(lambda n: n ** (-sm), [1, m]) if m else mp.mpf(0)
        total = mp.mpc(head + tail)
        err = float(abs(q_err)) + abs(complex(total)) * 10.0 ** (8 - dps)
    return EvalResult(value=complex(total), err=err, method="integral")


def r_aux_integral_conjpath(s, spec: QuadratureSpec | None = None) -> EvalResult:
    """conj(R(conj(s))) via the explicitly conjugated contour (slope -1 line).

    Used as an independent check of the contour machinery: for any s,
    conj(r_aux_integral_conjpath(s).value) must reproduce R(conj(s)).
    """
    spec = spec or DEFAULT_QUAD
    s = complex(s)
    m, xc = _crossing(np.conj(s), spec.path_anchor)
    u, w = _u_grid(spec)
    x = xc + u * np.conj(ROOT_QUARTER)
    ln_num = -s * np.log(x) - 1j * np.pi * x * x
    imx = x.imag
    ln_den = np.empty_like(x)
    mid = np.abs(imx) <= 2.0
    xm = x[mid]
    ln_den[mid] = np.log(np.exp(-1j * np.pi * xm) - np.exp(1j * np.pi * xm))
    up = imx > 2.0
    ln_den[up] = -1j * np.pi * x[up] + np.log1p(-np.exp(2j * np.pi * x[up]))
    dn = imx < -2.0
    ln_den[dn] = 1j * np.pi * x[dn] + 1j * np.pi + np.log1p(-np.exp(-2j * np.pi * x[dn]))
    lnh = ln_num - ln_den
    M = float(np.max(lnh.real))
    tail = -np.conj(ROOT_QUARTER) * math.exp(min(M, 700.0)) * complex(np.sum(w * np.exp(lnh - M)))
    val = power_sum(s, m) + tail
    return EvalResult(value=val, err=3e-16 * math.exp(min(M, 700.0)) * math.sqrt(len(u))
                      + 1e-12 * abs(val), method="integral")

# ---------------------------------------------------------------------------
# lower half-plane (Im s < 0)
# ---------------------------------------------------------------------------

def _lower_saddle_terms(s: complex, kmax: int = 3) -> complex:
    """Saddle-point expansion of the contour tail for Im s < 0.

    Expands 1/(e^{pi i x}-e^{-pi i x}) = sum_k e^{-(2k+1) pi i x} (valid on the
    lower part of the path) and evaluates each term at its stationary point
    with a second-order correction.
    """
    total = 0.0 + 0.0j
    for k in range(kmax + 1):
        c = 2 * k + 1
        disc = np.sqrt(complex(c * c / 16.0 + s / (2j * np.pi)))
        x0 = c / 4.0 - disc
        if x0.imag > 0:
            x0 = c / 4.0 + disc
        phi = -s * np.log(x0) + 1j * np.pi * x0 * x0 - c * 1j * np.pi * x0
        d2 = s / x0 ** 2 + 2j * np.pi
        d3 = -2 * s / x0 ** 3
        d4 = 6 * s / x0 ** 4
        alpha = (np.pi - np.angle(d2)) / 2
        while alpha < -np.pi / 4:
            alpha += np.pi
        while alpha > 3 * np.pi / 4:
            alpha -= np.pi
        amp = math.sqrt(2 * np.pi / abs(d2)) * complex(np.exp(1j * alpha))
        f2 = 1 + d4 / (8 * d2 ** 2) - 5 * d3 ** 2 / (24 * d2 ** 3)
        total += amp * complex(np.exp(phi)) * f2
    return -total


def _lower_hybrid(s: complex) -> EvalResult:
    """R(s) for Im s < 0, moderate sigma: partial sum + saddle expansion.

    The steepest-descent path through the conjugate saddle crosses the real
    axis near atilde = sqrt(|t|/2pi); the poles left of it contribute the
    explicit partial sum.
    """
    tau = -s.imag
    atil = math.sqrt(tau / TWO_PI)
    m = int(atil)
    ssum = power_sum(s, m)
    sad = _lower_saddle_terms(s)
    val = ssum + sad
    # validated against arbitrary-precision contour runs: relative error
    # <= ~2e-3 at tau=2 shrinking like 1/tau^2; grows mildly toward sigma ~ 0
    rel = max(2e-6, min(2e-3, 0.03 / (tau * tau)))
    if abs(s.real) < 25.0:
        rel = max(rel, min(5e-3, 14.0 / (tau ** 3)))
    return EvalResult(value=val, err=rel * abs(val) + 1e-300, method="asymptotic")


def _chi_log(s: complex) -> complex:
    """log of the functional-equation factor chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2)."""
    z1 = (1.0 - s) / 2.0
    z2 = s / 2.0
    for z in (z1, z2):
        if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
            raise PoleError(f"chi: Gamma pole at {z!r}")
    lg = _log_gamma_vec(np.array([z1, z2]))
    return (s - 0.5) * LOG_PI + complex(lg[0]) - complex(lg[1])


def _lower_reflect(s: complex) -> EvalResult:
    """R(s) for Im s < 0 and large positive sigma via the functional equation:
    R(s) = zeta(s) - chi(s) * conj(R(1 - conj(s)))."""
    z = zeta_euler_maclaurin(s)
    chi = complex(np.exp(_chi_log(s)))
    refl = _lower_hybrid(1.0 - np.conj(s))
    val = z.value - chi * np.conj(refl.value)
    err = z.err + abs(chi) * refl.err + 1e-14 * abs(chi) * abs(refl.value)
    return EvalResult(value=val, err=err, method="asymptotic")


# ---------------------------------------------------------------------------
# dispatch, Z(t), rotated field
# ---------------------------------------------------------------------------

def r_aux(s, spec: QuadratureSpec | None = None) -> EvalResult:
    """R(s) by the route fitting the argument.

    t >= 3 pi: band sum with the leading correction (method "sum").
    -10 < t < 3 pi: contour-integral oracle (method "integral").
    t <= -10: lower half-plane asymptotics (method "asymptotic").
    """
    s = complex(s)
    if abs(s.real) > 120.0 or abs(s.imag) > 2e6:
        raise DomainError(f"s = {s:g} outside the supported box |sigma|<=120, |t|<=2e6")
    t = s.imag
    if t >= T_SUM_MIN:
        return _sum_c0_single(s)
    if t > T_LOWER_ASYMPTOTIC:
        return r_aux_integral(s, spec)
    if s.real > SIGMA_REFLECT:
        return _lower_reflect(s)
    return _lower_hybrid(s)


def z_fn(t: float, method: str = "auto") -> float:
    """Z(t) = 2 Re{e^{i theta(t)} R(1/2 + it)} for real t."""
    t = float(t)
    s = 0.5 + 1j * t
    if method == "auto":
        method = "integral" if abs(t) < 3000.0 else "sum"
    if method == "integral":
        r = r_aux_integral(s)
    elif method == "sum":
        if t < T_SUM_MIN:
            raise DomainError("sum route needs t >= 3 pi")
        r = _sum_c0_single(s)
    else:
        raise DomainError(f"unknown z_fn method {method!r}")
    th = complex(_theta_vec(np.array([complex(t)]))[0]).real
    return 2.0 * (complex(np.exp(1j * th)) * r.value).real


def z_fn_batch(ts: np.ndarray, method: str = "auto") -> np.ndarray:
    """Vectorized Z(t) over a real grid (plot/scan accuracy)."""
    ts = np.asarray(ts, dtype=float)
    vals = np.empty(len(ts), dtype=complex)
    use_sum = (ts >= 3000.0) if method == "auto" else \
        np.full(len(ts), method == "sum", dtype=bool)
    if np.any(use_sum):
        v, _ = _sum_c0_batch(np.full(int(use_sum.sum()), 0.5), ts[use_sum])
        vals[use_sum] = v
    rest = ~use_sum
    if np.any(rest):
        v, _ = _integral_batch(np.full(int(rest.sum()), 0.5) + 1j * ts[rest])
        vals[rest] = v
    th = _theta_vec(ts.astype(complex)).real
    return 2.0 * (np.exp(1j * th) * vals).real


def rotated_field(t) -> EvalResult:
    """e^{i theta(t)} R(1/2 + it) for complex t with |Im t| <= 8."""
    t = complex(t)
    if abs(t.imag) > 8.0:
        raise DomainError("rotated_field needs |Im t| <= 8")
    s = 0.5 + 1j * t  # sigma = 1/2 - Im t, real ordinate Re t
    r = r_aux(s)
    th = complex(_theta_vec(np.array([t]))[0])
    rot = complex(np.exp(1j * th))
    return EvalResult(value=rot * r.value, err=abs(rot) * r.err * 1.0000001,
                      method=r.method)


# ---------------------------------------------------------------------------
# batch evaluation for scans and grids
# ---------------------------------------------------------------------------

def _integral_batch(s_arr: np.ndarray, spec: QuadratureSpec | None = None):
    """Contour oracle over an array of points (shared u-grid, per-point crossing)."""
    spec = spec or DEFAULT_QUAD
    s_arr = np.asarray(s_arr, dtype=complex)
    u, w = _u_grid(spec)
    m = np.zeros(len(s_arr), dtype=int)
    xc = np.full(len(s_arr), spec.path_anchor, dtype=float)
    for i, s in enumerate(s_arr):
        m[i], xc[i] = _crossing(complex(s), spec.path_anchor)
    x = xc[:, None] + u[None, :] * ROOT_QUARTER
    ln_num = -s_arr[:, None] * np.log(x) + 1j * np.pi * x * x
    imx = x.imag
    ln_den = np.empty_like(x)
    mid = np.abs(imx) <= 2.0
    xm = x[mid]
    ln_den[mid] = np.log(np.exp(1j * np.pi * xm) - np.exp(-1j * np.pi * xm))
    up = imx > 2.0
    ln_den[up] = -1j * np.pi * x[up] + 1j * np.pi + np.log1p(-np.exp(2j * np.pi * x[up]))
    dn = imx < -2.0
    ln_den[dn] = 1j * np.pi * x[dn] + np.log1p(-np.exp(-2j * np.pi * x[dn]))
    lnh = ln_num - ln_den
    M = lnh.real.max(axis=1)
    tails = -ROOT_QUARTER * np.exp(np.minimum(M, 700.0)) * (np.exp(lnh - M[:, None]) * w).sum(axis=1)
    vals = tails.copy()
    errs = np.exp(np.minimum(M, 700.0) - np.log(np.maximum(np.abs(tails), 1e-300))) \
        * 3e-16 * math.sqrt(len(u)) * np.abs(tails) + np.abs(s_arr.imag) * 0.6e-16 * np.abs(tails)
    mmax = int(m.max()) if len(m) else 0
    if mmax:
        ln_all = np.log(np.arange(1, mmax + 1, dtype=float))
        for mv in np.unique(m):
            if mv == 0:
                continue
            idx = np.where(m == mv)[0]
            vals[idx] += np.exp(-s_arr[idx, None] * ln_all[None, :mv]).sum(axis=1)
    return vals, errs


def eval_r_batch(s_arr: np.ndarray, prefer: str = "fast"):
    """R(s) over an array of points; returns (values, errs).

    prefer="fast": corrected band sums wherever valid (t >= 3 pi), integral
    oracle elsewhere.  prefer="oracle": integral oracle wherever tractable.
    """
    s_arr = np.asarray(s_arr, dtype=complex)
    vals = np.empty(len(s_arr), dtype=complex)
    errs = np.empty(len(s_arr), dtype=float)
    t = s_arr.imag
    sig = s_arr.real
    if prefer == "oracle":
        band = (t >= T_SUM_MIN) & (t > 5e4)
        orac = (t > T_LOWER_ASYMPTOTIC) & ~band
    else:
        band = t >= T_SUM_MIN
        orac = (t > T_LOWER_ASYMPTOTIC) & ~band
    low_r = (t <= T_LOWER_ASYMPTOTIC) & (sig > SIGMA_REFLECT)
    low_h = (t <= T_LOWER_ASYMPTOTIC) & ~low_r
    if np.any(band):
        vals[band], errs[band] = _sum_c0_batch(sig[band], t[band])
    if np.any(orac):
        vals[orac], errs[orac] = _integral_batch(s_arr[orac])
    for mask, fn in ((low_r, _lower_reflect), (low_h, _lower_hybrid)):
        if np.any(mask):
            for i in np.where(mask)[0]:
                r = fn(complex(s_arr[i]))
                vals[i], errs[i] = r.value, r.err
    return vals, errs
