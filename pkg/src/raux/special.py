"""Supporting special functions.

Riemann-Siegel theta, complex log-gamma (principal branch), the completed
factor pi^(-s/2) Gamma(s/2), and an independent Euler-Maclaurin zeta used as
an oracle in cross-checks.  Public entry points return :class:`EvalResult`
(value + heuristic absolute error radius + method tag); vectorized kernels
for grid work are the underscore variants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .numerics import bernoulli, csum

LOG_PI = math.log(math.pi)
_STIRLING_THRESHOLD = 10.0
# B_{2k} / (2k (2k-1)) for k = 1..10
_STIRLING_COEFFS = tuple(
    float(bernoulli(2 * k) / (2 * k * (2 * k - 1))) for k in range(1, 11)
)


@dataclass(frozen=True)
class EvalResult:
    """A complex value with a heuristic absolute error radius.

    ``log_value`` (log-magnitude + i*phase) is populated instead of a plain
    value when the magnitude would under- or overflow binary64; ``value`` is
    then the clamped exponential and consumers needing phase information
    should read ``log_value``.
    """

    value: complex
    err: float
    method: str  # "sum" | "integral" | "euler_maclaurin" | "asymptotic"
    log_value: complex | None = None

    def __post_init__(self):
        if self.err < 0 or not math.isfinite(self.err):
            raise DomainError(f"error radius must be finite and >= 0, got {self.err}")
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"non-finite value {v!r} escaping an evaluation")


def _log_gamma_vec(z: np.ndarray) -> np.ndarray:
    """Principal-branch log Gamma, vectorized.

    Upward recurrence until Re z >= 10, then a 10-term Stirling series.  The
    recurrence sum of principal logs is analytic on C minus (-inf, 0] and
    agrees with log Gamma on the positive axis, hence equals the principal
    branch there.
    """
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    w = z.copy()
    # accumulate -log(w) while Re w < threshold
    while True:
        mask = w.real < _STIRLING_THRESHOLD
        if not np.any(mask):
            break
        out[mask] -= np.log(w[mask])
        w[mask] += 1.0
    rz = 1.0 / w
    rz2 = rz * rz
    series = np.zeros_like(w)
    p = rz
    for c in _STIRLING_COEFFS:
        series += c * p
        p *= rz2
    out += (w - 0.5) * np.log(w) - w + 0.5 * math.log(2.0 * math.pi) + series
    return out


def log_gamma(z: complex) -> EvalResult:
    """Principal branch of log Gamma(z).  Raises PoleError at 0, -1, -2, ..."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"log_gamma pole at z = {z.real:g}")
    val = complex(_log_gamma_vec(np.array([z]))[0])
    # Stirling tail at Re w >= 10 is below 2e-21 / |w|; recurrence adds ~eps per step
    steps = max(0.0, _STIRLING_THRESHOLD - z.real)
    err = 1e-15 * (abs(val) + 1.0) + 2e-16 * steps * (abs(math.log(max(abs(z), 0.1))) + 1.0)
    return EvalResult(value=val, err=err, method="asymptotic")


def _theta_vec(t: np.ndarray) -> np.ndarray:
    """Riemann-Siegel theta at complex t (odd analytic continuation)."""
    t = np.asarray(t, dtype=complex)
    a = _log_gamma_vec(0.25 + 0.5j * t)
    b = _log_gamma_vec(0.25 - 0.5j * t)
    return (a - b) / 2j - (t / 2.0) * LOG_PI


def theta(t) -> EvalResult:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continued to complex t."""
    tc = complex(t)
    z = 0.25 + 0.5j * tc
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"theta: Gamma pole at 1/4 + it/2 = {z.real:g}")
    val = complex(_theta_vec(np.array([tc]))[0])
    err = 1e-14 * (1.0 + abs(val))
    if np.isreal(t) or (isinstance(t, complex) and t.imag == 0.0):
        # real input: imaginary part is pure roundoff
        err = max(err, abs(val.imag))
        val = complex(val.real, 0.0)
    return EvalResult(value=val, err=err, method="asymptotic")


def completed_factor(s) -> EvalResult:
    """pi^(-s/2) * Gamma(s/2), computed in the log domain.

    ``log_value`` always carries log-magnitude + i*phase; when the magnitude
    leaves binary64 range, ``value`` is clamped (0 on underflow) and the phase
    survives only in ``log_value``.
    """
    s = complex(s)
    half = s / 2.0
    if half.imag == 0.0 and half.real <= 0.0 and half.real == int(half.real):
        raise PoleError(f"completed_factor pole at s = {s.real:g}")
    lg = complex(_log_gamma_vec(np.array([half]))[0])
    logval = -half * LOG_PI + lg
    err_rel = 1e-14 * (1.0 + abs(logval))
    if abs(logval.real) < 680.0:
        val = complex(np.exp(logval))
        return EvalResult(value=val, err=err_rel * abs(val), method="asymptotic",
                          log_value=logval)
    if logval.real < 0:  # underflow: magnitude below ~1e-296
        return EvalResult(value=0.0 + 0.0j, err=math.exp(-680.0), method="asymptotic",
                          log_value=logval)
    phase = complex(np.exp(1j * logval.imag))
    return EvalResult(value=8e307 * phase, err=8e307, method="asymptotic",
                      log_value=logval)


def _completed_log_vec(s: np.ndarray) -> np.ndarray:
    """log of pi^(-s/2) Gamma(s/2) (log-magnitude + i*phase), vectorized."""
    s = np.asarray(s, dtype=complex)
    return -0.5 * s * LOG_PI + _log_gamma_vec(0.5 * s)


def zeta_euler_maclaurin(s, target_err: float = 1e-12) -> EvalResult:
    """zeta(s) by Euler-Maclaurin summation.

    Intended range: -3 <= Re s <= 4, |Im s| <= 1e6 (accurate well beyond).
    Raises PoleError at s = 1.
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta pole at s = 1")
    sigma, t = s.real, abs(s.imag)
    if sigma < -3.0 - 1e-12:
        raise DomainError(f"zeta_euler_maclaurin: Re s = {sigma:g} below supported range")
    # N sized so the correction terms decay like ~0.2^k; k <= 30 then suffices
    N = max(20, int(0.35 * t) + 10)
    n = np.arange(1, N)
    if t > 1e4:
        # phase t*log(n) needs argument reduction beyond double: do it in
        # extended precision so the head sum keeps ~1e-12 absolute accuracy
        ln = np.log(n.astype(np.longdouble))
        two_pi = 2 * np.arccos(np.longdouble(-1.0))
        ph = np.mod(np.longdouble(s.imag) * ln, two_pi).astype(float)
        head = csum(n ** (-s.real) * np.exp(-1j * ph))
    else:
        head = csum(n ** (-s)) if N > 1 else 0.0
    NmS = complex(np.exp(-s * math.log(N)))
    total = head + 0.5 * NmS + NmS * N / (s - 1.0)
    # correction terms  B_{2k}/(2k)! * (s)_{2k-1} * N^{1-s-2k}, updated
    # multiplicatively to avoid overflow of the Pochhammer factor
    term = (1.0 / 12.0) * s * NmS / N
    prev_mag = math.inf
    err = math.inf
    for k in range(1, 31):
        mag = abs(term)
        if mag > prev_mag:      # divergent asymptotic tail: stop before adding
            err = prev_mag
            break
        total += term
        bound = mag * abs(s + 2 * k + 1) / max(sigma + 2 * k + 1, 1.0)
        if bound < target_err:
            err = max(bound, 4e-16 * abs(total) * math.log(N + 2.0))
            break
        prev_mag = mag
        bratio = float(bernoulli(2 * k + 2) / bernoulli(2 * k))
        term = term * bratio / ((2 * k + 1) * (2 * k + 2)) \
            * (s + 2 * k - 1) * (s + 2 * k) / (N * N)
    else:
        err = max(mag, 1e-15 * abs(total))
    # roundoff of the head terms: phases t*log n and magnitudes up to N^{-sigma}
    phase_eps = 6e-20 * t if t > 1e4 else 2e-16 * t
    err += (phase_eps + 4e-16) * max(1.0, N ** (-sigma)) * math.sqrt(math.log(N + 2.0))
    return EvalResult(value=complex(total), err=float(err), method="euler_maclaurin")
