"""Real-argument Gamma, Pochhammer and Gauss hypergeometric functions.

``hyp2f1`` sums the defining power series directly.  Arrays of arguments are
handled in blocks of terms so that radial grids cost one pass per distinct
``x`` rather than one Python loop per point.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError, HypergeometricAccuracyError

MAX_TERMS = 100_000
SMALL_TERM_RTOL = 1e-16
SMALL_TERM_RUN = 3
# element-count budget for one (points x terms) block
_BLOCK_BUDGET = 4_000_000


@dataclass(frozen=True)
class HypParams:
    """Parameters (a, b, c) of F(a, b; c; x)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"c must not be zero or a negative integer, got c={self.c}")

    def shifted(self, n: int = 1) -> "HypParams":
        return HypParams(self.a + n, self.b + n, self.c + n)


def _as_params(p) -> HypParams:
    if isinstance(p, HypParams):
        return p
    a, b, c = p
    return HypParams(float(a), float(b), float(c))


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def gamma(s: float) -> float:
    """Gamma function for positive real ``s``.

    Raises:
        DomainError: if ``s <= 0``.
    """
    if not s > 0:
        raise DomainError(f"gamma is only provided for s > 0, got s={s}")
    return math.gamma(s)


def _signed_gamma(x: float) -> tuple[float, float]:
    """Return (sign, log|Gamma(x)|); sign is 0.0 at the poles."""
    if _is_nonpositive_integer(x):
        return 0.0, -math.inf
    if x > 0:
        return 1.0, math.lgamma(x)
    # Gamma alternates sign between consecutive negative integers
    sign = -1.0 if math.ceil(-x) % 2 else 1.0
    return sign, math.lgamma(x)


def gamma_ratio(num, den) -> float:
    """prod(Gamma(num)) / prod(Gamma(den)) for real, non-pole numerator arguments.

    A pole in the denominator makes the ratio zero.
    """
    for x in num:
        if _is_nonpositive_integer(x):
            raise DomainError(f"Gamma has a pole at {x}")
    if any(_is_nonpositive_integer(x) for x in den):
        return 0.0
    try:
        value = 1.0
        for x in num:
            value *= gamma(x) if x > 0 else math.gamma(x)
        for x in den:
            value /= gamma(x) if x > 0 else math.gamma(x)
        if math.isfinite(value) and value != 0.0:
            return value
    except OverflowError:
        pass
    sign, log_value = 1.0, 0.0
    for x in num:
        s, lg = _signed_gamma(x)
        sign, log_value = sign * s, log_value + lg
    for x in den:
        s, lg = _signed_gamma(x)
        sign, log_value = sign * s, log_value - lg
    return sign * math.exp(log_value)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    value = 1.0
    for j in range(n):
        value *= a + j
    return value


def _polynomial_degree(a: float, b: float) -> int | None:
    degrees = [int(-v) for v in (a, b) if _is_nonpositive_integer(v)]
    return min(degrees) if degrees else None


def _check_argument(x: np.ndarray) -> None:
    if x.size and (np.any(~np.isfinite(x)) or x.min() < 0.0 or x.max() >= 1.0):
        raise DomainError("hyp2f1 series is evaluated on 0 <= x < 1 only")


def hyp2f1(p, x, *, max_terms: int = MAX_TERMS, tail_correction: bool = True):
    """Gauss hypergeometric function F(a, b; c; x) for 0 <= x < 1.

    The series is summed term by term until three consecutive terms fall below
    ``1e-16 * (|partial sum| + 1)``.  If ``a`` or ``b`` is a non-positive
    integer the sum stops at the polynomial degree instead.

    When ``max_terms`` is exhausted (only happens for x extremely close to 1)
    the remaining tail is estimated with an Euler-Maclaurin integral of the
    continuous term function, unless ``tail_correction`` is False.

    Args:
        p: :class:`HypParams` or an ``(a, b, c)`` tuple.
        x: scalar or array of arguments.
        max_terms: hard cap on the number of directly summed terms.
        tail_correction: allow the tail estimate after the cap.

    Returns:
        float for scalar ``x``, otherwise an array shaped like ``x``.

    Raises:
        DomainError: ``x`` outside [0, 1).
        HypergeometricAccuracyError: cap reached and the tail could not be
            estimated (or ``tail_correction`` is off).
    """
    p = _as_params(p)
    xa = np.asarray(x, dtype=float)
    _check_argument(xa)
    uniq, inverse = np.unique(xa.ravel(), return_inverse=True)

    degree = _polynomial_degree(p.a, p.b)
    if degree is not None:
        values = _sum_polynomial(p, uniq, degree)
    else:
        values = _sum_series(p, uniq, max_terms, tail_correction)

    out = values[inverse].reshape(xa.shape)
    return float(out) if xa.ndim == 0 else out


def _sum_polynomial(p: HypParams, x: np.ndarray, degree: int) -> np.ndarray:
    total = np.ones_like(x)
    term = np.ones_like(x)
    for n in range(degree):
        term = term * ((p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)) * x)
        total = total + term
    return total


def _sum_series(p: HypParams, x: np.ndarray, max_terms: int, tail_correction: bool) -> np.ndarray:
    a, b, c = p.a, p.b, p.c
    m = x.size
    out = np.empty(m)
    idx = np.arange(m)
    partial = np.zeros(m)
    term = np.ones(m)
    run = np.zeros(m, dtype=int)
    n0 = 0
    block = 32
    while idx.size and n0 < max_terms:
        width = min(block, max_terms - n0, max(8, _BLOCK_BUDGET // idx.size))
        n = np.arange(n0, n0 + width - 1, dtype=float)
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        factors = np.empty((idx.size, width))
        factors[:, 0] = term
        factors[:, 1:] = ratio[None, :] * x[idx, None]
        terms = np.cumprod(factors, axis=1)
        sums = np.cumsum(np.concatenate([partial[:, None], terms], axis=1), axis=1)[:, 1:]
        small = np.abs(terms) < SMALL_TERM_RTOL * (np.abs(sums) + 1.0)

        prefix = np.stack([run >= 2, run >= 1], axis=1)
        ext = np.concatenate([prefix, small], axis=1)
        hit = ext[:, :-2] & ext[:, 1:-1] & ext[:, 2:]
        done = hit.any(axis=1)
        first = hit.argmax(axis=1)
        out[idx[done]] = sums[done, first[done]]

        keep = ~done
        nlast = n0 + width - 1
        last_ratio = (a + nlast) * (b + nlast) / ((c + nlast) * (nlast + 1.0))
        partial = sums[keep, -1]
        term = terms[keep, -1] * last_ratio * x[idx[keep]]
        tail_small = small[keep]
        run = np.where(tail_small[:, -1], np.where(tail_small[:, -2], 2, 1), 0) if width > 1 else (
            np.where(tail_small[:, -1], run[keep] + 1, 0))
        idx = idx[keep]
        n0 += width
        block = min(block * 2, 4096)

    for j, i in enumerate(idx):
        if not tail_correction:
            raise HypergeometricAccuracyError(
                f"2F1{(a, b, c)} at x={x[i]!r} did not converge within {max_terms} terms",
                partial_sum=float(partial[j]), n_terms=max_terms)
        out[i] = partial[j] + _series_tail(p, float(x[i]), max_terms, float(term[j]), float(partial[j]))
    return out


def _log_term(u: float, p: HypParams, log_x: float) -> float:
    return (math.lgamma(u + p.a) + math.lgamma(u + p.b) - math.lgamma(u + p.c)
            - math.lgamma(u + 1.0) + u * log_x)


def _series_tail(p: HypParams, x: float, start: int, first_term: float, partial: float) -> float:
    """Euler-Maclaurin estimate of sum_{n >= start} t_n with t_start = first_term.

    The term t_n extends to real n through log-gamma, so
    sum ~ integral + t(N)/2 - t'(N)/12.
    """
    N = float(start)
    if min(N + p.a, N + p.b, N + p.c) <= 1.0:
        raise HypergeometricAccuracyError(
            f"2F1{(p.a, p.b, p.c)} tail estimate needs start index beyond the parameters",
            partial_sum=partial, n_terms=start)
    if first_term == 0.0:
        return 0.0
    log_x = math.log(x)
    base = _log_term(N, p, log_x)
    power = p.a + p.b - p.c - 1.0
    v_max = max(1.0, math.log((1000.0 + 50.0 * abs(power)) / (-log_x * N)))

    def integrand(v):
        u = N * math.exp(v)
        return math.exp(_log_term(u, p, log_x) - base + v) * N

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        integral, abserr = integrate.quad(integrand, 0.0, v_max, limit=400, epsabs=0.0, epsrel=1e-12)
    log_slope = (special.digamma(N + p.a) + special.digamma(N + p.b)
                 - special.digamma(N + p.c) - special.digamma(N + 1.0) + log_x)
    correction = 0.5 - log_slope / 12.0
    tail = first_term * (integral + correction)
    # next Euler-Maclaurin term is O(t(N) / N^3)
    error = abs(first_term) * (abserr + (1.0 + abs(power)) * (abs(log_slope) + 1.0 / N) ** 3)
    if not math.isfinite(tail) or error > 1e-12 * (abs(partial + tail) + 1.0):
        raise HypergeometricAccuracyError(
            f"2F1{(p.a, p.b, p.c)} at x={x!r}: tail estimate unreliable (error ~ {error:.2e})",
            partial_sum=partial, n_terms=start)
    return tail


def hyp2f1_at_one(p) -> float:
    """F(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) for c-a-b > 0."""
    p = _as_params(p)
    s = p.c - p.a - p.b
    if not s > 0:
        raise DomainError(f"F(a,b;c;1) needs c - a - b > 0, got {s}")
    return gamma_ratio((p.c, s), (p.c - p.a, p.c - p.b))


def hyp2f1_derivative(p, x, **kwargs):
    """d/dx F(a, b; c; x) = (ab/c) F(a+1, b+1; c+1; x)."""
    p = _as_params(p)
    scale = p.a * p.b / p.c
    if scale == 0.0:
        xa = np.asarray(x, dtype=float)
        _check_argument(xa)
        return 0.0 if xa.ndim == 0 else np.zeros(xa.shape)
    return scale * hyp2f1(p.shifted(), x, **kwargs)
