"""Coefficient extraction and coefficient bounds for alpha-harmonic maps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alphamap import AlphaHarmonicMap, WirtingerPair, sup_Lambda, wirtinger
from .errors import AliasingError, DegenerateExtractionError, DomainError
from .specialfns import HypParams, gamma_ratio, hyp2f1_at_one, hyp2f1_derivative, pochhammer

DEFAULT_RADIUS = 0.7


@dataclass(frozen=True)
class ExtractionResult:
    k: int
    c_plus: complex
    c_minus: complex
    radius: float
    quadrature_points: int


def _check_index(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    return int(k)


def g_factor(k: int, alpha: float, r: float) -> float:
    """G_k(r, alpha) = (-alpha/2)(k - alpha/2)/(k+1) * F(1 - alpha/2, k + 1 - alpha/2; k + 2; r^2).

    This is the derivative of F(-alpha/2, k - alpha/2; k + 1; t) at t = r^2.
    At r = 1 the shifted series is closed by Gauss summation, which needs
    alpha > 0 (or alpha = 0, where G vanishes identically).
    """
    k = _check_index(k)
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    base = HypParams(-alpha / 2.0, k - alpha / 2.0, k + 1.0)
    if r < 1.0:
        return float(hyp2f1_derivative(base, r * r))
    scale = base.a * base.b / base.c
    if scale == 0.0:
        return 0.0
    return scale * hyp2f1_at_one(base.shifted())


def _wirtinger_source(source):
    if isinstance(source, AlphaHarmonicMap):
        return lambda z: wirtinger(source, z)
    return source


def extract(source, k: int, alpha: float | None = None, r: float = DEFAULT_RADIUS,
            n_points: int | None = None) -> ExtractionResult:
    """Recover c_k and c_{-k} from f_z and f_zbar on the circle |z| = r.

    The (k+1)-st Fourier modes of f_z and f_zbar are c_{-k} r^{k+1} G_k and
    c_k r^{k+1} G_k; both are picked out with the trapezoidal rule.

    Args:
        source: an :class:`AlphaHarmonicMap`, or a callable mapping an array
            of points to a :class:`WirtingerPair` of arrays.
        k: positive coefficient index.
        alpha: map parameter; taken from ``source`` when it is a map.
        r: circle radius in (0, 1).
        n_points: quadrature nodes; defaults to max(256, 8(K+2)).

    Raises:
        DegenerateExtractionError: G_k(r, alpha) = 0 (alpha = 0 or alpha = 2k).
        AliasingError: fewer than 4(k+2) nodes.
    """
    k = _check_index(k)
    if alpha is None:
        if not isinstance(source, AlphaHarmonicMap):
            raise DomainError("alpha is required when the source is not a map")
        alpha = source.alpha
    if not 0.0 < r < 1.0:
        raise DomainError(f"extraction radius must lie in (0, 1), got {r}")
    if n_points is None:
        top = source.spectrum.max_index if isinstance(source, AlphaHarmonicMap) else k
        n_points = max(256, 8 * (max(top, k) + 2))
    if n_points < 4 * (k + 2):
        raise AliasingError(f"need at least {4 * (k + 2)} nodes to extract k={k}, got {n_points}")
    if alpha == 0.0 or alpha == 2.0 * k:
        raise DegenerateExtractionError(f"G_k vanishes for alpha={alpha}, k={k}")
    g = g_factor(k, alpha, r)
    if g == 0.0:
        raise DegenerateExtractionError(f"G_k({r}, {alpha}) = 0 for k={k}")

    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    pair: WirtingerPair = _wirtinger_source(source)(r * np.exp(1j * theta))
    mode = np.exp(1j * (k + 1) * theta)
    scale = r ** (k + 1) * g
    c_minus = np.mean(np.asarray(pair.dz) * mode) / scale
    c_plus = np.mean(np.asarray(pair.dzbar) * mode.conj()) / scale
    return ExtractionResult(k, complex(c_plus), complex(c_minus), float(r), int(n_points))


def _shifted_at_one(k: int, alpha: float) -> float:
    return hyp2f1_at_one(HypParams(1.0 - alpha / 2.0, k + 1.0 - alpha / 2.0, k + 2.0))


def theorem21_lhs(k: int, alpha: float, c_plus_abs: float, c_minus_abs: float) -> float:
    """alpha|2k - alpha| / (2(k+1)) * |F(1 - alpha/2, k+1 - alpha/2; k+2; 1)| * (|c_k| + |c_{-k}|).

    For a map with Lambda_f <= Lambda everywhere this never exceeds Lambda.
    """
    k = _check_index(k)
    if not alpha > 0:
        raise DomainError(f"the coefficient estimate needs alpha > 0, got {alpha}")
    if c_plus_abs < 0 or c_minus_abs < 0:
        raise DomainError("coefficient moduli must be non-negative")
    factor = alpha * abs(2 * k - alpha) / (2.0 * (k + 1))
    return factor * abs(_shifted_at_one(k, alpha)) * (c_plus_abs + c_minus_abs)


def corollary22_bound(k: int, alpha: float, Lambda: float) -> float:
    """2 Lambda Gamma(1 + alpha/2) Gamma(k + 1 + alpha/2) / (k! Gamma(alpha + 1) |2k - alpha|).

    Upper bound for |c_k| + |c_{-k}|; requires alpha > 0 not an even integer.
    """
    k = _check_index(k)
    if not alpha > 0:
        raise DomainError(f"the explicit coefficient bound needs alpha > 0, got {alpha}")
    if float(alpha).is_integer() and int(alpha) % 2 == 0:
        raise DomainError(f"the explicit coefficient bound needs alpha not an even integer, got {alpha}")
    if not Lambda > 0:
        raise DomainError(f"Lambda must be positive, got {Lambda}")
    ratio = gamma_ratio((1.0 + alpha / 2.0, k + 1.0 + alpha / 2.0), (k + 1.0, alpha + 1.0))
    return 2.0 * Lambda * ratio / abs(2 * k - alpha)


def theorem21_check(fmap: AlphaHarmonicMap, k: int, Lambda: float | None = None,
                    inflate: float = 1.01, n_radial: int = 64, n_angular: int = 256) -> tuple[float, float]:
    """Return (lhs, Lambda) for the coefficient estimate at index k.

    When ``Lambda`` is omitted it is the grid estimate of sup Lambda_f times
    ``inflate``.  Comparing the two numbers is left to the caller.
    """
    if Lambda is None:
        Lambda = inflate * sup_Lambda(fmap, n_radial, n_angular)
    lhs = theorem21_lhs(k, fmap.alpha, abs(fmap.spectrum.get(k)), abs(fmap.spectrum.get(-k)))
    return lhs, float(Lambda)


def longwang_term_bound(k: int, alpha: float, n: int) -> tuple[float, float]:
    """Both sides of |(-a/2)_n (k - a/2)_n / ((k+1)_n n!)| <= 1 - Gamma(k+1)Gamma(1+a)/(Gamma(k+1+a/2)Gamma(1+a/2))."""
    k = _check_index(k)
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie in (0, 2), got {alpha}")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    h = alpha / 2.0
    lhs = abs((pochhammer(-h, n) / pochhammer(k + 1.0, n)) * (pochhammer(k - h, n) / pochhammer(1.0, n)))
    if not math.isfinite(lhs):
        lhs = 1.0
        for j in range(n):
            lhs *= abs((-h + j) * (k - h + j) / ((k + 1.0 + j) * (j + 1.0)))
    rhs = 1.0 - gamma_ratio((k + 1.0, 1.0 + alpha), (k + 1.0 + h, 1.0 + h))
    return lhs, rhs
