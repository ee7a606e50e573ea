"""Alpha-harmonic maps given by finitely supported coefficient spectra.

A map is

    f(z) = sum_{k>=0} c_k F_k(|z|^2) z^k + sum_{k>=1} c_{-k} F_k(|z|^2) conj(z)^k,
    F_k(t) = F(-alpha/2, k - alpha/2; k + 1; t),

and solves T_alpha f = 0 in the unit disc.  All evaluators accept a scalar or
an array of points.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import DomainError
from .specialfns import HypParams, gamma_ratio, hyp2f1, hyp2f1_derivative

MAX_RADIUS = 0.999


@dataclass(frozen=True)
class CoefficientSpectrum:
    """Finitely many coefficients c_k indexed by distinct integers k."""

    entries: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self):
        cleaned = []
        for k, value in self.entries:
            if isinstance(k, bool) or int(k) != k:
                raise DomainError(f"coefficient index must be an integer, got {k!r}")
            cleaned.append((int(k), complex(value)))
        indices = [k for k, _ in cleaned]
        if len(set(indices)) != len(indices):
            raise DomainError("coefficient indices must be unique")
        object.__setattr__(self, "entries", tuple(sorted(cleaned)))

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, complex]) -> "CoefficientSpectrum":
        return cls(tuple(coefficients.items()))

    def get(self, k: int) -> complex:
        for index, value in self.entries:
            if index == k:
                return value
        return 0j

    def items(self):
        return iter(self.entries)

    @property
    def max_index(self) -> int:
        return max((abs(k) for k, _ in self.entries), default=0)

    def scaled(self, factor: complex) -> "CoefficientSpectrum":
        return CoefficientSpectrum(tuple((k, factor * v) for k, v in self.entries))

    def as_dict(self) -> dict[int, complex]:
        return dict(self.entries)


@dataclass(frozen=True)
class AlphaHarmonicMap:
    alpha: float
    spectrum: CoefficientSpectrum = field(default_factory=CoefficientSpectrum)

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > -1):
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        if isinstance(self.spectrum, Mapping):
            object.__setattr__(self, "spectrum", CoefficientSpectrum.from_mapping(self.spectrum))


@dataclass(frozen=True)
class WirtingerPair:
    """(df/dz, df/dzbar) at one point, or arrays of them."""

    dz: complex
    dzbar: complex


@dataclass(frozen=True)
class BoundaryData:
    """Samples of boundary values at the angles 2 pi j / N."""

    samples: tuple[complex, ...]

    def __post_init__(self):
        samples = tuple(complex(s) for s in self.samples)
        if len(samples) < 4:
            raise DomainError(f"boundary data needs at least 4 samples, got {len(samples)}")
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(cls, func, n: int) -> "BoundaryData":
        tau = 2.0 * np.pi * np.arange(n) / n
        return cls(tuple(np.asarray(func(np.exp(1j * tau)), dtype=complex)))

    @property
    def angles(self) -> np.ndarray:
        n = len(self.samples)
        return 2.0 * np.pi * np.arange(n) / n


def _radial_params(alpha: float, k: int) -> HypParams:
    return HypParams(-alpha / 2.0, k - alpha / 2.0, k + 1.0)


def _check_disc(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("points must lie in the open unit disc |z| < 1")


class _RadialFactors:
    """F_k(t) and G_k(t) = F_k'(t) for each |k| of a map, evaluated once per t."""

    def __init__(self, alpha: float, t: np.ndarray):
        self.alpha = alpha
        self.t = t
        self._f: dict[int, np.ndarray] = {}
        self._g: dict[int, np.ndarray] = {}

    def f(self, k: int) -> np.ndarray:
        if k not in self._f:
            self._f[k] = hyp2f1(_radial_params(self.alpha, k), self.t)
        return self._f[k]

    def g(self, k: int) -> np.ndarray:
        if k not in self._g:
            self._g[k] = hyp2f1_derivative(_radial_params(self.alpha, k), self.t)
        return self._g[k]


def _scalar_or_array(z_in, value):
    return complex(value) if np.ndim(z_in) == 0 else value


def evaluate(fmap: AlphaHarmonicMap, z):
    """Value of the series at ``z`` (|z| < 1)."""
    za = np.asarray(z, dtype=complex)
    _check_disc(za)
    radial = _RadialFactors(fmap.alpha, (za * za.conj()).real)
    zc = za.conj()
    total = np.zeros(za.shape, dtype=complex)
    for k, c in fmap.spectrum.items():
        m = abs(k)
        power = za**m if k >= 0 else zc**m
        total = total + c * radial.f(m) * power
    return _scalar_or_array(z, total)


def wirtinger(fmap: AlphaHarmonicMap, z) -> WirtingerPair:
    """Closed-form Wirtinger derivatives of the truncated series.

    With G_m = dF_m/dt, d/dz F_m(|z|^2) = conj(z) G_m and d/dzbar F_m(|z|^2) = z G_m.
    """
    za = np.asarray(z, dtype=complex)
    _check_disc(za)
    zc = za.conj()
    radial = _RadialFactors(fmap.alpha, (za * zc).real)
    dz = np.zeros(za.shape, dtype=complex)
    dzbar = np.zeros(za.shape, dtype=complex)
    for k, c in fmap.spectrum.items():
        m = abs(k)
        g = radial.g(m)
        if k >= 0:
            zm = za**m
            dz = dz + c * g * zc * zm
            dzbar = dzbar + c * g * za * zm
            if m:
                dz = dz + c * m * radial.f(m) * za ** (m - 1)
        else:
            zcm = zc**m
            dz = dz + c * g * zc * zcm
            dzbar = dzbar + c * g * za * zcm
            dzbar = dzbar + c * m * radial.f(m) * zc ** (m - 1)
    if np.ndim(z) == 0:
        return WirtingerPair(complex(dz), complex(dzbar))
    return WirtingerPair(dz, dzbar)


def dilations(pair: WirtingerPair):
    """(Lambda, lambda, Jacobian) = (|f_z|+|f_zbar|, ||f_z|-|f_zbar||, |f_z|^2-|f_zbar|^2)."""
    p = np.abs(pair.dz)
    q = np.abs(pair.dzbar)
    big = p + q
    small = np.abs(p - q)
    jac = p * p - q * q
    if np.ndim(big) == 0:
        return float(big), float(small), float(jac)
    return big, small, jac


def polar_grid(n_radial: int, n_angular: int, r_max: float = MAX_RADIUS) -> np.ndarray:
    r = np.linspace(0.0, r_max, n_radial)
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    return r[:, None] * np.exp(1j * theta)[None, :]


def sup_Lambda(fmap: AlphaHarmonicMap, n_radial: int = 64, n_angular: int = 256,
               r_max: float = MAX_RADIUS) -> float:
    """Largest Lambda_f over a polar grid; a lower estimate of sup over the disc."""
    if n_radial < 8 or n_angular < 16:
        raise DomainError("sup_Lambda needs at least 8 radii and 16 angles")
    if not 0.0 < r_max < 1.0:
        raise DomainError(f"r_max must lie in (0, 1), got {r_max}")
    big, _, _ = dilations(wirtinger(fmap, polar_grid(n_radial, n_angular, r_max)))
    return float(np.max(big))


def kernel_constant(alpha: float) -> float:
    """c_alpha = Gamma(alpha/2 + 1)^2 / Gamma(alpha + 1)."""
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    return gamma_ratio((alpha / 2.0 + 1.0, alpha / 2.0 + 1.0), (alpha + 1.0,))


def kernel(alpha: float, z):
    """Poisson-type kernel c_alpha (1-|z|^2)^(alpha+1) / |1-z|^(alpha+2)."""
    za = np.asarray(z, dtype=complex)
    _check_disc(za)
    value = kernel_constant(alpha) * (1.0 - np.abs(za) ** 2) ** (alpha + 1.0) / np.abs(1.0 - za) ** (alpha + 2.0)
    return float(value) if np.ndim(z) == 0 else value


def poisson_solve(alpha: float, data: BoundaryData, z):
    """Trapezoidal rule for (1/2pi) int K_alpha(z e^{-i tau}) f*(e^{i tau}) d tau."""
    za = np.asarray(z, dtype=complex)
    _check_disc(za)
    samples = np.asarray(data.samples)
    rotations = np.exp(-1j * data.angles)
    values = kernel(alpha, za[..., None] * rotations) @ samples / len(samples)
    return _scalar_or_array(z, values)


def _exact_steps(x: float, h: float) -> tuple[float, float, float, float]:
    """Stencil coordinates x +- h and the step lengths that were actually realised."""
    xp, xm = x + h, x - h
    return xp, xm, xp - x, x - xm


def t_alpha_residual(fmap: AlphaHarmonicMap, z: complex, h: float = 1e-3) -> float:
    """|T_alpha f(z)| with second-order central differences of ``evaluate``.

    Differences are divided by the step lengths actually realised in floating
    point, so linear maps produce an exactly zero Laplacian.
    """
    z = complex(z)
    if not 1e-6 <= h <= 1e-2:
        raise DomainError(f"step h must lie in [1e-6, 1e-2], got {h}")
    if abs(z) + 2.0 * h >= 1.0:
        raise DomainError("finite-difference stencil leaves the unit disc")
    x, y = z.real, z.imag
    xp, xm, hxp, hxm = _exact_steps(x, h)
    yp, ym, hyp, hym = _exact_steps(y, h)
    pts = np.array([z, complex(xp, y), complex(xm, y), complex(x, yp), complex(x, ym)])
    f0, fxp, fxm, fyp, fym = evaluate(fmap, pts)

    fx = (fxp - fxm) / (hxp + hxm)
    fy = (fyp - fym) / (hyp + hym)
    fxx = 2.0 * ((fxp - f0) / hxp - (f0 - fxm) / hxm) / (hxp + hxm)
    fyy = 2.0 * ((fyp - f0) / hyp - (f0 - fym) / hym) / (hyp + hym)

    alpha = fmap.alpha
    w = 1.0 - (x * x + y * y)
    # z d/dz + zbar d/dzbar is the radial derivative x d/dx + y d/dy
    radial = x * fx + y * fy
    value = (w ** (-alpha - 1.0) * (-(alpha**2) / 4.0 * f0 + alpha / 2.0 * radial)
             + 0.25 * w ** (-alpha) * (fxx + fyy))
    return float(abs(value))


# -- file formats ----------------------------------------------------------

def _reject_unknown(obj: Mapping, allowed: set[str], where: str) -> None:
    if not isinstance(obj, Mapping):
        raise DomainError(f"{where} must be a JSON object")
    extra = set(obj) - allowed
    missing = allowed - set(obj)
    if extra:
        raise DomainError(f"unknown field(s) in {where}: {sorted(extra)}")
    if missing:
        raise DomainError(f"missing field(s) in {where}: {sorted(missing)}")


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{name} must be a number, got {value!r}")
    return float(value)


def map_from_json(obj: Mapping) -> AlphaHarmonicMap:
    """Parse ``{"alpha": .., "coefficients": [{"k": .., "re": .., "im": ..}, ...]}``."""
    _reject_unknown(obj, {"alpha", "coefficients"}, "spectrum")
    entries = []
    for item in obj["coefficients"]:
        _reject_unknown(item, {"k", "re", "im"}, "coefficient")
        k = item["k"]
        if isinstance(k, bool) or not isinstance(k, int):
            raise DomainError(f"coefficient index k must be an integer, got {k!r}")
        entries.append((k, complex(_number(item["re"], "re"), _number(item["im"], "im"))))
    return AlphaHarmonicMap(_number(obj["alpha"], "alpha"), CoefficientSpectrum(tuple(entries)))


def map_to_json(fmap: AlphaHarmonicMap) -> dict:
    return {
        "alpha": fmap.alpha,
        "coefficients": [{"k": k, "re": v.real, "im": v.imag} for k, v in fmap.spectrum.items()],
    }


def boundary_from_json(obj: Mapping) -> BoundaryData:
    _reject_unknown(obj, {"samples"}, "boundary data")
    samples = []
    for item in obj["samples"]:
        _reject_unknown(item, {"re", "im"}, "sample")
        samples.append(complex(_number(item["re"], "re"), _number(item["im"], "im")))
    return BoundaryData(tuple(samples))


def boundary_to_json(data: BoundaryData) -> dict:
    return {"samples": [{"re": s.real, "im": s.imag} for s in data.samples]}


def load_map(path: str | Path) -> AlphaHarmonicMap:
    return map_from_json(json.loads(Path(path).read_text()))


def load_boundary(path: str | Path) -> BoundaryData:
    return boundary_from_json(json.loads(Path(path).read_text()))


def canonical_json(fmap: AlphaHarmonicMap) -> str:
    return json.dumps(map_to_json(fmap), sort_keys=True, separators=(",", ":"))


def digest_bytes(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def map_digest(fmap: AlphaHarmonicMap) -> str:
    """SHA-256 of the canonical JSON serialisation of the map."""
    return digest_bytes(canonical_json(fmap).encode())
