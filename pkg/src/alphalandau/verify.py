"""Sampled checks of univalence and schlicht-disc coverage on random admissible maps.

Nothing here proves anything: the harness looks for counterexamples.  A
collision inside the disc of radius rho0, or a boundary image point closer
to f(0) than R0, would mean the implementation, the instance generator or
the underlying estimate is wrong.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .alphamap import AlphaHarmonicMap, CoefficientSpectrum, dilations, evaluate, map_digest, sup_Lambda, wirtinger
from .errors import ConstructionError, DomainError
from .landau import LandauInput, solve_rho0

REPORT_VERSION = 1
# image distance below which two samples count as one point
COLLISION_ATOL = 1e-12
# domain separation above which two samples are genuinely distinct
DISTINCT_ATOL = 1e-6
MAX_PAIRS = 2_000_000
GENERATOR_GRID = (64, 256)
RECHECK_GRID = (128, 512)
MAX_ATTEMPTS = 100
# the grid maximum of Lambda_f can miss the true sup; pad its excess over Lambda_f(0)
EXCESS_PAD = 1.1


@dataclass(frozen=True)
class VerificationReport:
    map_digest: str
    rho0: float
    r0: float
    n_samples: int
    min_pair_separation: float
    coverage_misses: int
    hypothesis_ok: bool
    seed: int

    def to_json(self) -> dict:
        return {"v": REPORT_VERSION, **asdict(self)}


def lambda_at_origin(fmap: AlphaHarmonicMap) -> tuple[float, float]:
    """(Lambda_f(0), lambda_f(0)); only c_1 and c_{-1} contribute at z = 0."""
    big, small, _ = dilations(wirtinger(fmap, 0j))
    return big, small


def random_admissible_map(alpha: float, beta: float, Lambda: float, max_index: int, seed: int,
                          weight: float = 0.1, grid: tuple[int, int] = GENERATOR_GRID) -> AlphaHarmonicMap:
    """Random map with f(0) = 0, lambda_f(0) >= beta and grid sup of Lambda_f <= Lambda.

    Coefficients c_k for 2 <= |k| <= max_index and c_{-1} get random phases
    and moduli up to weight * Lambda / k^2.  c_1 is real with
    c_1 = beta + |c_{-1}| + sum_{|k|>=2} |k| |c_k|, so lambda_f(0) exceeds beta
    by the derivative mass of the other terms.  The whole spectrum is then
    shrunk to bring the grid sup of Lambda_f down to Lambda; if that pushes
    lambda_f(0) below beta the draw is rejected and redrawn with half the
    weight.

    Raises:
        ConstructionError: after 100 rejected draws.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie in (0, 2), got {alpha}")
    if not 0.0 < beta <= Lambda:
        raise DomainError(f"need 0 < beta <= Lambda, got beta={beta}, Lambda={Lambda}")
    if max_index < 1:
        raise DomainError(f"max_index must be at least 1, got {max_index}")
    rng = np.random.default_rng(seed)
    others = [k for k in range(-max_index, max_index + 1) if k not in (0, 1)]
    w = weight
    for _ in range(MAX_ATTEMPTS):
        moduli = w * Lambda * rng.uniform(0.0, 1.0, len(others)) / np.array([k * k for k in others], dtype=float)
        phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, len(others)))
        coefs = {k: m * p for k, m, p in zip(others, moduli, phases) if m > 0.0}
        c_minus1 = abs(coefs.get(-1, 0.0))
        mass = sum(abs(k) * abs(v) for k, v in coefs.items() if abs(k) >= 2)
        coefs[1] = complex(beta + c_minus1 + mass)
        fmap = AlphaHarmonicMap(alpha, CoefficientSpectrum.from_mapping(coefs))

        at_origin, _ = lambda_at_origin(fmap)
        estimate = sup_Lambda(fmap, *grid)
        padded = at_origin + EXCESS_PAD * (estimate - at_origin)
        shrink = min(1.0, Lambda / padded)
        if shrink < 1.0:
            fmap = AlphaHarmonicMap(alpha, fmap.spectrum.scaled(shrink))
        _, small = lambda_at_origin(fmap)
        if small >= beta:
            return fmap
        w *= 0.5
    raise ConstructionError(
        f"no admissible map for alpha={alpha}, beta={beta}, Lambda={Lambda} after {MAX_ATTEMPTS} draws")


def check_hypotheses(fmap: AlphaHarmonicMap, beta: float, Lambda: float,
                     grid: tuple[int, int] = RECHECK_GRID) -> bool:
    """f(0) = 0, lambda_f(0) >= beta and Lambda_f <= Lambda on a grid denser than the generator's."""
    if evaluate(fmap, 0j) != 0:
        return False
    _, small = lambda_at_origin(fmap)
    rounding = 1e-12
    return small >= beta * (1.0 - rounding) and sup_Lambda(fmap, *grid) <= Lambda * (1.0 + rounding)


def sample_disc(rho: float, n: int, seed: int) -> np.ndarray:
    """``n`` quasi-uniform points in the open disc |z| < rho.

    Rings at area-uniform radii with a seeded per-ring jitter; each ring holds
    an equispaced angle set rotated by 0 or half a step, so every ring is
    symmetric under conjugation.  Maps that fold z onto conj(z) therefore
    produce exact image collisions.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (0, 1), got {rho}")
    if n < 1:
        raise DomainError(f"need at least one sample, got {n}")
    rng = np.random.default_rng(seed)
    rings = max(1, int(np.sqrt(n / 2.0)))
    counts = np.maximum(1, (n * (2 * np.arange(rings) + 1)) // rings**2)
    counts[-1] += n - counts.sum()
    while counts[-1] < 1:
        rings -= 1
        counts = np.maximum(1, (n * (2 * np.arange(rings) + 1)) // rings**2)
        counts[-1] += n - counts.sum()
    jitter = rng.uniform(0.25, 0.75, rings)
    offsets = rng.integers(0, 2, rings) * 0.5
    points = []
    for m in range(rings):
        radius = rho * np.sqrt((m + jitter[m]) / rings)
        theta = 2.0 * np.pi * (np.arange(counts[m]) + offsets[m]) / counts[m]
        points.append(radius * np.exp(1j * theta))
    return np.concatenate(points)


def _pair_stats(z: np.ndarray, w: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> tuple[float, int]:
    dz = np.abs(z[rows] - z[cols])
    dw = np.abs(w[rows] - w[cols])
    distinct = dz > DISTINCT_ATOL
    collisions = int(np.count_nonzero(distinct & (dw < COLLISION_ATOL)))
    ratio = dw[distinct] / dz[distinct]
    return (float(ratio.min()) if ratio.size else np.inf), collisions


def check_injectivity(fmap: AlphaHarmonicMap, rho0: float, n_samples: int, seed: int,
                      max_pairs: int = MAX_PAIRS) -> tuple[float, int]:
    """Return (min |f(z_i)-f(z_j)|/|z_i-z_j|, number of collisions) over sampled pairs in |z| < rho0."""
    z = sample_disc(rho0, n_samples, seed)
    w = np.asarray(evaluate(fmap, z))
    n = z.size
    total = n * (n - 1) // 2
    min_ratio, collisions = np.inf, 0
    if total <= max_pairs:
        chunk = max(1, 4_000_000 // max(n, 1))
        for start in range(0, n - 1, chunk):
            rows_idx = np.arange(start, min(start + chunk, n - 1))
            rows, cols = np.nonzero(np.arange(n)[None, :] > rows_idx[:, None])
            ratio, hits = _pair_stats(z, w, rows_idx[rows], cols)
            min_ratio, collisions = min(min_ratio, ratio), collisions + hits
    else:
        rng = np.random.default_rng([seed, 1])
        rows = rng.integers(0, n, max_pairs)
        cols = (rows + rng.integers(1, n, max_pairs)) % n
        min_ratio, collisions = _pair_stats(z, w, rows, cols)
    return float(min_ratio), collisions


def check_schlicht(fmap: AlphaHarmonicMap, rho0: float, r0: float, n_boundary: int = 1024) -> int:
    """Count points of |z| = rho0 (1 - 1e-9) whose image is closer than r0 to f(0)."""
    if r0 <= 0.0:
        return 0
    theta = 2.0 * np.pi * np.arange(n_boundary) / n_boundary
    circle = rho0 * (1.0 - 1e-9) * np.exp(1j * theta)
    centre = evaluate(fmap, 0j)
    distance = np.abs(np.asarray(evaluate(fmap, circle)) - centre)
    return int(np.count_nonzero(distance < r0))


def run_verification(fmap: AlphaHarmonicMap, beta: float, Lambda: float, seed: int = 0,
                     n_samples: int = 2000, n_boundary: int = 1024,
                     digest: str | None = None) -> tuple[VerificationReport, int]:
    """Full experiment for one map; returns the report and the collision count."""
    result = solve_rho0(LandauInput(fmap.alpha, beta, Lambda))
    min_sep, collisions = check_injectivity(fmap, result.rho0, n_samples, seed)
    misses = check_schlicht(fmap, result.rho0, result.r0_lower, n_boundary)
    report = VerificationReport(
        map_digest=digest if digest is not None else map_digest(fmap),
        rho0=result.rho0,
        r0=result.r0_lower,
        n_samples=n_samples,
        min_pair_separation=min_sep,
        coverage_misses=misses,
        hypothesis_ok=check_hypotheses(fmap, beta, Lambda),
        seed=seed,
    )
    return report, collisions


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True)
