"""Univalence radius rho0 and schlicht-disc bound R0 for alpha in (0, 2).

For a map with f(0) = 0, lambda_f(0) >= beta and Lambda_f <= Lambda, rho0 is
the unique zero on (0, 1) of

    phi(x) = beta - 2 Lambda / (2 - alpha) * D(x),
    D(x)   = (2 - alpha) x^2/(1-x) + 2a/(1-x)^3 - 2a + (2a - 1) x^2/(1-x^2),

with a = Gamma(1 + alpha/2) / Gamma(1 + alpha).  D(r) bounds the drift
|f_z(z) - f_z(0)| + |f_zbar(z) - f_zbar(0)| on |z| = r.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, InvariantViolation, RootBoundaryError
from .specialfns import gamma_ratio

BRACKET_CEILING = 1.0 - 2.0**-40
XTOL = 1e-14


@dataclass(frozen=True)
class LandauInput:
    alpha: float
    beta: float
    Lambda: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 2.0:
            raise DomainError(f"hypothesis alpha in (0, 2) violated: alpha={self.alpha}")
        if not self.beta > 0.0:
            raise DomainError(f"hypothesis lambda_f(0) >= beta > 0 violated: beta={self.beta}")
        if not self.Lambda > 0.0:
            raise DomainError(f"hypothesis Lambda_f <= Lambda with Lambda > 0 violated: Lambda={self.Lambda}")


@dataclass(frozen=True)
class LandauResult:
    a: float
    rho0: float
    r0_lower: float
    phi_residual: float
    iterations: int

    @property
    def positive_r0(self) -> bool:
        return self.r0_lower > 0.0


def a_constant(alpha: float) -> float:
    """Gamma(1 + alpha/2) / Gamma(1 + alpha).

    Exceeds 1/2 on all of (0, 2), which is what keeps phi decreasing.  It is
    not below 1 everywhere: a > 1 for alpha < 0.62040449533556, with a
    maximum of about 1.0397.
    """
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"a is defined here for alpha in (0, 2), got {alpha}")
    return gamma_ratio((1.0 + alpha / 2.0,), (1.0 + alpha,))


def _cube_excess(x):
    # (1-x)^-3 - 1 without cancellation near x = 0
    return np.expm1(-3.0 * np.log1p(-x))


def derivative_drift_bound(inp: LandauInput, r):
    """2 Lambda/(2 - alpha) * D(r), so that phi(r) = beta - derivative_drift_bound(r)."""
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0.0) or np.any(ra >= 1.0):
        raise DomainError("phi is defined on [0, 1)")
    alpha, a = inp.alpha, a_constant(inp.alpha)
    r2 = ra * ra
    d = (2.0 - alpha) * r2 / (1.0 - ra) + 2.0 * a * _cube_excess(ra) + (2.0 * a - 1.0) * r2 / (1.0 - r2)
    value = 2.0 * inp.Lambda / (2.0 - alpha) * d
    return float(value) if ra.ndim == 0 else value


def phi(inp: LandauInput, x):
    """The strictly decreasing function whose zero is rho0; phi(0) = beta."""
    return inp.beta - derivative_drift_bound(inp, x)


def _initial_bracket(inp: LandauInput) -> tuple[float, float]:
    lo = 0.0
    for j in range(1, 41):
        u = 1.0 - 2.0**-j
        if phi(inp, u) < 0.0:
            return lo, u
        lo = u
    raise RootBoundaryError(
        f"phi stays non-negative up to 1 - 2^-40 for {inp}", bracket=(lo, BRACKET_CEILING))


def solve_rho0(inp: LandauInput, xtol: float = XTOL) -> LandauResult:
    """Bisect phi on [0, 1 - 2^-40] for its unique zero rho0.

    Bisection keeps going past ``xtol`` until the bracket cannot be split in
    floating point, so |phi(rho0)| is at rounding level even when Lambda/beta
    is large and phi is steep.
    """
    f0 = phi(inp, 0.0)
    if not f0 > 0.0:
        raise InvariantViolation(f"phi(0) = {f0} must be positive")
    lo, hi = _initial_bracket(inp)
    f_lo, f_hi = f0, phi(inp, hi)
    iterations = 0
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = phi(inp, mid)
        iterations += 1
        if f_mid == 0.0:
            lo = hi = mid
            f_lo = f_hi = 0.0
            break
        if f_mid > 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    if hi - lo > xtol:
        raise InvariantViolation(f"bisection stalled with bracket width {hi - lo}")
    rho0, residual = (lo, abs(f_lo)) if abs(f_lo) <= abs(f_hi) else (hi, abs(f_hi))
    return LandauResult(
        a=a_constant(inp.alpha),
        rho0=rho0,
        r0_lower=r0_lower_bound(inp, rho0),
        phi_residual=residual,
        iterations=iterations,
    )


def r0_lower_bound(inp: LandauInput, rho0: float) -> float:
    """Lower bound for the radius of the schlicht disc around f(0) = 0.

    rho0 * (beta - 2 Lambda/(2 - alpha) * ((2 - alpha)/(1 - rho0) rho0^2/3
    + 2a/(1 - rho0)^3 - 2a + (2a - 1)/(1 - rho0^2) rho0^2/3)); may be <= 0,
    in which case the bound says nothing.
    """
    if not 0.0 <= rho0 < 1.0:
        raise DomainError(f"rho0 must lie in [0, 1), got {rho0}")
    alpha, a = inp.alpha, a_constant(inp.alpha)
    third = rho0 * rho0 / 3.0
    inner = ((2.0 - alpha) / (1.0 - rho0) * third
             + 2.0 * a * float(_cube_excess(rho0))
             + (2.0 * a - 1.0) / (1.0 - rho0 * rho0) * third)
    return rho0 * (inp.beta - 2.0 * inp.Lambda / (2.0 - alpha) * inner)


def corollary33(inp: LandauInput) -> LandauResult:
    """Radii when |J_f(0)| = beta replaces lambda_f(0) >= beta.

    Since |J_f(0)| = Lambda_f(0) lambda_f(0) <= Lambda lambda_f(0), the
    radii of :func:`solve_rho0` apply with beta / Lambda in place of beta.
    """
    return solve_rho0(LandauInput(inp.alpha, inp.beta / inp.Lambda, inp.Lambda))


def _harmonic_landau_function(r: float) -> float:
    return (3.0 - r * r) / (r * (1.0 - r * r))


def classical_m_constant(tol: float = 1e-10) -> tuple[float, float]:
    """Minimiser and minimum of (3 - r^2) / (r (1 - r^2)) on (0, 1), by golden section."""
    r_star, m, _ = optimize.golden(_harmonic_landau_function, brack=(0.1, 0.5, 0.9), tol=tol, full_output=True)
    return float(r_star), float(m)


def landau_radii(alpha: float, beta: float, Lambda: float, jacobian: bool = False) -> LandauResult:
    inp = LandauInput(alpha, beta, Lambda)
    return corollary33(inp) if jacobian else solve_rho0(inp)

