"""Command-line front end: ``alpha-landau <command> [flags]``.

Results go to stdout as JSON (CSV for ``sweep``); diagnostics go to stderr.
Exit status is 0 on success, 2 for domain errors and 3 for accuracy errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import alphamap, coefficients, landau, verify
from .errors import AccuracyError, ConstructionError, DomainError

SEED_ENV = "ALPHA_LANDAU_SEED"
SWEEP_FIELDS = ["alpha", "a", "rho0", "R0_lower", "error"]


def format_complex(value: complex) -> str:
    value = complex(value)
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


def parse_point(text: str) -> complex:
    try:
        re_part, im_part = (float(p) for p in text.split(","))
    except ValueError:
        raise DomainError(f"points are given as 're,im', got {text!r}") from None
    return complex(re_part, im_part)


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, complex):
        return format_complex(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit(obj, out) -> None:
    # repr of a float is the shortest string that round-trips the double
    out.write(json.dumps(_clean(obj), allow_nan=False) + "\n")


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


# -- commands ----------------------------------------------------------------

def cmd_radii(args, out) -> None:
    result = landau.landau_radii(args.alpha, args.beta, args.Lambda, jacobian=args.corollary33)
    emit({
        "a": result.a,
        "rho0": result.rho0,
        "R0_lower": result.r0_lower,
        "phi_residual": result.phi_residual,
        "positive_R0": result.positive_r0,
    }, out)


def sweep_rows(alpha_min: float, alpha_max: float, steps: int, beta: float, Lambda: float,
               jacobian: bool = False) -> list[dict]:
    if steps < 2:
        raise DomainError(f"a sweep needs at least 2 steps, got {steps}")
    rows = []
    for alpha in np.linspace(alpha_min, alpha_max, steps):
        alpha = float(alpha)
        try:
            result = landau.landau_radii(alpha, beta, Lambda, jacobian=jacobian)
        except (DomainError, AccuracyError) as exc:
            rows.append({"alpha": alpha, "a": None, "rho0": None, "R0_lower": None, "error": str(exc)})
        else:
            rows.append({"alpha": alpha, "a": result.a, "rho0": result.rho0,
                         "R0_lower": result.r0_lower, "error": ""})
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def format_sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for row in rows:
        writer.writerow([_cell(row[name]) for name in SWEEP_FIELDS])
    return buf.getvalue()


def read_sweep_csv(text: str) -> list[dict]:
    """Inverse of :func:`format_sweep_csv`."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != SWEEP_FIELDS:
        raise DomainError(f"sweep CSV must have columns {SWEEP_FIELDS}, got {reader.fieldnames}")
    rows = []
    for raw in reader:
        row = {name: (float(raw[name]) if raw[name] else None) for name in SWEEP_FIELDS[:-1]}
        row["error"] = raw["error"]
        rows.append(row)
    return rows


def cmd_sweep(args, out) -> None:
    rows = sweep_rows(args.alpha_min, args.alpha_max, args.steps, args.beta, args.Lambda, args.corollary33)
    out.write(format_sweep_csv(rows))


def cmd_eval(args, out) -> None:
    fmap = alphamap.load_map(args.spectrum)
    z = parse_point(args.z)
    value = alphamap.evaluate(fmap, z)
    emit({"z": z, "value": value}, out)


def cmd_derivs(args, out) -> None:
    fmap = alphamap.load_map(args.spectrum)
    z = parse_point(args.z)
    pair = alphamap.wirtinger(fmap, z)
    big, small, jac = alphamap.dilations(pair)
    try:
        residual = alphamap.t_alpha_residual(fmap, z, args.h)
    except DomainError as exc:
        print(f"t_alpha residual skipped: {exc}", file=sys.stderr)
        residual = None
    emit({"z": z, "dz": pair.dz, "dzbar": pair.dzbar, "Lambda": big, "lambda": small,
          "jacobian": jac, "t_alpha_residual": residual}, out)


def cmd_extract(args, out) -> None:
    fmap = alphamap.load_map(args.spectrum)
    res = coefficients.extract(fmap, args.k, r=args.r, n_points=args.n_points)
    emit({"k": res.k, "c_plus": res.c_plus, "c_minus": res.c_minus, "radius": res.radius,
          "quadrature_points": res.quadrature_points}, out)


def cmd_check_bound(args, out) -> None:
    fmap = alphamap.load_map(args.spectrum)
    lhs, Lambda = coefficients.theorem21_check(fmap, args.k, Lambda=args.Lambda)
    total = abs(fmap.spectrum.get(args.k)) + abs(fmap.spectrum.get(-args.k))
    try:
        explicit = coefficients.corollary22_bound(args.k, fmap.alpha, Lambda)
    except DomainError as exc:
        print(f"explicit bound not available: {exc}", file=sys.stderr)
        explicit = None
    report = {
        "k": args.k,
        "lhs": lhs,
        "Lambda_est": Lambda,
        "holds": lhs <= Lambda,
        "coefficient_sum": total,
        "corollary22_bound": explicit,
    }
    if 0.0 < fmap.alpha < 2.0:
        sides = [coefficients.longwang_term_bound(args.k, fmap.alpha, n) for n in range(1, args.terms + 1)]
        report["longwang_max_lhs"] = max(s[0] for s in sides)
        report["longwang_rhs"] = sides[0][1]
    emit(report, out)


def cmd_verify(args, out) -> None:
    seed = default_seed() if args.seed is None else args.seed
    if args.spectrum:
        raw = Path(args.spectrum).read_bytes()
        fmap = alphamap.map_from_json(json.loads(raw))
        digest = alphamap.digest_bytes(raw)
    else:
        if args.alpha is None:
            raise DomainError("verify needs --spectrum FILE or --alpha for a generated map")
        fmap = verify.random_admissible_map(args.alpha, args.beta, args.Lambda, args.max_index, seed,
                                            weight=args.weight)
        text = json.dumps(alphamap.map_to_json(fmap), indent=2) + "\n"
        if args.emit_spectrum:
            Path(args.emit_spectrum).write_text(text)
        digest = alphamap.digest_bytes(text.encode())
    report, collisions = verify.run_verification(
        fmap, args.beta, args.Lambda, seed=seed, n_samples=args.n_samples,
        n_boundary=args.n_boundary, digest=digest)
    print(f"collisions: {collisions}", file=sys.stderr)
    emit(report.to_json(), out)


def cmd_poisson(args, out) -> None:
    data = alphamap.load_boundary(args.boundary)
    z = parse_point(args.z)
    emit({"z": z, "value": alphamap.poisson_solve(args.alpha, data, z)}, out)


def cmd_m_constant(args, out) -> None:
    r_star, m = landau.classical_m_constant()
    emit({"r_star": r_star, "m": m}, out)


# -- parser --------------------------------------------------------------------

def _add_landau_flags(p: argparse.ArgumentParser, with_alpha: bool = True) -> None:
    if with_alpha:
        p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--Lambda", type=float, required=True)
    p.add_argument("--corollary33", action="store_true",
                   help="read --beta as |J_f(0)| instead of a lower bound on lambda_f(0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alpha-landau", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radii", help="univalence radius rho0 and schlicht bound R0")
    _add_landau_flags(p)
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("sweep", help="CSV table of the radii over an alpha grid")
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    _add_landau_flags(p, with_alpha=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval", help="evaluate a map at a point")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--z", required=True, help="point as re,im")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("derivs", help="Wirtinger derivatives, dilations and T_alpha residual")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--h", type=float, default=1e-3, help="finite-difference step for the residual")
    p.set_defaults(func=cmd_derivs)

    p = sub.add_parser("extract", help="recover c_k and c_-k by quadrature")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=float, default=coefficients.DEFAULT_RADIUS)
    p.add_argument("--n-points", type=int, default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("check-bound", help="coefficient estimate against sup Lambda_f")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--Lambda", type=float, default=None,
                   help="bound on Lambda_f; default is the grid sup times 1.01")
    p.add_argument("--terms", type=int, default=30, help="series terms checked against the term bound")
    p.set_defaults(func=cmd_check_bound)

    p = sub.add_parser("verify", help="sampled univalence and coverage experiment")
    p.add_argument("--spectrum", default=None)
    p.add_argument("--alpha", type=float, default=None, help="generate a random admissible map instead")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--Lambda", type=float, required=True)
    p.add_argument("--max-index", type=int, default=4)
    p.add_argument("--weight", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    p.add_argument("--n-samples", type=int, default=2000)
    p.add_argument("--n-boundary", type=int, default=1024)
    p.add_argument("--emit-spectrum", default=None, help="write the generated spectrum here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("poisson", help="Poisson-type integral of sampled boundary data")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--boundary", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("m-constant", help="minimum of (3 - r^2)/(r (1 - r^2)) on (0, 1)")
    p.set_defaults(func=cmd_m_constant)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        # unreadable or malformed input files count as domain errors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 3
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
