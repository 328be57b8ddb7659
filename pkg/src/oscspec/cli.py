"""Command-line interface: spectrum tables, contour diagnostics, cross-method
verification and curvature sweeps, with table/CSV/JSON output."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import contour as contour_mod
from . import quantize, radial
from .coefficients import build_field
from .core import Geometry, Method, QuantumNumbers, Scheme
from .errors import NoBoundStateError, NoClassicalRegionError, OscspecError, QuadratureError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3
EXIT_QUADRATURE = 4
EXIT_VERIFY = 5

_GEOMETRIES = {"e3": Geometry.FLAT, "h3": Geometry.HYPERBOLIC, "s3": Geometry.SPHERICAL}
_METHODS = {"exact": Method.EXACT, "wkb-naive": Method.WKB_NAIVE,
            "wkb-corrected": Method.WKB_CORRECTED, "ode": Method.ODE_ORACLE}

CSV_HEADER = "geometry,mu,n,l,N,epsilon,method,bound"


def _default_tol() -> float:
    raw = os.environ.get("OSCSPEC_TOL")
    if raw:
        try:
            return float(raw)
        except ValueError:
            pass
    return 1e-5


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    return f"{x:.12e}"


def _json_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, float):
        return f"{v:.12e}" if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def emit_json(rows) -> str:
    """Canonical JSON: sorted keys, floats as %.12e; re-emitting a parsed
    document reproduces it byte for byte."""
    body = ",\n".join(
        "  {" + ", ".join(f"{json.dumps(k)}: {_json_scalar(row[k])}" for k in sorted(row)) + "}"
        for row in rows
    )
    return "[\n" + body + "\n]"


def _geometry(args, parser) -> Geometry:
    geom = _GEOMETRIES[args.geometry]
    if geom is Geometry.FLAT:
        if args.mu is not None:
            parser.error("--mu is not accepted for --geometry e3")
    else:
        if args.mu is None:
            parser.error(f"--mu is required for --geometry {args.geometry}")
        if args.mu <= 0:
            parser.error("--mu must be positive")
    return geom


def _compute_entry(geom: Geometry, mu: float, qn: QuantumNumbers, method: Method):
    """Return (epsilon, bound, converged, result-or-None)."""
    if method is Method.EXACT:
        e = quantize.exact_epsilon(geom, mu, qn)
        return e.epsilon, e.bound, True, None
    if method is Method.WKB_NAIVE:
        e = quantize.naive_wkb_epsilon(geom, mu, qn)
        return e.epsilon, e.bound, True, None
    if method is Method.WKB_CORRECTED:
        try:
            e = quantize.solve_epsilon(geom, mu, qn, Scheme.CORRECTED)
        except NoBoundStateError:
            return math.nan, False, True, None
        return e.epsilon, e.bound, True, None
    res = radial.solve(geom, mu, qn.l, qn.n)
    return res.epsilon, res.converged, res.converged, res


def cmd_spectrum(args, parser) -> int:
    geom = _geometry(args, parser)
    method = _METHODS[args.method]
    mu = args.mu if args.mu is not None else math.nan
    rows = []
    results = []
    any_unconverged = False
    for l in range(args.l_max + 1):
        for n in range(args.n_max + 1):
            qn = QuantumNumbers(n, l)
            eps, bound, converged, res = _compute_entry(geom, mu, qn, method)
            any_unconverged |= not converged
            rows.append({
                "geometry": args.geometry,
                "mu": None if geom is Geometry.FLAT else mu,
                "n": n, "l": l, "N": float(qn.N),
                "epsilon": eps, "method": method.value, "bound": bound,
            })
            if res is not None:
                results.append((qn, res))
    _print_rows(rows, args.format)
    if args.dump_wavefunction:
        if method is not Method.ODE_ORACLE:
            parser.error("--dump-wavefunction requires --method ode")
        _dump_wavefunctions(args.dump_wavefunction, args.geometry, mu, results)
    return EXIT_ORACLE if (method is Method.ODE_ORACLE and any_unconverged) else EXIT_OK


def _print_rows(rows, fmt: str) -> None:
    if fmt == "json":
        print(emit_json(rows))
        return
    if fmt == "csv":
        print(CSV_HEADER)
        for r in rows:
            print(",".join([r["geometry"], _fmt(r["mu"]), str(r["n"]), str(r["l"]),
                            _fmt(r["N"]), _fmt(r["epsilon"]), r["method"],
                            "true" if r["bound"] else "false"]))
        return
    header = f"{'n':>3} {'l':>3} {'N':>6} {'epsilon':>14} {'method':>14} {'bound':>6}"
    print(header)
    print("-" * len(header))
    for r in rows:
        eps = f"{r['epsilon']:.6g}" if math.isfinite(r["epsilon"]) else "-"
        print(f"{r['n']:>3} {r['l']:>3} {r['N']:>6.1f} {eps:>14} {r['method']:>14} "
              f"{'yes' if r['bound'] else 'NO':>6}")


def _dump_wavefunctions(path: str, geometry: str, mu: float, results) -> None:
    with open(path, "w") as fh:
        first = True
        for qn, res in results:
            if not first:
                fh.write("\n")
            first = False
            fh.write(f"# geometry: {geometry}\n")
            if math.isfinite(mu):
                fh.write(f"# mu: {_fmt(mu)}\n")
            fh.write(f"# n: {qn.n}\n# l: {qn.l}\n# epsilon: {_fmt(res.epsilon)}\n")
            fh.write("r,u\n")
            for r, u in res.wavefunction:
                fh.write(f"{r:.12e},{u:.12e}\n")


def cmd_contour(args, parser) -> int:
    geom = _geometry(args, parser)
    if args.order < 0:
        parser.error("--order must be nonnegative")
    if args.samples < 64:
        parser.error("--samples must be at least 64")
    scheme = Scheme.NAIVE if args.scheme == "naive" else Scheme.CORRECTED
    mu = args.mu if args.mu is not None else math.nan
    try:
        field = build_field(geom, mu, args.l, args.epsilon, scheme)
        spec = contour_mod.default_contour(field, samples_per_circle=args.samples)
        term = contour_mod.integrate_term(args.order, field, spec)
    except (QuadratureError, NoClassicalRegionError) as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        if isinstance(exc, QuadratureError) and exc.diagnostics:
            print(f"diagnostics: {exc.diagnostics}", file=sys.stderr)
        return EXIT_QUADRATURE
    val = term.integral
    print(f"order {args.order} contour integral: {val.real:+.12e} {val.imag:+.12e}j")
    if args.order <= 1:
        ana = contour_mod.analytic_residue_sum(args.order, field.coefficients)
        print(f"analytic residue sum:       {ana.real:+.12e} {ana.imag:+.12e}j")
        print(f"difference:                 {abs(val - ana):.3e}")
    else:
        print(f"magnitude:                  {abs(val):.3e}")
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    geom = _geometry(args, parser)
    mu = args.mu if args.mu is not None else math.nan
    tol = args.tol

    states = []
    for l in range(args.l_max + 1):
        for n in range(args.n_max + 1):
            qn = QuantumNumbers(n, l)
            if quantize.exact_epsilon(geom, mu, qn).bound:
                states.append(qn)

    def check(qn):
        exact = quantize.exact_epsilon(geom, mu, qn).epsilon
        corr = quantize.solve_epsilon(geom, mu, qn, Scheme.CORRECTED).epsilon
        naive = quantize.naive_wkb_epsilon(geom, mu, qn).epsilon
        ode = radial.solve(geom, mu, qn.l, qn.n)
        return qn, exact, corr, naive, ode

    with ThreadPoolExecutor(max_workers=min(8, max(1, len(states)))) as pool:
        checked = list(pool.map(check, states))

    failures = []
    max_corr = max_ode = max_naive = 0.0
    print(f"{'n':>3} {'l':>3} {'exact':>16} {'|corr-exact|':>13} {'|ode-exact|':>13} {'|naive-exact|':>14}")
    for qn, exact, corr, naive, ode in checked:
        d_corr = abs(corr - exact)
        d_naive = abs(naive - exact)
        if not ode.converged:
            failures.append((qn, "oracle did not converge"))
            d_ode = math.nan
        else:
            d_ode = abs(ode.epsilon - exact)
            max_ode = max(max_ode, d_ode)
        max_corr = max(max_corr, d_corr)
        max_naive = max(max_naive, d_naive)
        print(f"{qn.n:>3} {qn.l:>3} {exact:>16.10f} {d_corr:>13.3e} {d_ode:>13.3e} {d_naive:>14.3e}")
        if d_corr > tol:
            failures.append((qn, f"|corrected - exact| = {d_corr:.3e} > {tol:g}"))
        if not math.isnan(d_ode) and d_ode > tol:
            failures.append((qn, f"|ode - exact| = {d_ode:.3e} > {tol:g}"))
    print(f"max |corrected-exact| = {max_corr:.3e}")
    print(f"max |ode-exact|       = {max_ode:.3e}")
    print(f"max |naive-exact|     = {max_naive:.3e} (reported only)")
    if failures:
        for qn, why in failures:
            print(f"FAIL (n={qn.n}, l={qn.l}): {why}", file=sys.stderr)
        return EXIT_VERIFY
    print("verify: pass")
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    geom = _GEOMETRIES[args.geometry]
    if geom is Geometry.FLAT:
        parser.error("sweep applies to curved geometries (h3 or s3)")
    if args.mu_min <= 0 or args.mu_max <= args.mu_min:
        parser.error("need 0 < --mu-min < --mu-max")
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    allowed = {"epsilon", "epsilon_over_sqrt_mu", "naive_gap"}
    bad = [c for c in columns if c not in allowed]
    if bad:
        parser.error(f"unknown columns: {', '.join(bad)} (allowed: {', '.join(sorted(allowed))})")
    qn = QuantumNumbers(args.n, args.l)
    mus = np.geomspace(args.mu_min, args.mu_max, args.points)

    def row(mu):
        exact = quantize.exact_epsilon(geom, float(mu), qn)
        out = {"mu": float(mu)}
        if "epsilon" in columns:
            out["epsilon"] = exact.epsilon
        if "epsilon_over_sqrt_mu" in columns:
            out["epsilon_over_sqrt_mu"] = exact.epsilon / math.sqrt(mu)
        if "naive_gap" in columns:
            naive = quantize.naive_wkb_epsilon(geom, float(mu), qn)
            out["naive_gap"] = naive.epsilon - exact.epsilon
        return out

    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(row, mus))
    print(f"# geometry: {args.geometry}, n: {args.n}, l: {args.l}")
    print(",".join(["mu"] + columns))
    for r in rows:
        print(",".join([_fmt(r["mu"])] + [_fmt(r[c]) for c in columns]))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscspec",
        description="Oscillator bound-state spectra in flat, hyperbolic and spherical 3-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_mu=True):
        p.add_argument("--geometry", required=True, choices=sorted(_GEOMETRIES))
        if need_mu:
            p.add_argument("--mu", type=float, default=None,
                           help="dimensionless stiffness (required for h3/s3)")

    p = sub.add_parser("spectrum", help="tabulate energy levels")
    common(p)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--l-max", type=int, default=2)
    p.add_argument("--method", choices=sorted(_METHODS), default="exact")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--dump-wavefunction", metavar="PATH", default=None,
                   help="write (r, u) samples (gnuplot-style blocks; --method ode only)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("contour", help="numeric WKB term integral diagnostics")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--scheme", choices=["naive", "corrected"], default="corrected")
    p.add_argument("--samples", type=int, default=4096)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("verify", help="cross-check exact, WKB and ODE energies")
    common(p)
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--l-max", type=int, default=1)
    p.add_argument("--tol", type=float, default=_default_tol())
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="logarithmic curvature sweep")
    p.add_argument("--geometry", required=True, choices=["h3", "s3"])
    p.add_argument("--mu-min", type=float, required=True)
    p.add_argument("--mu-max", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--columns", default="epsilon,epsilon_over_sqrt_mu")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except OscspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
