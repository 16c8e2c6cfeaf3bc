"""Command-line front end: calculators and verification suites.

Exit status is 0 when every check in the run passes, 1 when a check fails
and 2 for invalid input.  JSON reports carry ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import Any

from . import acceptance, isopar, oddsteiner, pfaffian, spaceform, symcurv
from .errors import SpaceformError
from .exactnum import PiGraded, QuadExt, RatFunc, UniPoly, as_rational

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _q(text: str) -> Fraction:
    try:
        return as_rational(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _q_list(text: str) -> list[Fraction]:
    return [_q(part) for part in text.split(",") if part.strip()]


def _exact(x: Any, with_float: bool) -> Any:
    """Render a scalar for output: ints stay ints, exact values become strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return {"exact": str(x), "float": float(x)} if with_float else str(x)
    if isinstance(x, (PiGraded, QuadExt)):
        try:
            value = float(x)
        except TypeError:
            return str(x)
        return {"exact": str(x), "float": value} if with_float else str(x)
    if isinstance(x, (RatFunc, UniPoly)):
        return str(x)
    if isinstance(x, dict):
        return {k: _exact(v, with_float) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_exact(v, with_float) for v in x]
    return str(x)


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        rows = []
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows
    if isinstance(obj, list):
        return [(prefix, ";".join(str(v) for v in obj))]
    return [(prefix, obj)]


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, ensure_ascii=False, indent=2) + "\n")
        return
    table = report.get("table")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table:
            writer.writerow(list(table[0].keys()))
            for row in table:
                writer.writerow([row[k] for k in table[0]])
        else:
            writer.writerow(["key", "value"])
            writer.writerows(_flatten(report))
        out.write(buf.getvalue())
        return
    for key, value in _flatten(report):
        out.write(f"{key}: {value}\n")


# model arguments shared by chi and invariance-check


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=["sphere", "clifford", "ellipsoid", "json"], required=True)
    p.add_argument("--n", type=int, help="sphere dimension")
    p.add_argument("--radius", type=_q, help="Euclidean sphere radius")
    p.add_argument("--c", type=_q, help="ambient curvature for a geodesic sphere")
    p.add_argument("--curvature", type=_q, help="principal curvature of a geodesic sphere")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=_q, help="Clifford radius in (0, 1)")
    p.add_argument("--axes", type=float, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--resolution", type=int, default=spaceform.quadrature.DEFAULT_RESOLUTION)
    p.add_argument("--descriptor", help="JSON model descriptor (with --model json)")


def _model(args) -> Any:
    if args.model == "sphere":
        if args.n is None:
            raise InputError("--n is required for a sphere")
        if args.radius is not None:
            return spaceform.GeodesicSphere.euclidean(args.n, args.radius)
        if args.curvature is None:
            raise InputError("give --radius, or --c and --curvature")
        return spaceform.GeodesicSphere(args.n, args.c or Fraction(0), args.curvature)
    if args.model == "clifford":
        if None in (args.p, args.q, args.r):
            raise InputError("--p, --q and --r are required for a Clifford product")
        return spaceform.CliffordProduct(args.p, args.q, args.r)
    if args.model == "ellipsoid":
        if args.axes is None:
            raise InputError("--axes is required for an ellipsoid")
        return spaceform.EllipsoidNumeric(*args.axes, resolution=args.resolution)
    if not args.descriptor:
        raise InputError("--descriptor is required with --model json")
    try:
        return spaceform.model_from_json(json.loads(args.descriptor))
    except (json.JSONDecodeError, KeyError) as exc:
        raise InputError(f"bad descriptor: {exc}") from exc


# subcommands; each returns (report, ok)


def cmd_chi(args) -> tuple[dict, bool]:
    M = _model(args)
    if isinstance(M, spaceform.EllipsoidNumeric):
        integrals = spaceform.ellipsoid_curvature_integrals(M)
        chi = oddsteiner.gauss_kronecker_chi(1, integrals.values[2])
        tol = args.tol if args.tol is not None else 1e-6
        ok = abs(chi - round(chi)) <= tol
        return {
            "chi": chi,
            "chi_rounded": round(chi),
            "provenance": "numeric",
            "err_estimate": max(integrals.err_estimate),
            "tolerance": tol,
            "residual": abs(chi - round(chi)),
        }, ok
    chi = spaceform.euler_characteristic_int(M)
    return {"chi": chi, "provenance": "exact"}, True


def cmd_pfaffian(args) -> tuple[dict, bool]:
    if args.matrix:
        rows = [[_q(str(v)) for v in row] for row in json.loads(args.matrix)]
        X = pfaffian.SkewMatrix.from_rows(rows)
        pf = pfaffian.pfaffian_laplace(X)
        residual = pfaffian.pfaffian_det_check(X)
        return {"pfaffian": pf, "det": pfaffian.determinant(X.rows()), "pf2_minus_det": residual, "provenance": "exact"}, residual == 0
    if args.eigenvalues is None:
        raise InputError("give --matrix or --eigenvalues")
    c = args.c or Fraction(0)
    M = pfaffian.CurvatureMatrix(c, args.eigenvalues)
    matching = pfaffian.curvature_pfaffian(M)
    weil = symcurv.weil_invariant(symcurv.CurvatureSpec.from_values(args.eigenvalues, c))
    report = {"curvature_pfaffian": matching, "weil_invariant": weil, "provenance": "exact"}
    ok = matching == weil
    if M.n <= pfaffian.FORM_ORACLE_MAX_N:
        oracle = pfaffian.even_form_oracle(M)
        report["even_form_oracle"] = oracle
        ok = ok and oracle == matching
    return report, ok


def cmd_weil(args) -> tuple[dict, bool]:
    spec = symcurv.CurvatureSpec.from_values(args.eigenvalues, args.c or Fraction(0))
    s = symcurv.all_symmetric(spec)
    newton = symcurv.symmetric_by_newton(spec.eigenvalues())
    weil = symcurv.weil_invariant(spec)
    l = spec.n // 2
    return {
        "n": spec.n,
        "S": s,
        "weil_invariant": weil,
        "chi_density": PiGraded(weil) / PiGraded.pi(l, 2**l),
        "newton_agrees": s == newton,
        "provenance": "exact",
    }, s == newton


def cmd_reilly(args) -> tuple[dict, bool]:
    if args.axes:
        M = spaceform.EllipsoidNumeric(*args.axes, resolution=args.resolution)
        tol = args.tol if args.tol is not None else 1e-5
        rows = []
        ok = True
        indices = [args.i] if args.i is not None else [0, 1, 2]
        for i in indices:
            chk = spaceform.reilly_residual_numeric(M, i, h=args.h, tol=tol)
            ok = ok and chk.passed
            rows.append({
                "i": i, "lhs": chk.lhs, "rhs": chk.rhs, "residual": chk.residual,
                "residual_half_step": chk.residual_half_step, "order_confirmed": chk.order_confirmed,
                "err_estimate": chk.err_estimate, "tolerance": tol, "h": chk.h,
            })
        return {"provenance": "numeric", "checks": rows}, ok
    if args.n is None:
        raise InputError("give --n (exact geodesic spheres) or --axes (ellipsoid)")
    indices = [args.i] if args.i is not None else list(range(args.n + 1))
    rows, ok = [], True
    for i in indices:
        rho = _q(args.rho) if args.rho else None
        chk = spaceform.reilly_residual_exact(args.n, i, rho)
        ok = ok and chk.residual == 0
        rows.append({"i": i, "lhs": chk.lhs, "rhs": chk.rhs, "residual": chk.residual})
    return {"provenance": "exact", "n": args.n, "checks": rows}, ok


def cmd_invariance(args) -> tuple[dict, bool]:
    M = _model(args)
    tol = args.tol if args.tol is not None else 1e-8
    chk = spaceform.invariance_residual(M, h=args.h, tol=tol)
    return {
        "provenance": "numeric",
        "integral": chk.value,
        "derivative": chk.derivative,
        "relative_drift": chk.relative,
        "tolerance": tol,
        "chi_estimate": chk.chi_estimate,
        "exact_chi": chk.exact_chi,
    }, chk.passed


def _family(args) -> isopar.IsoparFamily:
    return isopar.IsoparFamily(args.g, args.m, args.m2, args.c if args.c is not None else 1)


def cmd_isopar_report(args) -> tuple[dict, bool]:
    family = _family(args)
    report: dict = {"family": family.label}
    ok = True
    try:
        cf = isopar.compare_closed_forms(family.g, family.m1, family.m2, family.c)
        payload = cf.to_json()
        if args.format != "json":
            # structured encodings are for machines; keep the readable strings
            payload = {k: v for k, v in payload.items() if not isinstance(v, dict) or k == "checks"}
        report.update(payload)
        report["printed_fixtures"] = {}
        fixture = isopar.PRINTED.get((family.g, family.m1)) if family.m1 == family.m2 else None
        if fixture:
            report["printed_fixtures"] = {k: str(v) for k, v in fixture().items()}
    except SpaceformError as exc:
        if "no printed closed form" not in str(exc):
            raise
        density = isopar.chi_density(family)
        report.update({"verdict": "NoClosedForm", "computed_density_str": str(density), "computed_weil_str": str(isopar.family_weil(family))})
    if args.grid:
        report["table"] = isopar.density_table(family, args.grid)
    if args.chi is not None:
        report["volume_given_chi"] = str(isopar.volume_given_chi(family, args.chi))
    # a Mismatch is a faithful report, not a failed check; only √3 residue or Cartan failure fails
    cartan = isopar.cartan_residual(family)
    report["cartan_residual_zero"] = all(r == 0 for r in cartan)
    ok = ok and report["cartan_residual_zero"]
    return report, ok


def cmd_cartan(args) -> tuple[dict, bool]:
    family = _family(args)
    lam = args.lam if args.lam is not None else isopar.LAMBDA
    residuals = isopar.cartan_residual(family, lam)
    ok = all(r == 0 for r in residuals)
    return {"family": family.label, "lambda": str(lam), "residuals": [str(r) for r in residuals], "provenance": "exact"}, ok


def cmd_steiner(args) -> tuple[dict, bool]:
    if args.shape == "cap":
        Q = oddsteiner.spherical_cap(oddsteiner.CapSpec(args.r, args.cos1, args.k))
    elif args.shape == "cylinder":
        if args.cos2 is None:
            raise InputError("--cos2 is required for a cylinder")
        Q = oddsteiner.spherical_cylinder(oddsteiner.CylinderSpec(args.r, args.cos1, args.cos2, args.k))
    else:
        Q = oddsteiner.full_sphere_domain(args.k, args.r)
    terms = oddsteiner.steiner_terms(Q)
    return {
        "inputs": {"shape": args.shape, "r": args.r, "cos_phi1": args.cos1, "cos_phi2": args.cos2, "k": args.k},
        "c": Q.c,
        "chi": Q.chi_Q,
        "vol": Q.vol_Q,
        "boundary_odd_integrals": list(Q.boundary_odd_integrals),
        "lhs": terms.lhs,
        "rhs": terms.rhs,
        "residual": terms.residual,
        "provenance": "exact",
    }, terms.residual == 0


def cmd_coefficients(args) -> tuple[dict, bool]:
    c = args.c if args.c is not None else Fraction(1)
    if args.n % 2 == 0:
        sol = symcurv.closed_coefficients_even(args.n, c, args.b0)
        ok = all(r == 0 for r in sol.c_rhs)
    else:
        sol = symcurv.odd_coefficients(args.n, c)
        ok = all(r == 0 for r in sol.c_rhs[1:])
    return {"n": args.n, "c": c, "b": list(sol.b), "c_rhs": list(sol.c_rhs), "provenance": "exact"}, ok


def cmd_hopf(args) -> tuple[dict, bool]:
    vol = oddsteiner.hopf_volume(args.m, args.chi)
    return {"m": args.m, "chi": args.chi, "volume": vol, "provenance": "exact"}, True


def cmd_star(args) -> tuple[dict, bool]:
    rng = random.Random(args.seed)
    if args.values:
        tuples = [args.values]
    else:
        tuples = [[Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(2 * args.l)] for _ in range(args.count)]
    rows, ok = [], True
    for values in tuples:
        l = len(values) // 2
        qs = [args.q_index] if args.q_index else list(range(1, l))
        for q in qs:
            residual = symcurv.star_identity_residual(values, q)
            ok = ok and residual == 0
            rows.append({"values": [str(v) for v in values], "q": q, "lhs": symcurv.star_identity_lhs(values, q), "residual": residual})
    return {"provenance": "exact", "checks": rows}, ok


def cmd_selftest(args) -> tuple[dict, bool]:
    wanted = args.criteria or [c[0] for c in acceptance.CRITERIA]
    results = [acceptance.run_criterion(n, args.seed) for n in wanted]
    if args.format == "pretty":
        for r in results:
            print(r.line(), file=sys.stderr)
    return {"criteria": [r.to_json() for r in results]}, all(r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spaceform-euler", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    common.add_argument("--float", action="store_true", help="add decimal renderings of exact values")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, help="override the numeric tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="Euler characteristic of a closed model")
    _add_model_args(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("pfaffian", parents=[common], help="Pfaffian of a skew matrix or a curvature matrix")
    p.add_argument("--matrix", help="JSON list of rows")
    p.add_argument("--eigenvalues", type=_q_list)
    p.add_argument("--c", type=_q)
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("weil", parents=[common], help="symmetric functions and the invariant 𝒫")
    p.add_argument("--eigenvalues", type=_q_list, required=True)
    p.add_argument("--c", type=_q)
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("reilly-check", parents=[common], help="first variation of ∫S_i")
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--rho", help="latitude as a fraction of π (exact) instead of symbolic")
    p.add_argument("--axes", type=float, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--resolution", type=int, default=spaceform.quadrature.DEFAULT_RESOLUTION)
    p.add_argument("--h", type=float, default=1e-3)
    p.set_defaults(func=cmd_reilly)

    p = sub.add_parser("invariance-check", parents=[common], help="drift of ∫𝒫 vol along parallel hypersurfaces")
    _add_model_args(p)
    p.add_argument("--h", type=float, default=1e-3)
    p.set_defaults(func=cmd_invariance)

    for name, func, text in (("isopar-report", cmd_isopar_report, "computed vs printed χ/vol"), ("cartan", cmd_cartan, "Cartan residuals")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--m2", type=int)
        p.add_argument("--c", type=_q)
        p.set_defaults(func=func)
        if name == "cartan":
            p.add_argument("--lambda", dest="lam", type=_q)
        else:
            p.add_argument("--grid", type=_q_list, help="comma-separated λ values for a density table")
            p.add_argument("--chi", type=int, help="Euler characteristic for the volume formula")

    p = sub.add_parser("steiner", parents=[common], help="boundary identity on caps and bands")
    p.add_argument("--shape", choices=["cap", "cylinder", "sphere"], required=True)
    p.add_argument("--r", type=_q, default=Fraction(1))
    p.add_argument("--cos1", type=_q, default=Fraction(0))
    p.add_argument("--cos2", type=_q)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_steiner)

    p = sub.add_parser("coefficients", parents=[common], help="kernel of the coefficient recurrence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=_q)
    p.add_argument("--b0", type=_q, default=Fraction(1))
    p.set_defaults(func=cmd_coefficients)

    p = sub.add_parser("hopf", parents=[common], help="volume of a finite-volume hyperbolic manifold")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chi", type=int, required=True)
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("star-check", parents=[common], help="symmetric-function identity residuals")
    p.add_argument("--values", type=_q_list)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--q-index", dest="q_index", type=int)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.add_argument("--criteria", type=int, nargs="*")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = args.func(args)
    except (InputError, SpaceformError, TypeError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    body = {"schema": SCHEMA_VERSION, "command": args.command, "ok": ok}
    body.update(_exact(report, args.float))
    emit(body, args.format)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
