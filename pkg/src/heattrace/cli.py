"""Command-line front end.

Subcommands: coeffs, corner, kernel, greens, trace-fit, distinguish.
Exit codes: 0 success, 1 numerical failure (a tolerance was not met),
2 input validation error.  JSON is used for specs and reports, CSV (comma
separated, header row, newline endings) for grids and trace samples.
"""

import argparse
import json
import math
import os
import sys

from . import corner_lab, exact_spectra, sector_models, trace_coeffs
from .errors import HeatTraceError, ValidationError
from .sector_models import BoundaryCondition, SectorSpec

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_VALIDATION = 2


def thread_cap():
    """Worker-thread cap from HEATTRACE_THREADS (>= 1).

    Evaluation is currently serial, so any cap is honored trivially; results
    are identical for every value.
    """
    raw = os.environ.get("HEATTRACE_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(
            f"HEATTRACE_THREADS must be an integer >= 1, got {raw!r}",
            field="HEATTRACE_THREADS",
        )
    if n < 1:
        raise ValidationError(
            f"HEATTRACE_THREADS must be an integer >= 1, got {n}",
            field="HEATTRACE_THREADS",
        )
    return n


# ---------------------------------------------------------------------------
# domain spec files

def _reject_unknown(obj, allowed, where):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ValidationError(
            f"{where}: unknown key(s) {sorted(unknown)}", field=where
        )


def _parse_bc(raw, where):
    if raw == "D":
        return BoundaryCondition.dirichlet(), None
    if raw == "N":
        return BoundaryCondition.neumann(), None
    if isinstance(raw, dict) and set(raw) == {"R"}:
        body = raw["R"]
        if isinstance(body, (int, float)):
            if body <= 0:
                raise ValidationError(f"{where}.bc.R: kappa must be > 0", field=where)
            return BoundaryCondition.robin(float(body)), None
        if isinstance(body, dict) and set(body) == {"integral"}:
            integral = body["integral"]
            if not isinstance(integral, (int, float)) or integral <= 0:
                raise ValidationError(
                    f"{where}.bc.R.integral: must be a number > 0", field=where
                )
            return None, float(integral)  # kappa fixed later from the length
    raise ValidationError(
        f'{where}.bc: expected "D", "N", {{"R": kappa}} or '
        f'{{"R": {{"integral": value}}}}, got {raw!r}',
        field=where,
    )


def _parse_edge(raw, where):
    if not isinstance(raw, dict):
        raise ValidationError(f"{where}: edge must be an object", field=where)
    _reject_unknown(raw, ("length", "bc", "kg_integral"), where)
    for key in ("length", "bc"):
        if key not in raw:
            raise ValidationError(f"{where}.{key}: missing", field=f"{where}.{key}")
    length = raw["length"]
    if not isinstance(length, (int, float)) or not length > 0:
        raise ValidationError(
            f"{where}.length: must be a number > 0, got {length!r}",
            field=f"{where}.length",
        )
    kg = raw.get("kg_integral", 0.0)
    if not isinstance(kg, (int, float)):
        raise ValidationError(
            f"{where}.kg_integral: must be a number, got {kg!r}",
            field=f"{where}.kg_integral",
        )
    bc, robin_integral = _parse_bc(raw["bc"], where)
    if bc is None:
        bc = BoundaryCondition.robin(robin_integral / float(length))
    return trace_coeffs.EdgeSpec(
        length=float(length),
        bc=bc,
        geodesic_curvature_integral=float(kg),
        robin_integral=robin_integral,
    )


def _parse_loop(raw, where):
    if not isinstance(raw, dict):
        raise ValidationError(f"{where}: loop must be an object", field=where)
    _reject_unknown(raw, ("edges", "angles"), where)
    edges_raw = raw.get("edges")
    if not isinstance(edges_raw, list) or not edges_raw:
        raise ValidationError(f"{where}.edges: need a nonempty list", field=where)
    edges = tuple(
        _parse_edge(e, f"{where}.edges[{i}]") for i, e in enumerate(edges_raw)
    )
    angles_raw = raw.get("angles", [])
    if not isinstance(angles_raw, list):
        raise ValidationError(f"{where}.angles: must be a list", field=where)
    for i, a in enumerate(angles_raw):
        if not isinstance(a, (int, float)) or not 0.0 < a < 2.0 * math.pi:
            raise ValidationError(
                f"{where}.angles[{i}]: angle must lie in (0, 2*pi), got {a!r}",
                field=f"{where}.angles[{i}]",
            )
    try:
        return trace_coeffs.BoundaryLoop(edges=edges, angles=tuple(float(a) for a in angles_raw))
    except HeatTraceError as exc:
        raise ValidationError(f"{where}: {exc}", field=where) from exc


def load_polygon_spec(path):
    """Parse a DomainSpecFile (JSON) into a PolygonSpec; strict keys."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return polygon_spec_from_dict(raw, where=path)


def polygon_spec_from_dict(raw, where="spec"):
    if not isinstance(raw, dict):
        raise ValidationError(f"{where}: top level must be an object", field=where)
    allowed = (
        "area",
        "gauss_curvature_integral",
        "euler_characteristic",
        "loops",
        "cone_points",
    )
    _reject_unknown(raw, allowed, where)
    if "area" not in raw or not isinstance(raw["area"], (int, float)) or raw["area"] <= 0:
        raise ValidationError(f"{where}.area: must be a number > 0", field="area")
    has_k = "gauss_curvature_integral" in raw
    has_chi = "euler_characteristic" in raw
    if not has_k and not has_chi:
        raise ValidationError(
            f"{where}: provide gauss_curvature_integral or euler_characteristic",
            field="gauss_curvature_integral",
        )
    if has_chi and not isinstance(raw["euler_characteristic"], int):
        raise ValidationError(
            f"{where}.euler_characteristic: must be an integer",
            field="euler_characteristic",
        )
    loops_raw = raw.get("loops")
    if not isinstance(loops_raw, list) or not loops_raw:
        raise ValidationError(f"{where}.loops: need a nonempty list", field="loops")
    loops = tuple(
        _parse_loop(lp, f"{where}.loops[{i}]") for i, lp in enumerate(loops_raw)
    )
    cones = raw.get("cone_points", [])
    if not isinstance(cones, list):
        raise ValidationError(f"{where}.cone_points: must be a list", field="cone_points")
    for i, c in enumerate(cones):
        if not isinstance(c, (int, float)) or c <= 0:
            raise ValidationError(
                f"{where}.cone_points[{i}]: opening must be > 0, got {c!r}",
                field=f"cone_points[{i}]",
            )
    try:
        return trace_coeffs.PolygonSpec(
            area=float(raw["area"]),
            loops=loops,
            gauss_curvature_integral=(
                float(raw["gauss_curvature_integral"]) if has_k else None
            ),
            euler_characteristic=raw.get("euler_characteristic"),
            cone_points=tuple(float(c) for c in cones),
        )
    except HeatTraceError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _coeff_report(coeffs):
    return {
        "a_minus1": coeffs.a_minus1,
        "a_minus_half": coeffs.a_minus_half,
        "a_0": coeffs.a_0,
        "breakdown": dict(sorted(coeffs.breakdown.items())),
        "remainder_order": coeffs.remainder_order,
    }


def _emit(report, as_json, out=None):
    out = out if out is not None else sys.stdout
    if as_json:
        out.write(json.dumps(report, indent=2, sort_keys=True))
        out.write("\n")
    else:
        for key, value in report.items():
            if isinstance(value, dict):
                out.write(f"{key}:\n")
                for k2, v2 in value.items():
                    out.write(f"  {k2} = {v2!r}\n")
            else:
                out.write(f"{key} = {value!r}\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_coeffs(args):
    spec = load_polygon_spec(args.spec)
    coeffs = (
        trace_coeffs.coefficients_gb(spec) if args.gb else trace_coeffs.coefficients(spec)
    )
    _emit(_coeff_report(coeffs), args.json)
    return EXIT_OK


def cmd_corner(args):
    kind = corner_lab.CornerKind(args.pair, args.angle)
    report = {
        "pair": args.pair,
        "angle": args.angle,
        "closed_form": corner_lab.corner_coeff(kind),
    }
    if args.numeric:
        if args.pair not in ("DD", "NN", "DN"):
            raise ValidationError(
                f"--numeric supports DD, NN, DN (no Robin sector model); got {args.pair}",
                field="pair",
            )
        result = corner_lab.corner_finite_part(args.pair, args.angle)
        report["finite_part"] = result.finite_part
        report["difference"] = result.finite_part - report["closed_form"]
        report["fit_condition_number"] = result.condition_number
        if abs(report["difference"]) > args.tol:
            _emit(report, args.json)
            sys.stderr.write(
                f"numerical corner coefficient misses the closed form by "
                f"{report['difference']:.3e} (> {args.tol:.1e})\n"
            )
            return EXIT_NUMERICAL
    _emit(report, args.json)
    return EXIT_OK


def _parse_grid(raw, where="--grid"):
    """'name=a:b:n' (axis) or 'name=v' (fixed), semicolon separated."""
    axes = {}
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValidationError(f"{where}: bad entry {chunk!r}", field=where)
        name, body = chunk.split("=", 1)
        parts = body.split(":")
        try:
            if len(parts) == 1:
                axes[name.strip()] = [float(parts[0])]
            elif len(parts) == 3:
                lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
                if n < 1:
                    raise ValueError
                axes[name.strip()] = [
                    lo + (hi - lo) * i / max(n - 1, 1) for i in range(n)
                ]
            else:
                raise ValueError
        except ValueError:
            raise ValidationError(
                f"{where}: entry {chunk!r} is not name=value or name=lo:hi:count",
                field=where,
            ) from None
    return axes


def cmd_kernel(args):
    axes = _parse_grid(args.grid)
    if args.model == "sector":
        names = ("t", "r", "theta", "r0", "theta0")
        spec = SectorSpec(
            args.gamma,
            _bc_from_string(args.bc0),
            _bc_from_string(args.bc1),
        )
        fn = lambda t, r, th, r0, th0: sector_models.sector_heat_kernel(
            spec, t, r, th, r0, th0
        )
    else:
        names = ("t", "x", "y", "x0", "y0")
        bc = _bc_from_string(args.bc0)
        fn = lambda t, x, y, x0, y0: sector_models.half_plane_kernel(bc, t, x, y, x0, y0)
    missing = [n for n in names if n not in axes]
    if missing:
        raise ValidationError(f"--grid is missing {missing}", field="--grid")
    rows = [[]]
    for name in names:
        rows = [r + [v] for r in rows for v in axes[name]]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(names) + ",H\n")
        for row in rows:
            value = fn(*row)
            fh.write(",".join(f"{v:.17e}" for v in row) + f",{value:.17e}\n")
    sys.stdout.write(f"wrote {len(rows)} rows to {args.out}\n")
    return EXIT_OK


def _bc_from_string(raw):
    if raw == "D":
        return BoundaryCondition.dirichlet()
    if raw == "N":
        return BoundaryCondition.neumann()
    if raw.startswith("R:"):
        return BoundaryCondition.robin(float(raw[2:]))
    raise ValidationError(f"boundary condition must be D, N or R:kappa, got {raw!r}")


def cmd_greens(args):
    s_values = [float(v) for v in args.s.split(",")]
    points = [((args.r, args.phi), (args.r0, args.phi0))]
    if args.model == "halfplane":
        model = _bc_from_string(args.bc0)
    else:
        model = SectorSpec(args.gamma, _bc_from_string(args.bc0), _bc_from_string(args.bc1))
    report = {"model": args.model, "residuals": {}}
    worst = 0.0
    for s in s_values:
        res = sector_models.laplace_consistency(model, s, points, tol=args.tol * 1e-1)
        report["residuals"][f"s={s!r}"] = res
        worst = max(worst, res)
    report["max_residual"] = worst
    report["tolerance"] = args.tol
    _emit(report, args.json)
    return EXIT_OK if worst <= args.tol else EXIT_NUMERICAL


def _spectrum_from_args(args):
    if args.domain == "rectangle":
        bcs = [s.strip() for s in args.bc.split(",")]
        if len(bcs) != 4:
            raise ValidationError(
                "--bc needs four entries (left,right,bottom,top)", field="--bc"
            )
        parse = lambda s: ("R", float(s[2:])) if s.startswith("R:") else s
        return exact_spectra.rectangle_spectrum(
            args.a, args.b, (parse(bcs[0]), parse(bcs[1])), (parse(bcs[2]), parse(bcs[3]))
        )
    if args.domain == "disk":
        return exact_spectra.sector_disk_spectrum(None, args.radius, None, args.arc)
    return exact_spectra.sector_disk_spectrum(
        args.gamma, args.radius, args.pair, args.arc
    )


def cmd_trace_fit(args):
    window = tuple(float(v) for v in args.window.split(","))
    if len(window) != 2:
        raise ValidationError("--window must be tmin,tmax", field="--window")
    spectrum = _spectrum_from_args(args)
    samples = exact_spectra.trace_samples(spectrum, window, args.samples)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            exact_spectra.write_trace_samples(fh, samples)
    report_fit = exact_spectra.fit_asymptotics(samples)
    report = {
        "domain": args.domain,
        "window": list(report_fit.window),
        "fitted": {
            "a_minus1": report_fit.a_minus1,
            "a_minus_half": report_fit.a_minus_half,
            "a_0": report_fit.a_0,
        },
        "nuisance": report_fit.nuisance,
        "residual_norm": report_fit.residual_norm,
        "condition_number": report_fit.condition_number,
    }
    closed = _closed_form_for_args(args)
    if closed is not None:
        report["closed_form"] = {
            "a_minus1": closed.a_minus1,
            "a_minus_half": closed.a_minus_half,
            "a_0": closed.a_0,
        }
        report["difference"] = {
            "a_minus1": report_fit.a_minus1 - closed.a_minus1,
            "a_minus_half": report_fit.a_minus_half - closed.a_minus_half,
            "a_0": report_fit.a_0 - closed.a_0,
        }
    _emit(report, args.json)
    return EXIT_OK


def _closed_form_for_args(args):
    """Closed-form trace coefficients of the sampled domain, when it is
    expressible as a polygon spec."""
    if args.domain == "rectangle":
        bcs = [s.strip() for s in args.bc.split(",")]
        conv = lambda s: (
            BoundaryCondition.robin(float(s[2:]))
            if s.startswith("R:")
            else _bc_from_string(s)
        )
        left, right, bottom, top = (conv(s) for s in bcs)
        return trace_coeffs.coefficients(
            trace_coeffs.rectangle_spec(args.a, args.b, (bottom, right, top, left))
        )
    if args.domain == "disk":
        return trace_coeffs.coefficients(
            trace_coeffs.disk_spec(args.radius, _bc_from_string(args.arc))
        )
    # truncated sector: two straight edges, one arc, corner angle gamma at
    # the tip and right angles where the straight edges meet the arc
    bc0 = _bc_from_string(args.pair[0])
    bc1 = _bc_from_string(args.pair[1])
    arc = _bc_from_string(args.arc)
    rho = args.radius
    edges = (
        trace_coeffs.EdgeSpec(rho, bc0),
        trace_coeffs.EdgeSpec(
            args.gamma * rho, arc, geodesic_curvature_integral=args.gamma
        ),
        trace_coeffs.EdgeSpec(rho, bc1),
    )
    loop = trace_coeffs.BoundaryLoop(
        edges=edges, angles=(math.pi / 2.0, math.pi / 2.0, args.gamma)
    )
    return trace_coeffs.coefficients(
        trace_coeffs.PolygonSpec(
            area=0.5 * args.gamma * rho * rho,
            loops=(loop,),
            gauss_curvature_integral=0.0,
        )
    )


def cmd_distinguish(args):
    spec1 = load_polygon_spec(args.spec1)
    spec2 = load_polygon_spec(args.spec2)
    verdict = trace_coeffs.distinguish(spec1, spec2)
    report = {
        "verdict": "inconclusive" if verdict.isospectral_possible else "not_isospectral",
    }
    if verdict.witness is not None:
        report["witness"] = verdict.witness
        report["values"] = list(verdict.values)
    _emit(report, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="heattrace",
        description="Heat-trace coefficients, sector kernels and spectral checks "
        "for curvilinear polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="trace coefficients of a polygon spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--table", dest="json", action="store_false")
    p.add_argument("--gb", action="store_true", help="use the Gauss-Bonnet form of a_0")
    p.set_defaults(func=cmd_coeffs, json=True)

    p = sub.add_parser("corner", help="corner coefficient (closed form / numeric)")
    p.add_argument("--pair", required=True,
                   choices=sorted(corner_lab._SAME_TYPE_PAIRS | corner_lab._MIXED_PAIRS))
    p.add_argument("--angle", required=True, type=float)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--json", action="store_true", default=True)
    p.add_argument("--table", dest="json", action="store_false")
    p.set_defaults(func=cmd_corner)

    p = sub.add_parser("kernel", help="evaluate a model heat kernel on a grid (CSV)")
    p.add_argument("--model", required=True, choices=("sector", "halfplane"))
    p.add_argument("--gamma", type=float, default=math.pi / 2.0)
    p.add_argument("--bc0", default="D")
    p.add_argument("--bc1", default="D")
    p.add_argument("--grid", required=True,
                   help="semicolon list of name=value or name=lo:hi:count")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("greens", help="Laplace-transform consistency residuals")
    p.add_argument("--check-laplace", action="store_true", dest="check")
    p.add_argument("--model", required=True, choices=("sector", "halfplane"))
    p.add_argument("--gamma", type=float, default=math.pi)
    p.add_argument("--bc0", default="D")
    p.add_argument("--bc1", default="D")
    p.add_argument("--r", type=float, default=0.9)
    p.add_argument("--phi", type=float, default=1.1)
    p.add_argument("--r0", type=float, default=1.4)
    p.add_argument("--phi0", type=float, default=2.0)
    p.add_argument("--s", default="1,4", help="comma list of spectral parameters")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--json", action="store_true", default=True)
    p.add_argument("--table", dest="json", action="store_false")
    p.set_defaults(func=cmd_greens)

    p = sub.add_parser("trace-fit", help="fit trace coefficients from an exact spectrum")
    p.add_argument("--domain", required=True, choices=("rectangle", "sector", "disk"))
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--bc", default="D,D,D,D",
                   help="rectangle sides left,right,bottom,top (D, N or R:kappa)")
    p.add_argument("--gamma", type=float, default=math.pi / 2.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--pair", default="DD", choices=("DD", "NN", "DN", "ND"))
    p.add_argument("--arc", default="D", choices=("D", "N"))
    p.add_argument("--window", default="0.002,0.05")
    p.add_argument("--samples", type=int, default=12)
    p.add_argument("--csv", help="also write the trace samples to this CSV file")
    p.add_argument("--json", action="store_true", default=True)
    p.add_argument("--table", dest="json", action="store_false")
    p.set_defaults(func=cmd_trace_fit)

    p = sub.add_parser("distinguish", help="compare the trace invariants of two specs")
    p.add_argument("--spec1", required=True)
    p.add_argument("--spec2", required=True)
    p.add_argument("--json", action="store_true", default=True)
    p.add_argument("--table", dest="json", action="store_false")
    p.set_defaults(func=cmd_distinguish)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        thread_cap()
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        return EXIT_VALIDATION
    except HeatTraceError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
