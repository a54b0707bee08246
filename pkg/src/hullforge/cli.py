"""Command-line front end for the hull verification pipeline.

Subcommands:

verify        run every stage (symbol identities, hull criterion,
              variety topology, geometry, separation panel, disc search)
              and write report.json plus plot CSVs
jimbo         run the determinant hull criterion on its own
trace-variety trace the double cover w^2 = r(z) and report its topology
certify       residual membership check for a point of C^3
disc-search   minimize the holomorphicity defect in one winding class

Reports embed the tolerances used, the git-style hash of the canonical
symbol, and heuristic flags for the evidence-only stages.  With a fixed
seed the JSON output is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import presets
from .discs import BoundaryLoop, defect, gradient_check, minimize_defect, winding_scan
from .geometry import (
    GraphSpec,
    SpacePoint,
    distance_to_graph,
    graph_sample,
    isotropy_defect,
    shear_points,
)
from .hull_criterion import (
    DegenerateSymbolError,
    FactorizationError,
    assemble_hull,
)
from .laurent import LaurentPoly2, LaurentSyntaxError, format_canonical, parse
from .report import (
    DEFAULT_TOLERANCES,
    SCHEMA,
    git_blob_sha1,
    loop_csv_rows,
    write_csv,
    write_json,
)
from .sampling import random_torus
from .separation import certify_membership, outside_panel, separate
from .variety import (
    RationalFunction,
    containment_check,
    residual_on_variety,
    trace_variety,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DEGENERATE = 2
EXIT_FACTORIZATION = 3


@dataclass
class RunConfig:
    command: str
    symbol: str = presets.DEFAULT_SYMBOL_EXPR
    grid_n: int = 512
    degree: int = 8
    K: int = 16
    restarts: int = 8
    seed: int = 0
    threads: int = 1
    out: Path = Path("hullforge-out")
    factors: tuple = None
    unit: str = None
    ratio: str = None
    point: str = None
    winding: tuple = (1, 0)
    height: str = "zero"
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullforge",
        description="Polynomial hulls of torus graphs: verification pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--symbol", default=presets.DEFAULT_SYMBOL_EXPR,
                        help="Laurent polynomial expression in z and w")
        sp.add_argument("--grid-n", type=int, default=512, dest="grid_n")
        sp.add_argument("--degree", type=int, default=8)
        sp.add_argument("--K", type=int, default=16)
        sp.add_argument("--restarts", type=int, default=8)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--out", default="hullforge-out")

    sp = sub.add_parser("verify", help="run the full verification pipeline")
    common(sp)
    sp.add_argument("--factors", default=None,
                    help="semicolon-separated determinant factors")
    sp.add_argument("--unit", default=None, help="monomial unit of the factorization")

    sp = sub.add_parser("jimbo", help="run the determinant hull criterion")
    common(sp)
    sp.add_argument("--factors", default=None)
    sp.add_argument("--unit", default=None)

    sp = sub.add_parser("trace-variety", help="trace the double cover w^2 = r(z)")
    common(sp)
    sp.add_argument("--ratio", default=None, help="rational function num/den in z")

    sp = sub.add_parser("certify", help="membership residuals for a point")
    common(sp)
    sp.add_argument("--point", required=True,
                    help="point of C^3 as re,im;re,im;re,im")
    sp.add_argument("--ratio", default=None)

    sp = sub.add_parser("disc-search", help="minimize the holomorphicity defect")
    common(sp)
    sp.add_argument("--winding", default="1,0", help="winding class m,n")
    sp.add_argument("--height", default="zero", choices=["zero", "re", "conj", "full"])
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("symbol", "grid_n", "degree", "K", "restarts", "seed", "threads"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    cfg.out = Path(args.out)
    if getattr(args, "factors", None):
        cfg.factors = tuple(s.strip() for s in args.factors.split(";") if s.strip())
    cfg.unit = getattr(args, "unit", None)
    cfg.ratio = getattr(args, "ratio", None)
    cfg.point = getattr(args, "point", None)
    if hasattr(args, "winding"):
        parts = args.winding.split(",")
        if len(parts) != 2:
            raise ValueError("winding: expected two comma-separated integers")
        cfg.winding = (int(parts[0]), int(parts[1]))
    if hasattr(args, "height"):
        cfg.height = args.height
    if cfg.grid_n < 64:
        raise ValueError("grid_n: must be at least 64")
    if not 1 <= cfg.degree <= 12:
        raise ValueError("degree: must be between 1 and 12")
    if cfg.K < 1 or cfg.restarts < 1:
        raise ValueError("K, restarts: must be positive")
    if cfg.threads < 1:
        raise ValueError("threads: must be positive")
    return cfg


def parse_point(text: str) -> SpacePoint:
    parts = text.split(";")
    if len(parts) != 3:
        raise ValueError("point: expected re,im;re,im;re,im")
    values = []
    for part in parts:
        re_im = part.split(",")
        if len(re_im) != 2:
            raise ValueError("point: each coordinate needs re,im")
        values.append(complex(float(re_im[0]), float(re_im[1])))
    return SpacePoint(*values)


def _config_payload(cfg: RunConfig, symbol: LaurentPoly2) -> dict:
    text = format_canonical(symbol)
    return {
        "command": cfg.command,
        "symbol": text,
        "symbol_hash": git_blob_sha1(text),
        "grid_n": cfg.grid_n,
        "degree": cfg.degree,
        "K": cfg.K,
        "restarts": cfg.restarts,
        "seed": cfg.seed,
        "threads": cfg.threads,
        "tolerances": cfg.tolerances,
    }


def _resolve_factors(cfg: RunConfig):
    if cfg.factors is None:
        factors = presets.default_factors()
    else:
        factors = tuple(parse(s) for s in cfg.factors)
    unit = parse(cfg.unit) if cfg.unit else None
    return factors, unit


def _resolve_ratio(cfg: RunConfig, hull_report=None) -> RationalFunction:
    if cfg.ratio:
        return RationalFunction.from_text(cfg.ratio)
    if hull_report is not None:
        for v in hull_report.verdicts:
            if v.candidate.kind == "double_cover_variety":
                return v.candidate.ratio
    return RationalFunction.from_text(presets.DEFAULT_RATIO_EXPR)


# ---------------------------------------------------------------- stages


def stage_laurent(p: LaurentPoly2, tol: dict, seed: int) -> dict:
    h = p.reflect()
    rng = np.random.default_rng(seed)
    s, t = random_torus(1000, rng)
    z, w = np.exp(1j * s), np.exp(1j * t)
    dev = float(np.max(np.abs(h(z, w) - np.conj(p(z, w)))))
    roundtrip = parse(format_canonical(p)) == p
    passed = dev <= tol["reflection_identity"] and roundtrip
    return {
        "name": "laurent",
        "passed": bool(passed),
        "reflection_max_deviation": dev,
        "roundtrip": bool(roundtrip),
    }


def stage_jimbo(p, factors, unit, cfg) -> tuple:
    hull = assemble_hull(
        p, factors, unit=unit, grid_n=cfg.grid_n, seed=cfg.seed
    )
    attached = hull.attached_indices
    constants_ok = all(
        abs(v.constant_value) <= cfg.tolerances["hull_constant"]
        for v in hull.verdicts
        if v.in_attached_set
    )
    expected = attached == [3] and constants_ok
    detail = {
        "name": "jimbo",
        "passed": bool(expected),
        "attached": attached,
        "report": hull.to_report_dict(),
    }
    return hull, detail


def stage_variety(p, r: RationalFunction, cfg) -> tuple:
    chart = trace_variety(r, refine=1)
    refined = trace_variety(r, refine=4)
    branch_ok = (
        len(chart.branch_points) == 2
        and float(np.max(np.abs(np.sort(np.real(chart.branch_points)) - (-0.5, 0.5)))) <= cfg.tolerances["branch_point"]
        and float(np.max(np.abs(np.imag(chart.branch_points)))) <= cfg.tolerances["branch_point"]
    )
    stable = (
        refined.euler_char == chart.euler_char
        and refined.genus == chart.genus
        and refined.boundary_count == chart.boundary_count
    )
    contain = containment_check(r)
    residual = residual_on_variety(p, chart)
    passed = (
        branch_ok
        and chart.boundary_count == 2
        and chart.genus == 0
        and chart.euler_char == 0
        and stable
        and contain.contained
        and contain.boundary_equality
        and residual <= cfg.tolerances["variety_residual"]
        and chart.boundary_on_torus
    )
    detail = {
        "name": "variety",
        "passed": bool(passed),
        "topology": chart.topology_summary(),
        "refinement_stable": bool(stable),
        "containment_max_modulus": contain.max_modulus,
        "boundary_equality": bool(contain.boundary_equality),
        "symbol_residual_on_variety": residual,
    }
    return chart, detail


def stage_geometry(p, chart, cfg) -> dict:
    tol = cfg.tolerances
    graph_re = GraphSpec("re", p)
    graph_conj = GraphSpec("conj", p)
    iso_re = isotropy_defect(graph_re, n=256).max_abs
    iso_conj = isotropy_defect(graph_conj, n=128).max_abs
    analytic64 = isotropy_defect(graph_conj, n=64, method="analytic").max_abs
    fd64 = isotropy_defect(graph_conj, n=64, method="fd").max_abs
    cross = abs(analytic64 - fd64)

    pts = graph_sample(graph_conj, 40)
    moved = shear_points(pts, p)
    target = np.real(p(moved[:, 0], moved[:, 1]))
    transport = float(np.max(np.abs(moved[:, 2] - target)))

    m = min(200, len(chart.interior_z))
    annulus = np.column_stack(
        [chart.interior_z[:m], chart.interior_w[:m], np.zeros(m, dtype=complex)]
    )
    sheared = shear_points(annulus, p)
    fixed = float(np.max(np.abs(sheared - annulus))) if m else 0.0

    passed = (
        iso_re <= tol["isotropy_zero"]
        and iso_conj >= tol["isotropy_floor"]
        and cross <= 1e-6
        and transport <= tol["shear_transport"]
        and fixed <= 1e-12
    )
    return {
        "name": "geometry",
        "passed": bool(passed),
        # reported defect is max |sum_j Im(conj(d_s x_j) d_t x_j)| over the
        # grid; the pullback of i*sum dz^dzbar is exactly twice that in ds^dt
        "isotropy_convention": "coeff = sum_j Im(conj(ds x_j) * dt x_j); form = 2*coeff ds^dt",
        "isotropy_re_height": iso_re,
        "isotropy_conj_height": iso_conj,
        "isotropy_fd_cross_check": cross,
        "shear_transport_max": transport,
        "shear_fixed_points_max_move": fixed,
    }


def stage_hullcert(p, r, chart, cfg) -> dict:
    tol = cfg.tolerances
    graph_re = GraphSpec("re", p)
    witness = SpacePoint(0j, 0.5j, 0j)
    member = certify_membership(witness, p, r, chart=chart)
    dist = distance_to_graph(witness, graph_re)

    inside = separate(
        witness, graph_re, degree=cfg.degree, restarts=cfg.restarts, seed=cfg.seed
    )
    outside_point = SpacePoint(0j, 0.9j, 0j)
    outside = separate(
        outside_point, graph_re, degree=cfg.degree, restarts=cfg.restarts, seed=cfg.seed
    )

    panel = outside_panel(p, r, count=10, seed=cfg.seed)
    panel_ok = 0
    for q in panel:
        if separate(q, graph_re, degree=cfg.degree, restarts=cfg.restarts, seed=cfg.seed):
            panel_ok += 1

    passed = (
        member.certified
        and dist >= 0.9
        and (not inside.separated)
        and inside.best_ratio <= 1 + 1e-3
        and outside.separated
        and outside.best_ratio >= 1 + tol["separation_margin"]
        and panel_ok == len(panel)
    )
    return {
        "name": "hullcert",
        "passed": bool(passed),
        "heuristic_certificates": True,
        "membership_residuals": {
            "variety": member.variety_residual,
            "height": member.height_residual,
            "boundary_in_T": member.boundary_in_T_residual,
            "bidisc": member.bidisc_excess,
        },
        "distance_to_graph": dist,
        "inside_point_best_ratio": inside.best_ratio,
        "outside_point_ratio": outside.best_ratio,
        "panel_certified": panel_ok,
        "panel_size": len(panel),
    }


def stage_discsearch(p, cfg) -> tuple:
    tol = cfg.tolerances
    control = minimize_defect(
        (1, 0), GraphSpec("zero"), K=min(cfg.K, 8), restarts=2, seed=cfg.seed
    )
    graph_re = GraphSpec("re", p)
    scan = winding_scan(
        graph_re,
        winding_range=1,
        K=cfg.K,
        restarts=cfg.restarts,
        seed=cfg.seed,
        threads=cfg.threads,
    )
    rng = np.random.default_rng(cfg.seed)
    checks = []
    for spec in (graph_re, GraphSpec("zero")):
        loop = BoundaryLoop(
            (1, 1),
            rng.uniform(-0.5, 0.5, size=2 * 4 + 1),
            rng.uniform(-0.5, 0.5, size=2 * 4 + 1),
        )
        checks.append(gradient_check(loop, spec))
    grad_max = float(max(checks))

    passed = (
        control.defect <= tol["control_defect"]
        and scan.floor > 1e-6
        and grad_max <= tol["gradient_check"]
    )
    detail = {
        "name": "discsearch",
        "passed": bool(passed),
        "heuristic_search": True,
        "control_defect": control.defect,
        "floor": scan.floor,
        "floor_class": list(scan.floor_class),
        "gradient_check_max": grad_max,
        "per_class": [
            {
                "winding": list(mn),
                "K": scan.K,
                "restarts": scan.restarts,
                "best_defect": res.defect,
                "converged": bool(res.converged),
                "heuristic_search": True,
            }
            for mn, res in sorted(scan.results.items())
        ],
    }
    return scan, detail


# ------------------------------------------------------------- commands


def run_verify(cfg: RunConfig) -> int:
    p = parse(cfg.symbol)
    factors, unit = _resolve_factors(cfg)
    stages = []

    stages.append(stage_laurent(p, cfg.tolerances, cfg.seed))
    hull, detail = stage_jimbo(p, factors, unit, cfg)
    stages.append(detail)
    r = _resolve_ratio(cfg, hull)
    chart, detail = stage_variety(p, r, cfg)
    stages.append(detail)
    stages.append(stage_geometry(p, chart, cfg))
    stages.append(stage_hullcert(p, r, chart, cfg))
    scan, detail = stage_discsearch(p, cfg)
    stages.append(detail)

    payload = {
        "schema": SCHEMA,
        "config": _config_payload(cfg, p),
        "stages": stages,
        "passed": all(s["passed"] for s in stages),
        "hull": hull.describe(),
    }
    write_json(cfg.out / "report.json", payload)
    write_csv(
        cfg.out / "curves.csv",
        ("factor", "component", "s", "t"),
        hull.curve_csv_rows(),
    )
    write_csv(
        cfg.out / "chart.csv",
        ("kind", "sheet", "re_z", "im_z", "re_w", "im_w"),
        chart.csv_rows(),
    )
    write_csv(
        cfg.out / "loops.csv",
        ("m", "n", "theta", "s", "t", "re_z", "im_z", "re_w", "im_w"),
        loop_csv_rows(scan.results),
    )
    if payload["passed"]:
        return EXIT_OK
    first = next(s["name"] for s in stages if not s["passed"])
    print(f"verification failed at stage: {first}", file=sys.stderr)
    return EXIT_FAIL


def run_jimbo(cfg: RunConfig) -> int:
    p = parse(cfg.symbol)
    factors, unit = _resolve_factors(cfg)
    hull = assemble_hull(p, factors, unit=unit, grid_n=cfg.grid_n, seed=cfg.seed)
    payload = {
        "schema": SCHEMA,
        "config": _config_payload(cfg, p),
        "criterion": hull.to_report_dict(),
    }
    write_json(cfg.out / "report.json", payload)
    write_csv(
        cfg.out / "curves.csv",
        ("factor", "component", "s", "t"),
        hull.curve_csv_rows(),
    )
    print(f"attached factors: {hull.attached_indices}")
    return EXIT_OK


def run_trace_variety(cfg: RunConfig) -> int:
    p = parse(cfg.symbol)
    r = _resolve_ratio(cfg)
    chart = trace_variety(r)
    contain = containment_check(r)
    payload = {
        "schema": SCHEMA,
        "config": _config_payload(cfg, p),
        "topology": chart.topology_summary(),
        "containment_max_modulus": contain.max_modulus,
        "boundary_equality": bool(contain.boundary_equality),
        "symbol_residual_on_variety": residual_on_variety(p, chart),
    }
    write_json(cfg.out / "report.json", payload)
    write_csv(
        cfg.out / "chart.csv",
        ("kind", "sheet", "re_z", "im_z", "re_w", "im_w"),
        chart.csv_rows(),
    )
    print(f"boundary loops: {chart.boundary_count}, genus: {chart.genus}")
    return EXIT_OK


def run_certify(cfg: RunConfig) -> int:
    p = parse(cfg.symbol)
    r = _resolve_ratio(cfg)
    point = parse_point(cfg.point)
    cert = certify_membership(point, p, r)
    payload = {
        "schema": SCHEMA,
        "config": _config_payload(cfg, p),
        "point": [
            [point.z.real, point.z.imag],
            [point.w.real, point.w.imag],
            [point.eta.real, point.eta.imag],
        ],
        "certified": bool(cert.certified),
        "residuals": {
            "variety": cert.variety_residual,
            "height": cert.height_residual,
            "boundary_in_T": cert.boundary_in_T_residual,
            "bidisc": cert.bidisc_excess,
        },
        "tolerance": cert.tolerance,
    }
    write_json(cfg.out / "report.json", payload)
    print("certified" if cert.certified else "not certified")
    return EXIT_OK if cert.certified else EXIT_FAIL


def run_disc_search(cfg: RunConfig) -> int:
    p = parse(cfg.symbol)
    spec = GraphSpec(cfg.height, p if cfg.height != "zero" else None)
    best = minimize_defect(
        cfg.winding, spec, K=cfg.K, restarts=cfg.restarts, seed=cfg.seed
    )
    payload = {
        "schema": SCHEMA,
        "config": _config_payload(cfg, p),
        "winding": list(cfg.winding),
        "K": cfg.K,
        "restarts": cfg.restarts,
        "best_defect": best.defect,
        "per_coordinate_defect": list(best.per_coordinate_defect),
        "converged": bool(best.converged),
        "iterations": best.iterations,
        "heuristic_search": True,
    }
    write_json(cfg.out / "report.json", payload)
    write_csv(
        cfg.out / "loops.csv",
        ("m", "n", "theta", "s", "t", "re_z", "im_z", "re_w", "im_w"),
        loop_csv_rows({cfg.winding: best}),
    )
    print(f"best defect: {best.defect:.3e}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        if cfg.command == "verify":
            return run_verify(cfg)
        if cfg.command == "jimbo":
            return run_jimbo(cfg)
        if cfg.command == "trace-variety":
            return run_trace_variety(cfg)
        if cfg.command == "certify":
            return run_certify(cfg)
        if cfg.command == "disc-search":
            return run_disc_search(cfg)
    except DegenerateSymbolError as exc:
        print(f"degenerate symbol: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except FactorizationError as exc:
        print(f"factorization failure: {exc}", file=sys.stderr)
        return EXIT_FACTORIZATION
    except LaurentSyntaxError as exc:
        print(f"symbol syntax error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    raise AssertionError(f"unhandled command {cfg.command}")


if __name__ == "__main__":
    sys.exit(main())
