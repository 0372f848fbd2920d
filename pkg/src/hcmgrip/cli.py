"""Command-line front end: ``hcmgrip analyze | sweep | grasp-check | optimize | selftest``."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .buckling import span
from .config import (
    MM,
    ConfigError,
    RunConfig,
    dump_config,
    load_config,
    object_from_section,
    parse_config_text,
)
from .design import (
    Constraints,
    Objective,
    ParamRange,
    evaluate,
    grid,
    objective_value,
    optimize,
    sweep,
)
from .grasp import GripperForces, grasp_feasibility
from .reference import load_reference_objects, reference_config_text
from .report import (
    analyze,
    fmt,
    grasp_json,
    render_analysis_csv,
    render_analysis_json,
    render_analysis_text,
    resolve_precision,
    sweep_csv,
    write_atomic,
)
from . import selftest as _selftest

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_COMPUTE = 4
EXIT_SELFTEST = 5
EXIT_OUTPUT = 6

BUNDLED_CONFIG = "@reference"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str) -> RunConfig:
    if path == BUNDLED_CONFIG:
        return parse_config_text(reference_config_text(), source="reference_design.cfg")
    return load_config(path)


def _compute(what: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ConfigError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise CliError(f"computation failed in {what}: {exc}", EXIT_COMPUTE) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            write_atomic(out, text)
        except OSError as exc:
            raise CliError(f"cannot write {out!r}: {exc.strerror or exc}", EXIT_OUTPUT) from None
    else:
        sys.stdout.write(text)


# -- analyze -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    cfg = _load(args.config)
    if args.dump_config:
        _emit(dump_config(cfg), args.out)
        return EXIT_OK
    precision = resolve_precision(cfg)
    report = _compute("analyze", analyze, cfg)
    fmt_name = args.format or cfg.output.format
    if fmt_name == "json":
        text = render_analysis_json(report)
    elif fmt_name == "csv":
        text = render_analysis_csv(report, precision)
    else:
        text = render_analysis_text(report, precision)
    _emit(text, args.out or cfg.output.path or None)
    return EXIT_OK


# -- sweep -------------------------------------------------------------------

def cmd_sweep(args) -> int:
    cfg = _load(args.config)
    precision = resolve_precision(cfg)
    if args.steps < 1:
        raise CliError("--steps must be >= 1", EXIT_USAGE)
    if not args.to > args.from_:
        raise CliError("--to must be greater than --from", EXIT_USAGE)
    space = cfg.build_space()
    if space.ranged:
        raise ConfigError(f"sweep needs single-valued parameters in the config, "
                          f"but {', '.join(space.ranged)} are ranges")
    space = space.with_range(args.vary, ParamRange(args.from_ * MM, args.to * MM, args.steps))
    table = _compute("sweep", sweep, space, args.vary, args.steps)
    _emit(sweep_csv(table, precision), args.out or cfg.output.path or None)
    return EXIT_OK


# -- grasp-check -------------------------------------------------------------

def _resolve_object(cfg: RunConfig, spec: str | None):
    dataset = load_reference_objects()
    if spec is None:
        if cfg.object is None:
            raise ConfigError("no [object] section in the config and no --object given")
        return cfg.object, cfg.forces, None
    if spec in dataset:
        return dataset[spec].section, cfg.forces, dataset[spec]
    path = Path(spec)
    if path.suffix or path.exists():
        obj_cfg = load_config(path)
        if obj_cfg.object is None:
            raise ConfigError(f"{spec}: no [object] section")
        forces = obj_cfg.forces
        merged = replace(cfg.forces, **{k: v for k, v in vars(forces).items() if v is not None})
        return obj_cfg.object, merged, None
    raise ConfigError(
        f"unknown object {spec!r}; dataset keys: {', '.join(sorted(dataset))}"
    )


def cmd_grasp_check(args) -> int:
    if args.list_objects:
        for key, ref in sorted(load_reference_objects().items()):
            sys.stdout.write(f"{key}\t{ref.kind}\t{ref.label}\t{ref.force_citation()}\n")
        return EXIT_OK
    cfg = _load(args.config)
    section, forces_cfg, ref = _resolve_object(cfg, args.object)
    try:
        obj = object_from_section(section)
    except ValueError as exc:
        raise ConfigError(f"[object] {exc}") from None

    if forces_cfg.pinch_N is not None:
        pinch, pinch_src = forces_cfg.pinch_N, "config"
    elif ref is not None:
        pinch = ref.representative_force_N
        pinch_src = f"dataset {ref.key}: midpoint of {ref.force_citation()}"
    else:
        raise ConfigError("[forces] pinch_N is required when the object is not a dataset key")
    peak, peak_src = ((forces_cfg.peak_N, "config") if forces_cfg.peak_N is not None
                      else (pinch, "default: equal to pinch force"))
    normal, normal_src = ((forces_cfg.normal_N, "config") if forces_cfg.normal_N is not None
                          else (pinch, "default: equal to pinch force"))
    try:
        forces = GripperForces(pinch, peak, normal)
    except ValueError as exc:
        raise ConfigError(f"[forces] {exc}") from None

    material, geometry = cfg.build_material(), cfg.build_geometry()
    state = _compute("span", span, cfg.build_assembly(), material, geometry, cfg.build_mode())
    report = _compute("grasp_feasibility", grasp_feasibility, state, forces, obj)
    forces_doc = {
        "pinch_force_N": {"value": pinch, "source": pinch_src},
        "peak_force_N": {"value": peak, "source": peak_src},
        "normal_force_N": {"value": normal, "source": normal_src},
    }
    _emit(grasp_json(report, forces_doc, state.span_W), args.out)
    return EXIT_OK


# -- optimize ----------------------------------------------------------------

def _describe(point, precision: int) -> list:
    f = lambda v: fmt(v, precision)
    s, m = point.state, point.metrics
    return [
        f"  D = {f(point.D * 1e3)} mm, t = {f(point.t * 1e3)} mm, "
        f"h = {f(point.h * 1e3)} mm, l = {f(point.l * 1e3)} mm",
        f"  W_tilted = {f(s.span_W * 1e3)} mm, W_untilted = {f(s.span_untilted * 1e3)} mm",
        f"  Pcr = {f(s.critical_load_Pcr)} N, t_star = {f(m.snap_time * 1e3)} ms, "
        f"U_barr = {f(m.energy_barrier)} J",
        f"  fatigue (ADVISORY) = {f(point.fatigue.cycles)} cycles",
    ]


def _constraints(cfg: RunConfig, args) -> Constraints:
    base = cfg.build_constraints()
    overrides = {
        "min_span": None if args.min_span is None else args.min_span * MM,
        "max_snap_time": None if args.max_snap_time is None else args.max_snap_time * 1e-3,
        "max_Pcr": args.max_pcr,
        "max_energy_barrier": args.max_energy_barrier,
        "min_fatigue_cycles": args.min_fatigue_cycles,
    }
    try:
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def exhaustive_winner(space, constraints: Constraints, objective: Objective):
    """Brute-force enumeration of the grid; returns (winner, rows)."""
    rows = []
    winner, best = None, math.inf
    for D, t, h, l in grid(space):
        try:
            p = evaluate(space, D, t, h, l)
        except (ValueError, ArithmeticError):
            rows.append(((D, t, h, l), None, False, math.inf))
            continue
        ok = not constraints.violations(p)
        score = objective_value(p, objective) if ok else math.inf
        rows.append(((D, t, h, l), p, ok, score))
        if ok and score < best:
            winner, best = p, score
    return winner, rows


def cmd_optimize(args) -> int:
    cfg = _load(args.config)
    precision = resolve_precision(cfg)
    space = cfg.build_space()
    constraints = _constraints(cfg, args)
    objective = Objective(args.objective)
    result = _compute("optimize", optimize, space, constraints, objective, not args.no_refine)
    lines = [f"objective: {objective.value}",
             f"constraints: {constraints.active() or 'none'}",
             f"evaluations: {result.evaluated}"]
    if result.feasible:
        lines.append("best design:")
        lines += _describe(result.point, precision)
        if result.point is not result.grid_winner:
            lines.append("grid winner (before refinement):")
            lines += _describe(result.grid_winner, precision)
    else:
        lines.append("INFEASIBLE: no grid point satisfies the constraints")
        lines.append(f"  binding constraints: {', '.join(result.binding) or 'none'}")
        for name, count in result.violation_counts.items():
            lines.append(f"  {name}: violated at {count} grid points")
    if args.exhaustive:
        winner, rows = exhaustive_winner(space, constraints, objective)
        lines.append("exhaustive enumeration:")
        lines.append("  D_mm t_mm h_mm l_mm feasible score")
        for (D, t, h, l), _, ok, score in rows:
            lines.append(f"  {fmt(D * 1e3, precision)} {fmt(t * 1e3, precision)} "
                         f"{fmt(h * 1e3, precision)} {fmt(l * 1e3, precision)} "
                         f"{'yes' if ok else 'no'} {fmt(score, precision)}")
        if winner is None:
            lines.append("exhaustive winner: none")
        else:
            lines.append("exhaustive winner:")
            lines += _describe(winner, precision)
        same = (winner is None and result.grid_winner is None) or (
            winner is not None and result.grid_winner is not None
            and winner.params() == result.grid_winner.params())
        lines.append(f"grid winner matches exhaustive winner: {'yes' if same else 'no'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- selftest ----------------------------------------------------------------

def cmd_selftest(args) -> int:
    cases = _selftest.run()
    failed = 0
    for c in cases:
        sys.stdout.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}\n")
        failed += not c.passed
    sys.stdout.write(f"{len(cases) - failed}/{len(cases)} passed\n")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcmgrip",
        description="Design and analysis of prestressed bistable gripper fingers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    cfg_help = f"run configuration file ({BUNDLED_CONFIG} for the bundled example)"

    p = sub.add_parser("analyze", help="evaluate one design")
    p.add_argument("config", help=cfg_help)
    p.add_argument("--format", choices=("text", "csv", "json"))
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--dump-config", action="store_true",
                   help="print the parsed config in canonical form and exit")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="tabulate the design along one parameter (CSV)")
    p.add_argument("config", help=cfg_help)
    p.add_argument("--vary", required=True, choices=("D", "t", "h", "l"))
    p.add_argument("--from", dest="from_", type=float, required=True, help="start, mm")
    p.add_argument("--to", type=float, required=True, help="end, mm")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("grasp-check", help="grasp feasibility of one object (JSON)")
    p.add_argument("config", nargs="?", default=BUNDLED_CONFIG, help=cfg_help)
    p.add_argument("--object", help="object file with an [object] section, or a dataset key")
    p.add_argument("--list-objects", action="store_true", help="list dataset keys and exit")
    p.add_argument("--out", help="JSON file (default: stdout)")
    p.set_defaults(func=cmd_grasp_check)

    p = sub.add_parser("optimize", help="constrained grid-then-refine design search")
    p.add_argument("config", help=cfg_help)
    p.add_argument("--objective", required=True, choices=[o.value for o in Objective])
    p.add_argument("--min-span", type=float, help="mm")
    p.add_argument("--max-snap-time", type=float, help="ms")
    p.add_argument("--max-pcr", type=float, help="N")
    p.add_argument("--max-energy-barrier", type=float, help="J")
    p.add_argument("--min-fatigue-cycles", type=float)
    p.add_argument("--no-refine", action="store_true", help="skip the local refinement")
    p.add_argument("--exhaustive", action="store_true",
                   help="also print the brute-force grid enumeration")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("selftest", help="run the bundled oracle comparisons")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"hcmgrip: config error: {exc}\n")
        return EXIT_PARSE
    except CliError as exc:
        sys.stderr.write(f"hcmgrip: {exc}\n")
        return exc.code
    except ValueError as exc:  # e.g. bad HCMGRIP_PRECISION
        sys.stderr.write(f"hcmgrip: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
