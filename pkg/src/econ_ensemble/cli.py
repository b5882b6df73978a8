"""Command-line front end.

    econ-ensemble <observables|sweep|enumerate|equilibrate|optimize-dos|validate>
                  --scenario <path> [--out <dir>] [--svg] [--verbose]

A thin client over the handler layer (the same layer the HTTP service
exposes).  Exit codes: 0 success, 1 input/validation error, 2 numerical
failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import handlers
from .errors import EconEnsembleError, InputError, NumericalError
from .schemas import Scenario
from .serialize import sweep_csv, to_json
from .svgplot import line_chart
from .variational import optimal_dos_profile, optimal_volume_profile

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2


def _load_scenario(path: str) -> Scenario:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read scenario {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"invalid scenario: {exc}") from exc


def _write(out_dir: Path, name: str, content: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(content)


def _model_json(model) -> str:
    return to_json(model.model_dump(exclude_none=False))


def _cmd_observables(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    result = handlers.run_observables(sc, verbose=verbose)
    dump = result.model_dump()
    if not verbose:
        dump.pop("p_derivation_signed")
    _write(out, "result.json", to_json(dump))


def _cmd_sweep(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    result = handlers.run_sweep(sc)
    _write(out, "sweep.csv",
           sweep_csv([(m.T, m.ln_z, m.U, m.N, m.p) for m in result.rows]))
    if svg:
        temps = [m.T for m in result.rows]
        for field, label in (("ln_z", "ln Z"), ("U", "U"), ("N", "N"),
                             ("p", "p")):
            ys = [getattr(m, field) for m in result.rows]
            _write(out, f"fig_{field}.svg",
                   line_chart(temps, ys, "T", label,
                              f"{label} vs economic temperature"))


def _cmd_enumerate(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    _write(out, "result.json", _model_json(handlers.run_enumerate(sc)))


def _cmd_equilibrate(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    result = handlers.run_equilibrate(sc, verbose=verbose)
    dump = result.model_dump()
    if not verbose:
        dump.pop("splits")
    _write(out, "result.json", to_json(dump))


def _cmd_optimize_dos(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    result = handlers.run_optimize(sc)
    _write(out, "result.json", _model_json(result))
    if svg:
        opt = sc.optimize
        lo, hi = opt.svg_range if opt.svg_range is not None else (
            opt.residual_grid.min, opt.residual_grid.max)
        vp = optimal_volume_profile(opt.c1, opt.c2, opt.alpha, opt.beta)
        gp = optimal_dos_profile(opt.c3, opt.c4, opt.alpha, opt.beta)
        step = (hi - lo) / (opt.svg_points - 1)
        xs = [lo + i * step for i in range(opt.svg_points)]
        _write(out, "fig_V.svg",
               line_chart(xs, [vp.value(x) for x in xs], "eps", "V(eps)",
                          "Optimal economic volume profile"))
        _write(out, "fig_g.svg",
               line_chart(xs, [gp.base_value(x) for x in xs], "eps", "g(eps)",
                          "Pressure-maximizing density of states"))


def _cmd_validate(sc: Scenario, out: Path, svg: bool, verbose: bool) -> None:
    _write(out, "result.json", _model_json(handlers.run_validate(sc)))


_COMMANDS = {
    "observables": _cmd_observables,
    "sweep": _cmd_sweep,
    "enumerate": _cmd_enumerate,
    "equilibrate": _cmd_equilibrate,
    "optimize-dos": _cmd_optimize_dos,
    "validate": _cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="econ-ensemble",
        description="Equilibrium-ensemble observables for economic systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=True, help="path to scenario JSON")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--svg", action="store_true", help="emit SVG figures")
        p.add_argument("--verbose", action="store_true",
                       help="include diagnostic fields in the output")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _load_scenario(args.scenario)
        _COMMANDS[args.command](scenario, Path(args.out), args.svg, args.verbose)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except EconEnsembleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
