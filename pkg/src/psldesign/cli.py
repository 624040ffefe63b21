"""Command line front end: scenario execution, metrics, and set generation.

Subcommands
-----------
run <scenario.json>       design a single sequence, write artifacts
gen-set <scenario.json>   design a waveform set, write artifacts
metrics <sequence.csv> --Q <q>   report metrics of a stored sequence

Common flags: --out-dir overrides the scenario output directory, --seed
replaces every integer seed in the scenario (random init, sketch).

Exit codes: 0 success (including non-converged runs, which are flagged in
the report), 2 validation or parse failure, 3 I/O failure, 4 internal
error.

Artifacts are byte-reproducible for a fixed scenario and platform; wall
clock timing goes to a separate timing.txt that is excluded from that
guarantee.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .chaos import ChaoticParams
from .core import ComplexSequence, autocorrelation, compute_metrics
from .mimo import GeneratedSet, generate_set, welch_audit
from .solver import (Constraint, DesignResult, InitSpec, SolverConfig, design,
                     with_seed_overrides)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


class ScenarioError(ValueError):
    """Scenario validation failure; carries the offending field name."""

    def __init__(self, fieldname: str, message: str):
        super().__init__(f"{fieldname}: {message}")
        self.fieldname = fieldname


def _fmt(value) -> str:
    """Deterministic decimal rendering with enough digits to round-trip."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


# ---------------------------------------------------------------------------
# Sequence files


def export_sequence(x, path) -> None:
    """Write a sequence as index,re,im rows with 17 significant digits."""
    seq = x if isinstance(x, ComplexSequence) else ComplexSequence(x)
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("index,re,im\n")
        for i, v in enumerate(seq.samples, start=1):
            fh.write(f"{i},{_fmt(v.real)},{_fmt(v.imag)}\n")


def import_sequence(path) -> ComplexSequence:
    """Read a sequence file written by export_sequence."""
    path = Path(path)
    with path.open("r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["index", "re", "im"]:
            raise ValueError(f"{path}: expected header 'index,re,im'")
        values = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns")
            re_v = float(row[1])
            im_v = float(row[2])
            if not (math.isfinite(re_v) and math.isfinite(im_v)):
                raise ValueError(f"{path}:{lineno}: non-finite sample")
            values.append(complex(re_v, im_v))
    if not values:
        raise ValueError(f"{path}: no data rows")
    return ComplexSequence(values)


# ---------------------------------------------------------------------------
# Scenario parsing


def _require(mapping: dict, fieldname: str, types, context: str = ""):
    label = f"{context}{fieldname}"
    if fieldname not in mapping:
        raise ScenarioError(label, "missing required field")
    value = mapping[fieldname]
    if not isinstance(value, types) or isinstance(value, bool):
        raise ScenarioError(label, f"expected {types}, got {type(value).__name__}")
    return value


def _parse_constraint(raw) -> Constraint:
    if raw is None:
        return Constraint()
    kind = _require(raw, "kind", str, "constraint.")
    if kind == "none":
        return Constraint()
    if kind == "unimodular":
        return Constraint(kind="unimodular")
    if kind == "papr":
        a = _require(raw, "a", (int, float), "constraint.")
        try:
            return Constraint(kind="papr", a=float(a))
        except ValueError as err:
            raise ScenarioError("constraint.a", str(err)) from err
    raise ScenarioError("constraint.kind", f"unknown kind {kind!r}")


def _parse_init(raw, base_dir: Path) -> InitSpec:
    kind = _require(raw, "kind", str, "init.")
    try:
        if kind in ("golomb", "chu", "barker13"):
            return InitSpec(kind=kind)
        if kind == "random":
            return InitSpec(kind="random", seed=_require(raw, "seed", int, "init."))
        if kind == "modified_bernoulli":
            params = ChaoticParams(
                variant="modified",
                x0=float(_require(raw, "x0", (int, float), "init.")),
                A=float(raw.get("A", 1.0)),
                B=float(raw.get("B", 1.9)),
                burn_in=int(raw.get("burn_in", 128)),
            )
            return InitSpec(kind="modified_bernoulli", params=params,
                            encoding=raw.get("encoding", "raw"))
        if kind == "explicit":
            rel = _require(raw, "path", str, "init.")
            return InitSpec(kind="explicit",
                            sequence=import_sequence(base_dir / rel))
    except ScenarioError:
        raise
    except (ValueError, OSError) as err:
        raise ScenarioError("init", str(err)) from err
    raise ScenarioError("init.kind", f"unknown kind {kind!r}")


def parse_scenario(path) -> dict:
    """Load and validate a scenario file into config objects."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ScenarioError("scenario", f"invalid JSON: {err}") from err
    name = _require(raw, "name", str)
    mode = raw.get("mode", "design")
    if mode not in ("design", "set"):
        raise ScenarioError("mode", f"unknown mode {mode!r}")
    algorithm = _require(raw, "algorithm", str)
    n = _require(raw, "N", int)
    q = _require(raw, "Q", int)
    init = _parse_init(_require(raw, "init", dict), path.parent)
    sketch = raw.get("sketch")
    sketch_s = sketch_seed = None
    if sketch is not None:
        sketch_s = _require(sketch, "S", int, "sketch.")
        sketch_seed = _require(sketch, "seed", int, "sketch.")
    try:
        config = SolverConfig(
            algorithm=algorithm, N=n, Q=q, init=init,
            epsilon=float(raw.get("epsilon", 1e-12)),
            max_iterations=int(raw.get("max_iterations", 10000)),
            constraint=_parse_constraint(raw.get("constraint")),
            qp_delta=float(raw.get("qp_delta", 1e-9)),
            sketch_s=sketch_s, sketch_seed=sketch_seed,
        )
    except ValueError as err:
        raise ScenarioError("scenario", str(err)) from err
    out = {"name": name, "mode": mode, "config": config,
           "out_dir": raw.get("out_dir")}
    if mode == "set":
        set_raw = _require(raw, "set", dict)
        out["set_m"] = _require(set_raw, "M", int, "set.")
        seeds = _require(set_raw, "seeds", list, "set.")
        if not all(isinstance(s, (int, float)) and not isinstance(s, bool)
                   for s in seeds):
            raise ScenarioError("set.seeds", "seeds must be numbers")
        out["set_seeds"] = [float(s) for s in seeds]
    return out


# ---------------------------------------------------------------------------
# Report writers


def _echo_config(config: SolverConfig, lines: list) -> None:
    lines.append("config:")
    lines.append(f"  algorithm: {config.algorithm}")
    lines.append(f"  N: {config.N}")
    lines.append(f"  Q: {config.Q}")
    lines.append(f"  epsilon: {_fmt(config.epsilon)}")
    lines.append(f"  max_iterations: {config.max_iterations}")
    lines.append(f"  constraint: {config.constraint.kind}")
    if config.constraint.kind == "papr":
        lines.append(f"  papr_a: {_fmt(config.constraint.a)}")
    if config.algorithm == "PMQA":
        lines.append(f"  qp_delta: {_fmt(config.qp_delta)}")
    if config.algorithm == "RPOCA":
        lines.append(f"  sketch_s: {config.sketch_s}")
        lines.append(f"  sketch_seed: {config.sketch_seed}")
    init = config.init
    lines.append(f"  init: {init.kind}")
    if init.kind == "random":
        lines.append(f"  init_seed: {init.seed}")
    if init.kind == "modified_bernoulli":
        p = init.params
        lines.append(f"  init_x0: {_fmt(p.x0)}")
        lines.append(f"  init_A: {_fmt(p.A)}")
        lines.append(f"  init_B: {_fmt(p.B)}")
        lines.append(f"  init_burn_in: {p.burn_in}")
        lines.append(f"  init_encoding: {init.encoding}")


def _metrics_lines(metrics, lines: list, indent: str = "") -> None:
    lines.append(f"{indent}metrics:")
    lines.append(f"{indent}  psl: {_fmt(metrics.psl)}")
    lines.append(f"{indent}  isl: {_fmt(metrics.isl)}")
    lines.append(f"{indent}  pcl_db: {_fmt(metrics.pcl_db)}")
    lines.append(f"{indent}  mmf: {_fmt(metrics.mmf)}")
    lines.append(f"{indent}  mpcl: {_fmt(metrics.mpcl)}")
    lines.append(f"{indent}  Q: {metrics.q}")


def _write_lag_table(metrics, path: Path) -> None:
    with path.open("w", newline="") as fh:
        fh.write("lag,db\n")
        for lag, db in metrics.normalized_autocorr_db:
            fh.write(f"{lag},{_fmt(db)}\n")


def _write_trace(result: DesignResult, path: Path) -> None:
    with path.open("w", newline="") as fh:
        fh.write("iteration,psl,isl,mpcl,delta_inf\n")
        for i, entry in enumerate(result.trace, start=1):
            fh.write(f"{i},{_fmt(entry.psl)},{_fmt(entry.isl)},"
                     f"{_fmt(entry.mpcl)},{_fmt(entry.delta)}\n")


def _write_design_artifacts(name: str, config: SolverConfig,
                            result: DesignResult, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    export_sequence(result.sequence, out_dir / "sequence.csv")
    _write_lag_table(result.metrics, out_dir / "lags.csv")
    _write_trace(result, out_dir / "trace.csv")
    lines = [f"scenario: {name}"]
    _echo_config(config, lines)
    lines.append("result:")
    lines.append(f"  converged: {_fmt(result.converged)}")
    if not result.converged:
        lines.append("  warning: iteration cap reached before the stop rule")
    lines.append(f"  iterations: {result.iterations_used}")
    lines.append(f"  psl_initial: {_fmt(result.psl_initial)}")
    _metrics_lines(result.metrics, lines)
    (out_dir / "metrics.txt").write_text("\n".join(lines) + "\n")


def _write_set_artifacts(name: str, config: SolverConfig, gen: GeneratedSet,
                         out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for idx, member in enumerate(gen.waveforms.members, start=1):
        export_sequence(member, out_dir / f"member_{idx:02d}.csv")
    lines = [f"scenario: {name}"]
    _echo_config(config, lines)
    lines.append("set:")
    lines.append(f"  M: {gen.waveforms.M}")
    lines.append(f"  N: {gen.waveforms.N}")
    lines.append("ccp:")
    lines.append(f"  mean: {_fmt(gen.stats.mean)}")
    lines.append(f"  max: {_fmt(gen.stats.max)}")
    lines.append(f"  min: {_fmt(gen.stats.min)}")
    lines.append(f"  mean_db: {_fmt(gen.stats.mean_db)}")
    lines.append(f"  max_db: {_fmt(gen.stats.max_db)}")
    lines.append(f"  pre_solver_ccp_mean: {_fmt(gen.pre_solver_ccp_mean)}")
    lines.append(f"  post_solver_ccp_mean: {_fmt(gen.post_solver_ccp_mean)}")
    audit = welch_audit(gen.waveforms,
                        unimodular=config.constraint.kind == "unimodular")
    lines.append("welch_audit:")
    lines.append(f"  unimodular: {_fmt(audit.unimodular)}")
    lines.append(f"  c_max: {_fmt(audit.c_max)}")
    lines.append(f"  bound: {_fmt(audit.bound)}")
    lines.append(f"  ratio: {_fmt(audit.ratio)}")
    for idx, (result, metrics) in enumerate(zip(gen.results, gen.member_metrics),
                                            start=1):
        lines.append(f"member_{idx:02d}:")
        lines.append(f"  converged: {_fmt(result.converged)}")
        lines.append(f"  iterations: {result.iterations_used}")
        _metrics_lines(metrics, lines, indent="  ")
    (out_dir / "set_metrics.txt").write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Commands


def _cmd_run(args) -> int:
    scenario = parse_scenario(args.scenario)
    if scenario["mode"] != "design":
        raise ScenarioError("mode", "run expects a design scenario")
    config = scenario["config"]
    if args.seed is not None:
        config = with_seed_overrides(config, args.seed)
    out_dir = Path(args.out_dir or scenario["out_dir"] or f"out/{scenario['name']}")
    started = time.perf_counter()
    result = design(config)
    elapsed = time.perf_counter() - started
    _write_design_artifacts(scenario["name"], config, result, out_dir)
    (out_dir / "timing.txt").write_text(f"wall_seconds: {elapsed:.3f}\n")
    print(f"{scenario['name']}: converged={result.converged} "
          f"iterations={result.iterations_used} mpcl={result.metrics.mpcl:.3e} "
          f"-> {out_dir}")
    return EXIT_OK


def _cmd_gen_set(args) -> int:
    scenario = parse_scenario(args.scenario)
    if scenario["mode"] != "set":
        raise ScenarioError("mode", "gen-set expects a set scenario")
    config = scenario["config"]
    if args.seed is not None:
        config = with_seed_overrides(config, args.seed)
    out_dir = Path(args.out_dir or scenario["out_dir"] or f"out/{scenario['name']}")
    started = time.perf_counter()
    try:
        gen = generate_set(scenario["set_m"], config.N, config.Q, config,
                           scenario["set_seeds"])
    except ValueError as err:
        raise ScenarioError("set", str(err)) from err
    elapsed = time.perf_counter() - started
    _write_set_artifacts(scenario["name"], config, gen, out_dir)
    (out_dir / "timing.txt").write_text(f"wall_seconds: {elapsed:.3f}\n")
    print(f"{scenario['name']}: M={gen.waveforms.M} mean_ccp={gen.stats.mean:.4g} "
          f"-> {out_dir}")
    return EXIT_OK


def _cmd_metrics(args) -> int:
    seq = import_sequence(args.sequence)
    try:
        metrics = compute_metrics(autocorrelation(seq), args.Q)
    except ValueError as err:
        raise ScenarioError("Q", str(err)) from err
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"sequence: {args.sequence}", f"N: {len(seq)}"]
    _metrics_lines(metrics, lines)
    (out_dir / "metrics.txt").write_text("\n".join(lines) + "\n")
    _write_lag_table(metrics, out_dir / "lags.csv")
    print(f"N={len(seq)} psl={metrics.psl:.6g} pcl_db={metrics.pcl_db:.4f} "
          f"mpcl={metrics.mpcl:.3e} -> {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psldesign",
        description="Design sequences with minimum autocorrelation peak "
                    "side-lobe level and chaotic MIMO waveform sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a design scenario")
    p_run.add_argument("scenario")
    p_run.add_argument("--out-dir", default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_set = sub.add_parser("gen-set", help="execute a waveform-set scenario")
    p_set.add_argument("scenario")
    p_set.add_argument("--out-dir", default=None)
    p_set.add_argument("--seed", type=int, default=None)
    p_set.set_defaults(func=_cmd_gen_set)

    p_met = sub.add_parser("metrics", help="metrics of a stored sequence")
    p_met.add_argument("sequence")
    p_met.add_argument("--Q", type=int, required=True)
    p_met.add_argument("--out-dir", default=None)
    p_met.set_defaults(func=_cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as err:
        print(f"error: validation: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as err:
        print(f"error: validation: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: io: {err}", file=sys.stderr)
        return EXIT_IO
    except Exception as err:  # pragma: no cover - defensive
        print(f"error: internal: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
