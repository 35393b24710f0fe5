"""Batch front-end: parse a run-configuration file, execute verification
suites or solves, and write reports plus plot-ready CSV artifacts.

The configuration format is a flat, line-oriented ``key = value`` file with
``[section]`` headers and ``#`` comments::

    mode = verify            # verify | iterate | solve-bvp
    seed = 42                # unsigned 64-bit; --seed overrides
    out = reports            # output directory; --out overrides

    [carrier]                # verify mode
    kind = interval          # interval | grid
    low = 0.0                # sampling window for carrier elements
    high = 3.0

    [bundle]                 # verify mode
    name = example31         # example31 | bvp
    lambda = 0.889           # optional: replace zeta with zeta1(lambda)
    k = 2.0                  # optional, with r: replace G with cclass_c(k, r)
    r = 2.0
    beta = half              # optional: reciprocal | half | <value in [0, 1)>

    [verify]
    pair_grid = 101          # per-axis pair mesh (interval carrier)
    random_pairs = 100       # seeded random pairs

    [picard]                 # iterate + solve-bvp
    tolerance = 1e-10
    max_iterations = 500
    divergence_bound = 1e9

    [iterate]
    map = example31          # example31 | affine:a:b
    start = 1.0

    [bvp]                    # solve-bvp mode, and verify with kind = grid
    rhs = pi2sin             # zero | const:c | pi2sin | sin_plus_one | expr:...
    n = 100
    tolerance = 1e-8

    [order]                  # optional alpha override for verify
    name = natural           # natural | pointwise

Artifacts: ``report.txt`` and ``report.csv`` always; ``trace.csv`` for
iterate and solve-bvp; ``solution.csv`` for solve-bvp. Outputs are byte
deterministic for a fixed config and seed. Exit status 0 means every
requested check passed and every solve converged; nonzero encodes the first
failure class (1 check failure, 2 non-convergence, 3 usage error,
4 carrier/bundle validation error).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import builtins as catalog
from .bvp import BVPProblem, BVPSolution, check_operator_contraction, solve_bvp
from .errors import DomainError
from .framework import (GRID_EPS, SCALAR_EPS, ContractionBundle,
                        check_alpha_admissible, check_cclass, check_geraghty,
                        check_simulation_pointwise, check_simulation_sequences,
                        check_triangular_alpha, verify_contraction)
from .metrics import save_grid_csv, scalar_metric, sup_metric
from .picard import CONVERGED, IterationTrace, PicardConfig, picard_iterate
from .posets import alpha_from_order, order_by_name
from .report import (CAVEAT, FAIL, VerificationReport, render_text,
                     write_report_csv, CSV_HEADER)
from .sampling import (mesh_pairs, positive_mesh_pairs, random_grid_pairs,
                       random_pairs, random_positive_pairs, random_triples,
                       seeded_rng)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_USAGE = 3
EXIT_VALIDATION = 4


class ConfigError(ValueError):
    """Configuration problem, carrying the source line when known."""


class ValidationError(ValueError):
    """Consistent config that requests an impossible combination."""


@dataclass
class RunConfig:
    mode: str = ""
    seed: int = 42
    out: str = "reports"
    carrier_kind: str = "interval"
    carrier_low: float = 0.0
    carrier_high: float = 3.0
    bundle_name: str = "example31"
    bundle_lambda: Optional[float] = None
    bundle_k: Optional[float] = None
    bundle_r: Optional[float] = None
    bundle_beta: Optional[str] = None
    pair_grid: int = 101
    random_pairs: int = 100
    tolerance: float = 1e-10
    max_iterations: int = 500
    divergence_bound: float = 1e9
    map_spec: str = "example31"
    start: float = 1.0
    rhs: str = "pi2sin"
    bvp_n: int = 100
    bvp_tolerance: float = 1e-8
    order_name: Optional[str] = None


def _convert(raw: str, kind: type, line: int, key: str):
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"line {line}: field {key!r} needs a {kind.__name__}, "
                          f"got {raw!r}") from exc


# (section, key) -> (RunConfig attribute, type)
_FIELDS = {
    ("", "mode"): ("mode", str),
    ("", "seed"): ("seed", int),
    ("", "out"): ("out", str),
    ("carrier", "kind"): ("carrier_kind", str),
    ("carrier", "low"): ("carrier_low", float),
    ("carrier", "high"): ("carrier_high", float),
    ("bundle", "name"): ("bundle_name", str),
    ("bundle", "lambda"): ("bundle_lambda", float),
    ("bundle", "k"): ("bundle_k", float),
    ("bundle", "r"): ("bundle_r", float),
    ("bundle", "beta"): ("bundle_beta", str),
    ("verify", "pair_grid"): ("pair_grid", int),
    ("verify", "random_pairs"): ("random_pairs", int),
    ("picard", "tolerance"): ("tolerance", float),
    ("picard", "max_iterations"): ("max_iterations", int),
    ("picard", "divergence_bound"): ("divergence_bound", float),
    ("iterate", "map"): ("map_spec", str),
    ("iterate", "start"): ("start", float),
    ("bvp", "rhs"): ("rhs", str),
    ("bvp", "n"): ("bvp_n", int),
    ("bvp", "tolerance"): ("bvp_tolerance", float),
    ("order", "name"): ("order_name", str),
}

_MODES = ("verify", "iterate", "solve-bvp")


# sections that must be spelled out per mode; everything else has defaults
_REQUIRED_SECTIONS = {
    "verify": ("carrier", "bundle"),
    "iterate": ("iterate",),
    "solve-bvp": ("bvp",),
}


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    config = RunConfig()
    section = ""
    saw_mode = False
    seen_sections: set[str] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in {s for s, _ in _FIELDS if s}:
                raise ConfigError(f"{source}: line {lineno}: unknown section [{section}]")
            seen_sections.add(section)
            continue
        if "=" not in line:
            raise ConfigError(f"{source}: line {lineno}: expected 'key = value', got {raw_line!r}")
        key, raw_value = (part.strip() for part in line.split("=", 1))
        field = _FIELDS.get((section, key))
        if field is None:
            where = f"[{section}] " if section else ""
            raise ConfigError(f"{source}: line {lineno}: unknown field {where}{key!r}")
        attr, kind = field
        value = _convert(raw_value, kind, lineno, key)
        setattr(config, attr, value)
        if attr == "mode":
            saw_mode = True
    if not saw_mode:
        raise ConfigError(f"{source}: missing required field 'mode'")
    if config.mode not in _MODES:
        raise ConfigError(f"{source}: mode must be one of {', '.join(_MODES)}, "
                          f"got {config.mode!r}")
    if not 0 <= config.seed < 2 ** 64:
        raise ConfigError(f"{source}: seed must be an unsigned 64-bit integer")
    required = list(_REQUIRED_SECTIONS[config.mode])
    if config.mode == "verify" and config.carrier_kind == "grid":
        required.append("bvp")
    missing = [name for name in required if name not in seen_sections]
    if missing:
        raise ConfigError(f"{source}: mode {config.mode!r} needs the "
                          f"section(s) {', '.join('[' + m + ']' for m in missing)}")
    return config


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=str(path))


# --------------------------------------------------------------------------
# mode runners

def _build_problem(config: RunConfig) -> BVPProblem:
    rhs, rhs_name = catalog.rhs_by_name(config.rhs)
    return BVPProblem(rhs=rhs, n=config.bvp_n, tolerance=config.bvp_tolerance,
                      name=rhs_name)


def _build_bundle(config: RunConfig, problem: BVPProblem | None) -> ContractionBundle:
    if config.bundle_name == "bvp" and config.carrier_kind != "grid":
        raise ValidationError("the bvp bundle needs the grid carrier")
    if config.bundle_name == "example31" and config.carrier_kind != "interval":
        raise ValidationError("the example31 bundle needs the interval carrier")
    bundle = catalog.bundle_by_name(config.bundle_name, problem)
    if config.bundle_lambda is not None:
        bundle = replace(bundle, zeta=catalog.zeta1(config.bundle_lambda))
    if (config.bundle_k is None) != (config.bundle_r is None):
        raise ValidationError("C-class overrides need both k and r")
    if config.bundle_k is not None:
        bundle = replace(bundle, g=catalog.cclass_c(config.bundle_k, config.bundle_r))
    if config.bundle_beta is not None:
        if config.bundle_beta == "reciprocal":
            beta = catalog.beta_reciprocal()
        elif config.bundle_beta == "half":
            beta = catalog.beta_constant(0.5)
        else:
            try:
                beta = catalog.beta_constant(float(config.bundle_beta))
            except ValueError as exc:
                raise ValidationError(f"unknown beta choice {config.bundle_beta!r}") from exc
        bundle = replace(bundle, beta=beta)
    if config.order_name is not None:
        order = order_by_name(config.order_name)
        if config.carrier_kind == "grid" and order.name == "natural":
            raise ValidationError("the natural order needs the interval carrier")
        if config.carrier_kind == "interval" and order.name == "pointwise":
            raise ValidationError("the pointwise order needs the grid carrier")
        bundle = replace(bundle, alpha=alpha_from_order(order))
    return bundle


def _header_lines(config: RunConfig, extra: Sequence[str] = ()) -> list[str]:
    lines = [
        "picardkit run report",
        f"mode: {config.mode}",
        f"seed: {config.seed}",
    ]
    lines.extend(extra)
    return lines


def _rows_with_caveats(reports: Sequence[VerificationReport],
                       bundle: ContractionBundle) -> tuple[list[VerificationReport], int]:
    """Apply declared bundle caveats: a failing check the bundle vouches for
    is reported with status 'caveat' (witnesses preserved) and does not
    count toward the exit status."""
    adjusted = []
    failures = 0
    for rep in reports:
        note = bundle.caveat_for(rep.name)
        if rep.status == FAIL and note is not None:
            adjusted.append(replace(rep.canonical(), status=CAVEAT,
                                    notes=rep.notes + (f"declared caveat: {note}",)))
        else:
            if rep.status == FAIL:
                failures += 1
            adjusted.append(rep.canonical())
    return adjusted, failures


def _run_verify(config: RunConfig, out: Path, rng: np.random.Generator) -> int:
    problem = _build_problem(config) if config.carrier_kind == "grid" else None
    bundle = _build_bundle(config, problem)

    zeta_samples = ([(0.0, 0.0)]
                    + positive_mesh_pairs(per_axis=40)
                    + random_positive_pairs(rng, 100))
    axis = np.linspace(0.0, 10.0, 41)
    cclass_samples = ([(float(s), float(t)) for s in axis for t in axis[::8]]
                      + random_positive_pairs(rng, 100))
    beta_samples = [float(t) for t in axis] + [float(v) for v in rng.uniform(0.0, 10.0, 50)]
    probes_mode = bundle.zeta.sequence_axiom

    if config.carrier_kind == "interval":
        metric = scalar_metric
        tol = SCALAR_EPS
        pairs = (mesh_pairs(config.carrier_low, config.carrier_high, config.pair_grid)
                 + random_pairs(rng, config.random_pairs, config.carrier_low,
                                config.carrier_high))
        triples = random_triples(rng, 200, config.carrier_low, config.carrier_high)
    elif config.carrier_kind == "grid":
        metric = sup_metric
        tol = GRID_EPS
        pairs = random_grid_pairs(rng, max(config.random_pairs, 10), config.bvp_n,
                                  config.carrier_low, config.carrier_high)
        functions = [p[0] for p in pairs] + [p[1] for p in pairs]
        triples = [(functions[3 * i], functions[3 * i + 1], functions[3 * i + 2])
                   for i in range(len(functions) // 3)]
    else:
        raise ValidationError(f"unknown carrier kind {config.carrier_kind!r}")

    reports = [
        check_simulation_pointwise(bundle.zeta, zeta_samples),
        check_simulation_sequences(bundle.zeta,
                                   catalog.default_sequence_probes(probes_mode)),
        check_cclass(bundle.g, cclass_samples),
        check_geraghty(bundle.beta, beta_samples, catalog.default_beta_probes()),
        check_alpha_admissible(bundle.mapping, bundle.alpha, pairs),
        check_triangular_alpha(bundle.alpha, triples),
        verify_contraction(bundle, pairs, metric, tol=tol),
    ]
    if problem is not None:
        reports.append(check_operator_contraction(problem, pairs))

    adjusted, failures = _rows_with_caveats(reports, bundle)
    header = _header_lines(config, [f"bundle: {bundle.name}",
                                    f"carrier: {config.carrier_kind}"])
    (out / "report.txt").write_text(render_text(adjusted, header))
    write_report_csv(out / "report.csv", adjusted)
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def write_trace_csv(path: str | Path, trace: IterationTrace) -> None:
    """Trace export: iteration_index, gap, ratio, residual (residual on the
    final row only; omitted ratios stay blank)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["iteration_index", "gap", "ratio", "residual"])
        writer.writerow([0, "", "", ""])
        for i in range(1, len(trace.gaps) + 1):
            gap = repr(float(trace.gaps[i - 1]))
            ratio = ""
            if i >= 2 and trace.ratios[i - 2] is not None:
                ratio = repr(float(trace.ratios[i - 2]))
            residual = repr(float(trace.residual)) if i == len(trace.gaps) else ""
            writer.writerow([i, gap, ratio, residual])


def _picard_config(config: RunConfig) -> PicardConfig:
    return PicardConfig(tolerance=config.tolerance,
                        max_iterations=config.max_iterations,
                        divergence_bound=config.divergence_bound)


def _summary_rows(items: Sequence[tuple[str, str, str]]) -> list[list[str]]:
    return [[name, status, "", "", "", "", "", value, ""]
            for name, status, value in items]


def _run_iterate(config: RunConfig, out: Path) -> int:
    mapping, map_name = catalog.map_by_name(config.map_spec)
    trace = picard_iterate(mapping, config.start, _picard_config(config), scalar_metric)
    write_trace_csv(out / "trace.csv", trace)
    converged = trace.termination == CONVERGED
    status = "pass" if converged else "fail"
    final_gap = trace.gaps[-1] if trace.gaps else 0.0
    header = _header_lines(config, [
        f"map: {map_name}",
        f"start: {config.start!r}",
        f"termination: {trace.termination}",
        f"iterations: {trace.iterations}",
        f"final gap: {final_gap!r}",
        f"residual: {trace.residual!r}",
    ])
    rows = _summary_rows([
        ("picard", status, repr(float(trace.residual))),
    ])
    (out / "report.txt").write_text("\n".join(header) + "\n")
    _write_rows_csv(out / "report.csv", rows)
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def _write_rows_csv(path: Path, rows: Sequence[Sequence[str]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(list(row))


def _run_solve(config: RunConfig, out: Path) -> int:
    problem = _build_problem(config)
    solution: BVPSolution = solve_bvp(problem, _picard_config(config))
    save_grid_csv(out / "solution.csv", solution.values)
    write_trace_csv(out / "trace.csv", solution.trace)
    status = "pass" if solution.converged else "fail"
    estimate = solution.contraction_estimate
    header = _header_lines(config, [
        f"rhs: {problem.name}",
        f"n: {problem.n}",
        f"termination: {solution.trace.termination}",
        f"iterations: {solution.trace.iterations}",
        f"second-difference residual: {solution.residual!r}",
        f"observed contraction estimate: "
        f"{'' if estimate is None else repr(float(estimate))}",
    ])
    rows = _summary_rows([
        ("picard", status, repr(float(solution.trace.residual))),
        ("second-difference-residual", status, repr(float(solution.residual))),
    ])
    (out / "report.txt").write_text("\n".join(header) + "\n")
    _write_rows_csv(out / "report.csv", rows)
    return EXIT_OK if solution.converged else EXIT_NOT_CONVERGED


def run(config: RunConfig, out_dir: str | Path | None = None) -> int:
    """Execute one configured run; returns the process exit status."""
    out = Path(out_dir if out_dir is not None else config.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = seeded_rng(config.seed)
    try:
        if config.mode == "verify":
            return _run_verify(config, out, rng)
        if config.mode == "iterate":
            return _run_iterate(config, out)
        if config.mode == "solve-bvp":
            return _run_solve(config, out)
        raise ValidationError(f"unknown mode {config.mode!r}")
    except (ValidationError, DomainError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="picardkit",
        description="Verify contraction hypotheses, run Picard orbits, and "
                    "solve two-point boundary-value problems.")
    parser.add_argument("--config", type=Path, help="run configuration file")
    parser.add_argument("--out", help="output directory (overrides the config)")
    parser.add_argument("--seed", type=int, help="random seed (overrides the config)")
    parser.add_argument("--list-builtins", action="store_true",
                        help="print the builtin catalog and exit")
    args = parser.parse_args(argv)

    if args.list_builtins:
        print(catalog.catalog_text())
        return EXIT_OK
    if args.config is None:
        parser.print_usage(sys.stderr)
        print("picardkit: a --config file is required unless --list-builtins is given",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        config = load_config(args.config)
        if args.seed is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigError("--seed must be an unsigned 64-bit integer")
            config.seed = args.seed
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config, out_dir=args.out)


if __name__ == "__main__":
    sys.exit(main())
