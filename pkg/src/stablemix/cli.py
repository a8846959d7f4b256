"""Command-line front end for scenario simulation and criterion checks.

The CLI is a thin shell over the library: configs are parsed into the same
ScenarioSpec objects the library exposes, simulate/check delegate to
run_scenario and run_criterion, and every file written here can be rebuilt
from library calls with identical results (up to wall-clock runtime fields).

Exit codes form a stable contract:
    0  pass / success
    1  runtime failure (including a failed identity verification)
    2  configuration error (schema, unknown keys, missing seed, bad criterion)
    3  criterion checked and failed
    4  criterion inconclusive at the configured sample sizes
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

from .criteria import CRITERION_NAMES, NGrid, StatTestConfig
from .directing import (
    CauchyLaw,
    DirectingLaw,
    GaussianLaw,
    LocationAtoms,
    LocationGaussian,
    OneSidedParetoLaw,
    PointMassLaw,
    ScaleAtoms,
    ScaleExponential,
    ScaleLogNormal,
    StableLaw,
    SymmetricParetoLaw,
    UniformLaw,
)
from .empirics import (
    ScenarioReport,
    ScenarioSpec,
    TGrid,
    builtin_scenarios,
    get_scenario,
    identity_residual,
    run_criterion,
    run_scenario,
)
from .mixtures import MixingMeasure
from .stable import NormingSequence, StableParams

__all__ = [
    "main",
    "cmd_simulate",
    "cmd_check",
    "cmd_verify_identity",
    "cmd_list_scenarios",
    "load_config",
    "ConfigError",
    "EXIT_PASS",
    "EXIT_RUNTIME",
    "EXIT_CONFIG",
    "EXIT_FAIL",
    "EXIT_INCONCLUSIVE",
    "SCHEMA_VERSION",
]

EXIT_PASS = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_FAIL = 3
EXIT_INCONCLUSIVE = 4

SCHEMA_VERSION = 1

_SEED_ENV = "STABLEMIX_SEED"
_ID_PATTERN = re.compile(r"^[A-Za-z0-9._-]+$")


class ConfigError(ValueError):
    """A configuration problem with a field-path diagnostic."""


def _check_keys(obj: dict, path: str, required: Sequence[str], optional: Sequence[str]) -> None:
    allowed = set(required) | set(optional)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        keys = ", ".join(repr(k) for k in unknown)
        raise ConfigError(
            f"{path}: unknown key(s) {keys}; allowed keys: {', '.join(sorted(allowed))}"
        )
    missing = sorted(set(required) - set(obj))
    if missing:
        raise ConfigError(f"{path}: missing required key(s) {', '.join(repr(k) for k in missing)}")


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


def _as_pairs(value, path: str) -> Tuple[Tuple[float, float], ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list of [value, weight] pairs")
    pairs = []
    for j, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 2:
            raise ConfigError(f"{path}[{j}]: expected a [value, weight] pair")
        pairs.append((_as_number(item[0], f"{path}[{j}][0]"), _as_number(item[1], f"{path}[{j}][1]")))
    return tuple(pairs)


_BASE_FIELDS = {
    "point": ("value",),
    "gaussian": ("mean", "sd"),
    "cauchy": ("location", "scale"),
    "uniform": ("lo", "hi"),
    "pareto_symmetric": ("tail_index", "scale"),
    "pareto_onesided": ("tail_index", "scale"),
    "stable": ("alpha", "gamma", "c", "beta"),
}


def _build_base(obj, path: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object with a 'kind' key")
    kind = obj.get("kind")
    if kind not in _BASE_FIELDS:
        raise ConfigError(
            f"{path}.kind: unknown family {kind!r}; known: {', '.join(sorted(_BASE_FIELDS))}"
        )
    _check_keys(obj, path, required=("kind",) + _BASE_FIELDS[kind], optional=())
    num = {f: _as_number(obj[f], f"{path}.{f}") for f in _BASE_FIELDS[kind]}
    try:
        if kind == "point":
            return PointMassLaw(num["value"])
        if kind == "gaussian":
            return GaussianLaw(num["mean"], num["sd"])
        if kind == "cauchy":
            return CauchyLaw(num["location"], num["scale"])
        if kind == "uniform":
            return UniformLaw(num["lo"], num["hi"])
        if kind == "pareto_symmetric":
            return SymmetricParetoLaw(num["tail_index"], num["scale"])
        if kind == "pareto_onesided":
            return OneSidedParetoLaw(num["tail_index"], num["scale"])
        return StableLaw(StableParams(num["alpha"], num["gamma"], num["c"], num["beta"]))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


_PRIOR_FIELDS = {
    "scale_atoms": ("atoms",),
    "scale_exponential": ("rate",),
    "scale_lognormal": ("log_mean", "log_sd"),
    "location_atoms": ("atoms",),
    "location_gaussian": ("mean", "sd"),
}


def _build_prior(obj, path: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object with a 'kind' key")
    kind = obj.get("kind")
    if kind not in _PRIOR_FIELDS:
        raise ConfigError(
            f"{path}.kind: unknown prior {kind!r}; known: {', '.join(sorted(_PRIOR_FIELDS))}"
        )
    _check_keys(obj, path, required=("kind",) + _PRIOR_FIELDS[kind], optional=())
    try:
        if kind == "scale_atoms":
            return ScaleAtoms(_as_pairs(obj["atoms"], f"{path}.atoms"))
        if kind == "scale_exponential":
            return ScaleExponential(_as_number(obj["rate"], f"{path}.rate"))
        if kind == "scale_lognormal":
            return ScaleLogNormal(
                _as_number(obj["log_mean"], f"{path}.log_mean"),
                _as_number(obj["log_sd"], f"{path}.log_sd"),
            )
        if kind == "location_atoms":
            return LocationAtoms(_as_pairs(obj["atoms"], f"{path}.atoms"))
        return LocationGaussian(
            _as_number(obj["mean"], f"{path}.mean"), _as_number(obj["sd"], f"{path}.sd")
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from exc


def _build_law(obj, path: str) -> DirectingLaw:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object with a 'base' key")
    _check_keys(obj, path, required=("base",), optional=("prior",))
    base = _build_base(obj["base"], f"{path}.base")
    prior = _build_prior(obj["prior"], f"{path}.prior") if "prior" in obj else None
    try:
        return DirectingLaw(base, prior)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_norming(obj, path: str) -> NormingSequence:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object with an 'alpha' key")
    _check_keys(
        obj,
        path,
        required=("alpha",),
        optional=("slow_kind", "slow_power", "scale", "centering_kind", "centering_tau"),
    )
    kwargs = {"alpha": _as_number(obj["alpha"], f"{path}.alpha")}
    if "slow_kind" in obj:
        kwargs["slow_kind"] = obj["slow_kind"]
    if "slow_power" in obj:
        kwargs["slow_power"] = _as_number(obj["slow_power"], f"{path}.slow_power")
    if "scale" in obj:
        kwargs["scale"] = _as_number(obj["scale"], f"{path}.scale")
    if "centering_kind" in obj:
        kwargs["centering_kind"] = obj["centering_kind"]
    if "centering_tau" in obj:
        kwargs["centering_tau"] = _as_number(obj["centering_tau"], f"{path}.centering_tau")
    try:
        return NormingSequence(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_stat_config(obj, path: str) -> StatTestConfig:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    fields = ("delta", "prob_bound", "ks_tol", "margin", "fit_tol")
    _check_keys(obj, path, required=(), optional=fields)
    kwargs = {f: _as_number(obj[f], f"{path}.{f}") for f in fields if f in obj}
    try:
        return StatTestConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_target(obj, path: str) -> MixingMeasure:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object with an 'atoms' key")
    _check_keys(obj, path, required=("atoms",), optional=())
    atoms = obj["atoms"]
    if not isinstance(atoms, list) or not atoms:
        raise ConfigError(f"{path}.atoms: expected a nonempty list")
    built = []
    for j, item in enumerate(atoms):
        if not isinstance(item, list) or len(item) != 5:
            raise ConfigError(
                f"{path}.atoms[{j}]: expected [alpha, gamma, c, beta, weight]"
            )
        nums = [_as_number(v, f"{path}.atoms[{j}][{k}]") for k, v in enumerate(item)]
        try:
            built.append((StableParams(*nums[:4]), nums[4]))
        except ValueError as exc:
            raise ConfigError(f"{path}.atoms[{j}]: {exc}") from exc
    try:
        return MixingMeasure(tuple(built))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _number_list(value, path: str) -> Tuple[float, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list of numbers")
    return tuple(_as_number(v, f"{path}[{j}]") for j, v in enumerate(value))


def _int_list(value, path: str) -> Tuple[int, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list of integers")
    return tuple(_as_int(v, f"{path}[{j}]") for j, v in enumerate(value))


_SCENARIO_OVERRIDES = (
    "n_grid",
    "replicates",
    "tau",
    "alpha",
    "x_grid",
    "checkers",
    "joint",
    "checker_n_grid",
    "checker_replicates",
    "stat_config",
    "t_grid",
    "joint_grid",
    "seed",
)


class ResolvedConfig:
    """A validated configuration ready to execute."""

    def __init__(
        self,
        spec: ScenarioSpec,
        seed: Optional[int],
        threads: int,
        out: Optional[str],
        tgrid: Optional[TGrid],
        joint_grid: Optional[TGrid],
        stat_config: Optional[StatTestConfig],
    ) -> None:
        self.spec = spec
        self.seed = seed
        self.threads = threads
        self.out = out
        self.tgrid = tgrid
        self.joint_grid = joint_grid
        self.stat_config = stat_config


def _apply_overrides(spec: ScenarioSpec, obj: dict, path: str) -> ScenarioSpec:
    updates: Dict[str, object] = {}
    if "n_grid" in obj:
        updates["cf_n_grid"] = _int_list(obj["n_grid"], f"{path}.n_grid")
    if "replicates" in obj:
        updates["cf_replicates"] = _as_int(obj["replicates"], f"{path}.replicates")
    if "tau" in obj:
        updates["tau"] = _as_number(obj["tau"], f"{path}.tau")
    if "alpha" in obj:
        updates["alpha"] = _as_number(obj["alpha"], f"{path}.alpha")
    if "x_grid" in obj:
        updates["x_grid"] = _number_list(obj["x_grid"], f"{path}.x_grid")
    if "joint" in obj:
        if not isinstance(obj["joint"], bool):
            raise ConfigError(f"{path}.joint: expected true or false")
        updates["joint"] = obj["joint"]
    if "checkers" in obj:
        names = obj["checkers"]
        if not isinstance(names, list):
            raise ConfigError(f"{path}.checkers: expected a list of criterion names")
        for name in names:
            if name not in CRITERION_NAMES:
                raise ConfigError(
                    f"{path}.checkers: unknown criterion {name!r}; "
                    f"known: {', '.join(CRITERION_NAMES)}"
                )
        updates["checkers"] = tuple(names)
    grid_values = None
    grid_replicates = None
    if "checker_n_grid" in obj:
        grid_values = _int_list(obj["checker_n_grid"], f"{path}.checker_n_grid")
    if "checker_replicates" in obj:
        grid_replicates = _as_int(obj["checker_replicates"], f"{path}.checker_replicates")
    if grid_values is not None or grid_replicates is not None:
        base = spec.checker_ngrid
        try:
            updates["checker_ngrid"] = NGrid(
                values=grid_values if grid_values is not None else base.values,
                replicates=grid_replicates if grid_replicates is not None else base.replicates,
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    if updates:
        spec = replace(spec, **updates)
    return spec


def _build_scenario(obj, path: str) -> ScenarioSpec:
    if isinstance(obj, str):
        try:
            return get_scenario(obj)
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected a builtin name or an object")
    if "builtin" in obj:
        _check_keys(obj, path, required=("builtin",), optional=_SCENARIO_OVERRIDES)
        try:
            spec = get_scenario(obj["builtin"])
        except ValueError as exc:
            raise ConfigError(f"{path}.builtin: {exc}") from exc
        return _apply_overrides(spec, obj, path)
    _check_keys(
        obj,
        path,
        required=("id", "law", "norming"),
        optional=_SCENARIO_OVERRIDES + ("target",),
    )
    name = obj["id"]
    if not isinstance(name, str) or not _ID_PATTERN.match(name):
        raise ConfigError(
            f"{path}.id: scenario ids must match {_ID_PATTERN.pattern}, got {name!r}"
        )
    spec = ScenarioSpec(
        name=name,
        law=_build_law(obj["law"], f"{path}.law"),
        norming=_build_norming(obj["norming"], f"{path}.norming"),
    )
    if "target" in obj:
        target = _build_target(obj["target"], f"{path}.target")
        spec = replace(spec, target=target, target_label="inline mixture")
    return _apply_overrides(spec, obj, path)


def load_config(path: str, seed_flag: Optional[int] = None, threads_flag: Optional[int] = None) -> ResolvedConfig:
    """Parse and validate a JSON config file into a runnable configuration.

    Seed resolution order: --seed flag, then the STABLEMIX_SEED environment
    variable, then the config file (top level, then inside the scenario).
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    _check_keys(
        raw,
        "config",
        required=("scenario",),
        optional=("seed", "threads", "out", "stat_config"),
    )
    spec = _build_scenario(raw["scenario"], "config.scenario")

    scenario_obj = raw["scenario"] if isinstance(raw["scenario"], dict) else {}
    seed: Optional[int] = None
    if seed_flag is not None:
        seed = seed_flag
    elif os.environ.get(_SEED_ENV):
        try:
            seed = int(os.environ[_SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{_SEED_ENV}: expected an integer, got {os.environ[_SEED_ENV]!r}") from exc
    elif "seed" in raw:
        seed = _as_int(raw["seed"], "config.seed")
    elif "seed" in scenario_obj:
        seed = _as_int(scenario_obj["seed"], "config.scenario.seed")

    threads = 1
    if threads_flag is not None:
        threads = threads_flag
    elif "threads" in raw:
        threads = _as_int(raw["threads"], "config.threads")
    if threads < 1:
        raise ConfigError(f"config.threads: must be at least 1, got {threads}")

    out = raw.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("config.out: expected a directory path string")

    tgrid = None
    if "t_grid" in scenario_obj:
        try:
            tgrid = TGrid(_number_list(scenario_obj["t_grid"], "config.scenario.t_grid"))
        except ValueError as exc:
            raise ConfigError(f"config.scenario.t_grid: {exc}") from exc
    joint_grid = None
    if "joint_grid" in scenario_obj:
        pairs = scenario_obj["joint_grid"]
        if not isinstance(pairs, list) or not pairs:
            raise ConfigError("config.scenario.joint_grid: expected a nonempty list of [t, s] pairs")
        built = []
        for j, item in enumerate(pairs):
            if not isinstance(item, list) or len(item) != 2:
                raise ConfigError(f"config.scenario.joint_grid[{j}]: expected a [t, s] pair")
            built.append(
                (
                    _as_number(item[0], f"config.scenario.joint_grid[{j}][0]"),
                    _as_number(item[1], f"config.scenario.joint_grid[{j}][1]"),
                )
            )
        try:
            joint_grid = TGrid(tuple(built))
        except ValueError as exc:
            raise ConfigError(f"config.scenario.joint_grid: {exc}") from exc

    stat_config = None
    for source, spath in ((raw, "config.stat_config"), (scenario_obj, "config.scenario.stat_config")):
        if "stat_config" in source:
            stat_config = _build_stat_config(source["stat_config"], spath)
    return ResolvedConfig(spec, seed, threads, out, tgrid, joint_grid, stat_config)


def _report_payload(report: ScenarioReport) -> Dict[str, object]:
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": report.scenario,
        "seed": report.seed,
        "config": report.config,
        "cf_tables": report.cf_tables,
        "sup_distance": report.sup_distance,
        "joint_table": report.joint_table,
        "identity": report.identity,
        "quantities": report.quantities,
        "verdicts": report.verdicts,
        "runtimes": report.runtimes,
    }


def _write_json(path: Path, payload: Dict[str, object]) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _write_cf_csv(path: Path, report: ScenarioReport) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "t", "re", "im", "target_re", "target_im", "abs_error"])
        for table in report.cf_tables:
            for row in table["points"]:
                writer.writerow(
                    [
                        table["n"],
                        row["t"],
                        row["re"],
                        row["im"],
                        row.get("target_re", ""),
                        row.get("target_im", ""),
                        row.get("abs_error", ""),
                    ]
                )


def _write_quantities_csv(path: Path, report: ScenarioReport) -> None:
    fields = ["n", "m_trunc", "m_smooth", "sigma2_trunc", "sigma2_bar_proxy", "q_eps", "spectral_mass"]
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(fields)
        for row in report.quantities:
            writer.writerow([row[f] for f in fields])


def _resolve_out(config: ResolvedConfig, out_flag: Optional[str]) -> Path:
    out = Path(out_flag if out_flag is not None else (config.out or "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config, args.seed, args.threads)
        if config.seed is None:
            raise ConfigError(
                "no seed given: pass --seed, set STABLEMIX_SEED, or add 'seed' to the config"
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run_scenario(
            config.spec,
            config.seed,
            threads=config.threads,
            tgrid=config.tgrid,
            joint_grid=config.joint_grid,
            stat_config=config.stat_config,
        )
        out = _resolve_out(config, args.out)
        report_path = out / f"{report.scenario}.report.json"
        cf_path = out / f"{report.scenario}.cf.csv"
        quantities_path = out / f"{report.scenario}.quantities.csv"
        _write_json(report_path, _report_payload(report))
        _write_cf_csv(cf_path, report)
        _write_quantities_csv(quantities_path, report)
    except Exception as exc:  # noqa: BLE001 - the exit-code contract wants 1 here
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote {report_path}")
    print(f"wrote {cf_path}")
    print(f"wrote {quantities_path}")
    if report.sup_distance:
        last = report.sup_distance[-1]
        print(f"sup distance to target at n={last['n']}: {last['sup']:.6f}")
    for verdict in report.verdicts:
        state = {True: "pass", False: "fail", None: "inconclusive"}[verdict["holds"]]
        print(f"criterion {verdict['name']}: {state}")
    return EXIT_PASS


def cmd_check(args: argparse.Namespace) -> int:
    if args.criterion not in CRITERION_NAMES:
        print(
            f"config error: unknown criterion {args.criterion!r}; "
            f"known: {', '.join(CRITERION_NAMES)}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    try:
        config = load_config(args.config, args.seed, args.threads)
        if config.seed is None:
            raise ConfigError(
                "no seed given: pass --seed, set STABLEMIX_SEED, or add 'seed' to the config"
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        verdict = run_criterion(
            config.spec,
            args.criterion,
            config.seed,
            config=config.stat_config,
        )
        out = _resolve_out(config, args.out)
        verdict_path = out / f"{config.spec.name}.{args.criterion}.verdict.json"
        _write_json(
            verdict_path,
            {
                "schema_version": SCHEMA_VERSION,
                "scenario": config.spec.name,
                "criterion": verdict.name,
                "seed": config.seed,
                "holds": verdict.holds,
                "evidence": verdict.evidence,
                "estimated_limit": verdict.estimated_limit,
            },
        )
    except Exception as exc:  # noqa: BLE001 - the exit-code contract wants 1 here
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    state = {True: "pass", False: "fail", None: "inconclusive"}[verdict.holds]
    print(f"criterion {verdict.name} on {config.spec.name}: {state}")
    print(f"wrote {verdict_path}")
    if verdict.holds is True:
        return EXIT_PASS
    if verdict.holds is False:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def cmd_verify_identity(args: argparse.Namespace) -> int:
    try:
        residual = identity_residual(perturb=args.perturb)
    except Exception as exc:  # noqa: BLE001 - quadrature failure maps to exit 1
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"identity residual over the standard grid: {residual:.3e} (tolerance {args.tol:.3e})")
    if math.isfinite(residual) and residual <= args.tol:
        return EXIT_PASS
    print("identity verification failed", file=sys.stderr)
    return EXIT_RUNTIME


def cmd_list_scenarios(_args: argparse.Namespace) -> int:
    for name in builtin_scenarios():
        spec = get_scenario(name)
        print(f"{name}: {spec.description}")
    return EXIT_PASS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablemix",
        description="Simulate exchangeable arrays and check stable-mixture convergence criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="run a scenario and write report files")
    simulate.add_argument("--config", required=True, help="path to a JSON config file")
    simulate.add_argument("--seed", type=int, default=None, help="master seed (overrides config)")
    simulate.add_argument("--threads", type=int, default=None, help="worker cap; results are unchanged")
    simulate.add_argument("--out", default=None, help="output directory (default: config 'out' or cwd)")
    simulate.set_defaults(func=cmd_simulate)

    check = sub.add_parser("check", help="run one convergence criterion")
    check.add_argument("criterion", help=f"one of: {', '.join(CRITERION_NAMES)}")
    check.add_argument("--config", required=True, help="path to a JSON config file")
    check.add_argument("--seed", type=int, default=None, help="master seed (overrides config)")
    check.add_argument("--threads", type=int, default=None, help="worker cap; results are unchanged")
    check.add_argument("--out", default=None, help="output directory (default: config 'out' or cwd)")
    check.set_defaults(func=cmd_check)

    verify = sub.add_parser(
        "verify-identity",
        help="verify the Cauchy transform against its scale-mixture quadrature",
    )
    verify.add_argument("--tol", type=float, default=1e-8, help="largest acceptable residual")
    verify.add_argument(
        "--perturb",
        type=float,
        default=1.0,
        help="multiply the quadrature value by this factor (negative-control hook)",
    )
    verify.set_defaults(func=cmd_verify_identity)

    listing = sub.add_parser("list-scenarios", help="list the builtin scenarios")
    listing.set_defaults(func=cmd_list_scenarios)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
