"""Empirical characteristic functions and scenario orchestration.

This module turns simulated row sums into empirical characteristic
function tables, compares them against registered analytic targets, and
bundles everything a desk-scale convergence study needs into one
self-describing report: characteristic-function tables per row length,
sup distances to the target, characteristic quantities of a sample
realization, criterion verdicts, and runtimes.

A small registry of builtin scenarios covers the package's designed
examples, one scenario per limit regime, each carrying its directing
law, norming sequence, analytic target, and the criterion checkers it
is expected to face. The analytic targets are registered here once so
that library calls, command-line runs, and acceptance tests all compare
against the same values.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .characteristics import char_quantities
from .criteria import (
    NGrid,
    StatTestConfig,
    CriterionVerdict,
    check_cauchy_mixture,
    check_degenerate,
    check_gaussian_mixture,
    check_sec5_conditions,
    check_single_row_cauchy,
    check_single_row_gaussian,
    check_single_row_stable,
    check_stable_mixture,
    check_uan,
    check_wlln,
)
from .directing import (
    CauchyLaw,
    DirectingLaw,
    GaussianLaw,
    OneSidedParetoLaw,
    PointMassLaw,
    RowSums,
    ScaleAtoms,
    ScaleExponential,
    SymmetricParetoLaw,
    UniformLaw,
    sample_array_sums,
)
from .mixtures import MixingMeasure, cauchy_from_gaussian_scale_mixture, joint_mixture_cf, mixture_cf
from .stable import NormingSequence, StableParams

__all__ = [
    "TGrid",
    "ScenarioSpec",
    "ScenarioReport",
    "empirical_cf",
    "empirical_joint_cf",
    "run_scenario",
    "builtin_scenarios",
    "get_scenario",
    "identity_residual",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_MODULUS_SLACK = 1.0 + 1e-12


def _default_points() -> Tuple[float, ...]:
    return tuple(float(k) * 0.25 for k in range(-20, 21))


@dataclass(frozen=True)
class TGrid:
    """Evaluation grid for characteristic functions.

    One dimensional grids are tuples of reals and must contain 0; two
    dimensional grids are tuples of (t, s) pairs and must contain (0, 0).
    The default is the one dimensional grid from -5 to 5 in steps of
    0.25.
    """

    points: Tuple = field(default_factory=_default_points)

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        if not pts:
            raise ValueError("the evaluation grid must not be empty")
        if isinstance(pts[0], (tuple, list)):
            pts = tuple((float(a), float(b)) for a, b in pts)
            flat = [v for pair in pts for v in pair]
            has_zero = (0.0, 0.0) in pts
        else:
            pts = tuple(float(t) for t in pts)
            flat = list(pts)
            has_zero = 0.0 in pts
        if not all(math.isfinite(v) for v in flat):
            raise ValueError("grid points must be finite")
        if not has_zero:
            raise ValueError("the grid must include the origin")
        object.__setattr__(self, "points", pts)

    @property
    def ndim(self) -> int:
        return 2 if isinstance(self.points[0], tuple) else 1


DEFAULT_JOINT_POINTS = (
    (0.0, 0.0),
    (0.5, 0.5),
    (1.0, 1.0),
    (1.0, -1.0),
    (2.0, 1.0),
)


def empirical_cf(samples: Sequence[float], grid: TGrid) -> np.ndarray:
    """Empirical characteristic function (1/N) sum exp(i t x_j) per grid point.

    The value at t = 0 is exactly 1 and the table is conjugate symmetric
    on symmetric grids because cosine is even and sine is odd in t.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("samples must be nonempty")
    if grid.ndim != 1:
        raise ValueError("empirical_cf expects a one dimensional grid")
    out = np.empty(len(grid.points), dtype=complex)
    for j, t in enumerate(grid.points):
        phase = t * x
        out[j] = complex(np.mean(np.cos(phase)), np.mean(np.sin(phase)))
    return out


def empirical_joint_cf(rowsums: RowSums, grid: TGrid) -> np.ndarray:
    """Empirical joint characteristic function of the first two row sums.

    Averages exp(i(t S_1 + s S_2)) over replicates for every (t, s) pair
    of the grid. Needs at least two rows per replicate.
    """
    if rowsums.rows < 2:
        raise ValueError(
            f"joint characteristic function needs at least 2 rows, got {rowsums.rows}"
        )
    if grid.ndim != 2:
        raise ValueError("empirical_joint_cf expects a grid of (t, s) pairs")
    s1 = rowsums.values[:, 0]
    s2 = rowsums.values[:, 1]
    out = np.empty(len(grid.points), dtype=complex)
    for j, (t, s) in enumerate(grid.points):
        phase = t * s1 + s * s2
        out[j] = complex(np.mean(np.cos(phase)), np.mean(np.sin(phase)))
    return out


def identity_residual(
    t_grid: Optional[Sequence[float]] = None, perturb: float = 1.0
) -> float:
    """Largest gap between exp(-|t|) and its Gaussian scale mixture form.

    Evaluates the quadrature of the mixture representation on the grid
    (default 0 to 5 in steps of 0.25) and returns the maximal absolute
    difference from exp(-|t|). ``perturb`` scales the quadrature value
    and exists as a negative-control hook: any value other than 1 must
    push the residual far above the acceptance threshold.
    """
    ts = tuple(t_grid) if t_grid is not None else tuple(0.25 * k for k in range(21))
    residual = 0.0
    for t in ts:
        value = perturb * cauchy_from_gaussian_scale_mixture(float(t))
        residual = max(residual, abs(value - math.exp(-abs(float(t)))))
    return residual


@dataclass(frozen=True)
class ScenarioSpec:
    """Complete description of one convergence scenario.

    ``target`` is a finite stable mixture when the limit has that form;
    ``target_fn`` overrides it with a direct formula for limits outside
    the finite-mixture class (the exponential variance mixture). The
    checkers tuple lists criterion names from the criteria module;
    ``exclusive_pass`` names the one mixture-type checker the scenario
    is designed to satisfy.
    """

    name: str
    law: DirectingLaw
    norming: NormingSequence
    tau: float = 1.0
    alpha: Optional[float] = None
    checkers: Tuple[str, ...] = ()
    exclusive_pass: Optional[str] = None
    target: Optional[MixingMeasure] = None
    target_fn: Optional[Callable[[float], complex]] = None
    target_label: str = ""
    cf_n_grid: Tuple[int, ...] = (256, 1024, 4096)
    cf_replicates: int = 2000
    checker_ngrid: NGrid = field(default_factory=NGrid)
    x_grid: Tuple[float, ...] = (100.0, 1000.0, 10000.0)
    joint: bool = False
    identity_demo: bool = False
    description: str = ""

    def target_cf(self, t: float) -> Optional[complex]:
        if self.target_fn is not None:
            return complex(self.target_fn(t))
        if self.target is not None:
            return complex(mixture_cf(t, self.target))
        return None


@dataclass(frozen=True)
class ScenarioReport:
    """Self-describing result bundle of one scenario run.

    All payload fields are plain JSON-serializable structures. Every
    empirical characteristic-function value is checked to have modulus
    at most 1 + 1e-12 on construction.
    """

    scenario: str
    seed: int
    config: Dict[str, object]
    cf_tables: List[Dict[str, object]]
    sup_distance: List[Dict[str, float]]
    joint_table: Optional[List[Dict[str, object]]]
    identity: Optional[Dict[str, float]]
    quantities: List[Dict[str, float]]
    verdicts: List[Dict[str, object]]
    runtimes: Dict[str, float]

    def __post_init__(self) -> None:
        for table in self.cf_tables:
            for row in table["points"]:
                modulus = math.hypot(row["re"], row["im"])
                if modulus > _MODULUS_SLACK:
                    raise ValueError(
                        f"empirical value at t={row['t']} has modulus {modulus}"
                    )


def _gauss_expmix_cf(t: float) -> complex:
    return complex(1.0 / (1.0 + 0.5 * t * t))


def _single_atom(alpha: float, gamma: float, c: float, beta: float) -> MixingMeasure:
    return MixingMeasure(((StableParams(alpha, gamma, c, beta), 1.0),))


def _builtin_registry() -> Dict[str, ScenarioSpec]:
    sqrt_n = NormingSequence(alpha=2.0)
    linear = NormingSequence(alpha=1.0)
    two_thirds = NormingSequence(alpha=1.5)
    linear_mean = NormingSequence(alpha=1.0, centering_kind="n_times_mean")
    two_thirds_mean = NormingSequence(alpha=1.5, centering_kind="n_times_mean")

    cauchy_unit = _single_atom(1.0, 0.0, 1.0, 0.0)
    cauchy_scale_mix = MixingMeasure(
        (
            (StableParams(1.0, 0.0, 1.0, 0.0), 0.5),
            (StableParams(1.0, 0.0, 2.0, 0.0), 0.5),
        )
    )

    specs = [
        ScenarioSpec(
            name="example1",
            law=DirectingLaw(CauchyLaw(0.0, 1.0)),
            norming=linear,
            target=cauchy_unit,
            target_label="exp(-|t|)",
            checkers=("cauchy_mixture",),
            exclusive_pass="cauchy_mixture",
            joint=True,
            identity_demo=True,
            description=(
                "The standard Cauchy as a Gaussian scale mixture: quadrature "
                "identity residual plus the joint-factorization contrast "
                "between the degenerate and the mixed-scale array."
            ),
        ),
        ScenarioSpec(
            name="point-mass",
            law=DirectingLaw(PointMassLaw(0.75)),
            norming=linear_mean,
            target=_single_atom(1.0, 0.0, 0.0, 0.0),
            target_label="1 (point mass at 0)",
            checkers=("uan", "degenerate", "wlln"),
            exclusive_pass="degenerate",
            description="Deterministic entries, mean centering; degenerate limit.",
        ),
        ScenarioSpec(
            name="uniform-fixed",
            law=DirectingLaw(UniformLaw(-1.0, 1.0)),
            norming=sqrt_n,
            target=_single_atom(2.0, 0.0, 1.0 / 6.0, 0.0),
            target_label="exp(-t^2/6)",
            checkers=("uan", "gaussian_mixture", "row_gaussian"),
            exclusive_pass="gaussian_mixture",
            description="Fixed uniform directing law; Gaussian limit, variance 1/3.",
        ),
        ScenarioSpec(
            name="gauss-fixed",
            law=DirectingLaw(GaussianLaw(0.0, 1.0)),
            norming=sqrt_n,
            target=_single_atom(2.0, 0.0, 0.5, 0.0),
            target_label="exp(-t^2/2)",
            checkers=("uan", "gaussian_mixture", "row_gaussian"),
            exclusive_pass="gaussian_mixture",
            description="Fixed standard Gaussian; the classical CLT regime.",
        ),
        ScenarioSpec(
            name="gauss-expmix",
            law=DirectingLaw(GaussianLaw(0.0, 1.0), ScaleExponential(1.0)),
            norming=sqrt_n,
            target_fn=_gauss_expmix_cf,
            target_label="1/(1+t^2/2)",
            checkers=("uan", "gaussian_mixture", "row_gaussian"),
            exclusive_pass="gaussian_mixture",
            description=(
                "Gaussian entries with exponentially distributed variance; "
                "the limit is a Laplace-type variance mixture."
            ),
        ),
        ScenarioSpec(
            name="cauchy-fixed",
            law=DirectingLaw(CauchyLaw(0.0, 1.0)),
            norming=linear,
            target=cauchy_unit,
            target_label="exp(-|t|)",
            checkers=("uan", "cauchy_mixture", "row_cauchy"),
            exclusive_pass="cauchy_mixture",
            description="Fixed standard Cauchy; exact stability at every n.",
        ),
        ScenarioSpec(
            name="cauchy-scalemix",
            law=DirectingLaw(CauchyLaw(0.0, 1.0), ScaleAtoms(((1.0, 0.5), (2.0, 0.5)))),
            norming=linear,
            target=cauchy_scale_mix,
            target_label="(exp(-|t|)+exp(-2|t|))/2",
            checkers=("uan", "cauchy_mixture", "row_cauchy"),
            exclusive_pass="cauchy_mixture",
            joint=True,
            description=(
                "Cauchy entries with a two-atom scale prior; the limit mixes "
                "two Cauchy scales and the joint law does not factorize."
            ),
        ),
        ScenarioSpec(
            name="pareto-mix",
            law=DirectingLaw(
                SymmetricParetoLaw(1.5, 1.0), ScaleAtoms(((1.0, 0.5), (2.0, 0.5)))
            ),
            norming=two_thirds,
            alpha=1.5,
            target=MixingMeasure(
                (
                    (StableParams(1.5, 0.0, _SQRT_2PI, 0.0), 0.5),
                    (StableParams(1.5, 0.0, _SQRT_2PI * 2.0**1.5, 0.0), 0.5),
                )
            ),
            target_label="stable(1.5) scale mixture",
            checkers=("uan", "stable_mixture", "row_stable", "sec5"),
            exclusive_pass="stable_mixture",
            description=(
                "Symmetric power tails with index 1.5 and a two-atom scale "
                "prior; the limit mixes two symmetric stable laws."
            ),
        ),
        ScenarioSpec(
            name="pareto-onesided",
            law=DirectingLaw(OneSidedParetoLaw(1.5, 1.0)),
            norming=two_thirds_mean,
            alpha=1.5,
            target=_single_atom(1.5, 0.0, _SQRT_2PI, -1.0),
            target_label="skewed stable(1.5)",
            checkers=("uan", "stable_mixture"),
            exclusive_pass="stable_mixture",
            description=(
                "One-sided power tails with index 1.5, mean centering; the "
                "limit is a fully skewed stable law."
            ),
        ),
    ]
    return {spec.name: spec for spec in specs}


_REGISTRY = _builtin_registry()


def builtin_scenarios() -> Tuple[str, ...]:
    """Names of the registered builtin scenarios, sorted."""
    return tuple(sorted(_REGISTRY))


def get_scenario(name: str) -> ScenarioSpec:
    """Look up a builtin scenario by name."""
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise ValueError(f"unknown scenario {name!r}; builtins: {known}") from None


_CHECKER_DISPATCH = {
    "uan": lambda spec, ngrid, cfg, seed: check_uan(
        spec.law, spec.norming, ngrid, cfg, seed=seed
    ),
    "gaussian_mixture": lambda spec, ngrid, cfg, seed: check_gaussian_mixture(
        spec.law, spec.norming, ngrid, spec.tau, cfg, seed=seed
    ),
    "degenerate": lambda spec, ngrid, cfg, seed: check_degenerate(
        spec.law, spec.norming, ngrid, spec.tau, cfg, seed=seed
    ),
    "stable_mixture": lambda spec, ngrid, cfg, seed: check_stable_mixture(
        spec.law, spec.norming, ngrid, _need_alpha(spec), cfg, seed=seed
    ),
    "cauchy_mixture": lambda spec, ngrid, cfg, seed: check_cauchy_mixture(
        spec.law, spec.norming, ngrid, cfg, seed=seed
    ),
    "wlln": lambda spec, ngrid, cfg, seed: check_wlln(
        spec.law, spec.norming, ngrid, spec.tau, cfg, seed=seed
    ),
    "row_gaussian": lambda spec, ngrid, cfg, seed: check_single_row_gaussian(
        spec.law, spec.norming, ngrid, spec.tau, cfg, seed=seed
    ),
    "row_stable": lambda spec, ngrid, cfg, seed: check_single_row_stable(
        spec.law, spec.norming, ngrid, _need_alpha(spec), cfg, seed=seed
    ),
    "row_cauchy": lambda spec, ngrid, cfg, seed: check_single_row_cauchy(
        spec.law, spec.norming, ngrid, cfg, seed=seed
    ),
    "sec5": lambda spec, ngrid, cfg, seed: check_sec5_conditions(
        spec.law, spec.norming, ngrid, _need_alpha(spec), spec.x_grid, cfg, seed=seed
    ),
}


def _need_alpha(spec: ScenarioSpec) -> float:
    if spec.alpha is None:
        raise ValueError(f"scenario {spec.name!r} does not define a tail index")
    return spec.alpha


def run_criterion(
    spec: ScenarioSpec,
    criterion: str,
    seed: int,
    config: Optional[StatTestConfig] = None,
    ngrid: Optional[NGrid] = None,
) -> CriterionVerdict:
    """Run one named criterion checker against a scenario."""
    if criterion not in _CHECKER_DISPATCH:
        known = ", ".join(sorted(_CHECKER_DISPATCH))
        raise ValueError(f"unknown criterion {criterion!r}; known: {known}")
    cfg = config if config is not None else StatTestConfig()
    grid = ngrid if ngrid is not None else spec.checker_ngrid
    return _CHECKER_DISPATCH[criterion](spec, grid, cfg, seed)


def _verdict_dict(verdict: CriterionVerdict) -> Dict[str, object]:
    return {
        "name": verdict.name,
        "holds": verdict.holds,
        "evidence": verdict.evidence,
        "estimated_limit": verdict.estimated_limit,
    }


def _config_echo(spec: ScenarioSpec, seed: int, grid: TGrid) -> Dict[str, object]:
    return {
        "scenario": spec.name,
        "description": spec.description,
        "law": repr(spec.law),
        "norming": repr(spec.norming),
        "tau": spec.tau,
        "alpha": spec.alpha,
        "target": spec.target_label,
        "cf_n_grid": list(spec.cf_n_grid),
        "cf_replicates": spec.cf_replicates,
        "checker_n_grid": list(spec.checker_ngrid.values),
        "checker_replicates": spec.checker_ngrid.replicates,
        "checkers": list(spec.checkers),
        "t_grid": list(grid.points),
        "seed": seed,
    }


def run_scenario(
    spec: Union[ScenarioSpec, str],
    seed: int,
    *,
    threads: int = 1,
    tgrid: Optional[TGrid] = None,
    joint_grid: Optional[TGrid] = None,
    stat_config: Optional[StatTestConfig] = None,
) -> ScenarioReport:
    """Execute one scenario end to end and assemble its report.

    Simulates row sums along the scenario's row-length grid (the draws
    are seeded per replicate, so reports are deterministic for a given
    seed up to the wall-clock fields), tabulates empirical
    characteristic functions against the registered analytic target,
    computes characteristic quantities of the first replicate's
    realization, runs the scenario's criterion checkers, and, when the
    scenario asks for it, adds the joint-factorization table and the
    quadrature identity residual.
    """
    if isinstance(spec, str):
        spec = get_scenario(spec)
    if not spec.cf_n_grid:
        raise ValueError(f"scenario {spec.name!r} has an empty row-length grid")
    if any(n < 1 for n in spec.cf_n_grid):
        raise ValueError(f"row lengths must be positive, got {spec.cf_n_grid}")

    grid = tgrid if tgrid is not None else TGrid()
    if grid.ndim != 1:
        raise ValueError("the scenario grid must be one dimensional")
    cfg = stat_config if stat_config is not None else StatTestConfig()

    runtimes: Dict[str, float] = {}
    cf_tables: List[Dict[str, object]] = []
    sups: List[Dict[str, float]] = []
    quantities: List[Dict[str, float]] = []
    rows_needed = 2 if spec.joint else 1

    t_total = time.perf_counter()
    last_rowsums: Optional[RowSums] = None
    for n in spec.cf_n_grid:
        t_start = time.perf_counter()
        rowsums = sample_array_sums(
            spec.law, spec.norming, n, rows_needed, seed, spec.cf_replicates, threads
        )
        last_rowsums = rowsums
        emp = empirical_cf(rowsums.values[:, 0], grid)
        points = []
        worst = 0.0
        for t, z in zip(grid.points, emp):
            row: Dict[str, float] = {"t": float(t), "re": float(z.real), "im": float(z.imag)}
            target = spec.target_cf(float(t))
            if target is not None:
                row["target_re"] = float(target.real)
                row["target_im"] = float(target.imag)
                gap = abs(z - target)
                row["abs_error"] = float(gap)
                worst = max(worst, float(gap))
            points.append(row)
        cf_tables.append({"n": int(n), "points": points})
        if spec.target_cf(0.0) is not None:
            sups.append({"n": int(n), "sup": worst})

        first_draw = rowsums.draws[rowsums.draw_ids[0]]
        bundle = char_quantities(first_draw, spec.norming, n, spec.tau)
        quantities.append(
            {
                "n": int(n),
                "m_trunc": float(bundle.m_trunc),
                "m_smooth": float(bundle.m_smooth),
                "sigma2_trunc": float(bundle.sigma2_trunc),
                "sigma2_bar_proxy": float(bundle.sigma2_bar_proxy),
                "q_eps": float(bundle.q_eps),
                "spectral_mass": float(bundle.lambda_n.total_mass),
            }
        )
        runtimes[f"simulate_n={n}"] = time.perf_counter() - t_start

    joint_table: Optional[List[Dict[str, object]]] = None
    if spec.joint and last_rowsums is not None:
        t_start = time.perf_counter()
        jgrid = joint_grid if joint_grid is not None else TGrid(DEFAULT_JOINT_POINTS)
        if jgrid.ndim != 2:
            raise ValueError("the joint grid must consist of (t, s) pairs")
        joint = empirical_joint_cf(last_rowsums, jgrid)
        marg_t_points = tuple(sorted({t for t, _ in jgrid.points} | {0.0}))
        marg_s_points = tuple(sorted({s for _, s in jgrid.points} | {0.0}))
        marg_t_tab = dict(
            zip(marg_t_points, empirical_cf(last_rowsums.values[:, 0], TGrid(marg_t_points)))
        )
        marg_s_tab = dict(
            zip(marg_s_points, empirical_cf(last_rowsums.values[:, 1], TGrid(marg_s_points)))
        )
        joint_table = []
        for (t, s), z in zip(jgrid.points, joint):
            product = marg_t_tab[t] * marg_s_tab[s]
            row = {
                "t": float(t),
                "s": float(s),
                "joint_re": float(z.real),
                "joint_im": float(z.imag),
                "product_re": float(product.real),
                "product_im": float(product.imag),
                "factorization_gap": float(abs(z - product)),
            }
            if spec.target is not None:
                target = joint_mixture_cf((t, s), spec.target)
                row["target_re"] = float(target.real)
                row["target_im"] = float(target.imag)
            joint_table.append(row)
        runtimes["joint_table"] = time.perf_counter() - t_start

    identity: Optional[Dict[str, float]] = None
    if spec.identity_demo:
        t_start = time.perf_counter()
        identity = {"residual": identity_residual(), "points": 21}
        runtimes["identity"] = time.perf_counter() - t_start

    verdicts: List[Dict[str, object]] = []
    for criterion in spec.checkers:
        t_start = time.perf_counter()
        verdict = run_criterion(spec, criterion, seed, cfg)
        verdicts.append(_verdict_dict(verdict))
        runtimes[f"check_{criterion}"] = time.perf_counter() - t_start

    runtimes["total"] = time.perf_counter() - t_total
    return ScenarioReport(
        scenario=spec.name,
        seed=seed,
        config=_config_echo(spec, seed, grid),
        cf_tables=cf_tables,
        sup_distance=sups,
        joint_table=joint_table,
        identity=identity,
        quantities=quantities,
        verdicts=verdicts,
        runtimes=runtimes,
    )
