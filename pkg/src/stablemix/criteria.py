"""Numerical checkers for the limit behaviour of normalized row sums.

Every checker in this module follows the same recipe. It realizes the
directing law once per replicate (the draws are shared across the whole
grid of row lengths), computes deterministic per-realization quantities
such as truncated means, truncated variances, scaled tail masses, and
discretized spectral measures, and then turns the empirical behaviour of
those quantities along the grid into a three-state verdict:

* ``True``   every sub-check passed its statistical test,
* ``False``  at least one sub-check failed decisively,
* ``None``   the evidence is too ambiguous to call either way.

Two statistical operationalizations are used throughout. Convergence in
probability of a statistic ``Z_n`` to a constant ``z`` is accepted when
the empirical exceedance fraction ``P(|Z_n - z| > delta)`` is below
``prob_bound`` at the largest row length and essentially non-increasing
along the grid; a fraction of one half or more at the largest length is
a decisive failure. When the constant is unknown it is estimated by the
median at the largest length, and the median must additionally have
stopped drifting between the last two grid points. Convergence in
distribution is accepted when a slack-relaxed Kolmogorov-Smirnov
distance between consecutive empirical laws (paired draws, so the
comparison is sharp) falls below ``ks_tol``; one half or more is again a
decisive failure.

Checkers that look for heavy-tailed limits fit a two-sided power shape
to the discretized spectral measure of each draw and demand that the
restriction-metric residual of the fit stays small, which is what rules
out a wrong tail index or a wrong norming sequence. All checkers assume
a single shared tail index; laws whose draws mix different indices are
outside the contract of every checker here.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .characteristics import (
    SpectralParams,
    fit_spectrum,
    proxy_window,
    pushforward_alpha,
    pushforward_one,
    sigma_bar_proxy,
    smooth_mean,
    spectral_measure_lambda,
    stable_mixing_constant,
    tail_mass_quantity,
    tail_moment_ratio,
    trunc_mean,
    trunc_variance,
)
from .directing import DirectingLaw, draw_replicates
from .stable import NormingSequence, norming_values

__all__ = [
    "NGrid",
    "StatTestConfig",
    "CriterionVerdict",
    "CRITERION_NAMES",
    "check_uan",
    "check_gaussian_mixture",
    "check_degenerate",
    "check_stable_mixture",
    "check_cauchy_mixture",
    "check_wlln",
    "check_single_row_gaussian",
    "check_single_row_stable",
    "check_single_row_cauchy",
    "check_sec5_conditions",
]

CRITERION_NAMES = (
    "uan",
    "gaussian_mixture",
    "degenerate",
    "stable_mixture",
    "cauchy_mixture",
    "wlln",
    "row_gaussian",
    "row_stable",
    "row_cauchy",
    "sec5",
)

_TAIL_EPS = (0.1, 1.0)
_SYMMETRY_REL = 0.05
_MAX_EXACT_ATOMS = 12


@dataclass(frozen=True)
class NGrid:
    """Grid of row lengths with a replicate count shared by all of them."""

    values: Tuple[int, ...] = (100, 1000, 10000, 100000)
    replicates: int = 200

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ValueError("the row-length grid needs at least two points")
        if vals[0] < 2:
            raise ValueError(f"row lengths must be at least 2, got {vals[0]}")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError(f"row lengths must be strictly increasing, got {vals}")
        if self.replicates < 100:
            raise ValueError(
                f"at least 100 replicates are needed for stable fractions, got {self.replicates}"
            )


@dataclass(frozen=True)
class StatTestConfig:
    """Tolerances for the statistical tests behind every checker.

    :param delta: closeness radius for convergence in probability
    :param prob_bound: admissible exceedance fraction at the largest n
    :param ks_tol: admissible relaxed Kolmogorov-Smirnov distance
    :param margin: slack for distribution comparisons and degeneracy tests
    :param fit_tol: admissible restriction-metric residual of a spectral fit
    """

    delta: float = 0.05
    prob_bound: float = 0.05
    ks_tol: float = 0.05
    margin: float = 0.01
    fit_tol: float = 0.05

    def __post_init__(self) -> None:
        for name in ("delta", "prob_bound", "ks_tol", "margin", "fit_tol"):
            value = getattr(self, name)
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one criterion checker.

    ``holds`` is ``True`` on a pass, ``False`` on a decisive failure, and
    ``None`` when the evidence is inconclusive. ``evidence`` is a plain
    JSON-serializable dictionary with one entry per sub-check, and
    ``estimated_limit`` summarizes the inferred limit object when the
    checker produces one.
    """

    name: str
    holds: Optional[bool]
    evidence: Dict[str, object]
    estimated_limit: Optional[Dict[str, object]] = None


def _require_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 2.0 or abs(alpha - 1.0) < 1e-3:
        raise ValueError(
            f"tail index must lie in (0, 1) or (1, 2), away from 1, got {alpha}"
        )


class _DrawPanel:
    """Shared directing-law draws plus a memo of per-(draw, n) quantities.

    Realizations are frozen dataclasses, hence hashable, so equal draws
    collapse to a single memo entry; an atom prior with two support
    points costs two quadratures per grid point no matter how many
    replicates are requested.
    """

    def __init__(
        self, law: DirectingLaw, norming: NormingSequence, ngrid: NGrid, seed: int
    ) -> None:
        self.norming = norming
        self.ngrid = ngrid
        self.draws = draw_replicates(law, seed, ngrid.replicates)
        self.unique = list(dict.fromkeys(self.draws))
        self._memo: Dict[tuple, object] = {}

    def table(self, key: tuple, n: int, fn: Callable) -> Dict[object, object]:
        out = {}
        for p in self.unique:
            token = (key, n, p)
            if token not in self._memo:
                self._memo[token] = fn(p, n)
            out[p] = self._memo[token]
        return out

    def values(self, key: tuple, n: int, fn: Callable) -> np.ndarray:
        table = self.table(key, n, fn)
        return np.array([table[p] for p in self.draws], dtype=float)

    def objects(self, key: tuple, n: int, fn: Callable) -> list:
        table = self.table(key, n, fn)
        return [table[p] for p in self.draws]

    def unique_weights(self) -> List[Tuple[object, float]]:
        counts = Counter(self.draws)
        total = len(self.draws)
        return [(p, counts[p] / total) for p in self.unique]

    def norming_at(self, p, n: int) -> Tuple[float, float]:
        token = (("norming",), n, p)
        if token not in self._memo:
            self._memo[token] = norming_values(self.norming, n, p)
        return self._memo[token]

    # Per-draw quantity streams. Each returns one value per replicate.

    def loc_trunc(self, n: int, tau: float) -> np.ndarray:
        def fn(p, m):
            return trunc_mean(p, self.norming, m, tau) - self.norming_at(p, m)[1]

        return self.values(("m_trunc", tau), n, fn)

    def loc_smooth(self, n: int) -> np.ndarray:
        def fn(p, m):
            return smooth_mean(p, self.norming, m) - self.norming_at(p, m)[1]

        return self.values(("m_smooth",), n, fn)

    def disp(self, n: int, tau: float) -> np.ndarray:
        def fn(p, m):
            return trunc_variance(p, self.norming, m, tau)

        return self.values(("disp", tau), n, fn)

    def proxy(self, n: int) -> np.ndarray:
        def fn(p, m):
            return sigma_bar_proxy(p, self.norming, proxy_window(m))

        return self.values(("proxy",), n, fn)

    def qtail(self, n: int, eps: float) -> np.ndarray:
        def fn(p, m):
            return tail_mass_quantity(p, self.norming, m, eps)

        return self.values(("qtail", eps), n, fn)

    def uan_tail(self, n: int, eps: float) -> np.ndarray:
        def fn(p, m):
            return p.tail_mass(eps * self.norming.b(m))

        return self.values(("uan", eps), n, fn)

    def balance(self, n: int) -> np.ndarray:
        def fn(p, m):
            b = self.norming.b(m)
            mass = p.tail_mass(b)
            if mass == 0.0:
                return 0.0
            return (p.right_tail(b) - p.cdf(-b)) / mass

        return self.values(("balance",), n, fn)

    def ratio(self, x: float) -> np.ndarray:
        def fn(p, _):
            return tail_moment_ratio(p, x)

        return self.values(("ratio", x), 0, fn)

    def fits(self, n: int, alpha: float) -> list:
        return self.objects(("fit", alpha), n, self._fit_fn(alpha))

    def fit_table(self, n: int, alpha: float) -> Dict[object, object]:
        return self.table(("fit", alpha), n, self._fit_fn(alpha))

    def smooth_table(self, n: int) -> Dict[object, float]:
        def fn(p, m):
            return smooth_mean(p, self.norming, m) - self.norming_at(p, m)[1]

        return self.table(("m_smooth",), n, fn)

    def _fit_fn(self, alpha: float) -> Callable:
        def fn(p, m):
            return fit_spectrum(spectral_measure_lambda(p, self.norming, m), alpha)

        return fn


def _combine_list(statuses: Sequence[Optional[bool]]) -> Optional[bool]:
    if any(s is False for s in statuses):
        return False
    if all(s is True for s in statuses):
        return True
    return None


def _quantiles(values: np.ndarray) -> Dict[str, float]:
    q10, q50, q90 = np.quantile(values, [0.1, 0.5, 0.9])
    return {
        "q10": float(q10),
        "q50": float(q50),
        "q90": float(q90),
        "mean": float(np.mean(values)),
    }


def _fraction_verdict(
    fracs: Sequence[float], cfg: StatTestConfig
) -> Tuple[Optional[bool], Dict[str, object]]:
    """Judge a sequence of exceedance fractions along the grid.

    Pass needs a final fraction at most ``prob_bound`` and an essentially
    non-increasing path: at most one upward step, no larger than a
    quarter of ``prob_bound``. A final fraction of one half or more is a
    decisive failure.
    """
    last = fracs[-1]
    rises = [b - a for a, b in zip(fracs, fracs[1:]) if b > a + 1e-12]
    monotone = len(rises) <= 1 and all(r <= 0.25 * cfg.prob_bound + 1e-12 for r in rises)
    if last >= 0.5:
        holds: Optional[bool] = False
    elif last <= cfg.prob_bound and monotone:
        holds = True
    else:
        holds = None
    return holds, {"fractions": [float(f) for f in fracs], "monotone": monotone}


def _in_probability(
    samples: Sequence[np.ndarray],
    cfg: StatTestConfig,
    target: Optional[float] = None,
) -> Tuple[Optional[bool], Dict[str, object]]:
    """Test convergence in probability of paired samples along the grid.

    With ``target=None`` the limit is estimated by the median at the
    largest grid point, and the median must have stopped moving: a drift
    beyond ``delta`` between the last two grid points blocks a pass, and
    a drift beyond ten times ``delta`` fails decisively (a statistic
    that still moves by that much is going somewhere else).
    """
    last = samples[-1]
    est = float(target) if target is not None else float(np.median(last))
    fracs = [float(np.mean(np.abs(s - est) > cfg.delta)) for s in samples]
    holds, data = _fraction_verdict(fracs, cfg)
    data["limit"] = est
    if target is None and len(samples) >= 2:
        drift = abs(float(np.median(samples[-2])) - est)
        data["drift"] = float(drift)
        if drift > 10.0 * cfg.delta:
            holds = False
        elif drift > cfg.delta and holds is True:
            holds = None
    return holds, data


def _relaxed_ks(a: np.ndarray, b: np.ndarray, slack: float) -> float:
    """Kolmogorov-Smirnov distance after allowing a horizontal slack.

    Computes sup over x of max(F_a(x - s) - F_b(x + s),
    F_b(x - s) - F_a(x + s), 0), which is zero whenever one sample is a
    translate of the other by less than ``s``. The supremum is attained
    at shifted sample points, so those are the only evaluation points.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    grid = np.concatenate([a - slack, a + slack, b - slack, b + slack])
    f_a_left = np.searchsorted(a, grid - slack, side="right") / a.size
    f_a_right = np.searchsorted(a, grid + slack, side="right") / a.size
    f_b_left = np.searchsorted(b, grid - slack, side="right") / b.size
    f_b_right = np.searchsorted(b, grid + slack, side="right") / b.size
    d_one = float(np.max(f_a_left - f_b_right))
    d_two = float(np.max(f_b_left - f_a_right))
    return max(0.0, d_one, d_two)


def _weak_convergence(
    samples: Sequence[np.ndarray], cfg: StatTestConfig
) -> Tuple[Optional[bool], Dict[str, object]]:
    """Accept when consecutive empirical laws stop moving in relaxed KS."""
    distances = [
        _relaxed_ks(s1, s2, cfg.margin) for s1, s2 in zip(samples, samples[1:])
    ]
    last = distances[-1]
    if last >= 0.5:
        holds: Optional[bool] = False
    elif last <= cfg.ks_tol:
        holds = True
    else:
        holds = None
    return holds, {"ks_consecutive": [float(d) for d in distances]}


def _nondegenerate(
    values: np.ndarray, cfg: StatTestConfig
) -> Tuple[Optional[bool], Dict[str, object]]:
    """Test that an empirical law is not concentrated at zero."""
    frac = float(np.mean(np.abs(values) > cfg.margin))
    if frac >= 0.5:
        holds: Optional[bool] = True
    elif frac <= cfg.prob_bound:
        holds = False
    else:
        holds = None
    return holds, {"fraction_beyond_margin": frac}


def _spread(
    values: np.ndarray, cfg: StatTestConfig
) -> Tuple[bool, Dict[str, object]]:
    """Test that an empirical law is not a single point (decile spread)."""
    q10, q90 = np.quantile(values, [0.1, 0.9])
    spread = float(q90 - q10)
    return spread > cfg.margin, {"decile_spread": spread}


def _tails_to_zero(
    panel: _DrawPanel, cfg: StatTestConfig, scaled: bool
) -> Tuple[Optional[bool], Dict[str, object]]:
    """Tail sub-check shared by several checkers.

    ``scaled=True`` tests n times the two-sided tail mass beyond
    eps * b_n (the negligible-tails requirement of light-tailed limits);
    ``scaled=False`` tests the raw per-element tail mass (the uniform
    asymptotic negligibility of single array entries).
    """
    per_eps = {}
    statuses = []
    for eps in _TAIL_EPS:
        if scaled:
            samples = [panel.qtail(n, eps) for n in panel.ngrid.values]
        else:
            samples = [panel.uan_tail(n, eps) for n in panel.ngrid.values]
        if scaled:
            holds, data = _in_probability(samples, cfg, target=0.0)
        else:
            fracs = [float(np.mean(s > cfg.delta)) for s in samples]
            holds, data = _fraction_verdict(fracs, cfg)
        per_eps[f"eps={eps:g}"] = {"holds": holds, **data}
        statuses.append(holds)
    return _combine_list(statuses), per_eps


def _evidence(panel: _DrawPanel, subs: Dict[str, object], **extra) -> Dict[str, object]:
    out: Dict[str, object] = {
        "sub_checks": subs,
        "n_grid": [int(n) for n in panel.ngrid.values],
        "replicates": int(panel.ngrid.replicates),
        "distinct_draws": len(panel.unique),
    }
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# Spectral-fit machinery shared by the heavy-tailed checkers.
# ---------------------------------------------------------------------------


def _fit_streams(panel: _DrawPanel, alpha: float):
    residuals, nulls, c_minus, c_plus = [], [], [], []
    for n in panel.ngrid.values:
        fits = panel.fits(n, alpha)
        residuals.append(np.array([res for _, res in fits], dtype=float))
        nulls.append(np.array([params.is_null for params, _ in fits], dtype=bool))
        c_minus.append(np.array([params.c_minus for params, _ in fits], dtype=float))
        c_plus.append(np.array([params.c_plus for params, _ in fits], dtype=float))
    return residuals, nulls, c_minus, c_plus


def _shape_subchecks(
    panel: _DrawPanel, alpha: float, cfg: StatTestConfig, with_symmetry: bool
):
    """Sub-checks on per-draw spectral fits at tail index ``alpha``.

    shape_fit: the fit residual stays within ``fit_tol`` for almost all
    draws, which fails for a wrong tail index or a wrong norming.
    non_null: a positive fraction of draws carries actual tail weight.
    scale_stabilize: the fitted weights stop moving along the grid, the
    test that catches a norming sequence with the wrong growth rate.
    symmetry (optional): fitted weights are side-balanced per draw.
    """
    residuals, nulls, c_minus, c_plus = _fit_streams(panel, alpha)
    subs: Dict[str, object] = {}

    res_fracs = [float(np.mean(res > cfg.fit_tol)) for res in residuals]
    holds, data = _fraction_verdict(res_fracs, cfg)
    data["max_residual"] = float(np.max(residuals[-1]))
    subs["shape_fit"] = {"holds": holds, **data}

    non_null = float(np.mean(~nulls[-1]))
    if non_null >= cfg.prob_bound:
        nn_holds: Optional[bool] = True
    elif non_null == 0.0:
        nn_holds = False
    else:
        nn_holds = None
    subs["non_null"] = {"holds": nn_holds, "non_null_fraction": non_null}

    ks_minus, data_minus = _weak_convergence(c_minus, cfg)
    ks_plus, data_plus = _weak_convergence(c_plus, cfg)
    subs["scale_stabilize"] = {
        "holds": _combine_list([ks_minus, ks_plus]),
        "c_minus": data_minus,
        "c_plus": data_plus,
    }

    if with_symmetry:
        mask = ~nulls[-1]
        if mask.any():
            cm, cp = c_minus[-1][mask], c_plus[-1][mask]
            violations = np.abs(cp - cm) > _SYMMETRY_REL * (cp + cm)
            frac = float(np.mean(violations))
            if frac <= cfg.prob_bound:
                sym_holds: Optional[bool] = True
            elif frac >= 0.5:
                sym_holds = False
            else:
                sym_holds = None
            subs["symmetry"] = {"holds": sym_holds, "violation_fraction": frac}
        else:
            subs["symmetry"] = {"holds": True, "non_null_draws": 0}

    return subs, (residuals, nulls, c_minus, c_plus)


def _limit_atoms(
    panel: _DrawPanel, alpha: float
) -> List[Tuple[float, SpectralParams, float]]:
    """Per-draw (location, spectral shape, weight) triples at the largest n.

    Distinct draws already collapse by equality, so an atom prior yields
    its atoms exactly. Crowded panels (continuous priors) are summarized
    by clustering the fitted total weights at relative gaps.
    """
    n_last = panel.ngrid.values[-1]
    fit_table = panel.fit_table(n_last, alpha)
    loc_table = panel.smooth_table(n_last)
    entries = [
        (float(loc_table[p]), fit_table[p][0], weight)
        for p, weight in panel.unique_weights()
    ]
    if len(entries) <= _MAX_EXACT_ATOMS:
        return entries
    return _gap_cluster(entries, alpha)


def _gap_cluster(
    entries: List[Tuple[float, SpectralParams, float]], alpha: float
) -> List[Tuple[float, SpectralParams, float]]:
    entries = sorted(entries, key=lambda e: e[1].total_weight)
    totals = [e[1].total_weight for e in entries]
    threshold = max(0.05, 0.2 * float(np.median(totals)))
    groups: List[List[Tuple[float, SpectralParams, float]]] = [[entries[0]]]
    for prev, entry in zip(entries, entries[1:]):
        if entry[1].total_weight - prev[1].total_weight > threshold:
            groups.append([entry])
        else:
            groups[-1].append(entry)
    clustered = []
    for group in groups:
        weight = sum(e[2] for e in group)
        eta = sum(e[0] * e[2] for e in group) / weight
        cm = sum(e[1].c_minus * e[2] for e in group) / weight
        cp = sum(e[1].c_plus * e[2] for e in group) / weight
        clustered.append((eta, SpectralParams(alpha, cm, cp), weight))
    return clustered


def _stable_atom_dicts(mixing) -> List[Dict[str, float]]:
    return [
        {
            "alpha": float(sp.alpha),
            "gamma": float(sp.gamma),
            "c": float(sp.c),
            "beta": float(sp.beta),
            "weight": float(w),
        }
        for sp, w in mixing.atoms
    ]


def _mixing_summary(result) -> Dict[str, object]:
    return {
        "gamma": float(result.gamma),
        "gamma_consistent": bool(result.gamma_consistent),
        "gamma_values": [float(g) for g in result.gamma_values],
        "atoms": _stable_atom_dicts(result.mixing),
    }


def _rho_atoms(
    entries: List[Tuple[float, SpectralParams, float]], constant: float
) -> List[Dict[str, float]]:
    merged: Dict[float, float] = {}
    for _, params, weight in entries:
        c_value = round(constant * params.total_weight, 9)
        merged[c_value] = merged.get(c_value, 0.0) + weight
    return [
        {"c": float(c), "weight": float(w)} for c, w in sorted(merged.items())
    ]


# ---------------------------------------------------------------------------
# Checkers.
# ---------------------------------------------------------------------------


def check_uan(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check uniform asymptotic negligibility of single array entries.

    For each draw of the directing law the per-element tail mass beyond
    eps * b_n must become negligible: the fraction of draws with mass
    above ``delta`` has to fall below ``prob_bound`` at the largest row
    length for eps in {0.1, 1}. A constant norming sequence under a
    heavy-tailed law is the canonical decisive failure.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    holds, per_eps = _tails_to_zero(panel, config, scaled=False)
    subs = {"entry_tails_negligible": {"holds": holds, "per_eps": per_eps}}
    return CriterionVerdict("uan", holds, _evidence(panel, subs))


def check_gaussian_mixture(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    tau: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check convergence toward a mixture of Gaussian laws.

    Sub-checks: the centered truncated mean concentrates at a constant,
    the truncated variance converges in distribution to a limit that is
    not concentrated at zero, and n times the tail mass beyond
    eps * b_n vanishes. Emits the estimated location and a quantile
    summary of the limiting variance mixture.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values
    loc = [panel.loc_trunc(n, tau) for n in ns]
    disp = [panel.disp(n, tau) for n in ns]

    h_loc, d_loc = _in_probability(loc, config)
    h_weak, d_weak = _weak_convergence(disp, config)
    h_nd, d_nd = _nondegenerate(disp[-1], config)
    h_tail, d_tail = _tails_to_zero(panel, config, scaled=True)

    subs = {
        "location_concentrates": {"holds": h_loc, **d_loc},
        "dispersion_converges": {"holds": h_weak, **d_weak},
        "dispersion_nondegenerate": {"holds": h_nd, **d_nd},
        "tails_negligible": {"holds": h_tail, "per_eps": d_tail},
    }
    holds = _combine_list([h_loc, h_weak, h_nd, h_tail])
    limit = {
        "gamma": float(d_loc["limit"]),
        "dispersion_law": _quantiles(disp[-1]),
    }
    return CriterionVerdict("gaussian_mixture", holds, _evidence(panel, subs), limit)


def check_degenerate(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    tau: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check convergence toward a single point mass.

    The centered truncated mean must concentrate at a constant while
    both the truncated variance and the scaled tail masses vanish in
    probability.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values
    loc = [panel.loc_trunc(n, tau) for n in ns]
    disp = [panel.disp(n, tau) for n in ns]

    h_loc, d_loc = _in_probability(loc, config)
    h_disp, d_disp = _in_probability(disp, config, target=0.0)
    h_tail, d_tail = _tails_to_zero(panel, config, scaled=True)

    subs = {
        "location_concentrates": {"holds": h_loc, **d_loc},
        "dispersion_vanishes": {"holds": h_disp, **d_disp},
        "tails_negligible": {"holds": h_tail, "per_eps": d_tail},
    }
    holds = _combine_list([h_loc, h_disp, h_tail])
    limit = {"gamma": float(d_loc["limit"])}
    return CriterionVerdict("degenerate", holds, _evidence(panel, subs), limit)


def check_stable_mixture(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    alpha: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check convergence toward a mixture of stable laws with index alpha.

    Requires alpha in (0, 1) or (1, 2). Sub-checks: per-draw spectral
    fits at index alpha with small residuals, a positive fraction of
    draws with actual tail weight, stabilization of fitted weights and
    smoothed locations along the grid, and a vanishing truncated
    variance proxy. On success the per-draw locations and fitted weights
    are pushed forward to a mixture of stable parameter atoms.
    """
    _require_alpha(alpha)
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    subs, _ = _shape_subchecks(panel, alpha, config, with_symmetry=False)

    m1 = [panel.loc_smooth(n) for n in ns]
    h_loc, d_loc = _weak_convergence(m1, config)
    subs["location_stabilize"] = {"holds": h_loc, **d_loc}

    prox = [panel.proxy(n) for n in ns]
    h_prox, d_prox = _in_probability(prox, config, target=0.0)
    subs["variance_proxy_vanishes"] = {"holds": h_prox, **d_prox}

    holds = _combine_list([s["holds"] for s in subs.values()])

    limit: Optional[Dict[str, object]] = None
    extra: Dict[str, object] = {}
    try:
        result = pushforward_alpha(_limit_atoms(panel, alpha), alpha)
        limit = _mixing_summary(result)
    except ValueError as exc:
        extra["limit_error"] = str(exc)
    return CriterionVerdict(
        "stable_mixture", holds, _evidence(panel, subs, **extra), limit
    )


def check_cauchy_mixture(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check convergence toward a mixture of symmetric Cauchy-type laws.

    Same structure as the stable-mixture checker at tail index one, with
    one extra requirement: every draw with tail weight must be
    side-balanced, since asymmetric spectra at index one cannot be
    pushed to the canonical form. Emits the location-and-scale mixture
    obtained from the per-draw fits.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    subs, _ = _shape_subchecks(panel, 1.0, config, with_symmetry=True)

    m1 = [panel.loc_smooth(n) for n in ns]
    h_loc, d_loc = _weak_convergence(m1, config)
    subs["location_stabilize"] = {"holds": h_loc, **d_loc}

    prox = [panel.proxy(n) for n in ns]
    h_prox, d_prox = _in_probability(prox, config, target=0.0)
    subs["variance_proxy_vanishes"] = {"holds": h_prox, **d_prox}

    holds = _combine_list([s["holds"] for s in subs.values()])

    limit: Optional[Dict[str, object]] = None
    extra: Dict[str, object] = {}
    try:
        mixing = pushforward_one(_limit_atoms(panel, 1.0))
        limit = {
            "location_median": float(np.median(m1[-1])),
            "atoms": _stable_atom_dicts(mixing),
        }
    except ValueError as exc:
        extra["limit_error"] = str(exc)
    return CriterionVerdict(
        "cauchy_mixture", holds, _evidence(panel, subs, **extra), limit
    )


def check_wlln(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    tau: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check the weak law of large numbers for the normalized row sums.

    Three displays must vanish in probability: the centered truncated
    mean, the truncated second moment net of the squared centering taken
    at matching scale, and n times the tail mass beyond eps * b_n.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    loc = [panel.loc_trunc(n, tau) for n in ns]
    h_loc, d_loc = _in_probability(loc, config, target=0.0)

    def second_fn(p, m):
        b, c = panel.norming_at(p, m)
        return (m / (b * b)) * p.truncated_second(tau * b) - c * c / m

    second = [panel.values(("wlln_second", tau), n, second_fn) for n in ns]
    h_sec, d_sec = _in_probability(second, config, target=0.0)

    h_tail, d_tail = _tails_to_zero(panel, config, scaled=True)

    subs = {
        "truncated_mean_vanishes": {"holds": h_loc, **d_loc},
        "second_moment_vanishes": {"holds": h_sec, **d_sec},
        "tails_negligible": {"holds": h_tail, "per_eps": d_tail},
    }
    holds = _combine_list([h_loc, h_sec, h_tail])
    return CriterionVerdict("wlln", holds, _evidence(panel, subs))


def check_single_row_gaussian(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    tau: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Classify a light-tailed single-row limit into one of two branches.

    Hypothesis: n times the tail mass beyond eps * b_n vanishes. Under
    it, either the centered truncated mean concentrates while the
    truncated variance converges to a nondegenerate law (a variance
    mixture of centered Gaussians), or the truncated variance vanishes
    while the centered truncated mean itself converges to a spread-out
    law (a location mixture). A decisive failure of the hypothesis fails
    the verdict outright without branch classification.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    h_tail, d_tail = _tails_to_zero(panel, config, scaled=True)
    subs: Dict[str, object] = {
        "tails_negligible": {"holds": h_tail, "per_eps": d_tail}
    }

    if h_tail is False:
        evidence = _evidence(panel, subs, hypothesis_violated=True)
        return CriterionVerdict("row_gaussian", False, evidence)

    loc = [panel.loc_trunc(n, tau) for n in ns]
    disp = [panel.disp(n, tau) for n in ns]

    h_conc, d_conc = _in_probability(loc, config)
    h_dweak, d_dweak = _weak_convergence(disp, config)
    h_dnd, d_dnd = _nondegenerate(disp[-1], config)
    branch_variance = _combine_list([h_conc, h_dweak, h_dnd])
    subs["variance_branch"] = {
        "holds": branch_variance,
        "location_concentrates": {"holds": h_conc, **d_conc},
        "dispersion_converges": {"holds": h_dweak, **d_dweak},
        "dispersion_nondegenerate": {"holds": h_dnd, **d_dnd},
    }

    h_dzero, d_dzero = _in_probability(disp, config, target=0.0)
    h_lweak, d_lweak = _weak_convergence(loc, config)
    h_spread, d_spread = _spread(loc[-1], config)
    branch_location = _combine_list([h_dzero, h_lweak, h_spread])
    subs["location_branch"] = {
        "holds": branch_location,
        "dispersion_vanishes": {"holds": h_dzero, **d_dzero},
        "location_converges": {"holds": h_lweak, **d_lweak},
        "location_spread": {"holds": h_spread, **d_spread},
    }

    limit: Optional[Dict[str, object]] = None
    if branch_variance is True:
        branch: Optional[bool] = True
        limit = {
            "branch": "variance_mixture",
            "gamma": float(d_conc["limit"]),
            "dispersion_law": _quantiles(disp[-1]),
        }
    elif branch_location is True:
        branch = True
        limit = {
            "branch": "location_mixture",
            "location_law": _quantiles(loc[-1]),
        }
    elif branch_variance is False and branch_location is False:
        branch = False
    else:
        branch = None

    holds = _combine_list([h_tail, branch])
    return CriterionVerdict("row_gaussian", holds, _evidence(panel, subs), limit)


def check_single_row_stable(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    alpha: float,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check a single-row limit that mixes symmetric stable laws.

    Requires alpha in (0, 1) or (1, 2). Hypothesis: per-draw spectral
    fits at index alpha are side-balanced or null with small residuals,
    carry tail weight with positive frequency, and their fitted weights
    stabilize along the grid (a wrong norming rate shows up here as
    drifting weights). Pass additionally needs the centered smoothed
    mean to concentrate and the truncated variance proxy to vanish.
    Emits the scale mixture of the fitted tail weights.
    """
    _require_alpha(alpha)
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    subs, _ = _shape_subchecks(panel, alpha, config, with_symmetry=True)
    hypothesis = _combine_list(
        [
            subs["shape_fit"]["holds"],
            subs["non_null"]["holds"],
            subs["scale_stabilize"]["holds"],
            subs["symmetry"]["holds"],
        ]
    )

    if hypothesis is False:
        evidence = _evidence(panel, subs, hypothesis_violated=True)
        return CriterionVerdict("row_stable", False, evidence)

    m1 = [panel.loc_smooth(n) for n in ns]
    h_loc, d_loc = _in_probability(m1, config)
    subs["location_concentrates"] = {"holds": h_loc, **d_loc}

    prox = [panel.proxy(n) for n in ns]
    h_prox, d_prox = _in_probability(prox, config, target=0.0)
    subs["variance_proxy_vanishes"] = {"holds": h_prox, **d_prox}

    holds = _combine_list([hypothesis, h_loc, h_prox])
    entries = _limit_atoms(panel, alpha)
    limit = {
        "gamma": float(d_loc["limit"]),
        "rho_atoms": _rho_atoms(entries, stable_mixing_constant(alpha)),
    }
    return CriterionVerdict("row_stable", holds, _evidence(panel, subs), limit)


def check_single_row_cauchy(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Check a single-row limit that mixes symmetric Cauchy-type laws.

    Tail-index-one version of the symmetric single-row checker: fits at
    index one must be side-balanced or null with small residuals and
    stable weights, some draws must carry tail weight, the centered
    smoothed mean must concentrate (its drift between the last two grid
    points is gated, which is what catches logarithmically divergent
    centerings), and the truncated variance proxy must vanish. Emits the
    scale mixture with the half-circle constant.
    """
    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values

    subs, _ = _shape_subchecks(panel, 1.0, config, with_symmetry=True)
    hypothesis = _combine_list(
        [
            subs["shape_fit"]["holds"],
            subs["non_null"]["holds"],
            subs["scale_stabilize"]["holds"],
            subs["symmetry"]["holds"],
        ]
    )

    if hypothesis is False:
        evidence = _evidence(panel, subs, hypothesis_violated=True)
        return CriterionVerdict("row_cauchy", False, evidence)

    m1 = [panel.loc_smooth(n) for n in ns]
    h_loc, d_loc = _in_probability(m1, config)
    subs["location_concentrates"] = {"holds": h_loc, **d_loc}

    prox = [panel.proxy(n) for n in ns]
    h_prox, d_prox = _in_probability(prox, config, target=0.0)
    subs["variance_proxy_vanishes"] = {"holds": h_prox, **d_prox}

    holds = _combine_list([hypothesis, h_loc, h_prox])
    entries = _limit_atoms(panel, 1.0)
    limit = {
        "gamma": float(d_loc["limit"]),
        "rho_atoms": _rho_atoms(entries, 0.5 * math.pi),
    }
    return CriterionVerdict("row_cauchy", holds, _evidence(panel, subs), limit)


def check_sec5_conditions(
    law: DirectingLaw,
    norming: NormingSequence,
    ngrid: NGrid,
    alpha: float,
    x_grid: Sequence[float],
    config: StatTestConfig,
    *,
    seed: int = 0,
) -> CriterionVerdict:
    """Run the experimental tail-diagnostic battery at index alpha.

    Requires alpha in (0, 1) or (1, 2) and an increasing positive grid
    of truncation levels. Four displays are tested: the tail-to-moment
    ratio approaches (2 - alpha)/alpha along the level grid, n times the
    tail mass at b_n converges to a law that is not concentrated at
    zero, the normalized tail imbalance vanishes, and the centered
    smoothed mean concentrates. The combined verdict is flagged as
    experimental in the evidence.
    """
    _require_alpha(alpha)
    levels = [float(x) for x in x_grid]
    if len(levels) < 2:
        raise ValueError("x_grid needs at least two truncation levels")
    if levels[0] <= 0 or any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError(f"x_grid must be positive and increasing, got {x_grid}")

    panel = _DrawPanel(law, norming, ngrid, seed)
    ns = ngrid.values
    target_ratio = (2.0 - alpha) / alpha

    ratios = [panel.ratio(x) for x in levels]
    h_ratio, d_ratio = _in_probability(ratios, config, target=target_ratio)
    d_ratio["x_grid"] = levels
    d_ratio["target"] = float(target_ratio)

    tail_law = [panel.qtail(n, 1.0) for n in ns]
    h_tweak, d_tweak = _weak_convergence(tail_law, config)
    h_tnd, d_tnd = _nondegenerate(tail_law[-1], config)

    balance = [panel.balance(n) for n in ns]
    h_bal, d_bal = _in_probability(balance, config, target=0.0)

    m1 = [panel.loc_smooth(n) for n in ns]
    h_loc, d_loc = _in_probability(m1, config)

    subs = {
        "tail_moment_ratio": {"holds": h_ratio, **d_ratio},
        "tail_law_converges": {"holds": h_tweak, **d_tweak},
        "tail_law_nondegenerate": {"holds": h_tnd, **d_tnd},
        "tail_balance_vanishes": {"holds": h_bal, **d_bal},
        "location_concentrates": {"holds": h_loc, **d_loc},
    }
    holds = _combine_list([h_ratio, h_tweak, h_tnd, h_bal, h_loc])
    limit = {
        "gamma": float(d_loc["limit"]),
        "tail_law": _quantiles(tail_law[-1]),
    }
    evidence = _evidence(panel, subs, experimental=True)
    return CriterionVerdict("sec5", holds, evidence, limit)
