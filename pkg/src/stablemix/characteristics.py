"""Per-realization characteristic quantities, spectral measures, the
restriction metric, and the pushforward maps onto stable mixing measures.

Every quantity here is a deterministic functional of one realized directing
measure and one sample size; Monte Carlo enters only through which
realizations the caller draws. The spectral side works with finite atomic
measures: the scaled tail function of a realization is discretized onto a
signed geometric grid, compared against power-law spectral shapes through a
restriction metric (an exponentially weighted integral of Levy-Prokhorov
distances between restrictions to growing open balls), and mapped to stable
mixing parameters.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .measures import AtomicMeasure
from .mixtures import MixingMeasure
from .stable import NormingSequence, StableParams, norming_values

__all__ = [
    "SpectralParams",
    "CharQuantities",
    "PushforwardResult",
    "DEFAULT_SPECTRAL_GRID",
    "DEFAULT_FIT_WINDOW",
    "proxy_window",
    "trunc_mean",
    "smooth_mean",
    "trunc_variance",
    "sigma_bar_proxy",
    "tail_function_L",
    "tail_mass_quantity",
    "tail_moment_ratio",
    "spectral_measure_lambda",
    "spectral_cdf",
    "discretize_spectral",
    "fit_spectrum",
    "prokhorov_distance",
    "dsharp",
    "stable_mixing_constant",
    "pushforward_alpha",
    "pushforward_one",
    "smoothed_location_drift",
    "accompanying_pair",
    "char_quantities",
]

# Signed geometric grid +-2**k spanning roughly [1e-3, 1e3] on each side.
DEFAULT_SPECTRAL_GRID: Tuple[float, ...] = tuple(
    [-(2.0 ** k) for k in range(10, -11, -1)] + [2.0 ** k for k in range(-10, 11)]
)

# Power-law fits read cumulative masses at grid edges inside this window.
DEFAULT_FIT_WINDOW: Tuple[float, float] = (0.125, 8.0)

_NULL_MASS_FLOOR = 1e-8
_CUM_FLOOR = 1e-12


@dataclass(frozen=True)
class SpectralParams:
    """Two-sided power-law spectral shape with tail index ``alpha``.

    The cumulative shape is -c_minus*|x|**alpha on the negative half line and
    c_plus*x**alpha on the positive one. c_minus = c_plus = 0 encodes the
    null spectral measure.
    """

    alpha: float
    c_minus: float
    c_plus: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 2.0:
            raise ValueError(f"spectral index must lie in (0, 2), got {self.alpha}")
        if self.c_minus < 0 or self.c_plus < 0:
            raise ValueError("spectral weights must be nonnegative")

    @property
    def is_null(self) -> bool:
        return self.c_minus == 0.0 and self.c_plus == 0.0

    @property
    def total_weight(self) -> float:
        """Mass the shape assigns to (-1, 1) excluding 0."""
        return self.c_minus + self.c_plus


@dataclass(frozen=True)
class CharQuantities:
    """Bundle of characteristic quantities for one realization at one n."""

    n: int
    tau: float
    m_trunc: float
    m_smooth: float
    sigma2_trunc: float
    sigma2_bar_proxy: float
    lambda_n: AtomicMeasure
    q_eps: float

    def __post_init__(self) -> None:
        if self.sigma2_trunc < 0:
            raise ValueError("truncated variance cannot be negative")
        if self.q_eps < 0:
            raise ValueError("two-sided tail quantity cannot be negative")


def trunc_mean(p, norming: NormingSequence, n: int, tau: float) -> float:
    """Scaled truncated mean (n/b_n) * int_{|x| <= tau*b_n} x p(dx)."""
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    b = norming.b(n)
    return (n / b) * p.truncated_mean(tau * b)


def smooth_mean(p, norming: NormingSequence, n: int) -> float:
    """Smoothed mean n * int b_n*x/(b_n**2 + x**2) p(dx)."""
    b = norming.b(n)
    return n * p.smoothed_mean(b)


def trunc_variance(p, norming: NormingSequence, n: int, eta: float) -> float:
    """Truncated variance (n/b_n**2)[int x**2 - (int x)**2] over |x| <= eta*b_n."""
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    b = norming.b(n)
    bound = eta * b
    first = p.truncated_mean(bound)
    second = p.truncated_second(bound)
    return max(0.0, (n / (b * b)) * (second - first * first))


def proxy_window(n: int) -> Tuple[int, ...]:
    """Default window {n/10, n/sqrt(10), n} (deduplicated, floored at 2)."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return tuple(sorted({max(2, n // 10), max(2, round(n / math.sqrt(10.0))), n}))


def sigma_bar_proxy(p, norming: NormingSequence, n_window: Sequence[int]) -> float:
    """Finite-window stand-in for the limiting superior of the truncated variance.

    Use: evaluate trunc_variance at eta = 1/n_anchor for every m in the window,
    n_anchor being the window's largest element, and take the maximum.
    Input: increasing window of sample sizes. Output: nonnegative real.
    """
    window = list(n_window)
    if not window:
        raise ValueError("n_window must be nonempty")
    if any(b <= a for a, b in zip(window, window[1:])):
        raise ValueError(f"n_window must be increasing, got {window}")
    eta = 1.0 / window[-1]
    return max(trunc_variance(p, norming, m, eta) for m in window)


def tail_function_L(p, norming: NormingSequence, n: int, x: float) -> float:
    """Scaled tail function: n*F(x*b_n) left of 0, -n*(1 - F(x*b_n)) right of 0."""
    if x == 0:
        raise ValueError("the scaled tail function is undefined at x = 0")
    b = norming.b(n)
    if x < 0:
        return n * p.cdf(x * b)
    return -n * p.right_tail(x * b)


def tail_mass_quantity(p, norming: NormingSequence, n: int, eps: float) -> float:
    """Two-sided tail quantity n * p({|x| > eps*b_n}), nonnegative."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return n * p.tail_mass(eps * norming.b(n))


def tail_moment_ratio(p, x: float) -> float:
    """Ratio x**2 * p({|y| > x}) / int_{|y| <= x} y**2 p(dy).

    Diagnoses the tail index: regularly varying tails with index a0 in (0, 2)
    drive the ratio to (2 - a0)/a0.
    """
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    denom = p.truncated_second(x)
    if denom <= 0:
        raise ValueError(f"truncated second moment vanishes at x = {x}")
    return x * x * p.tail_mass(x) / denom


def _validate_grid(grid: Sequence[float]) -> np.ndarray:
    pts = np.asarray(grid, dtype=float)
    if pts.size < 2:
        raise ValueError("grid needs at least two points")
    if np.any(pts == 0.0):
        raise ValueError("grid must exclude 0")
    if np.any(np.diff(pts) <= 0):
        raise ValueError("grid must be strictly increasing")
    return pts


def spectral_measure_lambda(
    p, norming: NormingSequence, n: int, grid: Optional[Sequence[float]] = None
) -> AtomicMeasure:
    """Discretized spectral measure of one realization at sample size n.

    The underlying function is G(x) = -n*F(b_n/x) for x < 0 and
    G(x) = n*(1 - F(b_n/x)) for x > 0, nondecreasing on each half line. Each
    cell between consecutive same-sign grid points becomes an atom at the
    cell's geometric midpoint carrying the increment of G; the cell spanning
    0 is dropped (the spectral object is only compared away from 0).
    """
    pts = _validate_grid(DEFAULT_SPECTRAL_GRID if grid is None else grid)
    b = norming.b(n)

    def g_value(x: float) -> float:
        if x < 0:
            return -n * p.cdf(b / x)
        return n * p.right_tail(b / x)

    atoms: List[Tuple[float, float]] = []
    for left, right in zip(pts[:-1], pts[1:]):
        if left < 0 < right:
            continue
        mass = g_value(right) - g_value(left)
        if mass < -1e-12:
            raise RuntimeError(
                "internal error: spectral increment "
                f"{mass:g} on ({left:g}, {right:g}] is negative"
            )
        if mass <= 0:
            continue
        location = math.copysign(math.sqrt(abs(left) * abs(right)), left)
        atoms.append((location, mass))
    return AtomicMeasure.from_pairs(atoms)


def spectral_cdf(params: SpectralParams, x: float) -> float:
    """Cumulative spectral shape: -c_minus*|x|**alpha left of 0, c_plus*x**alpha right."""
    if x == 0:
        raise ValueError("the spectral shape is undefined at x = 0")
    if x < 0:
        return -params.c_minus * (-x) ** params.alpha
    return params.c_plus * x ** params.alpha


def discretize_spectral(
    params: SpectralParams, grid: Optional[Sequence[float]] = None
) -> AtomicMeasure:
    """Discretize an exact power-law spectral shape with the same cell
    convention as :func:`spectral_measure_lambda`."""
    pts = _validate_grid(DEFAULT_SPECTRAL_GRID if grid is None else grid)
    atoms: List[Tuple[float, float]] = []
    for left, right in zip(pts[:-1], pts[1:]):
        if left < 0 < right:
            continue
        mass = spectral_cdf(params, right) - spectral_cdf(params, left)
        if mass <= 0:
            continue
        location = math.copysign(math.sqrt(abs(left) * abs(right)), left)
        atoms.append((location, mass))
    return AtomicMeasure.from_pairs(atoms)


def fit_spectrum(
    measure: AtomicMeasure,
    alpha: float,
    grid: Optional[Sequence[float]] = None,
    fit_window: Tuple[float, float] = DEFAULT_FIT_WINDOW,
) -> Tuple[SpectralParams, float]:
    """Fit power-law weights (c_minus, c_plus) to a discretized spectral measure.

    :param measure: discretized spectral measure, atoms on both half lines
    :param alpha: tail index of the candidate shape (given, not fitted)
    :param grid: the discretization grid, default the module grid
    :param fit_window: window of |x| over which cumulative masses enter the fit
    :return: (fitted params, restriction-metric residual to the fit)

    Each side is fitted by least squares of log cumulative mass against
    alpha*log x at the grid edges inside the window; a side whose windowed
    mass is below 1e-8 is declared null on that side. The residual is the
    restriction metric between the input and the fitted shape discretized on
    the same grid, so a wrong alpha shows up as a large residual.
    """
    pts = _validate_grid(DEFAULT_SPECTRAL_GRID if grid is None else grid)
    lo, hi = fit_window
    if not 0 < lo < hi:
        raise ValueError(f"fit window must satisfy 0 < lo < hi, got {fit_window}")

    def fit_side(edges: np.ndarray, cum_at: Callable[[float], float]) -> float:
        inside = edges[(edges >= lo) & (edges <= hi)]
        if inside.size == 0:
            return 0.0
        window_mass = cum_at(float(inside.max()))
        if window_mass < _NULL_MASS_FLOOR:
            return 0.0
        logs = []
        for edge in inside:
            cum = cum_at(float(edge))
            if cum > _CUM_FLOOR:
                logs.append(math.log(cum) - alpha * math.log(edge))
        if not logs:
            return 0.0
        return math.exp(sum(logs) / len(logs))

    positive_edges = pts[pts > 0]
    negative_edges = -pts[pts < 0]
    c_plus = fit_side(positive_edges, lambda x: measure.mass_interval(0.0, x, "right"))
    c_minus = fit_side(negative_edges, lambda x: measure.mass_interval(-x, 0.0, "left"))
    params = SpectralParams(alpha, c_minus, c_plus)
    residual = dsharp(measure, discretize_spectral(params, pts))
    return params, residual


def _prokhorov_one_sided(
    mu_locs: np.ndarray,
    mu_masses: np.ndarray,
    nu_locs: np.ndarray,
    nu_cum: np.ndarray,
    eps: float,
) -> float:
    """Largest violation max_A [mu(A) - nu(A^eps)] over unions A of mu atoms.

    Dynamic program over mu atoms in increasing location order, best[i] being
    the optimum among subsets whose rightmost atom is i. Appending atom i to
    a run ending at j adds nu((x_j+eps, x_i+eps]) when the closed
    eps-intervals overlap and nu([x_i-eps, x_i+eps]) when they are disjoint,
    so the transition splits into a sliding-window maximum of
    best[j] + nu(-inf, x_j+eps] over overlapping j (kept in a monotone deque)
    and a prefix maximum of best[j] over disjoint j.
    """
    k = int(mu_locs.size)
    if k == 0:
        return 0.0
    upper = nu_cum[np.searchsorted(nu_locs, mu_locs + eps, side="right")]
    closed = upper - nu_cum[np.searchsorted(nu_locs, mu_locs - eps, side="left")]
    locs = mu_locs.tolist()
    masses = mu_masses.tolist()
    up = upper.tolist()
    cl = closed.tolist()
    best = [0.0] * k
    window: deque = deque()
    prefix_best = 0.0
    start = 0
    overall = 0.0
    two_eps = 2.0 * eps
    for i in range(k):
        while start < i and locs[i] - locs[start] > two_eps:
            if best[start] > prefix_best:
                prefix_best = best[start]
            if window and window[0] == start:
                window.popleft()
            start += 1
        value = prefix_best - cl[i]
        if window:
            j = window[0]
            candidate = best[j] + up[j] - up[i]
            if candidate > value:
                value = candidate
        best_i = masses[i] + value
        best[i] = best_i
        if best_i > overall:
            overall = best_i
        key = best_i + up[i]
        while window and best[window[-1]] + up[window[-1]] <= key:
            window.pop()
        window.append(i)
    return max(0.0, overall)


def prokhorov_distance(mu: AtomicMeasure, nu: AtomicMeasure) -> float:
    """Levy-Prokhorov distance between two finite atomic measures.

    Computed exactly (to bisection tolerance 1e-9) by checking, at each
    candidate eps, that mu(A) <= nu(A^eps) + eps and the reverse hold for
    every union A of atoms; one-dimensional atomic measures make that check
    a dynamic program over atoms in location order.
    """
    if mu.atoms == nu.atoms:
        return 0.0
    mu_locs, mu_masses = mu.locations, mu.masses
    nu_locs, nu_masses = nu.locations, nu.masses
    mu_cum = np.concatenate([[0.0], np.cumsum(mu_masses)])
    nu_cum = np.concatenate([[0.0], np.cumsum(nu_masses)])

    def feasible(eps: float) -> bool:
        if _prokhorov_one_sided(mu_locs, mu_masses, nu_locs, nu_cum, eps) > eps:
            return False
        return _prokhorov_one_sided(nu_locs, nu_masses, mu_locs, mu_cum, eps) <= eps

    lo = abs(mu.total_mass - nu.total_mass)
    hi = max(mu.total_mass, nu.total_mass, lo)
    if hi == 0.0:
        return 0.0
    if feasible(lo):
        return lo
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _restrict_by_radius(
    locs: np.ndarray, masses: np.ndarray, abs_locs: np.ndarray, radius: float
) -> Tuple[np.ndarray, np.ndarray]:
    keep = abs_locs < radius
    return locs[keep], masses[keep]


def dsharp(
    mu: AtomicMeasure,
    nu: AtomicMeasure,
    r_max: float = 20.0,
    quad_points: int = 0,
) -> float:
    """Restriction metric between two atomic measures.

    The metric is the integral over r of e^{-r} * d_r/(1 + d_r), where d_r is
    the Levy-Prokhorov distance between the restrictions of the measures to
    the open ball (-r, r). The integrand is piecewise constant in r with
    breakpoints at the atom moduli, so with ``quad_points = 0`` the integral
    over (0, r_max] is evaluated exactly segment by segment; the omitted tail
    is at most e^{-r_max}. A positive ``quad_points`` switches to
    Gauss-Legendre quadrature on (0, r_max) with that many nodes, kept as an
    independent cross-check of the exact path.
    """
    if r_max <= 0:
        raise ValueError(f"r_max must be positive, got {r_max}")
    if mu.atoms == nu.atoms:
        return 0.0

    mu_locs, mu_masses = mu.locations, mu.masses
    nu_locs, nu_masses = nu.locations, nu.masses
    mu_abs = np.abs(mu_locs)
    nu_abs = np.abs(nu_locs)

    def d_at(radius: float) -> float:
        m_l, m_m = _restrict_by_radius(mu_locs, mu_masses, mu_abs, radius)
        n_l, n_m = _restrict_by_radius(nu_locs, nu_masses, nu_abs, radius)
        restricted_mu = _measure_from_arrays(m_l, m_m)
        restricted_nu = _measure_from_arrays(n_l, n_m)
        return prokhorov_distance(restricted_mu, restricted_nu)

    if quad_points > 0:
        nodes, weights = np.polynomial.legendre.leggauss(quad_points)
        r_values = 0.5 * r_max * (nodes + 1.0)
        scale = 0.5 * r_max
        total = 0.0
        for r, w in zip(r_values, weights):
            d = d_at(float(r))
            total += w * math.exp(-r) * d / (1.0 + d)
        return scale * total

    breaks = np.unique(np.concatenate([mu_abs, nu_abs]))
    breaks = breaks[(breaks > 0) & (breaks < r_max)]
    edges = np.concatenate([[0.0], breaks, [r_max]])
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        if right <= left:
            continue
        # On (left, right] the restrictions to (-r, r) are those at any
        # interior radius; atoms with modulus exactly `left` are included.
        d = d_at(0.5 * (left + right))
        if d > 0:
            total += (d / (1.0 + d)) * (math.exp(-left) - math.exp(-right))
    return total


def _measure_from_arrays(locs: np.ndarray, masses: np.ndarray) -> AtomicMeasure:
    return AtomicMeasure(tuple(zip(locs.tolist(), masses.tolist())))


def stable_mixing_constant(alpha: float) -> float:
    """The scale map pi/(2*sin(pi*alpha/2)*Gamma(alpha)) from spectral weight to c.

    Continuous at alpha = 1 with value pi/2.
    """
    if not 0.0 < alpha < 2.0:
        raise ValueError(f"alpha must lie in (0, 2), got {alpha}")
    return math.pi / (2.0 * math.sin(math.pi * alpha / 2.0) * math.gamma(alpha))


@dataclass(frozen=True)
class PushforwardResult:
    """Mixing measure image of a joint (location, spectral shape) law."""

    mixing: MixingMeasure
    gamma: float
    gamma_consistent: bool
    gamma_values: Tuple[float, ...]


NuAtom = Tuple[float, SpectralParams, float]


def _merge_mixing_atoms(atoms: Iterable[Tuple[StableParams, float]]) -> MixingMeasure:
    merged: dict = {}
    for params, weight in atoms:
        merged[params] = merged.get(params, 0.0) + weight
    return MixingMeasure(tuple(sorted(merged.items(), key=lambda kv: (kv[0].gamma, kv[0].c, kv[0].beta))))


def smoothed_location_drift(alpha: float) -> float:
    """Drift constant alpha*pi/(2*cos(pi*alpha/2)) linking location conventions.

    For a stable law with one-sided spectral weight, the smoothed-mean
    location functional settles this far away (per unit of c_plus - c_minus)
    from the canonical location parameter. The constant behaves like
    1/(1 - alpha) near the Cauchy index, where it has a pole.
    """
    if not 0.0 < alpha < 2.0 or alpha == 1.0:
        raise ValueError(f"alpha must lie in (0,1) or (1,2), got {alpha}")
    return alpha * math.pi / (2.0 * math.cos(math.pi * alpha / 2.0))


def pushforward_alpha(nu12_atoms: Sequence[NuAtom], alpha: float) -> PushforwardResult:
    """Map an atomic joint law of (location, spectral shape) to a stable mixing measure.

    Off the Cauchy index: each atom (eta, shape, weight) maps to the stable
    parameters c = constant(alpha) * (c_minus + c_plus),
    beta = (c_minus - c_plus)/(c_plus + c_minus) with 0/0 read as 0, and
    gamma = eta - (c_plus - c_minus) * smoothed_location_drift(alpha), the
    drift that converts the smoothed-mean location eta back to the canonical
    location. Both signs follow from the canonical exponent's skew term: a
    purely right-tailed spectral shape carries beta = -1 there. The location
    gamma must be the same for every atom; a spread is reported through
    gamma_consistent rather than raised, so callers can surface it as
    evidence.
    """
    if not (0.0 < alpha < 2.0) or abs(alpha - 1.0) < 1e-3:
        raise ValueError(
            f"alpha must lie in (0,1) or (1,2) and away from 1 by 1e-3, got {alpha}"
        )
    atoms = list(nu12_atoms)
    if not atoms:
        raise ValueError("need at least one atom")
    for eta, shape, weight in atoms:
        if not shape.is_null and shape.alpha != alpha:
            raise ValueError(
                f"spectral index {shape.alpha} does not match requested alpha {alpha}"
            )
    constant = stable_mixing_constant(alpha)
    drift = smoothed_location_drift(alpha)
    gammas = []
    mixing_atoms = []
    for eta, shape, weight in atoms:
        lam_total = shape.total_weight
        c = constant * lam_total
        skew_num = shape.c_plus - shape.c_minus
        beta = -skew_num / lam_total if lam_total > 0 else 0.0
        gamma = eta - skew_num * drift
        gammas.append(gamma)
        mixing_atoms.append((StableParams(alpha, gamma, c, beta), weight))
    spread = max(gammas) - min(gammas)
    consistent = spread <= 1e-9 * max(1.0, max(abs(g) for g in gammas))
    return PushforwardResult(
        mixing=_merge_mixing_atoms(mixing_atoms),
        gamma=gammas[0],
        gamma_consistent=consistent,
        gamma_values=tuple(gammas),
    )


def pushforward_one(nu12_atoms: Sequence[NuAtom], symmetric_check: float = 0.05) -> MixingMeasure:
    """Cauchy-index pushforward: c = (pi/2)*(c_minus + c_plus), beta = 0, gamma = eta.

    Every non-null atom must be symmetric to within the relative tolerance
    ``symmetric_check``; an asymmetric atom is an error naming the atom, since
    the Cauchy-limit regime forces the two spectral weights to agree.
    """
    atoms = list(nu12_atoms)
    if not atoms:
        raise ValueError("need at least one atom")
    mixing_atoms = []
    for index, (eta, shape, weight) in enumerate(atoms):
        if not shape.is_null and shape.alpha != 1.0:
            raise ValueError(
                f"spectral index {shape.alpha} in atom {index} is not the Cauchy index"
            )
        lam_total = shape.total_weight
        if lam_total > 0:
            asymmetry = abs(shape.c_plus - shape.c_minus)
            if asymmetry > symmetric_check * lam_total:
                raise ValueError(
                    f"atom {index} violates spectral symmetry: "
                    f"c_minus={shape.c_minus:g}, c_plus={shape.c_plus:g}"
                )
        c = (math.pi / 2.0) * lam_total
        mixing_atoms.append((StableParams(1.0, eta, c, 0.0), weight))
    return _merge_mixing_atoms(mixing_atoms)


def accompanying_pair(
    p,
    norming: NormingSequence,
    n: int,
    tau: float,
    grid: Optional[Sequence[float]] = None,
) -> Tuple[float, AtomicMeasure]:
    """Centering and jump measure of the accompanying infinitely divisible law.

    Input: realization p, norming, sample size, truncation tau, and an
    optional cell grid for the jump measure (default the module grid, with
    two unbounded end cells collapsed onto the boundary points).
    Output: (mu_n_tau, psi_n_tau) where, writing Y for X/b_n and m for the
    tau-truncated mean of Y,
      mu_n_tau = n*(m + E[(Y-m)/(1+(Y-m)**2)]) - c_n
      psi_n_tau(B) = n*E[(Y-m)**2/(1+(Y-m)**2); (Y-m) in B].
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    b, c_n = norming_values(norming, n, realization=p)
    m = p.truncated_mean(tau * b) / b

    def shifted(f: Callable[[float], float]) -> Callable[[float], float]:
        return lambda x: f(x / b - m)

    drift = p.expect(shifted(lambda y: y / (1.0 + y * y)))
    mu_n = n * (m + drift) - c_n

    pts = _validate_grid(DEFAULT_SPECTRAL_GRID if grid is None else grid)
    weight = shifted(lambda y: y * y / (1.0 + y * y))

    def cell_mass(y_lo: float, y_hi: float) -> float:
        x_lo = -math.inf if y_lo == -math.inf else b * (y_lo + m)
        x_hi = math.inf if y_hi == math.inf else b * (y_hi + m)
        return max(0.0, n * p.integrate(weight, x_lo, x_hi))

    atoms: List[Tuple[float, float]] = [(float(pts[0]), cell_mass(-math.inf, float(pts[0])))]
    for left, right in zip(pts[:-1], pts[1:]):
        mass = cell_mass(float(left), float(right))
        atoms.append((0.5 * (float(left) + float(right)), mass))
    atoms.append((float(pts[-1]), cell_mass(float(pts[-1]), math.inf)))
    return mu_n, AtomicMeasure.from_pairs([(loc, w) for loc, w in atoms if w > 0])


def char_quantities(
    p,
    norming: NormingSequence,
    n: int,
    tau: float,
    eps: float = 1.0,
    n_window: Optional[Sequence[int]] = None,
    grid: Optional[Sequence[float]] = None,
) -> CharQuantities:
    """Assemble the characteristic-quantity bundle for one realization at one n."""
    window = tuple(n_window) if n_window is not None else proxy_window(n)
    return CharQuantities(
        n=n,
        tau=tau,
        m_trunc=trunc_mean(p, norming, n, tau),
        m_smooth=smooth_mean(p, norming, n),
        sigma2_trunc=trunc_variance(p, norming, n, tau),
        sigma2_bar_proxy=sigma_bar_proxy(p, norming, window),
        lambda_n=spectral_measure_lambda(p, norming, n, grid),
        q_eps=tail_mass_quantity(p, norming, n, eps),
    )
