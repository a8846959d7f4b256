"""Tests for per-realization characteristic quantities, spectral measures,
the restriction metric, and the pushforward maps."""

import math

import numpy as np
import pytest

from stablemix.characteristics import (
    DEFAULT_SPECTRAL_GRID,
    CharQuantities,
    SpectralParams,
    accompanying_pair,
    char_quantities,
    discretize_spectral,
    dsharp,
    fit_spectrum,
    prokhorov_distance,
    proxy_window,
    pushforward_alpha,
    pushforward_one,
    sigma_bar_proxy,
    smooth_mean,
    spectral_cdf,
    spectral_measure_lambda,
    stable_mixing_constant,
    tail_function_L,
    tail_mass_quantity,
    tail_moment_ratio,
    trunc_mean,
    trunc_variance,
)
from stablemix.directing import (
    CauchyLaw,
    GaussianLaw,
    OneSidedParetoLaw,
    PointMassLaw,
    SymmetricParetoLaw,
    UniformLaw,
)
from stablemix.measures import AtomicMeasure
from stablemix.mixtures import mixture_cf
from stablemix.stable import NormingSequence, stable_cf

SQRT_NORMING = NormingSequence(alpha=2.0)
LINEAR_NORMING = NormingSequence(alpha=1.0)
PARETO_NORMING = NormingSequence(alpha=1.5)


class TestTruncMean:
    """Scaled truncated mean (n/b) * integral of x over |x| <= tau*b."""

    def test_point_mass_inside_window(self):
        value = trunc_mean(PointMassLaw(0.75), SQRT_NORMING, 100, 1.0)
        assert value == pytest.approx(7.5), f"expected (100/10)*0.75, got {value}"

    def test_point_mass_outside_window(self):
        value = trunc_mean(PointMassLaw(0.75), SQRT_NORMING, 100, 0.05)
        assert value == 0.0, f"a point outside the truncation window must give 0, got {value}"

    @pytest.mark.parametrize("law", [CauchyLaw(0.0, 1.0), UniformLaw(-1.0, 1.0)])
    def test_symmetric_laws_vanish(self, law):
        assert trunc_mean(law, LINEAR_NORMING, 1000, 1.0) == 0.0

    def test_shifted_gaussian_matches_law_scaling(self):
        p = GaussianLaw(0.3, 1.0)
        n, tau = 400, 2.0
        b = SQRT_NORMING.b(n)
        expected = (n / b) * p.truncated_mean(tau * b)
        np.testing.assert_allclose(trunc_mean(p, SQRT_NORMING, n, tau), expected, rtol=1e-14)

    def test_rejects_nonpositive_tau(self):
        with pytest.raises(ValueError, match="tau"):
            trunc_mean(PointMassLaw(0.0), SQRT_NORMING, 100, 0.0)


class TestSmoothMean:
    """Smoothed mean n * E[b*X/(b**2 + X**2)]."""

    def test_point_mass_closed_form(self):
        # b = n, point a: n * (n*a/(n**2 + a**2))
        n, a = 10, 2.0
        value = smooth_mean(PointMassLaw(a), LINEAR_NORMING, n)
        assert value == pytest.approx(n * n * a / (n * n + a * a)), (
            f"point-mass smoothed mean should be n^2 a/(n^2+a^2), got {value}"
        )

    @pytest.mark.parametrize("law", [CauchyLaw(0.0, 2.0), UniformLaw(-3.0, 3.0), GaussianLaw(0.0, 1.0)])
    def test_symmetric_laws_vanish(self, law):
        assert smooth_mean(law, SQRT_NORMING, 900) == 0.0

    def test_gaussian_monte_carlo_cross_check(self):
        p = GaussianLaw(1.0, 2.0)
        n = 25
        b = SQRT_NORMING.b(n)
        value = smooth_mean(p, SQRT_NORMING, n)
        rng = np.random.default_rng(42)
        x = rng.normal(1.0, 2.0, size=4_000_000)
        mc = float(np.mean(n * b * x / (b * b + x * x)))
        np.testing.assert_allclose(value, mc, rtol=1e-2)


class TestTruncVariance:
    """Truncated variance (n/b**2)(second moment - first moment squared)."""

    def test_uniform_full_window_is_one_third(self):
        # b = sqrt(n) and eta*b covering [-1, 1]: (n/b^2) * Var-like term = E[X^2] = 1/3
        value = trunc_variance(UniformLaw(-1.0, 1.0), SQRT_NORMING, 10_000, 1.0)
        np.testing.assert_allclose(value, 1.0 / 3.0, rtol=1e-12)

    def test_point_mass_has_no_spread(self):
        assert trunc_variance(PointMassLaw(0.75), SQRT_NORMING, 100, 1.0) == 0.0
        assert trunc_variance(PointMassLaw(0.75), SQRT_NORMING, 100, 0.01) == 0.0

    @pytest.mark.parametrize("n", [100, 10_000])
    def test_cauchy_closed_form(self, n):
        value = trunc_variance(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, 1.0)
        expected = (2.0 / math.pi) * (1.0 - math.atan(n) / n)
        np.testing.assert_allclose(value, expected, rtol=1e-12,
                                   err_msg=f"cauchy truncated variance off at n={n}")

    def test_rejects_nonpositive_eta(self):
        with pytest.raises(ValueError, match="eta"):
            trunc_variance(PointMassLaw(0.0), SQRT_NORMING, 100, -1.0)


class TestSigmaBarProxy:
    """Windowed stand-in for the limiting truncated-variance supremum."""

    def test_point_mass_is_zero(self):
        assert sigma_bar_proxy(PointMassLaw(0.75), SQRT_NORMING, (10, 100)) == 0.0

    def test_cauchy_window_oracle(self):
        # Anchor 1e4, b = n: the window maximum sits at the anchor itself and
        # equals (1/m)(2/pi)(T - atan T) with T = m/anchor = 1.
        window = (1000, 3162, 10_000)
        value = sigma_bar_proxy(CauchyLaw(0.0, 1.0), LINEAR_NORMING, window)
        expected = 1e-4 * (2.0 / math.pi) * (1.0 - math.atan(1.0))
        np.testing.assert_allclose(value, expected, rtol=1e-12)
        assert value <= 1e-3, f"cauchy proxy should be tiny, got {value}"

    def test_gaussian_proxy_collapses_with_anchor(self):
        p = GaussianLaw(0.0, 1.0)
        small = sigma_bar_proxy(p, SQRT_NORMING, proxy_window(100))
        large = sigma_bar_proxy(p, SQRT_NORMING, proxy_window(10_000))
        assert large < small, f"proxy should shrink with the anchor, got {small} -> {large}"
        assert large <= 1e-4, f"gaussian proxy at anchor 1e4 should collapse, got {large}"

    def test_rejects_bad_windows(self):
        with pytest.raises(ValueError, match="nonempty"):
            sigma_bar_proxy(PointMassLaw(0.0), SQRT_NORMING, ())
        with pytest.raises(ValueError, match="increasing"):
            sigma_bar_proxy(PointMassLaw(0.0), SQRT_NORMING, (100, 100))

    def test_proxy_window_shape(self):
        assert proxy_window(100) == (10, 32, 100)
        assert proxy_window(10_000) == (1000, 3162, 10_000)
        assert proxy_window(2) == (2,)
        with pytest.raises(ValueError, match="at least 2"):
            proxy_window(1)


class TestTailFunctionL:
    """Scaled tail function, negative arguments reading the left tail."""

    def test_cauchy_left_tail_limits_to_inverse_pi(self):
        n = 100_000
        value = tail_function_L(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, -1.0)
        np.testing.assert_allclose(value, n * math.atan(1.0 / n) / math.pi, rtol=1e-12)
        np.testing.assert_allclose(value, 1.0 / math.pi, rtol=1e-8)

    def test_cauchy_right_tail_is_negative(self):
        n = 100_000
        value = tail_function_L(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, 1.0)
        np.testing.assert_allclose(value, -1.0 / math.pi, rtol=1e-8)

    def test_gaussian_tail_is_negligible(self):
        value = tail_function_L(GaussianLaw(0.0, 1.0), SQRT_NORMING, 100, 1.0)
        np.testing.assert_allclose(value, -7.6199e-22, rtol=1e-3)

    def test_point_mass_inside_ball_gives_zero(self):
        assert tail_function_L(PointMassLaw(0.75), SQRT_NORMING, 100, 1.0) == 0.0
        assert tail_function_L(PointMassLaw(0.75), SQRT_NORMING, 100, -1.0) == 0.0

    def test_rejects_zero_argument(self):
        with pytest.raises(ValueError, match="x = 0"):
            tail_function_L(PointMassLaw(0.0), SQRT_NORMING, 100, 0.0)

    def test_tail_mass_quantity_cauchy(self):
        n = 10_000
        value = tail_mass_quantity(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, 1.0)
        np.testing.assert_allclose(value, n * 2.0 * math.atan(1.0 / n) / math.pi, rtol=1e-12)
        with pytest.raises(ValueError, match="eps"):
            tail_mass_quantity(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, 0.0)


class TestTailMomentRatio:
    """Tail-to-truncated-second-moment ratio used for index diagnosis."""

    def test_symmetric_pareto_oracle(self):
        # tail index 1.5, unit scale, x = 1e4: exact value sqrt(x)/(3(sqrt(x)-1))
        ratio = tail_moment_ratio(SymmetricParetoLaw(1.5, 1.0), 1e4)
        np.testing.assert_allclose(ratio, 100.0 / 297.0, rtol=1e-10)
        assert abs(ratio - (2.0 - 1.5) / 1.5) <= 0.05

    def test_cauchy_oracle(self):
        x = 1e4
        ratio = tail_moment_ratio(CauchyLaw(0.0, 1.0), x)
        expected = x * x * 2.0 * math.atan(1.0 / x) / (2.0 * (x - math.atan(x)))
        np.testing.assert_allclose(ratio, expected, rtol=1e-9)
        assert abs(ratio - 1.0) <= 0.05, f"cauchy ratio should approach (2-1)/1, got {ratio}"

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError, match="x must be positive"):
            tail_moment_ratio(CauchyLaw(0.0, 1.0), 0.0)
        with pytest.raises(ValueError, match="second moment"):
            tail_moment_ratio(PointMassLaw(0.0), 1.0)


class _ShrinkingTail:
    """Deliberately inconsistent tail curves for exercising the monotonicity guard."""

    def cdf(self, x):
        return 0.0

    def right_tail(self, x):
        return x / (1.0 + x)


class TestSpectralMeasure:
    """Discretization of the scaled spectral function onto the signed grid."""

    def test_cauchy_cumulative_near_inverse_pi(self):
        lam = spectral_measure_lambda(CauchyLaw(0.0, 1.0), LINEAR_NORMING, 100_000)
        positive = lam.mass_interval(0.0, 1.0, "right")
        negative = lam.mass_interval(-1.0, 0.0, "left")
        assert abs(positive - 1.0 / math.pi) <= 0.01, f"positive side mass {positive}"
        np.testing.assert_allclose(positive, negative, rtol=1e-12,
                                   err_msg="symmetric law must give symmetric spectral mass")

    def test_gaussian_mass_near_origin_vanishes(self):
        lam = spectral_measure_lambda(GaussianLaw(0.0, 1.0), SQRT_NORMING, 10_000)
        near = lam.restrict_open_ball(8.0).total_mass
        assert near <= 1e-20, f"gaussian spectral mass inside (-8, 8) should vanish, got {near}"

    def test_point_mass_at_zero_is_null(self):
        lam = spectral_measure_lambda(PointMassLaw(0.0), SQRT_NORMING, 100)
        assert lam.atoms == (), f"expected the null measure, got {lam.atoms}"

    def test_point_mass_off_zero_lands_in_one_far_cell(self):
        # point 0.75, b = 10: the transition at x = b/0.75 = 13.3 lies in (8, 16]
        lam = spectral_measure_lambda(PointMassLaw(0.75), SQRT_NORMING, 100)
        assert lam.total_mass == pytest.approx(100.0)
        assert len(lam.atoms) == 1
        location = lam.atoms[0][0]
        np.testing.assert_allclose(location, math.sqrt(8.0 * 16.0), rtol=1e-12)

    def test_monotonicity_violation_raises(self):
        with pytest.raises(RuntimeError, match="negative"):
            spectral_measure_lambda(_ShrinkingTail(), LINEAR_NORMING, 10)

    def test_grid_refinement_preserves_total_mass(self):
        refined = [-(2.0 ** (k / 2.0)) for k in range(20, -21, -1)]
        refined += [2.0 ** (k / 2.0) for k in range(-20, 21)]
        p = CauchyLaw(0.0, 1.0)
        coarse = spectral_measure_lambda(p, LINEAR_NORMING, 1000)
        fine = spectral_measure_lambda(p, LINEAR_NORMING, 1000, grid=refined)
        np.testing.assert_allclose(coarse.total_mass, fine.total_mass, rtol=1e-12)
        np.testing.assert_allclose(
            coarse.mass_interval(0.0, 2000.0), fine.mass_interval(0.0, 2000.0), rtol=1e-12
        )

    @pytest.mark.parametrize("grid", [[1.0], [0.5, 0.0, 1.0], [1.0, 1.0], [2.0, 1.0]])
    def test_rejects_malformed_grids(self, grid):
        with pytest.raises(ValueError):
            spectral_measure_lambda(CauchyLaw(0.0, 1.0), LINEAR_NORMING, 10, grid=grid)

    def test_default_grid_shape(self):
        assert len(DEFAULT_SPECTRAL_GRID) == 42
        assert DEFAULT_SPECTRAL_GRID[0] == -1024.0
        assert DEFAULT_SPECTRAL_GRID[-1] == 1024.0
        assert min(abs(g) for g in DEFAULT_SPECTRAL_GRID) == 2.0 ** -10


class TestSpectralShape:
    """Exact power-law spectral shapes and their discretization."""

    def test_cumulative_values(self):
        params = SpectralParams(1.5, 0.5, 2.0)
        assert spectral_cdf(params, 4.0) == pytest.approx(16.0)
        assert spectral_cdf(params, -4.0) == pytest.approx(-4.0)
        with pytest.raises(ValueError, match="undefined"):
            spectral_cdf(params, 0.0)

    def test_discretization_cumulative_matches_shape(self):
        params = SpectralParams(1.5, 0.4, 1.1)
        atoms = discretize_spectral(params)
        for edge in (0.25, 1.0, 8.0):
            expected = 1.1 * (edge ** 1.5 - (2.0 ** -10) ** 1.5)
            np.testing.assert_allclose(
                atoms.mass_interval(0.0, edge, "right"), expected, rtol=1e-10,
                err_msg=f"cumulative mismatch at edge {edge}"
            )

    def test_null_shape_discretizes_to_null(self):
        assert discretize_spectral(SpectralParams(1.0, 0.0, 0.0)).atoms == ()

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="spectral index"):
            SpectralParams(2.0, 1.0, 1.0)
        with pytest.raises(ValueError, match="nonnegative"):
            SpectralParams(1.0, -0.1, 1.0)


def _random_measure(rng, max_atoms=5):
    k = int(rng.integers(2, max_atoms + 1))
    locations = rng.uniform(-5.0, 5.0, size=k)
    masses = rng.uniform(0.1, 2.0, size=k)
    return AtomicMeasure.from_pairs(zip(locations.tolist(), masses.tolist()))


def _brute_prokhorov(mu, nu, tol=1e-6):
    """Reference distance via subset enumeration and bisection."""

    def violation(a, b, eps):
        locs, masses = a.locations, a.masses
        worst = 0.0
        for bits in range(1, 1 << len(locs)):
            chosen = [i for i in range(len(locs)) if bits >> i & 1]
            intervals = sorted((locs[i] - eps, locs[i] + eps) for i in chosen)
            merged = [intervals[0]]
            for lo, hi in intervals[1:]:
                if lo <= merged[-1][1]:
                    merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
                else:
                    merged.append((lo, hi))
            cover = sum(b.mass_interval(lo, hi, "both") for lo, hi in merged)
            worst = max(worst, float(masses[chosen].sum()) - cover)
        return worst

    def feasible(eps):
        return violation(mu, nu, eps) <= eps and violation(nu, mu, eps) <= eps

    lo, hi = 0.0, max(mu.total_mass, nu.total_mass)
    if feasible(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


class TestProkhorov:
    """Levy-Prokhorov distance between finite atomic measures."""

    def test_identical_measures(self):
        m = AtomicMeasure.from_pairs([(0.0, 1.0), (2.0, 0.5)])
        assert prokhorov_distance(m, m) == 0.0

    def test_shifted_point_masses(self):
        d = prokhorov_distance(
            AtomicMeasure.from_pairs([(0.0, 1.0)]), AtomicMeasure.from_pairs([(0.3, 1.0)])
        )
        np.testing.assert_allclose(d, 0.3, atol=1e-8)

    def test_mass_deficit_dominates(self):
        doubled = AtomicMeasure.from_pairs([(0.0, 2.0)])
        single = AtomicMeasure.from_pairs([(0.0, 1.0)])
        assert prokhorov_distance(doubled, single) == 1.0

    def test_null_against_point(self):
        d = prokhorov_distance(AtomicMeasure.null(), AtomicMeasure.from_pairs([(1.0, 1.0)]))
        assert d == 1.0

    @pytest.mark.parametrize("mass,shift,expected", [(0.2, 0.5, 0.2), (1.0, 0.3, 0.3)])
    def test_single_atom_shift_formula(self, mass, shift, expected):
        d = prokhorov_distance(
            AtomicMeasure.from_pairs([(0.0, mass)]),
            AtomicMeasure.from_pairs([(shift, mass)]),
        )
        np.testing.assert_allclose(d, expected, atol=1e-8,
                                   err_msg=f"min(mass, shift) rule failed for {mass}, {shift}")

    def test_matches_subset_enumeration(self):
        rng = np.random.default_rng(42)
        for trial in range(25):
            mu = _random_measure(rng)
            nu = _random_measure(rng)
            fast = prokhorov_distance(mu, nu)
            slow = _brute_prokhorov(mu, nu)
            assert abs(fast - slow) <= 2e-6, (
                f"trial {trial}: dynamic program {fast} vs enumeration {slow}"
            )

    def test_symmetry(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            mu = _random_measure(rng)
            nu = _random_measure(rng)
            assert abs(prokhorov_distance(mu, nu) - prokhorov_distance(nu, mu)) <= 1e-9


class TestDsharp:
    """Exponentially weighted restriction metric."""

    def test_identity_is_exactly_zero(self):
        m = AtomicMeasure.from_pairs([(0.5, 1.0), (-2.0, 0.25)])
        same = AtomicMeasure.from_pairs([(0.5, 1.0), (-2.0, 0.25)])
        assert dsharp(m, m) == 0.0
        assert dsharp(m, same) == 0.0

    def test_null_against_point_oracle(self):
        # d_r jumps from 0 to 1 at r = 0.5, so the integral is
        # (1/2)(e^{-1/2} - e^{-20}) exactly.
        value = dsharp(AtomicMeasure.null(), AtomicMeasure.from_pairs([(0.5, 1.0)]))
        expected = 0.5 * (math.exp(-0.5) - math.exp(-20.0))
        np.testing.assert_allclose(value, expected, rtol=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            mu = _random_measure(rng)
            nu = _random_measure(rng)
            np.testing.assert_allclose(dsharp(mu, nu), dsharp(nu, mu), rtol=1e-12)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(42)
        for trial in range(40):
            a, b, c = (_random_measure(rng) for _ in range(3))
            d_ac = dsharp(a, c)
            d_ab = dsharp(a, b)
            d_bc = dsharp(b, c)
            assert d_ac <= d_ab + d_bc + 1e-6, (
                f"trial {trial}: {d_ac} > {d_ab} + {d_bc}"
            )

    def test_gauss_legendre_cross_check(self):
        mu = AtomicMeasure.null()
        nu = AtomicMeasure.from_pairs([(0.5, 1.0)])
        exact = dsharp(mu, nu)
        quad = dsharp(mu, nu, quad_points=2000)
        np.testing.assert_allclose(quad, exact, atol=5e-3)

    def test_truncation_radius_changes_little(self):
        rng = np.random.default_rng(42)
        mu = _random_measure(rng)
        nu = _random_measure(rng)
        near = dsharp(mu, nu, r_max=20.0)
        far = dsharp(mu, nu, r_max=30.0)
        assert abs(near - far) <= math.exp(-20.0) + 1e-15

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError, match="r_max"):
            dsharp(AtomicMeasure.null(), AtomicMeasure.null(), r_max=0.0)

    def test_bounded_by_one(self):
        heavy = AtomicMeasure.from_pairs([(1.0, 1e6)])
        value = dsharp(AtomicMeasure.null(), heavy)
        assert value <= 1.0, f"the metric is bounded by 1, got {value}"


class TestFitSpectrum:
    """Power-law weight recovery and the restriction-metric residual."""

    def test_recovers_exact_shape(self):
        truth = SpectralParams(1.5, 0.4, 1.1)
        fitted, residual = fit_spectrum(discretize_spectral(truth), 1.5)
        np.testing.assert_allclose(fitted.c_minus, 0.4, rtol=5e-3)
        np.testing.assert_allclose(fitted.c_plus, 1.1, rtol=5e-3)
        assert residual <= 0.01, f"self-fit residual should be tiny, got {residual}"

    def test_cauchy_empirical_spectrum(self):
        lam = spectral_measure_lambda(CauchyLaw(0.0, 1.0), LINEAR_NORMING, 100_000)
        fitted, residual = fit_spectrum(lam, 1.0)
        np.testing.assert_allclose(fitted.c_plus, 1.0 / math.pi, atol=0.01)
        np.testing.assert_allclose(fitted.c_minus, fitted.c_plus, rtol=1e-10)
        assert residual <= 0.05, f"correct-index residual too large: {residual}"

    def test_one_sided_pareto_nulls_the_left_side(self):
        lam = spectral_measure_lambda(OneSidedParetoLaw(1.5, 1.0), PARETO_NORMING, 100_000)
        fitted, residual = fit_spectrum(lam, 1.5)
        assert fitted.c_minus == 0.0, f"left side should be null, got {fitted.c_minus}"
        np.testing.assert_allclose(fitted.c_plus, 1.0, atol=0.01)
        assert residual <= 0.05, f"one-sided residual too large: {residual}"

    def test_wrong_index_inflates_residual(self):
        lam = spectral_measure_lambda(CauchyLaw(0.0, 1.0), LINEAR_NORMING, 100_000)
        _, residual = fit_spectrum(lam, 1.5)
        assert residual > 0.05, (
            f"fitting index 1.5 to an index-1 spectrum must overflow the tolerance, got {residual}"
        )

    def test_null_measure_fits_null_shape(self):
        fitted, residual = fit_spectrum(AtomicMeasure.null(), 1.0)
        assert fitted.is_null
        assert residual == 0.0

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError, match="window"):
            fit_spectrum(AtomicMeasure.null(), 1.0, fit_window=(1.0, 0.5))


class TestStableMixingConstant:
    """Scale constant mapping spectral weight to the stable scale."""

    @pytest.mark.parametrize("alpha", [0.3, 0.7, 1.3, 1.9])
    def test_reflection_route_agrees(self, alpha):
        direct = stable_mixing_constant(alpha)
        reflected = math.gamma(1.0 - alpha) * math.cos(math.pi * alpha / 2.0)
        np.testing.assert_allclose(direct, reflected, rtol=1e-12,
                                   err_msg=f"two evaluation routes disagree at alpha={alpha}")

    def test_value_at_three_halves(self):
        np.testing.assert_allclose(stable_mixing_constant(1.5), math.sqrt(2.0 * math.pi), rtol=1e-12)

    @pytest.mark.parametrize("alpha", [1.0 - 1e-6, 1.0 + 1e-6])
    def test_continuous_through_one(self, alpha):
        np.testing.assert_allclose(stable_mixing_constant(alpha), math.pi / 2.0, rtol=1e-4)

    @pytest.mark.parametrize("alpha", [0.0, 2.0, -0.5])
    def test_domain(self, alpha):
        with pytest.raises(ValueError):
            stable_mixing_constant(alpha)


class TestPushforwardAlpha:
    """Mapping (location, spectral shape) pairs onto stable parameter atoms."""

    def test_symmetric_atom_keeps_location(self):
        shape = SpectralParams(1.5, 0.8, 0.8)
        result = pushforward_alpha([(2.0, shape, 1.0)], 1.5)
        ((params, weight),) = result.mixing.atoms
        assert params.gamma == 2.0, "symmetric shapes must not shift the location"
        assert params.beta == 0.0
        np.testing.assert_allclose(params.c, stable_mixing_constant(1.5) * 1.6, rtol=1e-12)
        assert weight == 1.0
        assert result.gamma_consistent

    def test_asymmetric_atom_shifts_location_and_skews(self):
        shape = SpectralParams(1.5, 0.2, 0.6)
        drift = 1.5 * math.pi / (2.0 * math.cos(0.75 * math.pi))
        result = pushforward_alpha([(0.7 + 0.4 * drift, shape, 1.0)], 1.5)
        ((params, _),) = result.mixing.atoms
        np.testing.assert_allclose(params.beta, -0.5, rtol=1e-12)
        np.testing.assert_allclose(params.gamma, 0.7, rtol=1e-12)

    @pytest.mark.parametrize("alpha,c_minus,c_plus", [
        (1.5, 0.0, 1.0),
        (1.5, 0.5, 2.0),
        (1.3, 1.0, 0.0),
        (0.7, 0.25, 1.0),
    ])
    def test_skewed_image_matches_levy_exponent(self, alpha, c_minus, c_plus):
        # Independent oracle: the exponent of a stable law with tail weights
        # (c_minus, c_plus) and vanishing smoothed-mean location is
        # alpha*Gamma(-alpha)*[c_plus*(-it)^alpha + c_minus*(it)^alpha],
        # evaluated on the principal branch.
        total = c_minus + c_plus
        drift = alpha * math.pi / (2.0 * math.cos(math.pi * alpha / 2.0))
        eta = (c_plus - c_minus) * drift
        shape = SpectralParams(alpha, c_minus, c_plus)
        result = pushforward_alpha([(eta, shape, 1.0)], alpha)
        ((params, _),) = result.mixing.atoms
        np.testing.assert_allclose(params.c, stable_mixing_constant(alpha) * total, rtol=1e-12)
        np.testing.assert_allclose(params.beta, (c_minus - c_plus) / total, rtol=1e-12)
        np.testing.assert_allclose(params.gamma, 0.0, atol=1e-12)
        coeff = alpha * math.gamma(-alpha)
        for t in (0.4, 1.0, 2.3, -0.8):
            exponent = coeff * (
                c_plus * (-1j * t) ** alpha + c_minus * (1j * t) ** alpha
            )
            np.testing.assert_allclose(
                complex(stable_cf(t, params)),
                complex(np.exp(exponent)),
                rtol=1e-10,
                err_msg=f"image law disagrees with the tail-weight exponent at t={t}",
            )

    def test_null_shape_becomes_point_mass(self):
        result = pushforward_alpha([(1.5, SpectralParams(1.5, 0.0, 0.0), 1.0)], 1.5)
        ((params, _),) = result.mixing.atoms
        assert params.is_point_mass
        assert params.gamma == 1.5

    def test_gamma_inconsistency_is_flagged(self):
        atoms = [
            (0.0, SpectralParams(1.5, 0.5, 0.5), 0.5),
            (1.0, SpectralParams(1.5, 0.5, 0.5), 0.5),
        ]
        result = pushforward_alpha(atoms, 1.5)
        assert not result.gamma_consistent
        assert result.gamma_values == (0.0, 1.0)
        assert len(result.mixing.atoms) == 2

    def test_identical_images_merge(self):
        shape = SpectralParams(1.5, 0.3, 0.3)
        result = pushforward_alpha([(0.0, shape, 0.25), (0.0, shape, 0.75)], 1.5)
        ((_, weight),) = result.mixing.atoms
        assert weight == pytest.approx(1.0)

    def test_mixture_cf_matches_manual_sum(self):
        atoms = [
            (0.0, SpectralParams(1.5, 0.4, 0.4), 0.5),
            (0.0, SpectralParams(1.5, 1.0, 1.0), 0.5),
        ]
        result = pushforward_alpha(atoms, 1.5)
        t = 0.7
        manual = sum(w * stable_cf(t, p) for p, w in result.mixing.atoms)
        np.testing.assert_allclose(
            complex(mixture_cf(t, result.mixing)), complex(manual), rtol=1e-12
        )

    def test_rejections(self):
        good = SpectralParams(1.5, 0.5, 0.5)
        with pytest.raises(ValueError, match="alpha"):
            pushforward_alpha([(0.0, good, 1.0)], 1.0005)
        with pytest.raises(ValueError, match="does not match"):
            pushforward_alpha([(0.0, SpectralParams(1.2, 0.5, 0.5), 1.0)], 1.5)
        with pytest.raises(ValueError, match="at least one"):
            pushforward_alpha([], 1.5)
        with pytest.raises(ValueError, match="sum to 1"):
            pushforward_alpha([(0.0, good, 0.4)], 1.5)


class TestPushforwardOne:
    """Cauchy-index pushforward with the symmetry requirement."""

    def test_unit_weights_give_unit_scale(self):
        shape = SpectralParams(1.0, 1.0 / math.pi, 1.0 / math.pi)
        mixing = pushforward_one([(0.5, shape, 1.0)])
        ((params, _),) = mixing.atoms
        np.testing.assert_allclose(params.c, 1.0, rtol=1e-12)
        assert params.gamma == 0.5
        assert params.beta == 0.0
        assert params.alpha == 1.0

    def test_two_atoms(self):
        atoms = [
            (0.5, SpectralParams(1.0, 2.0 / math.pi, 2.0 / math.pi), 0.4),
            (-1.0, SpectralParams(1.0, 1.0 / math.pi, 1.0 / math.pi), 0.6),
        ]
        mixing = pushforward_one(atoms)
        scales = sorted(p.c for p, _ in mixing.atoms)
        np.testing.assert_allclose(scales, [1.0, 2.0], rtol=1e-12)

    def test_slight_asymmetry_within_tolerance(self):
        shape = SpectralParams(1.0, (1.0 / math.pi) * 0.99, (1.0 / math.pi) * 1.01)
        mixing = pushforward_one([(0.0, shape, 1.0)])
        ((params, _),) = mixing.atoms
        np.testing.assert_allclose(params.c, (math.pi / 2.0) * shape.total_weight, rtol=1e-12)

    def test_asymmetric_atom_is_named_in_error(self):
        atoms = [
            (0.0, SpectralParams(1.0, 0.3, 0.3), 0.5),
            (0.0, SpectralParams(1.0, 0.1, 0.5), 0.5),
        ]
        with pytest.raises(ValueError, match="atom 1"):
            pushforward_one(atoms)

    def test_null_shape_becomes_point_mass(self):
        mixing = pushforward_one([(2.0, SpectralParams(1.0, 0.0, 0.0), 1.0)])
        ((params, _),) = mixing.atoms
        assert params.is_point_mass
        assert params.gamma == 2.0

    def test_rejects_wrong_index(self):
        with pytest.raises(ValueError, match="Cauchy index"):
            pushforward_one([(0.0, SpectralParams(1.5, 0.5, 0.5), 1.0)])


class TestAccompanyingPair:
    """Centering and jump measure of the accompanying law."""

    def test_point_mass_at_zero(self):
        mu, psi = accompanying_pair(PointMassLaw(0.0), SQRT_NORMING, 100, 1.0)
        assert mu == 0.0
        assert psi.atoms == ()

    def test_centered_point_mass_cancels_exactly(self):
        norming = NormingSequence(alpha=2.0, centering_kind="n_times_mean")
        mu, psi = accompanying_pair(PointMassLaw(0.75), norming, 100, 1.0)
        assert abs(mu) <= 1e-12, f"mean centering should cancel the drift, got {mu}"
        assert psi.atoms == ()

    def test_gaussian_total_matches_direct_expectation(self):
        p = GaussianLaw(1.0, 1.0)
        n, tau = 100, 1.0
        b = SQRT_NORMING.b(n)
        m = p.truncated_mean(tau * b) / b
        direct = n * p.expect(lambda x: (x / b - m) ** 2 / (1.0 + (x / b - m) ** 2))
        _, psi = accompanying_pair(p, SQRT_NORMING, n, tau)
        np.testing.assert_allclose(psi.total_mass, direct, atol=1e-5)

    def test_standard_gaussian_total_near_one(self):
        _, psi = accompanying_pair(GaussianLaw(0.0, 1.0), SQRT_NORMING, 10_000, 1.0)
        np.testing.assert_allclose(psi.total_mass, 1.0, atol=0.01)

    def test_cauchy_totals_increase_toward_one(self):
        totals = []
        for n in (100, 1000):
            mu, psi = accompanying_pair(CauchyLaw(0.0, 1.0), LINEAR_NORMING, n, 1.0)
            assert abs(mu) <= 1e-6, f"symmetric law should center at 0, got {mu}"
            np.testing.assert_allclose(psi.total_mass, n / (n + 1.0), rtol=1e-5)
            totals.append(psi.total_mass)
        assert totals[0] < totals[1] < 1.0

    def test_rejects_nonpositive_tau(self):
        with pytest.raises(ValueError, match="tau"):
            accompanying_pair(PointMassLaw(0.0), SQRT_NORMING, 100, 0.0)


class TestCharQuantities:
    """The assembled per-realization bundle."""

    def test_fields_match_components(self):
        p = CauchyLaw(0.0, 1.0)
        n, tau = 1000, 1.0
        bundle = char_quantities(p, LINEAR_NORMING, n, tau)
        assert bundle.n == n and bundle.tau == tau
        assert bundle.m_trunc == trunc_mean(p, LINEAR_NORMING, n, tau)
        assert bundle.m_smooth == smooth_mean(p, LINEAR_NORMING, n)
        assert bundle.sigma2_trunc == trunc_variance(p, LINEAR_NORMING, n, tau)
        assert bundle.sigma2_bar_proxy == sigma_bar_proxy(p, LINEAR_NORMING, proxy_window(n))
        assert bundle.q_eps == tail_mass_quantity(p, LINEAR_NORMING, n, 1.0)
        assert bundle.lambda_n.atoms == spectral_measure_lambda(p, LINEAR_NORMING, n).atoms

    def test_validation(self):
        null = AtomicMeasure.null()
        with pytest.raises(ValueError, match="variance"):
            CharQuantities(10, 1.0, 0.0, 0.0, -1.0, 0.0, null, 0.0)
        with pytest.raises(ValueError, match="tail"):
            CharQuantities(10, 1.0, 0.0, 0.0, 0.0, 0.0, null, -0.5)
