import math

import numpy as np
import pytest
from scipy.integrate import quad

from sevolab.exponents import SystemParams
from sevolab.profiles import GaussianProfile
from sevolab.testfn import (
    BracketCombo,
    InsufficientSnapshotsError,
    TestFunctionSpec,
    _bracket_d2,
    bracket_transform_1d,
    compact_cutoff,
    envelope_ratio,
    eta,
    eta_derivs,
    eta_ratio_sup,
    fd_neg_laplacian,
    fractional_laplacian_bracket,
    fractional_laplacian_fourier,
    fractional_laplacian_gamma,
    functionals,
    integer_laplacian_bracket,
    neg_laplacian_bracket,
    plancherel_pairing,
    smooth_cutoff,
)
from sevolab.torus import GridSpec, RunResult


class TestBracketRecursion:
    def test_one_step_at_origin(self):
        combo = neg_laplacian_bracket(2.0, 1)
        # -f''(0) = 2 for f = (1+x^2)^{-1}
        assert combo.value(0.0) == pytest.approx(2.0)
        fd = fd_neg_laplacian(lambda y: 1.0 / (1.0 + y * y), 0.0, 1, m=1, h=5e-3)
        assert combo.value(0.0) == pytest.approx(fd, abs=1e-8)

    @pytest.mark.parametrize("ell,n", [(1.0, 1), (2.5, 2), (4.0, 3)])
    def test_coefficient_sum_is_ell_n(self, ell, n):
        combo = neg_laplacian_bracket(ell, n)
        assert sum(c for c, _ in combo.terms) == pytest.approx(ell * n)
        assert combo.value(0.0) == pytest.approx(ell * n)

    def test_degenerate_coefficient(self):
        # ell = n - 2 kills the first term
        combo = neg_laplacian_bracket(1.0, 3)
        assert len(combo.terms) == 1
        assert combo.terms[0] == (3.0, 5.0)

    def test_single_step_equals_one_iteration(self):
        assert integer_laplacian_bracket(2.0, 1, 2).terms == \
            neg_laplacian_bracket(2.0, 2).terms

    def test_two_steps_against_nested_differences(self):
        combo = integer_laplacian_bracket(1.0, 2, 1)
        fd = fd_neg_laplacian(lambda y: (1.0 + y * y) ** -0.5, 1.0, 1, m=2, h=7e-3)
        assert combo.value(1.0) == pytest.approx(fd, abs=1e-6)

    def test_two_step_exponent_set(self):
        for r in (1.0, 2.5):
            combo = integer_laplacian_bracket(r, 2, 1)
            assert [e for _, e in combo.terms] == [r + 4, r + 6, r + 8]

    def test_taylor_derivatives_match_differences(self):
        for c, a, z in [(1.0, 1.0, 0.0), (2.0, 1.7, 0.8), (0.5, 3.0, 2.5)]:
            d2, d4 = _bracket_d2(c, a, z)
            f = lambda y: c * (1.0 + y * y) ** (-a)
            h = 1e-2
            fd2 = (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h)
                   - f(z - 2 * h)) / (12 * h * h)
            assert d2 == pytest.approx(fd2, rel=1e-6)


class TestFractionalEvaluators:
    single = BracketCombo(((1.0, 2.0),))

    def test_half_laplacian_closed_form(self):
        # f = 1/(1+x^2) is pi * the Poisson kernel at t = 1, so
        # (-Lap)^(1/2) f = -d/dt [t/(t^2+x^2)] at t=1 = (1-x^2)/(1+x^2)^2
        for x in (0.0, 0.5, 2.0, 7.0):
            expect = (1 - x * x) / (1 + x * x) ** 2
            got = fractional_laplacian_bracket(self.single, 0.5, x, 1)
            assert got == pytest.approx(expect, abs=1e-10)

    def test_two_methods_agree(self):
        for s, x in [(0.3, 0.0), (0.5, 1.0), (0.7, 4.0)]:
            hyper = fractional_laplacian_bracket(self.single, s, x, 1)
            fourier = fractional_laplacian_fourier(self.single, s, x)
            assert hyper == pytest.approx(fourier, rel=1e-5, abs=1e-12)

    def test_small_s_is_near_identity(self):
        got = fractional_laplacian_bracket(self.single, 1e-4, 1.0, 1)
        assert got == pytest.approx(self.single.value(1.0), rel=0.01)

    def test_linearity(self):
        doubled = BracketCombo(((2.0, 2.0), (3.0, 4.0)))
        base = BracketCombo(((1.0, 2.0), (1.5, 4.0)))
        a = fractional_laplacian_bracket(doubled, 0.4, 0.7, 1)
        b = fractional_laplacian_bracket(base, 0.4, 0.7, 1)
        assert a == pytest.approx(2.0 * b, rel=1e-13)

    def test_transform_closed_form_against_known_pairs(self):
        # the transforms of <y>^-2 and <y>^-4 are elementary
        for xi in (0.3, 1.0, 4.0):
            assert float(bracket_transform_1d(2.0, xi)) == \
                pytest.approx(math.pi * math.exp(-xi), rel=1e-12)
            assert float(bracket_transform_1d(4.0, xi)) == \
                pytest.approx(math.pi / 2 * (1 + xi) * math.exp(-xi), rel=1e-12)

    def test_transform_closed_form_against_direct_quadrature(self):
        # fractional exponent: validate against a long truncated cosine integral
        for xi in (0.5, 1.5):
            direct, _ = quad(lambda y: (1 + y * y) ** (-3.5 / 2) * math.cos(xi * y),
                             0, 400, limit=2000)
            direct *= 2.0
            closed = float(bracket_transform_1d(3.5, xi))
            assert closed == pytest.approx(direct, rel=1e-6)

    def test_composition_consistency_at_integer_order(self):
        # (-Lap)^(1+s) with s -> 0 approaches the pure recursion result
        combo = integer_laplacian_bracket(2.0, 1, 1)
        via_small_s = fractional_laplacian_bracket(combo, 1e-4, 0.8, 1)
        assert via_small_s == pytest.approx(combo.value(0.8), rel=0.01)

    @pytest.mark.parametrize("n", [2, 3])
    def test_higher_dimension_scaling_consistency(self, n):
        spec = TestFunctionSpec(gamma=1.5, r=0.9 * n, R=3.0)
        direct = fractional_laplacian_gamma(spec, 2.0, n, factored=False)
        factored = fractional_laplacian_gamma(spec, 2.0, n, factored=True)
        assert direct == pytest.approx(factored, rel=1e-6)


class TestGammaEvaluator:
    def test_integer_order_matches_fd(self):
        spec = TestFunctionSpec(gamma=2.0, r=1.0, R=1.0)
        got = fractional_laplacian_gamma(spec, 1.0, 1)
        fd = fd_neg_laplacian(lambda y: (1.0 + y * y) ** -0.5, 1.0, 1, m=2, h=7e-3)
        assert got == pytest.approx(fd, abs=1e-6)

    def test_integer_order_scaled(self):
        spec = TestFunctionSpec(gamma=1.0, r=2.0, R=5.0)
        combo = integer_laplacian_bracket(2.0, 1, 1)
        assert fractional_laplacian_gamma(spec, 3.0, 1) == \
            pytest.approx(combo.value(3.0 / 5.0) / 25.0, rel=1e-12)

    def test_scaling_identity_nondyadic(self):
        spec = TestFunctionSpec(gamma=1.5, r=2.0, R=3.0)
        for x in (0.0, 0.7, 5.3, 40.0):
            direct = fractional_laplacian_gamma(spec, x, 1, factored=False)
            factored = fractional_laplacian_gamma(spec, x, 1, factored=True)
            assert direct == pytest.approx(factored, rel=1e-8)

    def test_envelope_bounded_for_blowup_construction(self):
        # gamma = 1.5, r = n + 2s = 2: decay envelope <x>^(-n-2s)
        case, const = envelope_ratio(1.5, 2.0, 1,
                                     [0.0] + list(np.geomspace(0.1, 1e3, 8)))
        assert case == "above"
        assert math.isfinite(const)
        assert const > 0

    def test_blowup_spec_construction(self):
        params = SystemParams(1, 1.5, 1.5, 2, 2)
        spec = TestFunctionSpec.for_blowup(params, 8.0)
        assert spec.gamma == 1.5
        assert spec.theta == pytest.approx(0.5)
        assert spec.r == pytest.approx(1 + 2 * 0.5)


class TestCutoffs:
    def test_eta_plateaus(self):
        assert eta(0.3, 4.0) == 1.0
        assert eta(0.0, 4.0) == 1.0
        assert eta(1.2, 4.0) == 0.0

    def test_eta_monotone_nonincreasing(self):
        lam = 4.0
        ts = np.linspace(0.0, 1.0, 2001)
        vals = [eta(float(t), lam) for t in ts]
        assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_eta_derivatives_match_numerics(self):
        lam = 4.0
        h = 1e-6
        for t in (0.55, 0.7, 0.9):
            e, e1, e2 = eta_derivs(t, lam)
            num1 = (eta(t + h, lam) - eta(t - h, lam)) / (2 * h)
            num2 = (eta(t + h, lam) - 2 * e + eta(t - h, lam)) / (h * h)
            assert e1 == pytest.approx(num1, rel=1e-6, abs=1e-9)
            assert e2 == pytest.approx(num2, rel=1e-4, abs=1e-6)

    def test_chi_is_c2_at_junctions(self):
        # chi'' is Lipschitz with constant < 1000; values across each
        # junction may differ by that times the probe offset
        probe = 1e-10
        for t0 in (0.5, 1.0):
            inside = smooth_cutoff(t0 + probe if t0 == 0.5 else t0 - probe)
            outside = smooth_cutoff(t0 - probe if t0 == 0.5 else t0 + probe)
            for a, b in zip(inside, outside):
                assert a == pytest.approx(b, abs=1000 * probe)

    def test_eta_ratio_sup_reported_finite(self):
        # kappa = p = 2, conjugate 2: lam = 2 * max(p', q') = 4 suffices
        sup = eta_ratio_sup(4.0, 2.0)
        assert math.isfinite(sup)
        assert sup > 0

    def test_compact_cutoff_support(self):
        assert compact_cutoff(0.3, 4.0) == 1.0
        assert compact_cutoff(1.1, 4.0) == 0.0
        vals = compact_cutoff(np.array([0.6, 0.8]), 4.0)
        assert np.all((0 < vals) & (vals < 1))


class TestPlancherelPairing:
    def test_fractional_pairing(self):
        spec = TestFunctionSpec(gamma=1.5, r=2.0, R=4.0)
        lhs, rhs = plancherel_pairing(spec, GaussianProfile(1.0, 1.0), 1.5)
        assert abs(lhs - rhs) / abs(lhs) < 1e-6

    def test_pairing_other_order(self):
        spec = TestFunctionSpec(gamma=1.25, r=1.5, R=2.0)
        lhs, rhs = plancherel_pairing(spec, GaussianProfile(0.5, 1.2), 1.25)
        assert abs(lhs - rhs) / abs(lhs) < 1e-6


def frozen_result(grid, times, u_value, v_value):
    ones = np.ones(grid.points_per_dim)
    snaps = [(float(t), u_value * ones, v_value * ones) for t in times]
    return RunResult(series={}, blowup=None, config_echo={}, t_valid=0.0,
                     snapshots=snaps)


class TestFunctionals:
    grid = GridSpec(1, 2048, 40.0)

    def test_zero_fields(self):
        params = SystemParams(1, 1, 1, 2, 2)
        spec = TestFunctionSpec(gamma=1.0, r=2.0, R=3.0)
        T = 9.0
        result = frozen_result(self.grid, np.linspace(0, T, 65), 0.0, 0.0)
        values = functionals(result, self.grid, spec, params)
        assert values.I_R == 0.0 and values.J_R == 0.0

    def test_frozen_field_separable_product_compact(self):
        # integer order: compact cutoff; independent 1D quadratures for both factors
        params = SystemParams(1, 1, 1, 2, 2)
        R = 3.0
        spec = TestFunctionSpec(gamma=1.0, r=2.0, R=R)
        T = R**2
        result = frozen_result(self.grid, np.linspace(0, T, 129), 0.0, 1.0)
        values = functionals(result, self.grid, spec, params)
        lam = 2.0 * max(2.0, 2.0)
        time_int, _ = quad(lambda t: eta(t / T, lam), 0, T, limit=200)
        space_int, _ = quad(lambda x: float(compact_cutoff(x / R, lam)), 0, R,
                            limit=200)
        assert values.I_R == pytest.approx(time_int * 2 * space_int, rel=1e-6)

    def test_frozen_field_separable_product_bracket(self):
        params = SystemParams(1, 1.5, 1.5, 2, 2)
        R = 3.0
        spec = TestFunctionSpec.for_blowup(params, R)
        T = R**3
        result = frozen_result(self.grid, np.linspace(0, T, 129), 0.0, 1.0)
        values = functionals(result, self.grid, spec, params)
        lam = 4.0
        time_int, _ = quad(lambda t: eta(t / T, lam), 0, T, limit=200)
        L = self.grid.half_length
        space_int, _ = quad(lambda x: (1 + (x / R) ** 2) ** (-spec.r / 2), 0, L,
                            limit=300)
        assert values.I_R == pytest.approx(time_int * 2 * space_int, rel=1e-4)

    def test_monotone_in_scale(self):
        params = SystemParams(1, 1, 1, 2, 2)
        times = np.linspace(0, 16.0, 257)
        result = frozen_result(self.grid, times, 1.0, 1.0)
        vals = [functionals(result, self.grid,
                            TestFunctionSpec(gamma=1.0, r=2.0, R=R), params).I_R
                for R in (2.0, 3.0, 4.0)]
        assert vals[0] < vals[1] < vals[2]

    def test_insufficient_snapshots(self):
        params = SystemParams(1, 1, 1, 2, 2)
        spec = TestFunctionSpec(gamma=1.0, r=2.0, R=4.0)
        result = frozen_result(self.grid, np.linspace(0, 8.0, 65), 1.0, 1.0)
        with pytest.raises(InsufficientSnapshotsError):
            functionals(result, self.grid, spec, params)  # window is [0, 16]

    def test_positivity(self):
        params = SystemParams(1, 1, 1, 2, 2)
        spec = TestFunctionSpec(gamma=1.0, r=2.0, R=3.0)
        result = frozen_result(self.grid, np.linspace(0, 9.0, 65), 0.5, 0.25)
        values = functionals(result, self.grid, spec, params)
        assert values.I_R >= 0 and values.J_R >= 0
        assert values.I_R_t >= 0 and values.J_R_t >= 0
        assert values.I_R_t <= values.I_R


class TestFunctionalGrowthEcho:
    def test_rescaled_functional_bounded_while_growing(self):
        # Small positive-mass data in the blow-up region: the solution is
        # still alive on every window here, so the rescaled combination
        # J_R**((pq-1)/pq) * R**(-gamma2) must stay below the derivation's
        # O(1) constant even though J_R itself grows with the window.
        from sevolab.exponents import gamma_exponents
        from sevolab.torus import GridSpec as GS, InitialData, run

        params = SystemParams(1, 1, 1, 2, 2)
        grid = GS(1, 512, 40.0)
        g = GaussianProfile(1e-2, 1.0)
        data = InitialData.from_profiles(None, g, None, g, 1.0, 1.0, 1)
        radii = (4.0, 8.0, 16.0)
        snap_times = sorted(set(
            float(t) for R in radii for t in np.linspace(0.0, R**2, 65)))
        result = run(grid, data, params, 256.0, [256.0],
                     snapshot_times=snap_times)
        assert result.blowup is None

        _, gamma2 = gamma_exponents(params)
        assert gamma2 == pytest.approx(-0.75)
        exponent = (params.p * params.q - 1) / (params.p * params.q)
        j_values = []
        rescaled = []
        for R in radii:
            spec = TestFunctionSpec(gamma=1.0, r=2.0, R=R)
            vals = functionals(result, grid, spec, params)
            j_values.append(vals.J_R)
            rescaled.append(vals.J_R**exponent * R**(-gamma2))
        assert j_values[0] < j_values[1] < j_values[2]
        assert max(rescaled) < 1.0
