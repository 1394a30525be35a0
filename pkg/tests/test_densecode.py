import math

import numpy as np
import pytest

import cvdc
from cvdc.densecode import default_nbar_grid

from conftest import random_stats


class TestSingleModeCapacities:
    def test_coherent(self):
        assert cvdc.capacity_single_mode("coherent", 10.0) == pytest.approx(
            math.log(11.0), rel=1e-14
        )

    def test_squeezed(self):
        assert cvdc.capacity_single_mode("squeezed", 10.0) == pytest.approx(
            math.log(21.0), rel=1e-14
        )

    def test_fock(self):
        assert cvdc.capacity_single_mode("fock", 1.0) == pytest.approx(
            2.0 * math.log(2.0), rel=1e-14
        )

    def test_fock_zero_limit(self):
        assert cvdc.capacity_single_mode("fock", 0.0) == 0.0
        # continuity of the limit
        assert cvdc.capacity_single_mode("fock", 1e-12) < 1e-10

    def test_negative_budget_rejected(self):
        with pytest.raises(ValueError):
            cvdc.capacity_single_mode("fock", -1.0)

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            cvdc.capacity_single_mode("heterodyne", 1.0)

    def test_monotone_in_budget(self):
        grid = np.linspace(0.01, 50, 300)
        for scheme in ("coherent", "squeezed", "fock"):
            vals = [cvdc.capacity_single_mode(scheme, n) for n in grid]
            assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_hierarchy(self):
        for n in np.linspace(0.05, 30, 100):
            c_coh = cvdc.capacity_single_mode("coherent", n)
            assert c_coh < cvdc.capacity_single_mode("squeezed", n)
            assert c_coh < cvdc.capacity_single_mode("fock", n)
            assert c_coh < cvdc.tmsv_capacity(n)


class TestTmsvCapacity:
    def test_unit_budget(self):
        assert cvdc.tmsv_capacity(1.0) == pytest.approx(math.log(3.0), rel=1e-14)

    def test_crossover_with_squeezed_scheme(self):
        assert abs(
            cvdc.tmsv_capacity(1.0) - cvdc.capacity_single_mode("squeezed", 1.0)
        ) < 1e-12
        n = 1.0 + 1e-6
        assert cvdc.tmsv_capacity(n) > cvdc.capacity_single_mode("squeezed", n)

    def test_matches_numeric_maximization(self):
        # independent oracle: maximize the fixed-squeezing mutual information
        # over the encoding share sigma^2 at fixed budget
        n_bar = 2.0

        def neg_mi(sigma2):
            s = math.asinh(math.sqrt(n_bar - sigma2))
            return -math.log1p(sigma2 * math.exp(2 * s))

        x, fx, _ = cvdc.golden_section_min(neg_mi, 1e-9, n_bar - 1e-9, tol=1e-12)
        assert -fx == pytest.approx(cvdc.tmsv_capacity(n_bar), abs=1e-8)
        assert -fx == pytest.approx(math.log(7.0), abs=1e-8)

    def test_monotone(self):
        grid = np.linspace(0.0, 50, 300)
        vals = [cvdc.tmsv_capacity(n) for n in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestMutualInformation:
    def test_zero_encoding(self):
        stats = cvdc.ChannelStats(0.3, 0.4, 0.05, 0.2)
        assert cvdc.mutual_information(stats, cvdc.EncodingPolicy(0.0, 0.0)) == 0.0

    def test_tmsv_closed_form(self):
        s, sigma2 = 1.0, 2.5
        stats = cvdc.pair_stats(cvdc.tmsv(s), 0, 1)
        mi = cvdc.mutual_information(stats, cvdc.EncodingPolicy(sigma2, sigma2))
        assert mi == pytest.approx(math.log1p(sigma2 * math.exp(2 * s)), rel=1e-12)

    def test_factorizes_without_cross_correlation(self, rng):
        for _ in range(1000):
            stats = random_stats(rng, zero_vxp=True)
            sx2, sp2 = rng.uniform(0.1, 5.0, size=2)
            mi = cvdc.mutual_information(stats, cvdc.EncodingPolicy(sx2, sp2))
            split = 0.5 * math.log(
                (1 + sx2 / (2 * stats.v_xm)) * (1 + sp2 / (2 * stats.v_pp))
            )
            assert mi == pytest.approx(split, abs=1e-12)

    def test_nonnegative(self, rng):
        for _ in range(200):
            stats = random_stats(rng)
            enc = cvdc.EncodingPolicy(*rng.uniform(0.0, 3.0, size=2))
            assert cvdc.mutual_information(stats, enc) >= 0.0


class TestOptimalEncoding:
    def test_symmetric_channel(self):
        stats = cvdc.ChannelStats(0.2, 0.2, 0.0, 0.1)
        enc = cvdc.optimal_encoding(stats, 1.5)
        assert enc.sigma_x2 == pytest.approx(1.5)
        assert enc.sigma_p2 == pytest.approx(1.5)

    def test_asymmetric_channel(self):
        stats = cvdc.ChannelStats(0.1, 0.3, 0.0, 0.1)
        enc = cvdc.optimal_encoding(stats, 1.0)
        assert enc.sigma_x2 == pytest.approx(1.2, rel=1e-12)
        assert enc.sigma_p2 == pytest.approx(0.8, rel=1e-12)

    def test_local_optimality(self, rng):
        eps = 1e-3
        for _ in range(1000):
            stats = random_stats(rng)
            n_s = abs(stats.v_xm - stats.v_pp) + rng.uniform(0.1, 3.0)
            enc = cvdc.optimal_encoding(stats, n_s)
            best = cvdc.mutual_information(stats, enc)
            for sign in (+1, -1):
                sx2 = enc.sigma_x2 + sign * eps
                sp2 = enc.sigma_p2 - sign * eps
                if sx2 < 0 or sp2 < 0:
                    continue
                other = cvdc.mutual_information(stats, cvdc.EncodingPolicy(sx2, sp2))
                assert best >= other - 1e-15

    def test_single_quadrature_regime_error(self):
        stats = cvdc.ChannelStats(0.1, 0.5, 0.0, 0.1)
        with pytest.raises(cvdc.SingleQuadratureRegimeError) as exc:
            cvdc.optimal_encoding(stats, 0.3)
        assert exc.value.boundary == pytest.approx(0.4)
        assert exc.value.n_s == pytest.approx(0.3)


class TestMaxMutualInformation:
    def test_tmsv_reproduces_capacity(self):
        for s in (0.3, 0.8, 1.5):
            stats = cvdc.pair_stats(cvdc.tmsv(s), 0, 1)
            n_bar = math.cosh(s) * math.sinh(s) + math.sinh(s) ** 2
            h = cvdc.max_mutual_information(stats, n_bar)
            assert h == pytest.approx(cvdc.tmsv_capacity(n_bar), rel=1e-12)

    def test_vacuum_channel_equals_coherent(self):
        stats = cvdc.ChannelStats(0.5, 0.5, 0.0, 0.0)
        h = cvdc.max_mutual_information(stats, 10.0)
        assert h == pytest.approx(math.log(11.0), rel=1e-12)

    def test_consistent_with_optimal_encoding(self, rng):
        for _ in range(300):
            stats = random_stats(rng, zero_vxp=True)
            n_bar = stats.n0 + abs(stats.v_xm - stats.v_pp) + rng.uniform(0.2, 5.0)
            h = cvdc.max_mutual_information(stats, n_bar)
            enc = cvdc.optimal_encoding(stats, n_bar - stats.n0)
            assert h == pytest.approx(cvdc.mutual_information(stats, enc), abs=1e-12)

    def test_rotated_frame_consistency(self, rng):
        # with a cross correlation, the optimum includes the paired rotation:
        # evaluate the encoding optimum in the rotated frame
        for _ in range(300):
            stats = random_stats(rng)
            if abs(stats.v_xp) < 1e-6:
                continue
            total = stats.v_xm + stats.v_pp
            gap = math.hypot(stats.v_xm - stats.v_pp, 2 * stats.v_xp)
            rotated = cvdc.ChannelStats(
                (total - gap) / 2, (total + gap) / 2, 0.0, stats.n0
            )
            n_bar = stats.n0 + gap + rng.uniform(0.2, 5.0)
            h = cvdc.max_mutual_information(stats, n_bar)
            enc = cvdc.optimal_encoding(rotated, n_bar - stats.n0)
            assert h == pytest.approx(
                cvdc.mutual_information(rotated, enc), abs=1e-12
            )

    def test_single_quadrature_error_carries_boundary(self):
        stats = cvdc.ChannelStats(0.1, 0.5, 0.1, 0.0)
        with pytest.raises(cvdc.SingleQuadratureRegimeError) as exc:
            cvdc.max_mutual_information(stats, 0.2)
        assert exc.value.boundary == pytest.approx(math.hypot(0.4, 0.2))

    def test_budget_below_carrier_rejected(self):
        stats = cvdc.pair_stats(cvdc.tmsv(1.0), 0, 1)  # n0 = sinh^2(1) = 1.38
        with pytest.raises(ValueError):
            cvdc.max_mutual_information(stats, 1.0)


class TestAdvantage:
    def test_tmsv_beats_squeezed_above_unit_budget(self):
        # s with sinh(s) e^s = nbar makes the optimal encoding use the whole
        # budget: exp(2s) = 1 + 2 nbar
        n_bar = 2.0
        s = 0.5 * math.log(1.0 + 2.0 * n_bar)
        stats = cvdc.pair_stats(cvdc.tmsv(s), 0, 1)
        report = cvdc.advantage(stats, n_bar)
        assert report.h_max == pytest.approx(math.log(7.0), rel=1e-10)
        assert report.beats_sq
        assert report.f_sq == pytest.approx(7.0 - 5.0, rel=1e-9)

    @pytest.mark.parametrize("n_bar,expected", [(1.5, False), (2.5, True)])
    def test_fock_bracketing(self, n_bar, expected):
        assert (cvdc.tmsv_capacity(n_bar) > cvdc.capacity_single_mode("fock", n_bar)) is expected

    def test_flags_consistent_with_values(self, rng):
        for _ in range(100):
            stats = random_stats(rng)
            gap = math.hypot(stats.v_xm - stats.v_pp, 2 * stats.v_xp)
            n_bar = stats.n0 + gap + rng.uniform(0.5, 20.0)
            report = cvdc.advantage(stats, n_bar)
            assert report.beats_coh == (report.h_max > report.c_coh)
            assert report.beats_sq == (report.f_sq > 0.0)
            assert report.beats_fock == (report.h_max > report.c_fock)
            assert report.u_eff == pytest.approx(math.sqrt(stats.det), rel=1e-12)

    def test_above_bound_never_beats_squeezed(self, rng):
        # u_eff >= 1/4 keeps the margin negative on the whole budget grid
        found = 0
        while found < 50:
            stats = random_stats(rng, zero_vxp=True)
            if math.sqrt(stats.det) < 0.25:
                continue
            found += 1
            assert not cvdc.squeezed_advantage_exists(stats)

    def test_below_bound_grid_search_finds_advantage(self, rng):
        found = 0
        while found < 50:
            stats = random_stats(rng, zero_vxp=True)
            u = math.sqrt(stats.det)
            if not u < 0.2495:
                continue
            found += 1
            assert cvdc.squeezed_advantage_exists(stats)

    def test_criterion_theorem_sample(self, rng):
        # grid verdict and the closed criterion must agree away from the
        # sliver where the crossover exits the finite budget grid
        checked = 0
        while checked < 500:
            stats = random_stats(rng, zero_vxp=True)
            u = math.sqrt(stats.det)
            if abs(u - 0.25) < 5e-4:
                continue
            checked += 1
            assert cvdc.squeezed_advantage_exists(stats) == (u < 0.25)

    def test_default_grid_shape(self):
        grid = default_nbar_grid()
        assert len(grid) == 400
        assert grid[0] == pytest.approx(1e-2)
        assert grid[-1] == pytest.approx(1e4)


class TestFockCrossover:
    def test_crossing_location(self):
        root = cvdc.fock_crossover()
        assert 1.8830 <= root <= 1.8840

    def test_root_brackets_sign_change(self):
        root = cvdc.fock_crossover(tol=1e-8)
        below = cvdc.tmsv_capacity(root - 1e-4) - cvdc.capacity_single_mode("fock", root - 1e-4)
        above = cvdc.tmsv_capacity(root + 1e-4) - cvdc.capacity_single_mode("fock", root + 1e-4)
        assert below < 0 < above

    def test_unbracketed_rejected(self):
        with pytest.raises(ValueError):
            cvdc.fock_crossover(2.5, 3.0)


class TestEncodingAndBudgetTypes:
    def test_encoding_photon_count(self):
        enc = cvdc.EncodingPolicy(1.2, 0.8)
        assert enc.n_s == pytest.approx(1.0)

    def test_negative_variance_rejected(self):
        with pytest.raises(ValueError):
            cvdc.EncodingPolicy(-0.1, 0.5)

    def test_budget_split(self):
        budget = cvdc.EnergyBudget(n_bar=5.0, n0=1.5)
        assert budget.n_s == pytest.approx(3.5)

    def test_budget_ordering_enforced(self):
        with pytest.raises(ValueError):
            cvdc.EnergyBudget(n_bar=1.0, n0=2.0)
        with pytest.raises(ValueError):
            cvdc.EnergyBudget(n_bar=1.0, n0=-0.5)
