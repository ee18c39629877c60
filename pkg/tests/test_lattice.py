import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from xxz_gatesmith.catalog import GateKind
from xxz_gatesmith.lattice import (
    EffectiveCouplings,
    Infeasible,
    LatticeConfig,
    Statistics,
    couplings_from_energies,
    effective_couplings,
    gate_feasibility,
    onsite_energies,
    solve_depths_for_couplings,
    spin_average_depth,
    tunneling_energy,
)

PI = math.pi

BOSE_TEMPLATE = LatticeConfig(
    v_up=10.0,
    v_down=10.0,
    k_a_updown=0.05,
    k_a_upup=0.05,
    k_a_downdown=0.05,
    statistics=Statistics.BOSE,
)
FERMI_TEMPLATE = replace(BOSE_TEMPLATE, statistics=Statistics.FERMI, k_a_updown=0.11)

depths_st = st.floats(1.0, 50.0, allow_nan=False)
energies_st = st.floats(0.01, 5.0, allow_nan=False)


class TestTunneling:
    def test_shallow_lattice_value(self):
        # (4/sqrt(pi)) e^{-2}, evaluated to 17 digits with mpmath
        assert tunneling_energy(1.0) == pytest.approx(0.30541902835432863, rel=1e-14)

    def test_reference_depth_value(self):
        # mpmath: (4/sqrt(pi)) 20^(3/4) exp(-2 sqrt(20))
        assert tunneling_energy(20.0) == pytest.approx(2.7849000731086458e-3, rel=1e-13)

    def test_deep_lattice_limit(self):
        assert tunneling_energy(1000.0) < 1e-20

    @given(st.floats(0.6, 200.0, allow_nan=False), st.floats(1e-6, 10.0, allow_nan=False))
    def test_strictly_decreasing(self, depth, step):
        assert tunneling_energy(depth + step) < tunneling_energy(depth)

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(ValueError):
            tunneling_energy(bad)


class TestSpinAverageDepth:
    def test_equal_depths(self):
        assert spin_average_depth(16.0, 16.0) == pytest.approx(16.0, rel=1e-15)

    def test_reference_value(self):
        # mpmath: 4*12*20/(sqrt(12)+sqrt(20))^2
        assert spin_average_depth(12.0, 20.0) == pytest.approx(
            15.241998455109974, rel=1e-14
        )

    @given(depths_st, depths_st)
    def test_bounded_by_max(self, v1, v2):
        vbar = spin_average_depth(v1, v2)
        assert vbar <= max(v1, v2) + 1e-12
        assert vbar > 0


class TestOnsiteEnergies:
    def test_fermi_value(self):
        u = onsite_energies(replace(FERMI_TEMPLATE, v_up=16.0, v_down=16.0))
        assert u.u_upup == pytest.approx(8.0, rel=1e-15)
        assert u.u_downdown == pytest.approx(8.0, rel=1e-15)

    def test_bose_value(self):
        # mpmath: sqrt(8/pi) * 0.05 * 16^(3/4)
        u = onsite_energies(replace(BOSE_TEMPLATE, v_up=16.0, v_down=16.0))
        assert u.u_upup == pytest.approx(0.63830764864229228, rel=1e-14)
        assert u.u_updown == pytest.approx(0.63830764864229228, rel=1e-14)


class TestEffectiveCouplings:
    def test_isotropic_bose(self):
        c = couplings_from_energies(0.02, 0.02, 0.5, 0.5, 0.5, Statistics.BOSE)
        assert c.gamma == pytest.approx(1.0, abs=1e-15)
        assert c.j == pytest.approx(-0.02 * 0.02 / 0.5, rel=1e-15)

    def test_xx_bose(self):
        c = couplings_from_energies(0.02, 0.02, 0.5, 1.0, 1.0, Statistics.BOSE)
        assert c.gamma == pytest.approx(0.0, abs=1e-15)

    def test_isotropic_fermi(self):
        c = couplings_from_energies(0.03, 0.03, 0.7, 2.0, 2.0, Statistics.FERMI)
        assert c.j == pytest.approx(0.03 * 0.03 / 0.7, rel=1e-15)
        assert c.gamma == pytest.approx(1.0, abs=1e-15)

    @given(energies_st, energies_st)
    def test_isotropic_law(self, t, u):
        c = couplings_from_energies(t, t, u, u, u, Statistics.BOSE)
        assert abs(c.gamma - 1.0) <= 1e-12

    @given(energies_st, energies_st)
    def test_xx_law(self, t, u):
        c = couplings_from_energies(t, t, u, 2 * u, 2 * u, Statistics.BOSE)
        assert abs(c.gamma) <= 1e-12

    @given(depths_st, depths_st)
    def test_sign_law(self, v_up, v_down):
        bose = effective_couplings(replace(BOSE_TEMPLATE, v_up=v_up, v_down=v_down))
        fermi = effective_couplings(replace(FERMI_TEMPLATE, v_up=v_up, v_down=v_down))
        assert bose.j < 0
        assert fermi.j > 0

    @given(depths_st, depths_st, st.floats(1.0, 1e6, allow_nan=False))
    def test_linear_in_recoil(self, v_up, v_down, recoil):
        base = effective_couplings(replace(BOSE_TEMPLATE, v_up=v_up, v_down=v_down))
        scaled = effective_couplings(
            replace(BOSE_TEMPLATE, v_up=v_up, v_down=v_down, recoil_energy=recoil)
        )
        assert scaled.j == pytest.approx(base.j * recoil, rel=1e-12)
        assert scaled.gamma == pytest.approx(base.gamma, rel=1e-12)

    def test_perturbative_flag(self):
        deep = effective_couplings(replace(BOSE_TEMPLATE, v_up=25.0, v_down=25.0))
        assert deep.perturbative_ok
        shallow = effective_couplings(replace(BOSE_TEMPLATE, v_up=1.0, v_down=1.0))
        assert not shallow.perturbative_ok

    def test_zero_interspecies_energy(self):
        with pytest.raises(ValueError, match="u_updown"):
            couplings_from_energies(0.1, 0.1, 0.0, 1.0, 1.0, Statistics.BOSE)

    def test_bose_needs_same_species(self):
        with pytest.raises(ValueError):
            couplings_from_energies(0.1, 0.1, 0.5, 0.0, 1.0, Statistics.BOSE)


class TestConfig:
    def test_from_dict_round_trip(self):
        config = replace(BOSE_TEMPLATE, coherence_time=0.01, rabi_frequency=5000.0)
        assert LatticeConfig.from_dict(config.to_dict()) == config

    def test_rejects_unknown_keys(self):
        with pytest.raises(ValueError, match="unknown"):
            LatticeConfig.from_dict({"v_up": 1, "v_down": 1, "k_a_updown": 0.1, "vup": 2})

    def test_rejects_bad_statistics(self):
        with pytest.raises(ValueError, match="statistics"):
            LatticeConfig.from_dict(
                {"v_up": 1, "v_down": 1, "k_a_updown": 0.1, "statistics": "anyon"}
            )

    @pytest.mark.parametrize("field", ["v_up", "v_down", "recoil_energy"])
    def test_rejects_nonpositive(self, field):
        with pytest.raises(ValueError):
            replace(BOSE_TEMPLATE, **{field: -1.0})


def _couplings(j: float) -> EffectiveCouplings:
    return EffectiveCouplings(
        t_up=0.01,
        t_down=0.01,
        u_updown=0.5,
        u_upup=0.5,
        u_downdown=0.5,
        j=j,
        gamma=1.0,
        perturbative_ok=True,
    )


class TestFeasibility:
    def test_swap_threshold_ten_ms(self):
        report = gate_feasibility(_couplings(-400.0), GateKind.SWAP, 0.01)
        assert report.j_min == pytest.approx(PI / 0.01, rel=1e-12)
        # the headline figure: ~0.314 kHz
        assert abs(report.j_min / 1000.0 - 0.314) / 0.314 < 0.005
        assert report.feasible
        assert report.min_gate_time == pytest.approx(PI / 400.0, rel=1e-12)

    def test_sqrt_swap_threshold_ten_ms(self):
        report = gate_feasibility(_couplings(200.0), GateKind.SQRT_SWAP, 0.01)
        assert report.j_min == pytest.approx(PI / 0.02, rel=1e-12)
        assert abs(report.j_min / 1000.0 - 0.157) / 0.157 < 0.005
        assert report.feasible

    def test_iswap_uses_swap_bound(self):
        report = gate_feasibility(_couplings(100.0), GateKind.ISWAP, 0.01)
        assert report.j_min == pytest.approx(PI / 0.01, rel=1e-12)
        assert not report.feasible

    def test_long_coherence_always_feasible(self):
        report = gate_feasibility(_couplings(-1e-6), GateKind.ENTANGLER, 1e9)
        assert report.feasible
        assert report.j_min < 1e-8

    def test_entangler_warning_mentions_pulses(self):
        report = gate_feasibility(_couplings(10.0), GateKind.CONJ_ENTANGLER, 0.01)
        assert "always" in report.pulse_warning
        assert "Omega" in report.pulse_warning

    def test_weak_rabi_strengthens_warning(self):
        report = gate_feasibility(_couplings(100.0), GateKind.SWAP, 0.01, rabi_frequency=500.0)
        assert "does not dominate" in report.pulse_warning

    def test_custom_kind_rejected(self):
        with pytest.raises(ValueError):
            gate_feasibility(_couplings(10.0), GateKind.CUSTOM, 0.01)

    def test_bad_coherence_time(self):
        with pytest.raises(ValueError):
            gate_feasibility(_couplings(10.0), GateKind.SWAP, 0.0)


class TestDepthSolver:
    def test_round_trip_bose(self):
        fwd = effective_couplings(replace(BOSE_TEMPLATE, v_up=9.0, v_down=14.0))
        sol = solve_depths_for_couplings(fwd.j, fwd.gamma, BOSE_TEMPLATE)
        assert isinstance(sol, LatticeConfig)
        back = effective_couplings(sol)
        assert abs(back.j - fwd.j) / abs(fwd.j) <= 1e-6
        assert abs(back.gamma - fwd.gamma) / max(1.0, abs(fwd.gamma)) <= 1e-6

    def test_round_trip_fermi(self):
        fwd = effective_couplings(replace(FERMI_TEMPLATE, v_up=9.0, v_down=14.0))
        sol = solve_depths_for_couplings(fwd.j, fwd.gamma, FERMI_TEMPLATE)
        assert isinstance(sol, LatticeConfig)
        back = effective_couplings(sol)
        assert abs(back.j - fwd.j) / abs(fwd.j) <= 1e-6

    def test_symmetric_family(self):
        fwd = effective_couplings(replace(BOSE_TEMPLATE, v_up=4.0, v_down=4.0))
        assert fwd.gamma == pytest.approx(1.0, abs=1e-14)
        sol = solve_depths_for_couplings(fwd.j, 1.0, BOSE_TEMPLATE)
        assert isinstance(sol, LatticeConfig)
        assert sol.v_up == pytest.approx(sol.v_down, rel=1e-9)
        assert sol.v_up == pytest.approx(4.0, rel=1e-6)

    def test_xx_point_found_when_template_allows(self):
        xx_template = replace(BOSE_TEMPLATE, k_a_upup=0.1, k_a_downdown=0.1)
        fwd = effective_couplings(replace(xx_template, v_up=7.0, v_down=7.0))
        assert fwd.gamma == pytest.approx(0.0, abs=1e-14)
        sol = solve_depths_for_couplings(fwd.j, 0.0, xx_template)
        assert isinstance(sol, LatticeConfig)
        back = effective_couplings(sol)
        assert abs(back.gamma) <= 1e-6

    def test_xx_impossible_for_equal_scattering(self):
        # equal scattering lengths pin gamma >= 1 at every depth pair, so the
        # XX cancellation has no solution and the solver must say so
        sol = solve_depths_for_couplings(-0.01, 0.0, BOSE_TEMPLATE)
        assert isinstance(sol, Infeasible)
        assert "no depths" in sol.reason
        assert sol.achieved_gamma > 0.5

    def test_unreachable_magnitude(self):
        sol = solve_depths_for_couplings(-5.0, 1.0, BOSE_TEMPLATE)
        assert isinstance(sol, Infeasible)
        assert isinstance(sol.closest, LatticeConfig)

    def test_sign_mismatch_rejected(self):
        with pytest.raises(ValueError, match="sign"):
            solve_depths_for_couplings(0.01, 1.0, BOSE_TEMPLATE)
        with pytest.raises(ValueError, match="sign"):
            solve_depths_for_couplings(-0.01, 1.0, FERMI_TEMPLATE)

    def test_zero_target_rejected(self):
        with pytest.raises(ValueError):
            solve_depths_for_couplings(0.0, 1.0, BOSE_TEMPLATE)
