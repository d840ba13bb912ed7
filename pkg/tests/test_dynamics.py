"""Effective two-level reduction tests: coupling/lightshift formulas, angle
conventions, the explicit amplitude evolution, and the regime report."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiraman.dynamics import (
    AmplitudePair,
    CouplingVectors,
    DetuningSet,
    effective_rabi,
    envelope,
    evolve_amplitudes,
    evolve_via_chain,
    lightshift,
    mixing_angles,
    regime_check,
)


def _random_system(rng, n=None, delta_scale=0.1):
    n = n or rng.integers(1, 6)
    couplings = CouplingVectors(
        rng.normal(size=n) + 1j * rng.normal(size=n),
        rng.normal(size=n) + 1j * rng.normal(size=n),
    )
    detuning = DetuningSet(Delta=rng.uniform(50, 500),
                           delta=float(rng.normal()) * delta_scale)
    return couplings, detuning


complex_lists = st.lists(
    st.complex_numbers(min_magnitude=0, max_magnitude=5,
                       allow_nan=False, allow_infinity=False),
    min_size=1, max_size=6,
)


class TestInputs:
    def test_coupling_validation(self):
        with pytest.raises(ValueError):
            CouplingVectors([1.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            CouplingVectors([], [])
        with pytest.raises(ValueError):
            CouplingVectors([np.inf], [1.0])

    def test_detuning_validation(self):
        with pytest.raises(ValueError):
            DetuningSet(Delta=0.0)
        with pytest.raises(ValueError):
            DetuningSet(Delta=100.0, per_level_Delta=[90.0, -100.0])
        d = DetuningSet(Delta=-100.0, per_level_Delta=[-90.0, -110.0])
        assert d.per_level_Delta is not None


class TestEffectiveRabi:
    def test_single_component(self):
        c = CouplingVectors([0, 0, 2.0], [0, 0, 3.0])
        d = DetuningSet(Delta=100.0)
        assert effective_rabi(c, d) == (2.0 * 3.0) / (2 * 100.0)

    def test_orthogonal_vectors(self):
        c = CouplingVectors([1.5, 0], [0, 2.5])
        assert effective_rabi(c, DetuningSet(Delta=77.0)) == 0.0

    def test_random_matches_dot_product(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            c, d = _random_system(rng, n=4)
            expected = abs(np.sum(c.omega_p * np.conj(c.omega_s))) / (2 * d.Delta)
            assert effective_rabi(c, d) == pytest.approx(expected, rel=1e-14)

    def test_signed_by_delta(self):
        c = CouplingVectors([1.0], [1.0])
        assert effective_rabi(c, DetuningSet(Delta=-10.0)) == -0.05


class TestLightshift:
    def test_balanced_norms(self):
        c = CouplingVectors([1.0, 0], [0, 1.0])
        assert lightshift(c, DetuningSet(Delta=50.0)) == 0.0

    def test_single_field(self):
        c = CouplingVectors([0, 0, 0], [0, 0, 2.0])
        assert lightshift(c, DetuningSet(Delta=100.0)) == 4.0 / 400.0

    def test_random_matches_norms(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            c, d = _random_system(rng)
            expected = (np.sum(np.abs(c.omega_s) ** 2)
                        - np.sum(np.abs(c.omega_p) ** 2)) / (4 * d.Delta)
            assert lightshift(c, d) == pytest.approx(expected, rel=1e-14)


class TestMixingAngles:
    def test_theta_at_zero_lightshift(self):
        c = CouplingVectors([0, 0, 1.0], [0, 0, 1.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0))
        assert eff.theta == pytest.approx(-math.pi / 4, abs=1e-15)

    def test_theta2_zero_on_resonance(self):
        c = CouplingVectors([1.0], [2.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0, delta=0.0))
        assert eff.theta2 == 0.0

    def test_theta2_quarter_pi_limit(self):
        # denominator of tan(2 theta2) vanishes when delta cos(2theta) = O~_B
        c = CouplingVectors([0.3], [1.0])
        base = mixing_angles(c, DetuningSet(Delta=100.0))
        delta_star = base.OmegaB_tilde / math.cos(2 * base.theta)
        eff = mixing_angles(c, DetuningSet(Delta=100.0, delta=delta_star))
        assert abs(eff.theta2) == pytest.approx(math.pi / 4, abs=1e-12)

    def test_struct_invariants(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            c, d = _random_system(rng)
            eff = mixing_angles(c, d)
            assert eff.OmegaB >= 0.0
            assert eff.OmegaB_tilde == pytest.approx(
                math.hypot(eff.OmegaB, eff.DeltaB), rel=1e-14)
            assert eff.DeltaD == pytest.approx(eff.DeltaB - d.delta, rel=1e-14)
            assert eff.OmegaD_tilde == pytest.approx(
                math.hypot(eff.OmegaB, eff.DeltaD), rel=1e-14)

    def test_phi_is_coupling_phase(self):
        c = CouplingVectors([1.0 * cmath.exp(0.7j)], [1.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0))
        assert eff.phi == pytest.approx(-0.7, abs=1e-14)


class TestEvolution:
    def test_identity_at_zero_time(self):
        c = CouplingVectors([1.0], [1.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0))
        out = evolve_amplitudes(AmplitudePair(0.6, 0.8j), eff, 0.0, 0.0)
        assert out.a0 == 0.6 and out.a1 == 0.8j

    def test_resonant_pi_pulse(self):
        c = CouplingVectors([0, 0, 1.0], [0, 0, 1.0])
        delta = 0.3
        d = DetuningSet(Delta=100.0, delta=delta)
        eff = mixing_angles(CouplingVectors([0, 0, 1.0], [0, 0, 1.0]),
                            DetuningSet(Delta=100.0, delta=delta))
        # tune delta so the effective detuning vanishes: DeltaB = 0 here,
        # so instead evolve with DeltaD = -delta... use delta = DeltaB = 0
        eff = mixing_angles(c, DetuningSet(Delta=100.0, delta=0.0))
        t = math.pi / eff.OmegaB
        out = evolve_amplitudes(AmplitudePair(1.0, 0.0), eff, 0.0, t)
        assert abs(out.a0) == pytest.approx(0.0, abs=1e-12)
        assert out.a1 == pytest.approx(1j, abs=1e-12)

    def test_pi_pulse_frame_factor(self):
        # with DeltaD = 0 but delta != 0 the transferred amplitude carries
        # the e^(-i delta t) frame factor
        c = CouplingVectors([1.0, 1.0], [1.0, 3.0])
        d0 = DetuningSet(Delta=200.0)
        delta = mixing_angles(c, d0).DeltaB
        eff = mixing_angles(c, DetuningSet(Delta=200.0, delta=delta))
        assert eff.DeltaD == pytest.approx(0.0, abs=1e-18)
        t = math.pi / eff.OmegaB
        out = evolve_amplitudes(AmplitudePair(1.0, 0.0), eff, delta, t)
        assert out.a1 == pytest.approx(1j * cmath.exp(-1j * delta * t), abs=1e-12)

    def test_detuned_half_transfer(self):
        c = CouplingVectors([1.0], [1.0])
        eff0 = mixing_angles(c, DetuningSet(Delta=100.0))
        delta = -eff0.OmegaB  # DeltaB = 0, so DeltaD = OmegaB
        eff = mixing_angles(c, DetuningSet(Delta=100.0, delta=delta))
        assert eff.DeltaD == pytest.approx(eff.OmegaB, rel=1e-14)
        t = math.pi / eff.OmegaD_tilde
        out = evolve_amplitudes(AmplitudePair(1.0, 0.0), eff, delta, t)
        assert abs(out.a1) ** 2 == pytest.approx(0.5, abs=1e-12)

    def test_rejects_negative_time(self):
        c = CouplingVectors([1.0], [1.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0))
        with pytest.raises(ValueError):
            evolve_amplitudes(AmplitudePair(1, 0), eff, 0.0, -1.0)

    def test_static_limit(self):
        c = CouplingVectors([1.0], [0.0])
        d = DetuningSet(Delta=100.0, delta=0.0025)
        eff = mixing_angles(c, d)
        # OmegaB = 0; pick delta = DeltaB so OmegaD_tilde = 0 exactly
        d = DetuningSet(Delta=100.0, delta=eff.DeltaB)
        eff = mixing_angles(c, d)
        out = evolve_amplitudes(AmplitudePair(0.6, 0.8), eff, d.delta, 2.0)
        assert out.a0 == 0.6
        assert out.a1 == pytest.approx(0.8 * cmath.exp(-1j * d.delta * 2.0), abs=1e-15)

    @given(complex_lists, st.floats(-0.5, 0.5), st.floats(0, 50),
           st.floats(-0.7, 0.7), st.floats(-0.7, 0.7))
    @settings(max_examples=60, deadline=None)
    def test_norm_conserved(self, omega_p, delta, t, re0, im0):
        n = len(omega_p)
        omega_s = [v * 1j + 0.1 for v in reversed(omega_p)]
        c = CouplingVectors(omega_p, omega_s)
        a1_mag_sq = max(0.0, 1.0 - (re0**2 + im0**2))
        initial = AmplitudePair(complex(re0, im0), math.sqrt(a1_mag_sq))
        eff = mixing_angles(c, DetuningSet(Delta=120.0, delta=delta))
        out = evolve_amplitudes(initial, eff, delta, t)
        assert out.norm_sq() == pytest.approx(1.0, abs=1e-12)

    def test_periodicity(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            c, d = _random_system(rng)
            eff = mixing_angles(c, d)
            if eff.OmegaD_tilde == 0:
                continue
            period = 2 * math.pi / eff.OmegaD_tilde
            for t in (0.0, 0.3 * period, 1.7 * period):
                a = evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta, t)
                b = evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta, t + period)
                assert abs(a.a0) ** 2 == pytest.approx(abs(b.a0) ** 2, abs=1e-12)

    def test_envelope_bounds_oscillation(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            c, d = _random_system(rng)
            eff = mixing_angles(c, d)
            if eff.OmegaD_tilde == 0:
                continue
            m_sq = envelope(eff) ** 2
            period = 2 * math.pi / eff.OmegaD_tilde
            pops = [evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta,
                                      f * period).populations[1]
                    for f in np.linspace(0, 1, 201)]
            assert max(pops) - min(pops) <= m_sq + 1e-12
            at_pi = evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta,
                                      math.pi / eff.OmegaD_tilde).populations[1]
            assert at_pi == pytest.approx(m_sq, abs=1e-12)

    def test_chain_matches_explicit(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            c, d = _random_system(rng)
            eff = mixing_angles(c, d)
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            initial = AmplitudePair(complex(v[0]), complex(v[1]))
            t = float(rng.uniform(0, 200))
            a = evolve_amplitudes(initial, eff, d.delta, t)
            b = evolve_via_chain(initial, eff, d.delta, t)
            assert a.a0 == pytest.approx(b.a0, abs=1e-12)
            assert a.a1 == pytest.approx(b.a1, abs=1e-12)

    def test_peak_transfer_at_lightshift(self):
        c = CouplingVectors([1.0, 0.5], [1.2, 0.9])
        d0 = DetuningSet(Delta=150.0)
        target = mixing_angles(c, d0).DeltaB
        omega_b = mixing_angles(c, d0).OmegaB
        scan = np.linspace(target - 5 * omega_b, target + 5 * omega_b, 81)
        best = max(scan, key=lambda dl: envelope(
            mixing_angles(c, DetuningSet(Delta=150.0, delta=float(dl)))))
        step = scan[1] - scan[0]
        assert abs(best - target) <= step

    def test_global_phase_invariance(self):
        c = CouplingVectors([1.0, 0.5j], [0.8, 0.7])
        d = DetuningSet(Delta=150.0, delta=0.002)
        eff = mixing_angles(c, d)
        phased = CouplingVectors(c.omega_p * cmath.exp(0.9j),
                                 c.omega_s * cmath.exp(0.9j))
        eff_p = mixing_angles(phased, d)
        assert eff_p.OmegaB == pytest.approx(eff.OmegaB, rel=1e-14)
        assert eff_p.DeltaB == pytest.approx(eff.DeltaB, rel=1e-14)
        assert eff_p.phi == pytest.approx(eff.phi, abs=1e-14)
        assert envelope(eff_p) == pytest.approx(envelope(eff), rel=1e-14)
        for t in (0.0, 13.7, 200.0):
            a = evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta, t)
            b = evolve_amplitudes(AmplitudePair(1, 0), eff_p, d.delta, t)
            assert a.populations == pytest.approx(b.populations, abs=1e-14)

    def test_relative_phase_shifts_phi_only(self):
        c = CouplingVectors([1.0, 0.5j], [0.8, 0.7])
        d = DetuningSet(Delta=150.0, delta=0.002)
        eff = mixing_angles(c, d)
        shifted = CouplingVectors(c.omega_p * cmath.exp(0.4j), c.omega_s)
        eff_s = mixing_angles(shifted, d)
        assert eff_s.OmegaB == pytest.approx(eff.OmegaB, rel=1e-14)
        assert eff_s.phi == pytest.approx(eff.phi - 0.4, abs=1e-12)
        a = evolve_amplitudes(AmplitudePair(1, 0), eff, d.delta, 50.0)
        b = evolve_amplitudes(AmplitudePair(1, 0), eff_s, d.delta, 50.0)
        assert a.populations == pytest.approx(b.populations, abs=1e-14)


class TestEnvelope:
    def test_limits(self):
        c = CouplingVectors([1.0], [1.0])
        eff = mixing_angles(c, DetuningSet(Delta=100.0))
        assert envelope(eff) == 1.0  # DeltaD = 0

        eff0 = mixing_angles(CouplingVectors([1.0], [0.0]),
                             DetuningSet(Delta=100.0))
        assert envelope(eff0) == 0.0  # OmegaB = 0

    def test_half_width(self):
        c = CouplingVectors([1.0], [1.0])
        base = mixing_angles(c, DetuningSet(Delta=100.0))
        eff = mixing_angles(c, DetuningSet(Delta=100.0, delta=-base.OmegaB))
        assert envelope(eff) == pytest.approx(1 / math.sqrt(2), rel=1e-14)


class TestRegimeCheck:
    def test_deep_detuned_passes(self):
        c = CouplingVectors([1e-3 + 0j], [1e-3 + 0j])
        report = regime_check(c, DetuningSet(Delta=1.0), omega10=5.0)
        assert report.all_passed
        assert len(report.criteria) == 3

    def test_single_photon_resonance_of_other_leg(self):
        c = CouplingVectors([1e-3 + 0j], [1e-3 + 0j])
        report = regime_check(c, DetuningSet(Delta=5.0), omega10=5.0)
        names = {c.name: c.passed for c in report.criteria}
        assert not names["other-leg detunings |Delta +- omega10| >> max coupling norm"]

    def test_unresolved_ground_states(self):
        c = CouplingVectors([1.0 + 0j], [1.0 + 0j])
        report = regime_check(c, DetuningSet(Delta=100.0), omega10=1.0)
        names = {c.name: c.passed for c in report.criteria}
        assert not names["ground-state resolution omega10 >> max coupling norm"]

    def test_per_level_spread_flagged(self):
        c = CouplingVectors([1e-3 + 0j], [1e-3 + 0j])
        d = DetuningSet(Delta=100.0, per_level_Delta=[80.0, 120.0])
        report = regime_check(c, d, omega10=1000.0)
        assert report.spread_fraction == pytest.approx(0.4)
        assert not report.spread_ok
        assert report.warnings
        assert not report.all_passed

    def test_small_spread_ok(self):
        c = CouplingVectors([1e-3 + 0j], [1e-3 + 0j])
        d = DetuningSet(Delta=100.0, per_level_Delta=[99.0, 101.0])
        report = regime_check(c, d, omega10=1000.0)
        assert report.spread_ok and report.all_passed

    def test_rejects_bad_splitting(self):
        c = CouplingVectors([1.0], [1.0])
        with pytest.raises(ValueError):
            regime_check(c, DetuningSet(Delta=100.0), omega10=0.0)

    def test_report_lines(self):
        c = CouplingVectors([1e-3 + 0j], [1e-3 + 0j])
        d = DetuningSet(Delta=100.0, per_level_Delta=[99.0, 101.0])
        lines = regime_check(c, d, omega10=1000.0).lines()
        assert len(lines) == 4
        assert all(("PASS" in line) or ("FAIL" in line) for line in lines)
