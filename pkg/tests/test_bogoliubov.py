r"""Unit tests for the rotated-frame (Bogoliubov) analysis."""
import math

import numpy as np
import pytest

from transduction_lab import bogoliubov_frame as bf
from transduction_lab import channel_metrics as cm
from transduction_lab.errors import OutOfRegimeError, PreconditionError, RegimeWarning
from transduction_lab.transducer_model import SystemParams

# fix the seed to make the tests deterministic
np.random.seed(42)


def params_for_beta(beta, c_g=0.1, delta_e=1.0, **kwargs):
    """System with the requested pump ratio beta = 2 nu / delta_e."""
    g = math.sqrt(c_g) / 2.0
    return SystemParams(g=g, nu=0.5 * beta * delta_e, delta_e=delta_e, **kwargs)


class TestEffectiveSqueezing:
    """r from tanh(2r) = 2 nu / delta_e"""

    def test_no_pump(self):
        assert bf.effective_squeezing(0.0, 1.0) == 0.0

    def test_known_values(self):
        assert bf.effective_squeezing(0.4, 1.0) == pytest.approx(
            0.5 * math.log(3.0), abs=1e-14)
        assert bf.effective_squeezing(0.475, 1.0) == pytest.approx(0.9159, abs=1e-4)

    def test_out_of_regime(self):
        """The frame only exists while the detuning dominates the pump"""
        with pytest.raises(OutOfRegimeError, match="exceed"):
            bf.effective_squeezing(0.5, 1.0)
        with pytest.raises(OutOfRegimeError):
            bf.effective_squeezing(0.7, 1.0)

    def test_negative_pump_rejected(self):
        with pytest.raises(PreconditionError):
            bf.effective_squeezing(-0.1, 1.0)


class TestBuildFrame:
    """Frame construction and its identities"""

    def test_no_pump_reduces_to_bare_system(self, tol):
        p = params_for_beta(0.0, c_g=0.3, delta_e=2.0)
        f = bf.build_frame(p)
        assert f.r == 0.0
        assert f.g_s == p.g
        assert f.omega_s == pytest.approx(2.0, abs=tol)
        assert f.c_s == pytest.approx(p.c_g, abs=tol)
        assert f.kappa_s == p.kappa_e

    def test_reference_point(self):
        """beta = 0.8: omega_s = 0.6, cosh r = 2/sqrt(3), C_s = 4/3 C_g"""
        p = params_for_beta(0.8)
        f = bf.build_frame(p)
        assert f.omega_s == pytest.approx(0.6, abs=1e-14)
        assert f.g_s == pytest.approx(2.0 * p.g / math.sqrt(3.0), abs=1e-14)
        assert f.c_s == pytest.approx(p.c_g * 4.0 / 3.0, abs=1e-14)

    def test_frame_identities_across_beta(self):
        """cosh 2r sqrt(1 - beta^2) = 1 and C_s = C_g cosh^2 r"""
        for beta in np.arange(0.1, 0.9501, 0.05):
            p = params_for_beta(float(beta))
            f = bf.build_frame(p)
            assert abs(math.cosh(2 * f.r) * math.sqrt(1 - beta**2) - 1.0) <= 1e-12
            assert abs(f.c_s - p.c_g * math.cosh(f.r) ** 2) <= 1e-12

    def test_enhancement_is_monotone(self):
        """g_s / g grows without bound as the pump approaches threshold"""
        gains = []
        for beta in (0.0, 0.5, 0.8, 0.9, 0.95, 0.99):
            p = params_for_beta(beta)
            gains.append(bf.build_frame(p).g_s / p.g)
        assert all(b > a for a, b in zip(gains, gains[1:]))
        # cosh(r) at beta = 0.99 is about 2.01
        assert gains[-1] > 2.0

    def test_cap_warns_and_clips(self):
        p = params_for_beta(0.9999)
        with pytest.warns(RegimeWarning, match="clipped"):
            f = bf.build_frame(p)
        assert f.beta == pytest.approx(0.999)

    def test_cap_validation(self):
        with pytest.raises(PreconditionError, match="beta_cap"):
            bf.build_frame(params_for_beta(0.5), beta_cap=1.5)


class TestNoise:
    """Squeezing-amplified noise and its cancellation"""

    def test_amplified_noise_values(self):
        assert bf.amplified_noise(0.0, 0.7) == pytest.approx(0.7, abs=1e-15)
        r = 0.5 * math.log(3.0)  # beta = 0.8
        assert abs(bf.amplified_noise(r, 0.0) - 1.0 / 3.0) <= 1e-12
        assert bf.amplified_noise(r, 2.0) == pytest.approx(
            math.cosh(2 * r) * 2.0 + math.sinh(r) ** 2, abs=1e-14)

    def test_amplified_noise_monotone(self):
        rs = np.linspace(0.0, 2.0, 30)
        ns = [bf.amplified_noise(float(r)) for r in rs]
        assert all(b > a for a, b in zip(ns, ns[1:]))

    def test_unsqueezed_bath_reduces_to_amplified(self):
        for r in (0.0, 0.3, 1.1):
            assert bf.squeezed_bath_noise(r, 0.0, 0.4, 1.2) == pytest.approx(
                bf.amplified_noise(r), abs=1e-14)

    def test_matched_bath_cancels_noise(self, rng):
        """lambda = r with opposite phases kills the induced noise"""
        for _ in range(100):
            r = float(rng.uniform(0.0, 2.0))
            theta = float(rng.uniform(-np.pi, np.pi))
            lam, phi = bf.elimination_params(r, theta)
            assert lam == r
            # roundoff grows with the magnitude of the cancelled terms
            assert abs(bf.squeezed_bath_noise(r, lam, theta, phi)) <= 1e-14 * (
                1.0 + np.cosh(2 * r) ** 2)

    def test_elimination_leaves_thermal_floor(self):
        """Cancellation removes the induced part only, n_th survives"""
        r, theta, n_th = 0.8, 0.3, 0.25
        lam, phi = bf.elimination_params(r, theta)
        assert bf.squeezed_bath_noise(r, lam, theta, phi, n_th) == pytest.approx(
            n_th, abs=1e-12)

    def test_phase_periodicity(self):
        """Any odd multiple of pi in theta - phi eliminates equally well"""
        r, theta = 0.6, 1.0
        for k in (1, 3, 5):
            assert abs(bf.squeezed_bath_noise(r, r, theta, theta - k * math.pi)) <= 1e-13

    def test_mismatched_phase_worst_case(self):
        """theta = phi at lambda = r doubles up to sinh^2(2r)"""
        for r in (0.2, 0.7, 1.3):
            assert bf.squeezed_bath_noise(r, r, 0.5, 0.5) == pytest.approx(
                math.sinh(2 * r) ** 2, abs=1e-12)

    def test_noise_never_negative(self, rng):
        for _ in range(200):
            r, lam = rng.uniform(0.0, 2.0, size=2)
            theta, phi = rng.uniform(-np.pi, np.pi, size=2)
            n_th = float(rng.uniform(0.0, 3.0))
            assert bf.squeezed_bath_noise(float(r), float(lam), float(theta),
                                          float(phi), n_th) >= -1e-14


class TestRwaValidity:
    """Rotating-wave sanity report"""

    def test_resonant_weak_coupling_passes(self):
        p = params_for_beta(0.0, c_g=0.0004, delta_e=20.0, delta_o=-20.0)
        report = bf.rwa_validity(p)
        assert report.coupling_ok and report.detuning_ok and report.ok
        assert report.detuning_ratio == pytest.approx(0.0, abs=1e-14)

    def test_threshold_pump_fails_coupling(self):
        """Near threshold the rotated mode slows below the coupling rate"""
        p = SystemParams(g=1.0, nu=9.99, delta_e=20.0, delta_o=-20.0)
        report = bf.rwa_validity(p)
        assert report.coupling_ratio > 1.0
        assert not report.coupling_ok
        assert not report.ok

    def test_matched_detuning(self):
        """g_s = omega_s / 2 with the optical detuning on the rotated line"""
        beta, delta_e = 0.95, 1.0
        omega_s = delta_e * math.sqrt(1 - beta**2)
        r = 0.5 * math.atanh(beta)
        g = 0.5 * omega_s / math.cosh(r)
        p = SystemParams(g=g, nu=0.5 * beta * delta_e, delta_e=delta_e,
                         delta_o=-omega_s)
        report = bf.rwa_validity(p)
        assert report.coupling_ratio == pytest.approx(0.5, abs=1e-12)
        assert report.detuning_ratio == pytest.approx(0.0, abs=1e-12)
        assert report.ok

    def test_custom_thresholds(self):
        p = params_for_beta(0.8, delta_e=2.0, delta_o=-1.0)
        strict = bf.rwa_validity(p, coupling_threshold=1e-6)
        assert not strict.coupling_ok


class TestChannelMetrics:
    """Rotated-frame channel figures"""

    def test_transmissivity_reference_value(self):
        """C_g = 0.1 at beta = 0.8 gives eta_s = 120/289"""
        m = bf.bogoliubov_channel_metrics(params_for_beta(0.8, c_g=0.1))
        assert m.eta == pytest.approx(120.0 / 289.0, abs=1e-12)

    def test_matched_enhanced_cooperativity(self):
        assert bf.eta_bogoliubov(1.0) == 1.0
        assert bf.eta_bogoliubov(1.0, zeta_o=0.9, zeta_s=0.97) == pytest.approx(
            0.873, abs=1e-12)

    def test_no_pump_matches_resonant_model(self):
        """beta = 0 reproduces the plain closed-form loss channel"""
        for c_g in (0.05, 0.3, 0.9):
            m = bf.bogoliubov_channel_metrics(params_for_beta(0.0, c_g=c_g))
            assert m.eta == pytest.approx(cm.eta_closed_form(c_g), abs=1e-12)
            assert m.n_e == pytest.approx(0.0, abs=1e-14)

    def test_induced_noise_enters_metrics(self):
        m = bf.bogoliubov_channel_metrics(params_for_beta(0.8, c_g=0.1))
        assert m.n_e == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_elimination_restores_clean_loss(self):
        """With the matched squeezed bath only n_th remains"""
        p = params_for_beta(0.8, c_g=0.1)
        clean = bf.bogoliubov_channel_metrics(p, eliminate_noise=True)
        assert clean.n_e == pytest.approx(0.0, abs=1e-14)
        noisy = bf.bogoliubov_channel_metrics(p)
        assert clean.q_lb >= noisy.q_lb

    def test_capacity_uses_enhanced_transmissivity(self):
        """Any eta_s above one half opens the capacity bound"""
        p = params_for_beta(0.8, c_g=0.2)
        m = bf.bogoliubov_channel_metrics(p, eliminate_noise=True)
        expected = math.log2(m.eta / (1.0 - m.eta))
        assert m.q_lb == pytest.approx(expected, abs=1e-12)
