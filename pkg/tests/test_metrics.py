r"""Unit tests for channel figures of merit and closed forms."""
import math

import numpy as np
import pytest

from transduction_lab import channel_metrics as cm
from transduction_lab.channel_metrics import GaussianChannel
from transduction_lab.errors import PreconditionError, SingularityError, StabilityError
from transduction_lab.transducer_model import SystemParams

# fix the seed to make the tests deterministic
np.random.seed(42)


def loss_channel(eta, n_bar=0.0):
    """Bosonic loss channel with a thermal environment."""
    t = math.sqrt(eta) * np.eye(2)
    n = (1.0 - eta) * (2.0 * n_bar + 1.0) * np.eye(2)
    return GaussianChannel(transform=t, noise=n)


class TestTransmissivity:
    """eta = det T"""

    def test_identity(self):
        assert cm.transmissivity(GaussianChannel(np.eye(2), np.zeros((2, 2)))) == 1.0

    def test_rotation(self):
        """A quadrature swap still has unit determinant"""
        t = np.array([[0.0, 1.0], [-1.0, 0.0]])
        ch = GaussianChannel(t, np.zeros((2, 2)))
        assert cm.transmissivity(ch) == pytest.approx(1.0, abs=1e-15)

    def test_closed_form_value(self):
        """C_g = 0.5, C_nu = 0.2 amplifies: eta = 2 / 1.45"""
        assert cm.eta_closed_form(0.5, 0.2) == pytest.approx(1.3793103448275863,
                                                             abs=1e-14)


class TestAddedNoise:
    """n_e and the sigma^2 branch"""

    def test_pure_loss_vacuum(self):
        """A vacuum environment adds no thermal photons"""
        n_e, sigma2 = cm.added_noise(loss_channel(0.3))
        assert n_e == pytest.approx(0.0, abs=1e-14)
        assert sigma2 == pytest.approx(0.7, abs=1e-14)

    def test_thermal_environment(self):
        """Loss with a thermal environment gives n_e equal to its occupancy"""
        for n_bar in (0.0, 0.5, 3.0):
            n_e, _ = cm.added_noise(loss_channel(0.4, n_bar))
            assert n_e == pytest.approx(n_bar, abs=1e-12)

    def test_unity_transmissivity_branch(self):
        """At eta = 1 the noise is reported as sigma^2 instead"""
        ch = GaussianChannel(np.eye(2), 0.5 * np.eye(2))
        n_e, sigma2 = cm.added_noise(ch)
        assert n_e is None
        assert sigma2 == pytest.approx(0.5, abs=1e-14)

    def test_branch_tolerance(self):
        """eta within 1e-9 of one takes the sigma^2 branch"""
        t = math.sqrt(1.0 + 1e-10) * np.eye(2)
        n_e, _ = cm.added_noise(GaussianChannel(t, 1e-3 * np.eye(2)))
        assert n_e is None


class TestCapacityLowerBound:
    """Q_LB = max(0, log2|eta/(1-eta)| - g(n_e)) and the eta = 1 branch"""

    def test_noiseless_values(self):
        assert abs(cm.capacity_lower_bound(0.8, 0.0) - 2.0) <= 1e-12
        assert cm.capacity_lower_bound(0.5, 0.0) == 0.0
        assert cm.capacity_lower_bound(0.0, 0.0) == 0.0

    def test_unity_branch(self):
        """eta = 1 with sigma^2 = 0.5 gives log2(4/e)"""
        q = cm.capacity_lower_bound(1.0, sigma2=0.5)
        assert q == pytest.approx(math.log2(4.0 / math.e), abs=1e-12)

    def test_infinite_marker(self):
        """eta = 1 and sigma^2 = 0 is the perfect channel"""
        assert cm.capacity_lower_bound(1.0, sigma2=0.0) == math.inf

    def test_unity_branch_requires_sigma(self):
        with pytest.raises(PreconditionError, match="sigma"):
            cm.capacity_lower_bound(1.0)

    def test_negative_transmissivity_rejected(self):
        with pytest.raises(PreconditionError):
            cm.capacity_lower_bound(-0.1, 0.0)

    def test_accepts_metrics_object(self):
        """A ChannelMetrics value can be passed directly"""
        ch = loss_channel(0.8)
        m = cm.metrics_from_channel(ch)
        assert cm.capacity_lower_bound(m) == pytest.approx(2.0, abs=1e-12)

    def test_monotone_in_transmissivity(self):
        """More transmissivity never hurts in the loss regime"""
        qs = [cm.capacity_lower_bound(eta, 0.1)
              for eta in np.linspace(0.55, 0.999, 40)]
        assert all(b >= a for a, b in zip(qs, qs[1:]))

    def test_thermal_entropy_concave_increasing(self):
        """g(n) grows but flattens; g(0) = 0 exactly"""
        assert cm.thermal_entropy(0.0) == 0.0
        ns = np.linspace(0.01, 5.0, 60)
        gs = np.array([cm.thermal_entropy(n) for n in ns])
        assert np.all(np.diff(gs) > 0)
        assert np.all(np.diff(gs, 2) < 1e-12)


class TestClosedForms:
    """Transmissivity closed forms, stability and half matching"""

    def test_matched_point(self):
        assert cm.eta_closed_form(1.0, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_half_transmissivity_thresholds(self):
        """The eta = 0.5 crossings land where the quadratic roots say"""
        assert cm.eta_closed_form(3.0 - 2.0 * math.sqrt(2.0), 0.0) == pytest.approx(
            0.5, abs=1e-12)
        assert cm.eta_closed_form(3.0 - math.sqrt(8.8), 0.2) == pytest.approx(
            0.5, abs=1e-12)

    def test_unstable_parameters_rejected(self):
        with pytest.raises(StabilityError):
            cm.eta_closed_form(0.5, 0.6)

    def test_stability_check_examples(self):
        assert cm.stability_check(0.5, 0.5)
        assert not cm.stability_check(0.5, 0.6)
        assert cm.stability_check(123.0, 0.0)

    def test_half_matching_curve(self):
        """C_nu = (1 - C_g)^2 / 4, always inside the stable region"""
        assert cm.half_matching_cnu(1.0) == 0.0
        assert cm.half_matching_cnu(0.5) == pytest.approx(0.0625, abs=1e-15)
        assert cm.half_matching_cnu(0.25) == pytest.approx(0.140625, abs=1e-15)
        for c_g in np.linspace(0.01, 5.0, 30):
            c_nu = cm.half_matching_cnu(c_g)
            assert cm.stability_check(c_g, c_nu)

    def test_unity_transmissivity_on_curve(self):
        """The half-matching curve is the loss/amplification crossover"""
        for c_g in (0.1, 0.25, 0.5, 2.0):
            eta = cm.eta_closed_form(c_g, cm.half_matching_cnu(c_g))
            assert eta == pytest.approx(1.0, abs=1e-12)

    def test_transmissivity_crosses_unity_at_curve(self):
        """eta - 1 changes sign when C_nu sweeps across the curve"""
        for c_g in (0.1, 0.4, 0.8):
            curve = cm.half_matching_cnu(c_g)
            below = cm.eta_closed_form(c_g, curve - 0.01)
            above = cm.eta_closed_form(c_g, curve + 0.01)
            assert (below - 1.0) * (above - 1.0) < 0

    def test_detuned_reduction(self):
        """chi = 0 reduces the detuned form to the resonant one"""
        for c_g, c_nu in ((0.3, 0.1), (1.5, 0.2)):
            assert cm.eta_detuned(c_g, c_nu, 0.0, 0.0) == pytest.approx(
                cm.eta_closed_form(c_g, c_nu), abs=1e-14)

    def test_detuned_decreases_with_detuning(self):
        """|chi| only ever costs transmissivity in this regime"""
        chis = np.linspace(0.0, 2.0, 15)
        etas = [cm.eta_detuned(0.4, 0.15, chi, chi, zeta_o=0.95, zeta_e=0.99)
                for chi in chis]
        assert all(b < a for a, b in zip(etas, etas[1:]))
        assert cm.eta_detuned(0.4, 0.15, 50.0, 0.0) < 1e-3

    def test_detuned_matches_numeric_model(self):
        """The detuned closed form agrees with the scattering pipeline"""
        from transduction_lab.transducer_model import extract_channel
        for chi_o, chi_e in ((0.2, -0.3), (-0.5, 0.5), (1.0, 0.25)):
            p = SystemParams.from_cooperativities(
                0.4, 0.15, kappa_o=2.0, kappa_e=0.5,
                delta_o=chi_o * 2.0, delta_e=chi_e * 0.5)
            eta = np.linalg.det(extract_channel(p).transform)
            assert eta == pytest.approx(
                cm.eta_detuned(0.4, 0.15, chi_o, chi_e), rel=1e-10)

    def test_detuned_singular_denominator(self):
        """Parameters that blow up the denominator are reported, not returned"""
        with pytest.raises(SingularityError):
            cm.eta_detuned(0.1, 30.0, 0.0, 0.0)


class TestBandwidth:
    """Frequency dependence of the transmissivity"""

    def make_params(self, c_nu):
        return SystemParams.from_cooperativities(
            0.1, c_nu, kappa_o=100.0, kappa_e=0.2)

    def test_zero_frequency_consistency(self):
        p = self.make_params(0.05)
        assert cm.eta_bandwidth(p, 0.0) == pytest.approx(
            cm.eta_closed_form(0.1, 0.05), abs=1e-14)

    def test_even_and_peaked_at_resonance(self):
        p = self.make_params(0.1)
        omegas = np.linspace(0.001, 0.5, 40)
        for w in omegas:
            assert cm.eta_bandwidth(p, w) == pytest.approx(
                cm.eta_bandwidth(p, -w), abs=1e-15)
        peak = cm.eta_bandwidth(p, 0.0)
        assert all(cm.eta_bandwidth(p, w) < peak for w in omegas)

    def test_vanishes_far_from_resonance(self):
        p = self.make_params(0.0)
        assert cm.eta_bandwidth(p, 1e6) < 1e-15

    def test_bandwidth_narrows_with_squeezing(self):
        """The full width at half maximum shrinks as C_nu grows"""
        def fwhm(c_nu):
            p = self.make_params(c_nu)
            w = np.linspace(-0.3, 0.3, 2001)
            eta = cm.eta_bandwidth(p, w)
            above = w[eta >= eta.max() / 2.0]
            return above[-1] - above[0]

        widths = [fwhm(c) for c in (0.0, 0.1, 0.2)]
        assert widths[0] > widths[1] > widths[2]

    def test_accepts_arrays(self):
        p = self.make_params(0.05)
        w = np.array([0.0, 0.1, 0.2])
        eta = cm.eta_bandwidth(p, w)
        assert eta.shape == (3,)
        assert eta[0] > eta[1] > eta[2]

    def test_rejects_detuned_parameters(self):
        p = SystemParams.from_cooperativities(0.1, 0.0, delta_o=0.5)
        with pytest.raises(PreconditionError, match="resonance"):
            cm.eta_bandwidth(p, 0.0)


class TestPhysicalHelpers:
    """Occupancy and squeezing-strength conversions"""

    def test_occupancy_at_ln2(self):
        """h f / k T = ln 2 gives exactly one photon"""
        import scipy.constants as const
        f = 10e9
        t = const.h * f / (const.k * math.log(2.0))
        assert cm.thermal_occupancy(f, t) == pytest.approx(1.0, rel=1e-12)

    def test_rayleigh_jeans_limit(self):
        """Hot limit approaches k T / h f within one percent"""
        import scipy.constants as const
        f = 10e9
        t = const.h * f / (const.k * 0.005)
        classical = const.k * t / (const.h * f)
        assert cm.thermal_occupancy(f, t) == pytest.approx(classical, rel=0.01)

    def test_deep_cryogenic_log_occupancy(self):
        """10 GHz at 1 mK sits around 1e-208, far past expm1 territory"""
        log_n = cm.thermal_occupancy_log10(10e9, 1e-3)
        assert -215.0 < log_n < -195.0
        n = cm.thermal_occupancy(10e9, 1e-3)
        assert 0.0 < n < 1e-195
        assert math.log10(n) == pytest.approx(log_n, abs=1e-9)

    def test_log_occupancy_matches_direct_value(self):
        """Where the direct formula still works the log agrees"""
        assert cm.thermal_occupancy_log10(10e9, 0.3) == pytest.approx(
            math.log10(cm.thermal_occupancy(10e9, 0.3)), abs=1e-12)

    def test_invalid_occupancy_arguments(self):
        with pytest.raises(PreconditionError):
            cm.thermal_occupancy(10e9, 0.0)
        with pytest.raises(PreconditionError):
            cm.thermal_occupancy(-1.0, 0.1)

    def test_squeezing_db_conventions(self):
        assert cm.squeezing_db(0.0) == 0.0
        assert cm.squeezing_db(1.0) == pytest.approx(40.0 / math.log(10.0), abs=1e-12)
        assert cm.squeezing_db(0.5493) == pytest.approx(9.54, abs=0.01)
        assert cm.squeezing_db(1.0, variance_convention=True) == pytest.approx(
            20.0 / math.log(10.0), abs=1e-12)

    def test_squeezing_db_rejects_negative(self):
        with pytest.raises(PreconditionError):
            cm.squeezing_db(-0.2)
