"""Figures of merit for the single-mode Gaussian conversion channel.

The channel acts on covariance matrices as V -> T V T^T + N. Everything here
is a closed form; the numeric scattering construction lives in
`transducer_model` and must agree with these formulas (that agreement is one
of the package's core regression properties).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import constants

from .errors import PreconditionError, SingularityError, StabilityError
from .symplectic_core import cp_check

# |eta - 1| below this uses the unit-transmissivity noise formula
ETA_UNITY_TOL = 1e-9
# sigma^2 below this at eta = 1 reports the infinite-capacity marker
SIGMA_ZERO_TOL = 1e-15


@dataclass(frozen=True)
class GaussianChannel:
    """Single-mode Gaussian channel (T, N) in quadrature form.

    Attributes:
        transform: real 2x2 matrix T applied as V -> T V T^T.
        noise: real symmetric 2x2 added-noise matrix N.
    """

    transform: np.ndarray
    noise: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transform, dtype=float)
        n = np.asarray(self.noise, dtype=float)
        if t.shape != n.shape or t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] % 2:
            raise PreconditionError(f"bad channel shapes {t.shape}, {n.shape}")
        if np.max(np.abs(n - n.T)) > 1e-10 * max(1.0, float(np.max(np.abs(n)))):
            raise PreconditionError("noise matrix must be symmetric")
        object.__setattr__(self, "transform", t)
        object.__setattr__(self, "noise", 0.5 * (n + n.T))

    def is_cp(self, tol=1e-10):
        """Complete-positivity check of the (T, N) pair."""
        return cp_check(self.transform, self.noise, tol)


@dataclass(frozen=True)
class ChannelMetrics:
    """Scalar summary of a channel.

    Attributes:
        eta: transmissivity det T.
        n_e: added thermal photons (None on the eta = 1 branch).
        sigma2: sqrt(det N); the noise variance used when eta = 1.
        q_lb: quantum-capacity lower bound; math.inf marks the perfect channel.
    """

    eta: float
    n_e: Optional[float]
    sigma2: float
    q_lb: float


def transmissivity(channel):
    """det T of the channel; > 1 marks phase-sensitive amplification."""
    return float(np.linalg.det(channel.transform))


def added_noise(channel):
    """Added-noise figures (n_e, sigma2) of a channel.

    Args:
        channel: GaussianChannel (should pass its CP check).

    Returns:
        Tuple (n_e, sigma2). sigma2 = sqrt(det N) always; n_e is
        sigma2 / (2|1 - eta|) - 1/2 away from eta = 1 and None within
        ETA_UNITY_TOL of it, where only sigma2 is meaningful.
    """
    eta = transmissivity(channel)
    det_n = float(np.linalg.det(channel.noise))
    sigma2 = math.sqrt(max(det_n, 0.0))  # clip roundoff negatives
    if abs(eta - 1.0) <= ETA_UNITY_TOL:
        return None, sigma2
    n_e = sigma2 / (2.0 * abs(1.0 - eta)) - 0.5
    if -1e-9 < n_e < 0.0:
        n_e = 0.0
    return n_e, sigma2


def thermal_entropy(n):
    """g(n) = (n+1) log2(n+1) - n log2 n, the entropy of a thermal state."""
    if n <= 0.0:
        return 0.0
    return (n + 1.0) * math.log2(n + 1.0) - n * math.log2(n)


def capacity_lower_bound(eta, n_e=0.0, sigma2=None):
    """Quantum-capacity lower bound of the channel.

    Args:
        eta: transmissivity, or a ChannelMetrics to read all fields from.
        n_e: added thermal photons (eta != 1 branch).
        sigma2: noise variance (eta = 1 branch).

    Returns:
        max{0, log2|eta/(1-eta)| - g(n_e)} away from unit transmissivity;
        max{0, log2(2/(e*sigma2))} at eta = 1, with math.inf once sigma2
        drops below SIGMA_ZERO_TOL.
    """
    if isinstance(eta, ChannelMetrics):
        eta, n_e, sigma2 = eta.eta, eta.n_e, eta.sigma2
    if eta < 0.0:
        raise PreconditionError(f"eta must be nonnegative, got {eta}")
    if abs(eta - 1.0) <= ETA_UNITY_TOL:
        if sigma2 is None:
            raise PreconditionError("eta = 1 branch needs sigma2")
        if sigma2 < SIGMA_ZERO_TOL:
            return math.inf
        return max(0.0, math.log2(2.0 / (math.e * sigma2)))
    if eta == 0.0:
        return 0.0
    return max(0.0, math.log2(abs(eta / (1.0 - eta))) - thermal_entropy(n_e or 0.0))


def metrics_from_channel(channel):
    """Bundle transmissivity, added noise and capacity bound for a channel."""
    eta = transmissivity(channel)
    n_e, sigma2 = added_noise(channel)
    q_lb = capacity_lower_bound(eta, n_e if n_e is not None else 0.0, sigma2)
    return ChannelMetrics(eta=eta, n_e=n_e, sigma2=sigma2, q_lb=q_lb)


def stability_check(c_g, c_nu):
    """True iff the pump sits below threshold: C_nu < (1 + C_g)^2 / 4."""
    return c_nu < 0.25 * (1.0 + c_g) ** 2


def half_matching_cnu(c_g):
    """Squeezing cooperativity that half-matches a given C_g.

    Always strictly inside the stable region for c_g > 0.
    """
    if c_g < 0.0:
        raise PreconditionError(f"c_g must be nonnegative, got {c_g}")
    return 0.25 * (1.0 - c_g) ** 2


def eta_closed_form(c_g, c_nu=0.0, zeta_o=1.0, zeta_e=1.0):
    """On-resonance transmissivity 4 C_g zeta_o zeta_e / ((1+C_g)^2 - 4 C_nu).

    Reduces to the bare beam-splitter conversion value at c_nu = 0.

    Raises:
        StabilityError: outside the stable pump region.
    """
    if not stability_check(c_g, c_nu):
        raise StabilityError(
            f"unstable: C_nu = {c_nu} >= (1 + C_g)^2 / 4 = {0.25 * (1 + c_g) ** 2}"
        )
    return 4.0 * c_g * zeta_o * zeta_e / ((1.0 + c_g) ** 2 - 4.0 * c_nu)


def eta_detuned(c_g, c_nu, chi_o, chi_e, zeta_o=1.0, zeta_e=1.0):
    """Transmissivity with normalized detunings chi = delta/kappa per mode.

    Raises:
        SingularityError: nonpositive denominator (gain pole crossed).
    """
    den = (
        c_g**2
        + c_g * (2.0 + 8.0 * chi_e * chi_o)
        + (1.0 - 4.0 * c_nu + 4.0 * chi_e**2) * (1.0 + 4.0 * chi_o**2)
    )
    if den <= 0.0:
        raise SingularityError(f"detuned denominator {den} <= 0", condition_number=None)
    return 4.0 * c_g * zeta_o * zeta_e / den


def eta_bandwidth(params, omega):
    """Transmissivity at sideband frequency omega for on-resonance params.

    Args:
        params: anything exposing c_g, c_nu, kappa_o, kappa_e, zeta_o, zeta_e
            (and, if present, zero delta_o/delta_e).
        omega: sideband frequency, scalar or array, same units as the kappas.

    Returns:
        eta(omega); the omega = 0 value equals eta_closed_form.
    """
    if getattr(params, "delta_o", 0.0) != 0.0 or getattr(params, "delta_e", 0.0) != 0.0:
        raise PreconditionError("bandwidth closed form assumes on-resonance operation")
    c_g, c_nu = params.c_g, params.c_nu
    if not stability_check(c_g, c_nu):
        raise StabilityError(f"unstable: C_nu = {c_nu} at C_g = {c_g}")
    ko, ke = params.kappa_o, params.kappa_e
    w2 = np.asarray(omega, dtype=float) ** 2
    num = 4.0 * c_g * params.zeta_o * params.zeta_e * ko**2 * ke**2
    den = (
        ((1.0 + c_g) ** 2 - 4.0 * c_nu) * ko**2 * ke**2
        + 4.0 * ((1.0 - 4.0 * c_nu) * ke**2 - 2.0 * c_g * ke * ko + ko**2) * w2
        + 16.0 * w2**2
    )
    out = num / den
    return float(out) if np.isscalar(omega) else out


def thermal_occupancy(frequency, temperature):
    """Bose occupancy 1/(exp(h f / k T) - 1), underflow-safe.

    Args:
        frequency: ordinary (cycle) frequency in Hz.
        temperature: bath temperature in K.
    """
    if frequency <= 0.0 or temperature <= 0.0:
        raise PreconditionError("frequency and temperature must be positive")
    x = constants.h * frequency / (constants.k * temperature)
    if x > 50.0:
        # exp(x) would overflow long before the occupancy underflows;
        # 1/(e^x - 1) = e^-x to double precision once x > 50
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def thermal_occupancy_log10(frequency, temperature):
    """log10 of the Bose occupancy, valid far past float underflow."""
    if frequency <= 0.0 or temperature <= 0.0:
        raise PreconditionError("frequency and temperature must be positive")
    x = constants.h * frequency / (constants.k * temperature)
    if x > 700.0:  # expm1 overflows; the correction term is < 1e-304
        return -x / math.log(10.0)
    return -math.log10(math.expm1(x))


def squeezing_db(lam, variance_convention=False):
    """Squeezing factor expressed in dB.

    Default follows the 10*log10(e^{4*lam}) convention; set
    variance_convention=True for the usual variance ratio e^{2*lam}.
    """
    if lam < 0.0:
        raise PreconditionError(f"squeezing factor must be nonnegative, got {lam}")
    power = 2.0 if variance_convention else 4.0
    return 10.0 * power * lam / math.log(10.0)
