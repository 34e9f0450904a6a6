"""Squeezed-frame view of the detuned, parametrically driven converter.

When the microwave mode is detuned far enough that its detuning dominates the
parametric pump, a Bogoliubov rotation of that mode absorbs the two-photon
term entirely. In the rotated frame the dynamics is a plain beam-splitter
conversion with an enhanced coupling, at the price of an environment that the
inverse rotation turns thermal (amplified) even when the lab-frame bath is
vacuum. Everything in this module is bookkeeping for that frame: the pump
ratio and squeeze parameter, the transformed rates, the amplified bath
occupancy, and the squeezed-input recipe that cancels it again.

The frame only exists while the pump ratio beta = 2 nu / delta_e stays below
one; past that the rotation diverges along with the parametric instability.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .channel_metrics import (
    ETA_UNITY_TOL,
    ChannelMetrics,
    capacity_lower_bound,
)
from .errors import OutOfRegimeError, PreconditionError, RegimeWarning

# build_frame clips the pump ratio here rather than work with a squeeze
# parameter that is numerically infinite
DEFAULT_BETA_CAP = 0.999


@dataclass(frozen=True)
class BogoliubovFrame:
    """Derived quantities of the rotated frame.

    beta is the pump ratio 2 nu / delta_e, r the squeeze parameter with
    tanh(2 r) = beta. The starred rates are what the optical mode sees:
    coupling g_s = g cosh(r), mode frequency omega_s, linewidth kappa_s
    (unchanged), cooperativity c_s = c_g cosh(r)^2 and extraction zeta_s
    (unchanged).
    """

    beta: float
    r: float
    g_s: float
    omega_s: float
    kappa_s: float
    c_s: float
    zeta_s: float


def effective_squeezing(nu, delta_e):
    """Squeeze parameter r of the frame, from tanh(2 r) = 2 nu / delta_e.

    Raises OutOfRegimeError once the detuning no longer dominates the pump
    (delta_e <= 2 nu), where no such frame exists.
    """
    if nu < 0.0:
        raise PreconditionError("nu is a magnitude, must be nonnegative")
    if delta_e <= 2.0 * nu:
        raise OutOfRegimeError(
            f"no Bogoliubov frame: delta_e = {delta_e} must exceed 2 nu = {2.0 * nu}"
        )
    return 0.5 * math.atanh(2.0 * nu / delta_e)


def build_frame(params, beta_cap=DEFAULT_BETA_CAP):
    """Construct the rotated frame for a parameter set.

    The pump ratio is clipped at beta_cap (with a RegimeWarning) so callers
    sweeping toward the divergence get finite, monotone numbers instead of
    overflow; a ratio at or past one still raises OutOfRegimeError.
    """
    if not 0.0 < beta_cap < 1.0:
        raise PreconditionError(f"beta_cap must sit in (0, 1), got {beta_cap}")
    p = params
    effective_squeezing(p.nu, p.delta_e)  # regime gate
    beta = 2.0 * p.nu / p.delta_e
    if beta > beta_cap:
        warnings.warn(
            f"pump ratio {beta:.6f} clipped to {beta_cap}; squeeze parameter "
            "diverges at ratio 1",
            RegimeWarning,
            stacklevel=2,
        )
        beta = beta_cap
    r = 0.5 * math.atanh(beta)
    cosh_r = math.cosh(r)
    return BogoliubovFrame(
        beta=beta,
        r=r,
        g_s=p.g * cosh_r,
        omega_s=p.delta_e * math.sqrt(1.0 - beta**2),
        kappa_s=p.kappa_e,
        c_s=p.c_g * cosh_r**2,
        zeta_s=p.zeta_e,
    )


def eta_bogoliubov(c_s, zeta_o=1.0, zeta_s=1.0):
    """Conversion transmissivity seen in the rotated frame.

    Same beam-splitter form as the resonant converter, with the enhanced
    cooperativity in place of the bare one: 4 c_s zeta_o zeta_s / (1 + c_s)^2.
    """
    if c_s < 0.0:
        raise PreconditionError(f"c_s must be nonnegative, got {c_s}")
    return 4.0 * c_s * zeta_o * zeta_s / (1.0 + c_s) ** 2


def amplified_noise(r, n_th=0.0):
    """Occupancy of the rotated-frame bath given a lab-frame thermal bath.

    The inverse rotation amplifies the bath: cosh(2r) n_th + sinh(r)^2,
    which stays at sinh(r)^2 even for a lab-frame vacuum.
    """
    return math.cosh(2.0 * r) * n_th + math.sinh(r) ** 2


def squeezed_bath_noise(r, lam, theta, phi, n_th=0.0):
    """Rotated-frame occupancy when the lab-frame bath is itself squeezed.

    lam and phi are the bath's squeeze strength and angle, theta the pump
    phase, n_th the bath's thermal occupancy. The cross term carries
    cos(theta - phi), so the bath squeezing can either fight or reinforce
    the frame amplification depending on the angle.
    """
    c2r, s2r = math.cosh(2.0 * r), math.sinh(2.0 * r)
    c2l, s2l = math.cosh(2.0 * lam), math.sinh(2.0 * lam)
    cross = math.cos(theta - phi) * s2r * s2l
    return n_th * (c2r * c2l + cross) + 0.5 * (c2r * c2l - 1.0) + 0.5 * cross


def elimination_params(r, theta):
    """Bath squeezing (lam, phi) that cancels the frame amplification.

    Matching the bath squeeze to the frame squeeze, anti-aligned with the
    pump, returns the rotated-frame bath to occupancy n_th exactly.
    """
    return r, theta - math.pi


@dataclass(frozen=True)
class RwaReport:
    """Validity figures for treating the rotated frame as a beam splitter.

    Ratios are reported signed; the pass flags compare magnitudes against
    the thresholds handed to rwa_validity.
    """

    coupling_ratio: float
    detuning_ratio: float
    coupling_ok: bool
    detuning_ok: bool

    @property
    def ok(self):
        return self.coupling_ok and self.detuning_ok


def rwa_validity(params, frame=None, coupling_threshold=1.0, detuning_threshold=0.1):
    """Check the rotating-wave conditions behind the frame picture.

    The counter-rotating terms oscillate at the rotated mode frequency, so
    the coupling must stay below it (g_s / omega_s small) and the optical
    detuning must track it ((|delta_o| - omega_s) / (|delta_o| + omega_s)
    small). Thresholds are configurable; the defaults accept anything below
    breakdown for the coupling and a 10 percent mismatch for the detuning.
    """
    if frame is None:
        frame = build_frame(params)
    coupling_ratio = frame.g_s / frame.omega_s
    detuning_ratio = (abs(params.delta_o) - frame.omega_s) / (
        abs(params.delta_o) + frame.omega_s
    )
    return RwaReport(
        coupling_ratio=coupling_ratio,
        detuning_ratio=detuning_ratio,
        coupling_ok=abs(coupling_ratio) < coupling_threshold,
        detuning_ok=abs(detuning_ratio) < detuning_threshold,
    )


def bogoliubov_channel_metrics(params, eliminate_noise=False):
    """Channel metrics of the rotated-frame conversion.

    Models the frame channel as pure loss at the enhanced-cooperativity
    transmissivity feeding from a thermal bath: the amplified occupancy by
    default, or the bare n_th when eliminate_noise applies the matched
    squeezed-bath recipe.
    """
    frame = build_frame(params)
    eta_s = eta_bogoliubov(frame.c_s, params.zeta_o, frame.zeta_s)
    n_bar = params.n_th if eliminate_noise else amplified_noise(frame.r, params.n_th)
    sigma2 = abs(1.0 - eta_s) * (2.0 * n_bar + 1.0)
    n_e: Optional[float] = n_bar
    if abs(eta_s - 1.0) <= ETA_UNITY_TOL:
        n_e = None
    q_lb = capacity_lower_bound(eta_s, n_bar, sigma2)
    return ChannelMetrics(eta=eta_s, n_e=n_e, sigma2=sigma2, q_lb=q_lb)
