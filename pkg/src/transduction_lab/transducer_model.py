"""Input-output model of a pumped cavity electro-optic converter.

Two cavity modes, optical (o) and microwave (e), couple through a drive-
enhanced beam-splitter interaction of strength g while a second pump drives
a two-photon (parametric) term of strength nu on the microwave mode. Each
mode talks to a coupling port and an intrinsic-loss port; the coupling
fractions zeta_o, zeta_e set how much of each linewidth is usable. Solving
the linear Langevin equations in the Fourier domain gives an 8-port
scattering matrix, and tracing out all but one input and one output port
yields the single-mode Gaussian channel the rest of the package analyzes.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .channel_metrics import GaussianChannel
from .errors import (
    NearSingularWarning,
    PhysicalityError,
    PreconditionError,
    SingularityError,
)
from .symplectic_core import (
    CovarianceMatrix,
    LadderMatrix,
    ladder_labels,
    ladder_to_quadrature,
)

MODES = ("opt", "mw")
# coupling port and intrinsic-loss port per mode, fixed global order
PORTS = ("opt_c", "opt_i", "mw_c", "mw_i")

# condition number of the drift resolvent above which we refuse to invert
COND_LIMIT = 1e12


@dataclass(frozen=True)
class SystemParams:
    """Operating point of the converter.

    Rates are in the same (angular) frequency unit throughout; only ratios
    matter for the channel. Detunings are measured from the rotating frame
    set by the pumps. The pump phase theta defaults to -pi/2, which makes
    the parametric terms of the drift matrix real.
    """

    g: float = 0.0
    nu: float = 0.0
    theta: float = -math.pi / 2
    kappa_o: float = 1.0
    kappa_e: float = 1.0
    zeta_o: float = 1.0
    zeta_e: float = 1.0
    delta_o: float = 0.0
    delta_e: float = 0.0
    n_th: float = 0.0

    def __post_init__(self):
        if self.kappa_o <= 0.0 or self.kappa_e <= 0.0:
            raise PreconditionError("linewidths must be positive")
        for name in ("zeta_o", "zeta_e"):
            z = getattr(self, name)
            if not 0.0 <= z <= 1.0:
                raise PreconditionError(f"{name} = {z} outside [0, 1]")
        if self.nu < 0.0:
            raise PreconditionError("nu is a magnitude; move its sign into theta")
        if self.n_th < 0.0:
            raise PreconditionError("n_th must be nonnegative")

    @property
    def c_g(self):
        """Conversion cooperativity 4 g^2 / (kappa_o kappa_e)."""
        return 4.0 * self.g**2 / (self.kappa_o * self.kappa_e)

    @property
    def c_nu(self):
        """Squeezing cooperativity 4 nu^2 / kappa_e^2."""
        return 4.0 * self.nu**2 / self.kappa_e**2

    @classmethod
    def from_cooperativities(cls, c_g, c_nu=0.0, kappa_o=1.0, kappa_e=1.0, **kwargs):
        """Build params from (C_g, C_nu) instead of raw coupling rates."""
        if c_g < 0.0 or c_nu < 0.0:
            raise PreconditionError("cooperativities must be nonnegative")
        g = 0.5 * math.sqrt(c_g * kappa_o * kappa_e)
        nu = 0.5 * math.sqrt(c_nu) * kappa_e
        return cls(g=g, nu=nu, kappa_o=kappa_o, kappa_e=kappa_e, **kwargs)


@dataclass(frozen=True)
class PortBath:
    """State of one environment port: 'vacuum', 'thermal' or 'squeezed'."""

    kind: str
    n: float = 0.0
    lam: float = 0.0
    phi: float = 0.0

    @classmethod
    def vacuum(cls):
        return cls(kind="vacuum")

    @classmethod
    def thermal(cls, n):
        return cls(kind="thermal", n=n)

    @classmethod
    def squeezed(cls, lam, phi=0.0, n=0.0):
        """Squeezed (optionally thermal) input with strength lam, angle phi."""
        return cls(kind="squeezed", n=n, lam=lam, phi=phi)


@dataclass(frozen=True)
class BathSpec:
    """Bath assignment for all four ports."""

    optical_coupling: PortBath
    optical_intrinsic: PortBath
    microwave_coupling: PortBath
    microwave_intrinsic: PortBath

    @classmethod
    def vacuum(cls):
        return cls(*(PortBath.vacuum() for _ in range(4)))

    @classmethod
    def thermal(cls, n):
        """Vacuum optics, both microwave ports thermal at occupancy n."""
        return cls(
            optical_coupling=PortBath.vacuum(),
            optical_intrinsic=PortBath.vacuum(),
            microwave_coupling=PortBath.thermal(n),
            microwave_intrinsic=PortBath.thermal(n),
        )

    @classmethod
    def squeezed_microwave(cls, lam, phi=0.0, n=0.0, coupling_only=False):
        """Squeezed input on the microwave ports (or just the coupling port)."""
        sq = PortBath.squeezed(lam, phi, n)
        return cls(
            optical_coupling=PortBath.vacuum(),
            optical_intrinsic=PortBath.vacuum(),
            microwave_coupling=sq,
            microwave_intrinsic=PortBath.thermal(n) if coupling_only else sq,
        )


class ChannelDirection(enum.Enum):
    OPTICAL_TO_MICROWAVE = "o2e"
    MICROWAVE_TO_OPTICAL = "e2o"


def build_dynamical_matrix(params):
    """Drift matrix of the Langevin equations in the doubled mode basis.

    Basis order (a, a^dag, b, b^dag) with a optical, b microwave. The
    beam-splitter term couples a to b, the parametric pump couples b to
    b^dag; conjugate rows carry conjugated coefficients.
    """
    p = params
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = 1j * p.delta_o - 0.5 * p.kappa_o
    a[1, 1] = -1j * p.delta_o - 0.5 * p.kappa_o
    a[2, 2] = -1j * p.delta_e - 0.5 * p.kappa_e
    a[3, 3] = 1j * p.delta_e - 0.5 * p.kappa_e
    a[0, 2] = a[2, 0] = -1j * p.g
    a[1, 3] = a[3, 1] = 1j * p.g
    a[2, 3] = -2j * p.nu * np.exp(-1j * p.theta)
    a[3, 2] = 2j * p.nu * np.exp(1j * p.theta)
    labels = ladder_labels(MODES)
    return LadderMatrix(a, labels, labels)


def coupling_matrix(params):
    """Mode-to-port coupling matrix; entries are sqrt of partial linewidths."""
    p = params
    rates = (
        p.zeta_o * p.kappa_o,  # optical coupling port
        (1.0 - p.zeta_o) * p.kappa_o,  # optical intrinsic loss
        p.zeta_e * p.kappa_e,  # microwave coupling port
        (1.0 - p.zeta_e) * p.kappa_e,  # microwave intrinsic loss
    )
    b = np.zeros((4, 8))
    for port, rate in enumerate(rates):
        mode = port // 2  # 0 -> optical, 1 -> microwave
        root = math.sqrt(rate)
        b[2 * mode, 2 * port] = root
        b[2 * mode + 1, 2 * port + 1] = root
    return LadderMatrix(b, ladder_labels(MODES), ladder_labels(PORTS))


def is_dynamically_stable(params):
    """True iff every drift eigenvalue has a negative real part."""
    a = build_dynamical_matrix(params).entries
    return bool(np.max(np.linalg.eigvals(a).real) < 0.0)


def scattering_ladder(params, omega=0.0):
    """8-port scattering matrix at sideband frequency omega, ladder basis.

    Uses the positive-frequency Fourier convention, under which conjugate
    components evolve at -omega; the sign matrix below accounts for that.
    Input-output: out = B^T (resolvent) B in - in.

    Raises SingularityError (carrying the condition number) if the resolvent
    is numerically singular, and warns within a factor 10 of that limit.
    """
    a = build_dynamical_matrix(params).entries
    b = coupling_matrix(params).entries
    d4 = np.diag([1.0, -1.0, 1.0, -1.0])
    m = -1j * omega * d4 - a
    cond = float(np.linalg.cond(m))
    if cond >= COND_LIMIT:
        raise SingularityError(
            f"drift resolvent is numerically singular (cond = {cond:.3e})",
            condition_number=cond,
        )
    if cond >= COND_LIMIT / 10.0:
        warnings.warn(
            f"drift resolvent condition number {cond:.3e} near the refusal limit",
            NearSingularWarning,
            stacklevel=2,
        )
    s_a = b.T @ np.linalg.solve(m, b) - np.eye(8)
    labels = ladder_labels(PORTS)
    return LadderMatrix(s_a, labels, labels)


def scattering_quadrature(params, omega=0.0):
    """Real 8x8 scattering matrix in the (x, p)-interleaved port basis."""
    return ladder_to_quadrature(scattering_ladder(params, omega))


def _bath_block(bath):
    """2x2 covariance block of one port's input field (vacuum = identity)."""
    if bath.kind == "vacuum":
        return np.eye(2)
    if bath.kind == "thermal":
        return (2.0 * bath.n + 1.0) * np.eye(2)
    if bath.kind == "squeezed":
        ch, sh = math.cosh(2.0 * bath.lam), math.sinh(2.0 * bath.lam)
        c, s = math.cos(bath.phi), math.sin(bath.phi)
        core = ch * np.eye(2) + sh * np.array([[c, -s], [-s, -c]])
        return (2.0 * bath.n + 1.0) * core
    raise PreconditionError(f"unknown bath kind {bath.kind!r}")


def assemble_environment_covariance(baths):
    """Block-diagonal covariance of the three traced-out environment ports.

    Raises PhysicalityError if the assembled matrix violates the uncertainty
    bound (e.g. a negative thermal occupancy slipped in).
    """
    baths = tuple(baths)
    if len(baths) != 3:
        raise PreconditionError(f"expected 3 environment ports, got {len(baths)}")
    v = CovarianceMatrix(block_diag(*(_bath_block(b) for b in baths)))
    margin = v.physicality_margin()
    if margin < -1e-10:
        raise PhysicalityError(
            f"environment covariance violates the uncertainty bound by {-margin:.3e}"
        )
    return v


def extract_channel(params, omega=0.0, direction=ChannelDirection.OPTICAL_TO_MICROWAVE,
                    baths=None):
    """Single-mode Gaussian channel between the two coupling ports.

    Keeps one input quadrature pair and one output pair of the full port
    scattering matrix; everything else becomes environment, so the added
    noise is E V_env E^T with V_env from the bath assignment (vacuum if
    baths is None).
    """
    if baths is None:
        baths = BathSpec.vacuum()
    s_x = scattering_quadrature(params, omega).entries
    if direction == ChannelDirection.OPTICAL_TO_MICROWAVE:
        t = s_x[4:6, 0:2]
        env = s_x[4:6, 2:8]
        env_baths = (baths.optical_intrinsic, baths.microwave_coupling,
                     baths.microwave_intrinsic)
    elif direction == ChannelDirection.MICROWAVE_TO_OPTICAL:
        t = s_x[0:2, 4:6]
        env = s_x[0:2, [0, 1, 2, 3, 6, 7]]
        env_baths = (baths.optical_coupling, baths.optical_intrinsic,
                     baths.microwave_intrinsic)
    else:
        raise PreconditionError(f"unknown direction {direction!r}")
    v_env = assemble_environment_covariance(env_baths).matrix
    noise = env @ v_env @ env.T
    return GaussianChannel(transform=t.copy(), noise=0.5 * (noise + noise.T))


def random_stable_params(rng=None, detuned=False):
    """Draw a random operating point inside the stable region (diagnostics)."""
    rng = np.random.default_rng(rng)
    while True:
        c_g = float(10.0 ** rng.uniform(-2.0, 1.0))
        # keep a margin from the instability threshold (1 + C_g)^2 / 4
        c_nu = float(rng.uniform(0.05, 0.95) * 0.25 * (1.0 + c_g) ** 2)
        kwargs = dict(
            kappa_o=float(rng.uniform(0.5, 2.0)),
            kappa_e=float(rng.uniform(0.5, 2.0)),
            theta=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        if detuned:
            kwargs["delta_o"] = float(rng.uniform(-1.0, 1.0) * kwargs["kappa_o"])
            kwargs["delta_e"] = float(rng.uniform(-1.0, 1.0) * kwargs["kappa_e"])
        p = SystemParams.from_cooperativities(c_g, c_nu, **kwargs)
        if is_dynamically_stable(p):
            return p
