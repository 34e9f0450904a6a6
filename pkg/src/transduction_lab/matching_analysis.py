"""Half-matching analysis and squeezer-assisted conversion plans.

On resonance the pump couples the two microwave quadratures asymmetrically:
one quadrature sees its reflection grow, the other shrink. Along the curve
C_nu = (1 - C_g)^2 / 4 the smaller reflection vanishes exactly, leaving a
scattering matrix with a characteristic sparsity pattern: one quadrature pair
converts with gain xi, the conjugate pair with gain 1/xi, and all the
residual backaction piles into a single matrix entry gamma. Squeezers placed
at the ports can then rebalance the two gains into a unit-transmissivity
channel whose added noise is confined to one quadrature.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channel_metrics import GaussianChannel
from .errors import PreconditionError, StabilityError
from .symplectic_core import _entries, is_symplectic
from .transducer_model import scattering_quadrature

# reflection magnitudes below this count as exactly cancelled
CANCEL_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureRelations:
    """Per-quadrature transmission and reflection of the microwave output.

    Attributes
    ----------
    x_transmission, x_reflection
        Coefficients feeding the output x quadrature (from the optical p
        input and the microwave x input respectively).
    p_transmission, p_reflection
        Same for the output p quadrature (from optical x, microwave p).
    gain_ratio
        Ratio of the two quadrature gains; 1 without the pump.
    cancelled
        Which reflection vanishes: "x", "p", "both" or None.
    """

    x_transmission: float
    x_reflection: float
    p_transmission: float
    p_reflection: float
    gain_ratio: float
    cancelled: Optional[str]


def quadrature_relations(c_g, c_nu):
    """Closed-form quadrature coefficients at resonance, unit extraction.

    Parameters
    ----------
    c_g, c_nu
        Conversion and squeezing cooperativities.

    Returns
    -------
    QuadratureRelations

    Raises
    ------
    StabilityError
        At or past the instability threshold 2 sqrt(C_nu) = 1 + C_g.
    """
    if c_g < 0.0 or c_nu < 0.0:
        raise PreconditionError("cooperativities must be nonnegative")
    root = 2.0 * math.sqrt(c_nu)
    if root >= 1.0 + c_g:
        raise StabilityError(f"unstable: 2 sqrt(C_nu) = {root} >= 1 + C_g = {1.0 + c_g}")
    ratio = (1.0 + c_g + root) / (1.0 + c_g - root)
    sq = math.sqrt(c_g)
    x_refl = (ratio - c_g) / (1.0 + c_g)
    p_refl = (1.0 / ratio - c_g) / (1.0 + c_g)
    cancelled = None
    if abs(x_refl) <= CANCEL_TOL and abs(p_refl) <= CANCEL_TOL:
        cancelled = "both"
    elif abs(x_refl) <= CANCEL_TOL:
        cancelled = "x"
    elif abs(p_refl) <= CANCEL_TOL:
        cancelled = "p"
    return QuadratureRelations(
        x_transmission=sq * (1.0 + ratio) / (1.0 + c_g),
        x_reflection=x_refl,
        p_transmission=-sq * (1.0 + 1.0 / ratio) / (1.0 + c_g),
        p_reflection=p_refl,
        gain_ratio=ratio,
        cancelled=cancelled,
    )


def signal_scattering(params, omega=0.0):
    """4x4 coupling-port block of the quadrature scattering matrix.

    Rows and columns are (x, p) of the optical coupling port followed by
    (x, p) of the microwave coupling port. Symplectic on its own only at
    unit extraction, where the intrinsic ports decouple.
    """
    s_x = scattering_quadrature(params, omega).entries
    return s_x[np.ix_([0, 1, 4, 5], [0, 1, 4, 5])]


@dataclass(frozen=True)
class HalfMatchedForm:
    """Canonical form of a half-matched 4x4 scattering matrix.

    The canonical matrix has the sparsity pattern

        [[0,    0,    c,   0  ],
         [0,    e,    0,   1/c],
         [xi,   0,    gamma, 0],
         [0,    1/xi, 0,   0  ]]

    with e = -gamma / (c xi) forced by symplecticity, reached from the
    original matrix by quarter-turn rotations at each port:
    original = output_rotation^T @ canonical @ input_rotation.
    """

    xi: float
    gamma: float
    input_rotation: np.ndarray
    output_rotation: np.ndarray
    canonical: np.ndarray


_QUARTER_TURNS = tuple(
    np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]]).round()
    for a in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
)

# canonical zero pattern: everything except (0,2), (1,1), (1,3), (2,0), (2,2), (3,1)
_ZERO_SLOTS = ((0, 0), (0, 1), (0, 3), (1, 0), (1, 2), (2, 1), (2, 3), (3, 0), (3, 2), (3, 3))


def detect_half_matched(s, tol=1e-8):
    """Search for the half-matched canonical form of a 4x4 symplectic matrix.

    Parameters
    ----------
    s : ndarray
        4x4 symplectic matrix in (x, p) ordering, two ports.
    tol : float
        Zero-pattern tolerance, relative to max(1, largest entry of s).

    Returns
    -------
    HalfMatchedForm or None
        None when no quarter-turn combination produces the pattern.

    Raises
    ------
    PreconditionError
        If s is not a 4x4 symplectic matrix.
    """
    mat = _entries(s).astype(float)
    if mat.shape != (4, 4):
        raise PreconditionError(f"expected a 4x4 matrix, got {mat.shape}")
    if not is_symplectic(mat, 1e-8):
        raise PreconditionError("half-matching detection needs a symplectic input")
    scale = tol * max(1.0, float(np.max(np.abs(mat))))
    for ka, kb, la, lb in itertools.product(range(4), repeat=4):
        r_in = np.zeros((4, 4))
        r_in[0:2, 0:2] = _QUARTER_TURNS[ka]
        r_in[2:4, 2:4] = _QUARTER_TURNS[kb]
        r_out = np.zeros((4, 4))
        r_out[0:2, 0:2] = _QUARTER_TURNS[la]
        r_out[2:4, 2:4] = _QUARTER_TURNS[lb]
        m = r_out @ mat @ r_in.T
        if any(abs(m[i, j]) > scale for i, j in _ZERO_SLOTS):
            continue
        xi = m[2, 0]
        if xi <= 0.0:
            continue
        c, e, d, gamma, f = m[0, 2], m[1, 1], m[1, 3], m[2, 2], m[3, 1]
        # symplecticity forces the remaining relations; treat violations
        # as a failed match rather than a numerical accident
        if abs(f - 1.0 / xi) > scale or abs(d * c - 1.0) > scale * max(1.0, abs(c)):
            continue
        if abs(e * c * xi + gamma) > scale * max(1.0, abs(c * xi)):
            continue
        return HalfMatchedForm(
            xi=float(xi),
            gamma=float(gamma),
            input_rotation=r_in,
            output_rotation=r_out,
            canonical=m,
        )
    return None


@dataclass(frozen=True)
class SqueezerPlan:
    """Port squeezers bracketing the converter.

    in_x, in_p scale the input-port quadratures before the converter;
    out_x, out_p scale the output port after it. Each pair multiplies to
    one, so both operations are single-mode squeezers.
    """

    in_x: float
    in_p: float
    out_x: float
    out_p: float

    def __post_init__(self):
        for a, b, what in ((self.in_x, self.in_p, "input"), (self.out_x, self.out_p, "output")):
            if abs(a * b - 1.0) > 1e-12:
                raise PreconditionError(f"{what} squeezer must be symplectic: {a} * {b} != 1")

    @property
    def input_matrix(self):
        return np.diag([self.in_x, self.in_p])

    @property
    def output_matrix(self):
        return np.diag([self.out_x, self.out_p])


def perfect_transduction_plan(form, squeeze=1.0):
    """Squeezers that turn a half-matched converter into a lossless channel.

    Parameters
    ----------
    form : HalfMatchedForm
    squeeze : float
        Extra input squeeze factor (>= 1); raising it shrinks the
        residual one-quadrature noise by squeeze^2 per squeezer.

    Returns
    -------
    SqueezerPlan
        Composed with the converter this gives det T = 1 and a rank-one
        added noise (gamma / (xi * squeeze))^2 in a single quadrature.
    """
    if squeeze < 1.0:
        raise PreconditionError(f"squeeze must be at least 1, got {squeeze}")
    xi = form.xi
    return SqueezerPlan(
        in_x=squeeze,
        in_p=1.0 / squeeze,
        out_x=1.0 / (xi * squeeze),
        out_p=xi * squeeze,
    )


def two_way_plan(form, squeeze=1.0):
    """Squeezer pair serving both conversion directions at once.

    Unlike the one-way plan, the input squeezers here must attenuate the
    reflected quadratures, not amplify the transmitted ones: each port's
    input squeezer sits in the other direction's noise path, so an
    amplifying choice would trade one direction's residual against the
    other. The balanced assignment below keeps both composed transforms
    rotations and shrinks both residuals together.

    Returns
    -------
    (SqueezerPlan, SqueezerPlan)
        Forward and backward plans. With both installed, each direction has
        det T = 1 and rank-one noise (gamma / (xi^2 squeeze^2))^2.
    """
    if squeeze < 1.0:
        raise PreconditionError(f"squeeze must be at least 1, got {squeeze}")
    xi = form.xi
    forward = SqueezerPlan(
        in_x=1.0 / squeeze,
        in_p=squeeze,
        out_x=1.0 / (xi * squeeze),
        out_p=xi * squeeze,
    )
    backward = SqueezerPlan(
        in_x=1.0 / (xi * squeeze),
        in_p=xi * squeeze,
        out_x=1.0 / squeeze,
        out_p=squeeze,
    )
    return forward, backward


def _channel_from_blocks(t_block, env_block, z_out, z_in, z_env=None):
    t = z_out @ t_block @ z_in
    env = z_out @ env_block if z_env is None else z_out @ env_block @ z_env
    noise = env @ env.T  # vacuum on the traced-out port
    return GaussianChannel(transform=t, noise=0.5 * (noise + noise.T))


def composed_channel(s, plan, reverse=False):
    """Gaussian channel of a 4x4 converter block bracketed by squeezers.

    Parameters
    ----------
    s : ndarray
        4x4 scattering matrix, ports (optical, microwave), vacuum inputs.
    plan : SqueezerPlan
        Input squeezer on the source port, output squeezer on the target.
    reverse : bool
        False converts port 1 -> 2, True converts 2 -> 1.

    Returns
    -------
    GaussianChannel
    """
    mat = _entries(s).astype(float)
    if mat.shape != (4, 4):
        raise PreconditionError(f"expected a 4x4 matrix, got {mat.shape}")
    z_in, z_out = plan.input_matrix, plan.output_matrix
    if reverse:
        return _channel_from_blocks(mat[0:2, 2:4], mat[0:2, 0:2], z_out, z_in)
    return _channel_from_blocks(mat[2:4, 0:2], mat[2:4, 2:4], z_out, z_in)


def two_way_channels(s, forward, backward):
    """Both conversion directions with all four squeezers installed.

    The environment entering each port passes that port's input squeezer,
    so the plans interlock: the forward channel's noise sees the backward
    plan's input squeezer and vice versa.

    Returns
    -------
    (GaussianChannel, GaussianChannel)
        Port 1 -> 2 and port 2 -> 1 channels.
    """
    mat = _entries(s).astype(float)
    if mat.shape != (4, 4):
        raise PreconditionError(f"expected a 4x4 matrix, got {mat.shape}")
    fwd = _channel_from_blocks(
        mat[2:4, 0:2], mat[2:4, 2:4], forward.output_matrix, forward.input_matrix,
        z_env=backward.input_matrix,
    )
    bwd = _channel_from_blocks(
        mat[0:2, 2:4], mat[0:2, 0:2], backward.output_matrix, backward.input_matrix,
        z_env=forward.input_matrix,
    )
    return fwd, bwd
