"""Symplectic linear algebra for continuous-variable channel models.

Conventions
-----------
Quadratures are ordered (x, p) per port, ports in a fixed global order, so a
system of n ports lives in R^{2n} with the symplectic form

    Omega = blkdiag([[0, 1], [-1, 0]], ...)          (one block per port).

Vacuum normalization is <x^2> = 1, i.e. the vacuum covariance matrix is the
identity. Ladder-basis matrices act on the doubled vector
(a_1, a_1^dag, a_2, a_2^dag, ...); the two bases are linked by the per-port
map Q = [[1, 1], [-i, i]], since x = a + a^dag and p = -i(a - a^dag).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConventionError, DimensionError, PreconditionError

DEFAULT_TOL = 1e-10

# treat a Bloch-Messiah singular value within this of 1 as an unsqueezed pair;
# kept tight because the in-pair rotation gauge commutes with the diagonal
# factor only at d = 1, so a loose cluster would leak into reconstruction error
_UNIT_CLUSTER_TOL = 1e-12


def _entries(m):
    """Accept either a bare ndarray or one of the wrapper types."""
    return np.asarray(getattr(m, "entries", m))


def _check_even_square(m, what="matrix"):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {m.shape}")
    if m.shape[0] % 2:
        raise DimensionError(f"{what} must have even dimension, got {m.shape[0]}")


def symplectic_form(n_ports):
    """Return the 2n x 2n symplectic form in (x, p)-interleaved ordering.

    Parameters
    ----------
    n_ports : int
        Number of ports (modes); must be positive.

    Returns
    -------
    ndarray
        Real antisymmetric matrix with per-port blocks [[0, 1], [-1, 0]].
    """
    if n_ports < 1:
        raise DimensionError(f"n_ports must be positive, got {n_ports}")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_ports), block)


@dataclass(frozen=True)
class SymplecticForm:
    """The symplectic form on n ports.

    Attributes
    ----------
    n_ports : int
        Number of (x, p) pairs.
    omega : ndarray
        The 2n x 2n form matrix; antisymmetric, omega @ omega = -identity.
    """

    n_ports: int
    omega: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "omega", symplectic_form(self.n_ports))


def quadrature_labels(ports):
    """Interleaved (x, p) labels for the given port names."""
    out = []
    for p in ports:
        out.append(f"x:{p}")
        out.append(f"p:{p}")
    return tuple(out)


def ladder_labels(ports):
    """Interleaved (mode, conjugate) labels for the given port names."""
    out = []
    for p in ports:
        out.append(str(p))
        out.append(f"{p}*")
    return tuple(out)


def _default_ports(n):
    return tuple(f"m{k + 1}" for k in range(n))


@dataclass(frozen=True)
class QuadratureMatrix:
    """Real matrix acting between (x, p)-interleaved quadrature vectors.

    Attributes
    ----------
    entries : ndarray
        Real 2n x 2m array.
    row_labels, col_labels : tuple of str
        Quadrature labels, "x:<port>" and "p:<port>" alternating. Generated
        from generic port names when omitted.
    """

    entries: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] % 2 or m.shape[1] % 2:
            raise DimensionError(f"quadrature matrix needs even dimensions, got {m.shape}")
        object.__setattr__(self, "entries", m)
        for name, n in (("row_labels", m.shape[0]), ("col_labels", m.shape[1])):
            labels = tuple(getattr(self, name))
            if not labels:
                labels = quadrature_labels(_default_ports(n // 2))
            if len(labels) != n:
                raise DimensionError(f"{name}: expected {n} labels, got {len(labels)}")
            for k, lab in enumerate(labels):
                want = "x:" if k % 2 == 0 else "p:"
                if not str(lab).startswith(want):
                    raise DimensionError(
                        f"{name}[{k}] = {lab!r} breaks the (x, p)-per-port ordering"
                    )
            object.__setattr__(self, name, labels)

    @property
    def n_ports(self):
        return self.entries.shape[0] // 2


@dataclass(frozen=True)
class LadderMatrix:
    """Complex matrix acting between doubled (mode, conjugate) vectors.

    The doubled structure ties conjugate rows/columns together: with P the
    within-pair swap, P conj(M) P must equal M.
    """

    entries: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] % 2 or m.shape[1] % 2:
            raise DimensionError(f"ladder matrix needs even dimensions, got {m.shape}")
        object.__setattr__(self, "entries", m)
        for name, n in (("row_labels", m.shape[0]), ("col_labels", m.shape[1])):
            labels = tuple(getattr(self, name))
            if not labels:
                labels = ladder_labels(_default_ports(n // 2))
            if len(labels) != n:
                raise DimensionError(f"{name}: expected {n} labels, got {len(labels)}")
            object.__setattr__(self, name, labels)

    def doubled_structure_residue(self):
        """Max-norm deviation from the conjugate-pair structure."""
        m = self.entries
        swapped = m.reshape(m.shape[0] // 2, 2, m.shape[1] // 2, 2)[:, ::-1, :, ::-1]
        swapped = swapped.reshape(m.shape)
        return float(np.max(np.abs(np.conj(swapped) - m)))


@dataclass(frozen=True)
class CovarianceMatrix:
    """Real symmetric covariance matrix with vacuum normalized to identity."""

    matrix: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.matrix, dtype=float)
        _check_even_square(v, "covariance matrix")
        if np.max(np.abs(v - v.T)) > 1e-12 * max(1.0, np.max(np.abs(v))):
            raise PreconditionError("covariance matrix must be symmetric")
        object.__setattr__(self, "matrix", 0.5 * (v + v.T))

    @classmethod
    def vacuum(cls, n_ports):
        return cls(np.eye(2 * n_ports))

    @classmethod
    def thermal(cls, occupancies):
        """Block-diagonal thermal covariance, one occupancy per port."""
        occ = [float(n) for n in occupancies]
        return cls(np.diag(np.repeat([2.0 * n + 1.0 for n in occ], 2)))

    def physicality_margin(self):
        """Smallest eigenvalue of V + i*Omega (negative means unphysical)."""
        omega = symplectic_form(self.matrix.shape[0] // 2)
        herm = self.matrix + 1j * omega
        return float(np.min(np.linalg.eigvalsh(herm)))

    def is_physical(self, tol=DEFAULT_TOL):
        return self.physicality_margin() >= -tol


def is_symplectic(m, tol=DEFAULT_TOL):
    """Test whether M preserves the symplectic form.

    Parameters
    ----------
    m : array_like or QuadratureMatrix
        Real square matrix of even dimension.
    tol : float
        Max-norm tolerance on M Omega M^T - Omega.

    Returns
    -------
    bool
    """
    mat = _entries(m).astype(float)
    _check_even_square(mat)
    omega = symplectic_form(mat.shape[0] // 2)
    return bool(np.max(np.abs(mat @ omega @ mat.T - omega)) <= tol)


def _ladder_quad_map(n_ports):
    q1 = np.array([[1.0, 1.0], [-1.0j, 1.0j]])
    return np.kron(np.eye(n_ports), q1)


def ladder_to_quadrature(s_a, imag_tol=1e-12):
    """Convert a ladder-basis scattering matrix to the quadrature basis.

    Computes S_x = Q S_a Q^{-1} with the per-port map Q = [[1, 1], [-i, i]]
    and checks that the result is real, which holds exactly when S_a has the
    doubled conjugate-pair structure.

    Parameters
    ----------
    s_a : array_like or LadderMatrix
        Complex 2n x 2m matrix in (mode, conjugate) interleaved ordering.
    imag_tol : float
        Maximum tolerated imaginary residue before declaring the doubled
        structure broken.

    Returns
    -------
    QuadratureMatrix

    Raises
    ------
    ConventionError
        If the imaginary residue exceeds ``imag_tol``.
    """
    mat = _entries(s_a).astype(complex)
    if mat.ndim != 2 or mat.shape[0] % 2 or mat.shape[1] % 2:
        raise DimensionError(f"ladder matrix needs even dimensions, got {mat.shape}")
    q_out = _ladder_quad_map(mat.shape[0] // 2)
    q_in_inv = np.conj(_ladder_quad_map(mat.shape[1] // 2)).T / 2.0
    s_x = q_out @ mat @ q_in_inv
    residue = float(np.max(np.abs(s_x.imag)))
    if residue > imag_tol:
        raise ConventionError(
            "quadrature image has imaginary residue "
            f"{residue:.3e} > {imag_tol:.1e}; doubled structure violated"
        )
    labels = _convert_labels(s_a)
    return QuadratureMatrix(s_x.real, *labels)


def _convert_labels(s_a):
    """Ladder labels ('p', 'p*') -> quadrature labels ('x:p', 'p:p'), if any."""
    rows = cols = ()
    if isinstance(s_a, LadderMatrix):
        rows = tuple(
            f"{'x' if k % 2 == 0 else 'p'}:{str(lab).rstrip('*')}"
            for k, lab in enumerate(s_a.row_labels)
        )
        cols = tuple(
            f"{'x' if k % 2 == 0 else 'p'}:{str(lab).rstrip('*')}"
            for k, lab in enumerate(s_a.col_labels)
        )
    return rows, cols


def quadrature_to_ladder(s_x):
    """Inverse of :func:`ladder_to_quadrature` (mainly for round-trip tests)."""
    mat = _entries(s_x).astype(complex)
    if mat.ndim != 2 or mat.shape[0] % 2 or mat.shape[1] % 2:
        raise DimensionError(f"quadrature matrix needs even dimensions, got {mat.shape}")
    q_out_inv = np.conj(_ladder_quad_map(mat.shape[0] // 2)).T / 2.0
    q_in = _ladder_quad_map(mat.shape[1] // 2)
    return LadderMatrix(q_out_inv @ mat @ q_in)


def cp_check(t, n, tol=DEFAULT_TOL):
    """Complete-positivity test for a Gaussian channel (T, N).

    The channel V -> T V T^T + N is completely positive iff

        N + i*Omega - i*T Omega T^T >= 0.

    Parameters
    ----------
    t, n : array_like
        2k x 2k real matrices; N must be symmetric.
    tol : float
        Eigenvalues down to -tol still count as nonnegative.

    Returns
    -------
    bool

    Raises
    ------
    PreconditionError
        If N is not symmetric.
    """
    t_m = _entries(t).astype(float)
    n_m = _entries(n).astype(float)
    _check_even_square(t_m, "T")
    _check_even_square(n_m, "N")
    if np.max(np.abs(n_m - n_m.T)) > max(tol, 1e-12):
        raise PreconditionError("N must be symmetric")
    omega = symplectic_form(n_m.shape[0] // 2)
    herm = n_m + 1j * (omega - t_m @ omega @ t_m.T)
    herm = 0.5 * (herm + np.conj(herm).T)
    return bool(np.min(np.linalg.eigvalsh(herm)) >= -tol)


@dataclass(frozen=True)
class BlochMessiahFactors:
    """Factors of S = left @ diagonal @ right.

    Attributes
    ----------
    left, right : ndarray
        Symplectic orthogonal matrices.
    diagonal : ndarray
        Diagonal symplectic matrix with per-pair entries (d, 1/d), d >= 1,
        pairs sorted by descending d.
    """

    left: np.ndarray
    diagonal: np.ndarray
    right: np.ndarray

    @property
    def squeeze_values(self):
        """The per-pair d >= 1 values, in stored (descending) order."""
        return np.diag(self.diagonal)[::2].copy()

    def reconstruct(self):
        return self.left @ self.diagonal @ self.right


def _symplectic_pairs(p_mat, omega):
    """Symplectic-orthonormal eigenpairs (u, -Omega u, d) of P = S^T S.

    Eigenvalues of P come in reciprocal pairs (d^2, 1/d^2); for each pair we
    keep the d >= 1 member u and its partner v = -Omega u (eigenvalue 1/d^2,
    u^T Omega v = 1). Degenerate clusters, including the unit cluster, are
    resolved by Gram-Schmidt against already-selected pairs.
    """
    dim = p_mat.shape[0]
    n_pairs = dim // 2
    evals, evecs = np.linalg.eigh(p_mat)
    order = np.argsort(evals)[::-1]
    pairs = []
    for idx in order:
        if len(pairs) == n_pairs:
            break
        w = evecs[:, idx].copy()
        for u, v, _ in pairs:
            w -= (w @ u) * u + (w @ v) * v
        norm = np.linalg.norm(w)
        if norm < 1e-6:
            continue  # consumed by a previously selected pair of the same cluster
        w /= norm
        for u, v, _ in pairs:  # second pass for numerical orthogonality
            w -= (w @ u) * u + (w @ v) * v
        w /= np.linalg.norm(w)
        u = w
        v = -omega @ u
        d = float(np.sqrt(u @ p_mat @ u))
        pairs.append((u, v, d))
    if len(pairs) != n_pairs:
        raise PreconditionError("failed to pair the squeezing spectrum; matrix not symplectic?")
    return pairs


def _dominant_row(left, k):
    col_a = left[:, 2 * k]
    col_b = left[:, 2 * k + 1]
    return int(np.argmax(col_a**2 + col_b**2))


def _canonicalize(left, diag, right):
    """Fix the residual gauge of the factors, in place.

    Unit pairs (d = 1 within tolerance) admit an in-pair rotation: rotate so
    the dominant row of the pair in `left` has a zero second component and a
    positive first component. Squeezed pairs only admit a joint sign flip
    (a pi rotation): flip so the first significant entry of the pair's first
    column in `left` is positive.
    """
    n_pairs = left.shape[1] // 2
    d_vals = np.diag(diag)[::2]
    for k in range(n_pairs):
        sl = slice(2 * k, 2 * k + 2)
        if abs(d_vals[k] - 1.0) <= _UNIT_CLUSTER_TOL:
            r0 = _dominant_row(left, k)
            alpha = np.arctan2(left[r0, 2 * k + 1], left[r0, 2 * k])
            c, s = np.cos(alpha), np.sin(alpha)
            rot = np.array([[c, -s], [s, c]])
            left[:, sl] = left[:, sl] @ rot
            right[sl, :] = rot.T @ right[sl, :]
        else:
            col = left[:, 2 * k]
            nz = np.nonzero(np.abs(col) > 1e-9 * max(1.0, np.max(np.abs(col))))[0]
            if nz.size and col[nz[0]] < 0:
                left[:, sl] = -left[:, sl]
                right[sl, :] = -right[sl, :]
    # deterministic order among unit pairs: ascending dominant row
    unit = [k for k in range(n_pairs) if abs(d_vals[k] - 1.0) <= _UNIT_CLUSTER_TOL]
    if len(unit) > 1:
        keyed = sorted(unit, key=lambda k: _dominant_row(left, k))
        if keyed != unit:
            perm = list(range(2 * n_pairs))
            for slot, k in zip(unit, keyed):
                perm[2 * slot] = 2 * k
                perm[2 * slot + 1] = 2 * k + 1
            left[:, :] = left[:, perm]
            right[:, :] = right[perm, :]
            dd = np.diag(diag).copy()
            diag[:, :] = np.diag(dd[perm])


def bloch_messiah(s, tol=DEFAULT_TOL):
    """Bloch-Messiah (Euler) decomposition of a symplectic matrix.

    Factors S = O D O' with O, O' symplectic orthogonal and D diagonal
    carrying reciprocal squeezing pairs (d, 1/d), d >= 1, sorted descending.
    Built from the symmetric eigendecomposition of S^T S: eigenvectors give
    O'^T, the eigenvalue square roots give D, and O = S O'^T D^{-1}.

    Parameters
    ----------
    s : array_like or QuadratureMatrix
        Symplectic matrix (checked against `tol`).
    tol : float
        Symplecticity tolerance; the reconstruction O D O' matches S to
        within 10*tol in max norm for well-conditioned inputs.

    Returns
    -------
    BlochMessiahFactors

    Raises
    ------
    PreconditionError
        If the input is not symplectic at the given tolerance.
    """
    mat = _entries(s).astype(float)
    _check_even_square(mat)
    if not is_symplectic(mat, tol):
        raise PreconditionError("bloch_messiah requires a symplectic input")
    omega = symplectic_form(mat.shape[0] // 2)
    p_mat = mat.T @ mat
    p_mat = 0.5 * (p_mat + p_mat.T)
    pairs = _symplectic_pairs(p_mat, omega)
    # order: descending d, ties by the dominant row of u (stable port order)
    pairs.sort(key=lambda uvd: (-uvd[2], int(np.argmax(np.abs(uvd[0])))))
    basis = np.column_stack([c for u, v, _ in pairs for c in (u, v)])
    d_vals = np.array([d for _, _, d in pairs])
    diag = np.diag(np.repeat(d_vals, 2) ** np.tile([1.0, -1.0], len(d_vals)))
    left = mat @ basis @ np.diag(np.repeat(1.0 / d_vals, 2) ** np.tile([1.0, -1.0], len(d_vals)))
    right = basis.T
    _canonicalize(left, diag, right)
    return BlochMessiahFactors(left=left, diagonal=diag, right=right)


def random_symplectic_orthogonal(n_ports, rng=None):
    """Haar-ish random element of Sp(2n) ∩ O(2n) via a random unitary."""
    rng = np.random.default_rng(rng)
    z = rng.standard_normal((n_ports, n_ports)) + 1j * rng.standard_normal((n_ports, n_ports))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    out = np.empty((2 * n_ports, 2 * n_ports))
    out[0::2, 0::2] = q.real
    out[0::2, 1::2] = -q.imag
    out[1::2, 0::2] = q.imag
    out[1::2, 1::2] = q.real
    return out


def random_symplectic(n_ports, rng=None, max_squeeze=1.0):
    """Random symplectic matrix: rotation @ squeezers @ rotation.

    Parameters
    ----------
    n_ports : int
    rng : numpy Generator, seed, or None
    max_squeeze : float
        Per-pair log-squeeze drawn uniformly from [-max_squeeze, max_squeeze].
    """
    rng = np.random.default_rng(rng)
    r_vals = rng.uniform(-max_squeeze, max_squeeze, size=n_ports)
    z = np.diag(np.exp(np.repeat(r_vals, 2) * np.tile([1.0, -1.0], n_ports)))
    return (
        random_symplectic_orthogonal(n_ports, rng)
        @ z
        @ random_symplectic_orthogonal(n_ports, rng)
    )
