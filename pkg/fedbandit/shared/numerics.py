"""
Dense Numerics
===============

Matrix kernels shared by every fedbandit package: a seeded random source,
random orthogonal matrices, Cholesky factorization, SPD inversion and
multivariate normal sampling. Matrices and vectors are plain float64
``np.ndarray`` objects.

Random source
-------------
:class:`Rng` wraps NumPy's legacy ``RandomState`` (Mersenne Twister
MT19937). The 64-bit seed is split into two little-endian 32-bit words and
fed to ``init_by_array``; normals come from ``RandomState.standard_normal``,
the polar Box-Muller method. NumPy freezes this stream across releases and
platforms, so identical seeds reproduce identical draws bit for bit.
"""

import struct

import numpy as np
import scipy.linalg

from .tolerances import TOLERANCES
from .utils import MASK64, derive_seed


class DimensionMismatchError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    pass


class Rng:
    """Single-owner seeded random source.

    Args:
        seed (:obj:`int`): 64-bit unsigned seed.
    """

    def __init__(self, seed):
        self.seed = int(seed) & MASK64
        words = np.array([self.seed & 0xFFFFFFFF, self.seed >> 32], dtype=np.uint32)
        self._state = np.random.RandomState(words)

    def standard_normal(self, size=None):
        return self._state.standard_normal(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._state.uniform(low, high, size)

    def integers(self, high, size=None):
        """Uniform integers in ``[0, high)``."""
        return self._state.randint(0, high, size=size)

    def permutation(self, n):
        return self._state.permutation(n)

    def bernoulli(self, p, size=None):
        """One 0/1 draw per entry of ``p`` unless ``size`` is given."""
        size = np.shape(p) if size is None else size
        return (self._state.uniform(0.0, 1.0, size) < p).astype(np.int64)

    def spawn(self, *keys):
        """Returns an independent :class:`Rng` derived from this seed and
        ``keys``."""
        return Rng(derive_seed(self.seed, *keys))

    def __repr__(self):
        return f"Rng(seed={self.seed})"


def as_matrix(a, name="matrix"):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatchError(f"{name} must be a non-empty 2-D array, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def as_vector(x, dim=None, name="vector"):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got shape {x.shape}")
    if dim is not None and x.shape[0] != dim:
        raise DimensionMismatchError(f"{name} has dimension {x.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")
    return x


def sup_norm(a):
    """Largest absolute entry."""
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def orthogonality_error(q):
    """max(‖QᵀQ − I‖∞, ‖QQᵀ − I‖∞) for a square ``q``."""
    eye = np.eye(q.shape[0])
    return max(sup_norm(q.T @ q - eye), sup_norm(q @ q.T - eye))


def _gram_schmidt(a):
    """Orthonormalizes the columns of ``a`` one by one, projecting each
    column against the accumulated basis twice. Returns ``None`` when a
    column is numerically dependent on the previous ones."""
    d = a.shape[1]
    q = np.zeros_like(a)
    for j in range(d):
        v = a[:, j].copy()
        scale = np.linalg.norm(v)
        basis = q[:, :j]
        # second pass restores orthogonality lost in the first
        for _ in range(2):
            v -= basis @ (basis.T @ v)
        norm = np.linalg.norm(v)
        if scale == 0.0 or norm < TOLERANCES.degenerate_column_norm * scale:
            return None
        q[:, j] = v / norm
    return q


def random_orthogonal(d, rng):
    """Draws a ``d x d`` orthogonal matrix by orthonormalizing a standard
    Gaussian matrix.

    The implicit triangular factor has a positive diagonal, so the map
    from seed to matrix is unique and the result is Haar distributed.
    """
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    for _ in range(TOLERANCES.orthogonal_max_retries):
        q = _gram_schmidt(rng.standard_normal((d, d)))
        if q is not None:
            return q
    raise np.linalg.LinAlgError(
        f"could not draw a non-degenerate {d}x{d} matrix in "
        f"{TOLERANCES.orthogonal_max_retries} attempts"
    )


def _check_symmetric(a, name):
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got {a.shape}")
    scale = max(1.0, sup_norm(a))
    if sup_norm(a - a.T) > TOLERANCES.symmetry * scale:
        raise NotPositiveDefiniteError(f"{name} is not symmetric")


def cholesky(a):
    """Lower-triangular ``L`` with ``L Lᵀ = a``.

    Raises:
        NotPositiveDefiniteError: ``a`` is not symmetric positive definite.
    """
    a = as_matrix(a)
    _check_symmetric(a, "cholesky input")
    try:
        return scipy.linalg.cholesky(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"matrix is not positive definite: {e}") from e


def spd_inverse(a):
    """Inverse of a symmetric positive definite matrix via its Cholesky
    factor. The result is symmetrized."""
    a = as_matrix(a)
    _check_symmetric(a, "spd_inverse input")
    try:
        factor = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"matrix is not positive definite: {e}") from e
    inv = scipy.linalg.cho_solve(factor, np.eye(a.shape[0]), check_finite=False)
    return 0.5 * (inv + inv.T)


def sherman_morrison_update(a_inv, x):
    """``(A + x xᵀ)⁻¹`` from ``A⁻¹`` in O(d²)."""
    ax = a_inv @ x
    updated = a_inv - np.outer(ax, ax) / (1.0 + x @ ax)
    return 0.5 * (updated + updated.T)


def mvn_sample(mean, cov_factor, rng, z=None):
    """Returns ``mean + cov_factor @ z`` where ``z`` is a vector of
    independent standard normals drawn from ``rng`` (or supplied).

    ``cov_factor`` may be any ``A`` with ``A Aᵀ`` equal to the target
    covariance.
    """
    mean = as_vector(mean, name="mean")
    cov_factor = np.asarray(cov_factor, dtype=np.float64)
    if cov_factor.ndim != 2 or cov_factor.shape[0] != mean.shape[0]:
        raise DimensionMismatchError(
            f"covariance factor of shape {cov_factor.shape} does not match mean of dimension {mean.shape[0]}"
        )
    if z is None:
        z = rng.standard_normal(cov_factor.shape[1])
    elif np.shape(z) != (cov_factor.shape[1],):
        raise DimensionMismatchError(
            f"normal draw of shape {np.shape(z)} does not match factor {cov_factor.shape}"
        )
    return mean + cov_factor @ z


MATRIX_MAGIC = b"FBMX"
MATRIX_VERSION = 1
_HEADER = struct.Struct("<4sHII")


def save_matrix(path, m):
    """Writes ``m`` as ``FBMX`` header (magic, u16 version, u32 rows, u32
    cols) followed by row-major little-endian float64 entries."""
    m = as_matrix(m)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MATRIX_MAGIC, MATRIX_VERSION, m.shape[0], m.shape[1]))
        f.write(np.ascontiguousarray(m, dtype="<f8").tobytes())


def load_matrix(path):
    with open(path, "rb") as f:
        magic, version, rows, cols = _HEADER.unpack(f.read(_HEADER.size))
        if magic != MATRIX_MAGIC or version != MATRIX_VERSION:
            raise ValueError(f"{path} is not a version {MATRIX_VERSION} FBMX matrix file")
        data = np.frombuffer(f.read(), dtype="<f8")
    if data.size != rows * cols:
        raise ValueError(f"{path} is truncated: expected {rows * cols} entries, got {data.size}")
    return data.reshape(rows, cols).astype(np.float64)
