"""Dense matrix kernel: singular values, trace norm, Kronecker products and
Haar-random unitaries.

Everything here is a thin, validated layer over :mod:`numpy.linalg`.  The
random routines never touch global RNG state; callers pass either an integer
seed or their own :class:`numpy.random.Generator`.
"""
import numpy as np

from .errors import DimensionError

# relative cutoff below which a singular value counts as an exact zero in
# rank-sensitive reporting
RANK_RTOL = 1e-13

_MAX_ENTRIES = 2**31


def _as_matrix(m):
    a = np.asarray(m)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    if a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionError(f"empty matrix of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("matrix has non-finite entries")
    return a


def rng_from(seed):
    """Return a Generator for ``seed`` (int, SeedSequence or Generator)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def singular_values(m):
    """Singular values of ``m`` in descending order.

    Parameters
    ----------
    m : array_like, shape (r, c)
        Real or complex matrix with ``r, c >= 1``.

    Returns
    -------
    numpy.ndarray
        ``min(r, c)`` non-negative values, largest first.
    """
    a = _as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    # LAPACK already sorts; re-sorting guards against any backend that does not
    return np.sort(np.abs(s))[::-1]


def numerical_rank(m, rtol=RANK_RTOL):
    s = singular_values(m)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def trace_norm(m):
    """Schatten-1 norm, the sum of singular values."""
    return float(np.sum(singular_values(m)))


def kron(a, b):
    """Kronecker product with shape validation."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > _MAX_ENTRIES:
        raise DimensionError(f"kron result {rows}x{cols} is too large")
    return np.kron(a, b)


def kron_all(*mats):
    out = _as_matrix(mats[0])
    for m in mats[1:]:
        out = kron(out, m)
    return out


def haar_unitary(d, seed=None):
    """Draw a ``d x d`` unitary from the Haar measure.

    QR decomposition of a standard complex Gaussian matrix, with the columns
    of Q rephased so that R has a positive real diagonal (Mezzadri's recipe).
    """
    if int(d) != d or d < 1:
        raise DimensionError(f"unitary dimension must be >= 1, got {d}")
    d = int(d)
    rng = rng_from(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases[np.newaxis, :]


def haar_orthogonal(n, seed=None):
    """Haar-random real orthogonal ``n x n`` matrix (real Gaussian QR)."""
    if int(n) != n or n < 1:
        raise DimensionError(f"orthogonal dimension must be >= 1, got {n}")
    rng = rng_from(seed)
    q, r = np.linalg.qr(rng.standard_normal((int(n), int(n))))
    return q * np.sign(np.diag(r))[np.newaxis, :]


def haar_state(dim, seed=None):
    """Uniformly random unit vector in ``C^dim``."""
    if int(dim) != dim or dim < 1:
        raise DimensionError(f"state dimension must be >= 1, got {dim}")
    rng = rng_from(seed)
    z = rng.standard_normal(int(dim)) + 1j * rng.standard_normal(int(dim))
    return z / np.linalg.norm(z)
