"""Generalized Gell-Mann bases and the Bloch correlation tensors of
tripartite ``d x d x d`` states.

A state is expanded as

    rho = sum_{ijk} c_ijk  w_i w_j w_k  G_i (x) G_j (x) G_k

where ``G_0`` is the identity, ``G_1 .. G_{d^2-1}`` are the traceless
generators, ``w_0 = 1/d`` and ``w_i = 1/2`` otherwise.  The coefficients
``c_ijk = Tr(rho G_i (x) G_j (x) G_k)`` hold the one-, two- and three-body
correlation tensors as sub-blocks, and the weights reproduce
``1/d^3, 1/(2d^2), 1/(4d), 1/8``.

The slice matrices fix one index of the three-body tensor ``t_ijk`` at a
designated generator; the ``N`` matrices are weighted sums of slices and
``T(rho)`` is the mean trace norm of the three ``N`` matrices.
"""
from dataclasses import dataclass, field, InitVar
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import ConsistencyError, DimensionError, InvalidStateError

IMAG_TOL = 1e-10


@dataclass(frozen=True)
class Tolerances:
    trace: float = 1e-10
    hermiticity: float = 1e-10
    psd: float = 1e-8

    @classmethod
    def uniform(cls, tol):
        """All three checks at ``tol`` (PSD never stricter than the default)."""
        return cls(trace=tol, hermiticity=tol, psd=max(tol, cls.psd))


@dataclass(frozen=True)
class SliceConfig:
    """Weights and generator positions used to build the ``N`` matrices.

    Defaults are the published ones.  ``mid_index`` is the 1-based generator
    fixed on party 2 for the 2|13 slice; ``second_index`` and
    ``third_index`` default to ``d`` and ``d(d+1)/2`` when left as None.
    """
    w_first: float = 15.0
    w_second: float = 1.0
    w_third: float = 1.0
    w_mid: float = 4.0
    mid_index: int = 1
    second_index: int = None
    third_index: int = None

    def indices(self, d):
        """0-based generator positions (first, second, third, mid) for ``d``."""
        n = d * d - 1
        idx = (
            1,
            self.second_index if self.second_index is not None else d,
            self.third_index if self.third_index is not None else d * (d + 1) // 2,
            self.mid_index,
        )
        for i in idx:
            if not 1 <= i <= n:
                raise DimensionError(f"generator index {i} outside 1..{n} for d={d}")
        return tuple(i - 1 for i in idx)


DEFAULT_SLICES = SliceConfig()


@dataclass(frozen=True)
class GeneratorBasis:
    d: int
    generators: tuple

    def __len__(self):
        return len(self.generators)

    def stack(self, with_identity=False):
        """Generators as a ``(n, d, d)`` array, optionally identity first."""
        g = np.array(self.generators)
        if with_identity:
            g = np.concatenate([np.eye(self.d, dtype=complex)[np.newaxis], g])
        return g


def _check_d(d, minimum=2):
    if int(d) != d or d < minimum:
        raise DimensionError(f"local dimension must be an integer >= {minimum}, got {d}")
    return int(d)


def offdiagonal_pairs(d):
    """Index pairs ``(j, k)``, ``j < k``, in lexicographic order."""
    return [(j, k) for j in range(d) for k in range(j + 1, d)]


@lru_cache(maxsize=None)
def _gellmann(d):
    gens = []
    for i in range(1, d):
        diag = np.zeros(d)
        diag[:i] = 1.0
        diag[i] = -i
        gens.append(np.sqrt(2.0 / (i * (i + 1))) * np.diag(diag).astype(complex))
    pairs = offdiagonal_pairs(d)
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = g[k, j] = 1.0
        gens.append(g)
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = -1j
        g[k, j] = 1j
        gens.append(g)
    for g in gens:
        g.setflags(write=False)
    return tuple(gens)


def gellmann_basis(d):
    """Ordered generalized Gell-Mann basis of ``su(d)``.

    Diagonal generators come first, then the symmetric and antisymmetric
    off-diagonal ones, each block over pairs ``j < k`` in lexicographic order.
    For ``d = 2`` this is ``(sigma_z, sigma_x, sigma_y)``.
    """
    d = _check_d(d)
    return GeneratorBasis(d, _gellmann(d))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated ``d^3 x d^3`` density matrix of three ``d``-level parties."""
    d: int
    matrix: np.ndarray = field(repr=False)
    tol: InitVar[Tolerances] = None

    def __post_init__(self, tol):
        d = _check_d(self.d, minimum=1)
        object.__setattr__(self, "d", d)
        m = np.array(self.matrix, dtype=complex)
        dim = d**3
        if m.shape != (dim, dim):
            raise InvalidStateError("shape", f"expected {dim}x{dim} for d={d}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("finite", "matrix has NaN or Inf entries")
        tol = tol or Tolerances()
        herm = np.max(np.abs(m - m.conj().T))
        if herm > tol.hermiticity:
            raise InvalidStateError("hermiticity", f"max |rho - rho^dag| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1) > tol.trace:
            raise InvalidStateError("trace", f"trace = {tr.real:.12g}{tr.imag:+.3g}j")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2)[0]
        if lo < -tol.psd:
            raise InvalidStateError("psd", f"minimum eigenvalue {lo:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.d**3

    @classmethod
    def maximally_mixed(cls, d):
        return cls(d, np.eye(d**3) / d**3)


@dataclass(frozen=True)
class BlochTensor:
    d: int
    t1: np.ndarray
    t2: np.ndarray
    t3: np.ndarray
    t12: np.ndarray
    t13: np.ndarray
    t23: np.ndarray
    t: np.ndarray

    def full(self):
        """All coefficients in one ``(n+1)^3`` array, identity at index 0."""
        n = self.d**2 - 1
        shapes = {"t1": (n,), "t2": (n,), "t3": (n,), "t12": (n, n),
                  "t13": (n, n), "t23": (n, n), "t": (n, n, n)}
        for name, shape in shapes.items():
            if np.shape(getattr(self, name)) != shape:
                raise DimensionError(
                    f"{name} has shape {np.shape(getattr(self, name))}, expected {shape}")
        c = np.zeros((n + 1,) * 3)
        c[0, 0, 0] = 1.0
        c[1:, 0, 0] = self.t1
        c[0, 1:, 0] = self.t2
        c[0, 0, 1:] = self.t3
        c[1:, 1:, 0] = self.t12
        c[1:, 0, 1:] = self.t13
        c[0, 1:, 1:] = self.t23
        c[1:, 1:, 1:] = self.t
        return c

    @classmethod
    def from_full(cls, d, c):
        return cls(d, c[1:, 0, 0], c[0, 1:, 0], c[0, 0, 1:], c[1:, 1:, 0],
                   c[1:, 0, 1:], c[0, 1:, 1:], c[1:, 1:, 1:])

    def __eq__(self, other):
        if not isinstance(other, BlochTensor) or other.d != self.d:
            return NotImplemented
        return bool(np.array_equal(self.full(), other.full()))

    __hash__ = None


@dataclass(frozen=True)
class CorrelationSlices:
    d: int
    T1_123: np.ndarray
    T2_123: np.ndarray
    T3_123: np.ndarray
    T_213: np.ndarray
    T1_312: np.ndarray
    T2_312: np.ndarray
    T3_312: np.ndarray
    N_123: np.ndarray
    N_213: np.ndarray
    N_312: np.ndarray

    def norms(self):
        """Trace norms of ``(N_123, N_213, N_312)``."""
        return (linalg.trace_norm(self.N_123), linalg.trace_norm(self.N_213),
                linalg.trace_norm(self.N_312))


def _density_array(rho):
    if isinstance(rho, DensityMatrix):
        return rho.d, rho.matrix
    # PureState and anything else exposing a projector
    proj = getattr(rho, "density", None)
    if proj is not None:
        dm = proj()
        return dm.d, dm.matrix
    raise TypeError(f"expected a DensityMatrix, got {type(rho).__name__}")


def correlation_coefficients(rho, imag_tol=IMAG_TOL):
    """Return ``Tr(rho G_i (x) G_j (x) G_k)`` for all ``i, j, k`` (identity at 0)."""
    d, m = _density_array(rho)
    g = gellmann_basis(d).stack(with_identity=True)
    r = m.reshape((d,) * 6)
    # Tr(rho A(x)B(x)C) = sum rho[abc, xyz] A[x,a] B[y,b] C[z,c]
    c = np.einsum("abcxyz,ixa,jyb,kzc->ijk", r, g, g, g, optimize=True)
    resid = float(np.max(np.abs(c.imag)))
    if resid > imag_tol:
        raise ConsistencyError(
            f"correlation coefficients have imaginary residue {resid:.3e} > {imag_tol:.1e}; "
            "input is not Hermitian")
    return np.ascontiguousarray(c.real)


def extract(rho, imag_tol=IMAG_TOL):
    """Bloch correlation tensors of a tripartite state."""
    d, _ = _density_array(rho)
    return BlochTensor.from_full(d, correlation_coefficients(rho, imag_tol))


def _weights(d):
    n = d * d - 1
    w = np.full(n + 1, 0.5)
    w[0] = 1.0 / d
    return w


def reconstruct(tensor, tol=None):
    """Inverse of :func:`extract`; returns a validated DensityMatrix."""
    d = tensor.d
    c = tensor.full()
    g = gellmann_basis(d).stack(with_identity=True)
    w = _weights(d)
    cw = c * w[:, None, None] * w[None, :, None] * w[None, None, :]
    r = np.einsum("ijk,ixa,jyb,kzc->xyzabc", cw, g, g, g, optimize=True)
    return DensityMatrix(d, r.reshape(d**3, d**3), tol=tol)


def slices(tensor, config=DEFAULT_SLICES):
    """Slice matrices and combined ``N`` matrices of a Bloch tensor.

    Layout (0-based here, generators ``a = first``, ``b = second``,
    ``c = third``, ``m = mid``): ``T?_123[r, s] = t[a|b|c, s, r]``,
    ``T_213[r, s] = t[s, m, r]`` and ``T?_312[r, s] = t[s, r, a|b|c]``.
    """
    d = tensor.d
    t = np.asarray(tensor.t)
    n = d * d - 1
    if t.shape != (n, n, n):
        raise DimensionError(f"three-body tensor has shape {t.shape}, expected {(n,) * 3}")
    a, b, c, m = config.indices(d)
    T1_123, T2_123, T3_123 = t[a].T, t[b].T, t[c].T
    T_213 = t[:, m, :].T
    T1_312, T2_312, T3_312 = t[:, :, a].T, t[:, :, b].T, t[:, :, c].T
    return CorrelationSlices(
        d,
        T1_123, T2_123, T3_123, T_213, T1_312, T2_312, T3_312,
        N_123=config.w_first * T1_123 + config.w_second * T2_123 + config.w_third * T3_123,
        N_213=config.w_mid * T_213,
        N_312=config.w_first * T1_312 + config.w_second * T2_312 + config.w_third * T3_312,
    )


def n_norms(rho, config=DEFAULT_SLICES):
    """Trace norms ``(|N_123|, |N_213|, |N_312|)`` of a state."""
    return slices(extract(rho), config).norms()


def t_value(rho, config=DEFAULT_SLICES):
    """Mean trace norm of the three ``N`` matrices."""
    return sum(n_norms(rho, config)) / 3.0
