"""Named tripartite states, white-noise families, Schmidt decompositions,
random sampling and critical noise parameters.

Basis index convention: ``|abc>`` sits at ``a*d^2 + b*d + c``, matching the
Kronecker order used everywhere else.
"""
from dataclasses import dataclass, field

import numpy as np

from . import bloch, linalg
from .errors import DimensionError, DomainError, InvalidStateError, NonMonotoneError

BIPARTITIONS = ("1|23", "2|13", "3|12")
_SPLIT_PARTY = {"1|23": 0, "2|13": 1, "3|12": 2}

NORM_TOL = 1e-12
BISECT_TOL = 1e-9


def _check_bipartition(bipartition):
    if bipartition not in _SPLIT_PARTY:
        raise ValueError(f"bipartition must be one of {BIPARTITIONS}, got {bipartition!r}")
    return _SPLIT_PARTY[bipartition]


@dataclass(frozen=True)
class PureState:
    d: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DimensionError(f"local dimension must be >= 1, got {self.d}")
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.shape != (self.d**3,):
            raise InvalidStateError("shape", f"expected {self.d**3} amplitudes, got {a.size}")
        if not np.all(np.isfinite(a)):
            raise InvalidStateError("finite", "amplitudes have NaN or Inf entries")
        norm = np.linalg.norm(a)
        if abs(norm - 1) > NORM_TOL:
            raise InvalidStateError("norm", f"|psi| = {norm:.15g}")
        a.setflags(write=False)
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def normalized(cls, d, amplitudes):
        a = np.asarray(amplitudes, dtype=complex)
        return cls(d, a / np.linalg.norm(a))

    def tensor(self):
        return self.amplitudes.reshape(self.d, self.d, self.d)

    def density(self, tol=None):
        return bloch.DensityMatrix(self.d, np.outer(self.amplitudes, self.amplitudes.conj()), tol=tol)


def basis_index(d, a, b, c):
    return (a * d + b) * d + c


def _check_d(d):
    if int(d) != d or d < 2:
        raise DimensionError(f"local dimension must be an integer >= 2, got {d}")
    return int(d)


def ghz(d=2):
    d = _check_d(d)
    a = np.zeros(d**3, dtype=complex)
    for k in range(d):
        a[basis_index(d, k, k, k)] = 1.0
    return PureState.normalized(d, a)


def _from_labels(d, labels):
    a = np.zeros(d**3, dtype=complex)
    for lab in labels:
        a[basis_index(d, *(int(ch) for ch in lab))] = 1.0
    return PureState.normalized(d, a)


def w_qubit():
    """``(|001> + |010> + |100>)/sqrt(3)``."""
    return _from_labels(2, ["001", "010", "100"])


def w3_qutrit():
    """Three-qutrit W state ``(|001>+|010>+|100>+|112>+|121>+|211>)/sqrt(6)``."""
    return _from_labels(3, ["001", "010", "100", "112", "121", "211"])


NAMED_STATES = {"ghz": ghz, "w": lambda d=2: w_qubit(), "w3": lambda d=3: w3_qutrit()}
NAMED_DIMS = {"w": 2, "w3": 3}


def named_state(name, d=None):
    """Built-in state by name (``ghz``, ``w``, ``w3``)."""
    if name not in NAMED_STATES:
        raise ValueError(f"unknown state {name!r}; choose from {sorted(NAMED_STATES)}")
    fixed = NAMED_DIMS.get(name)
    if fixed is not None:
        if d is not None and d != fixed:
            raise DimensionError(f"state {name!r} exists only for d={fixed}")
        return NAMED_STATES[name]()
    return ghz(2 if d is None else d)


def white_noise(pure, x, tol=None):
    """``(1-x)/d^3 I + x |psi><psi|``."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"mixing weight must lie in [0, 1], got {x}")
    dim = pure.d**3
    proj = np.outer(pure.amplitudes, pure.amplitudes.conj())
    return bloch.DensityMatrix(pure.d, (1 - x) / dim * np.eye(dim) + x * proj, tol=tol)


@dataclass(frozen=True)
class NoiseFamily:
    d: int
    pure: PureState
    label: str = ""

    def member(self, x):
        return white_noise(self.pure, x)


def family(pure, label=""):
    return NoiseFamily(pure.d, pure, label)


@dataclass(frozen=True)
class SchmidtForm:
    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray
    bipartition: str

    def reassemble(self):
        """Amplitude vector in the standard ``|abc>`` ordering."""
        d = self.left_basis.shape[1]
        f = _SPLIT_PARTY[self.bipartition]
        m = np.einsum("i,ia,ib->ab", self.coefficients, self.left_basis, self.right_basis)
        return _unsplit(m.reshape(d, d, d), f).reshape(-1)


def _split(tensor, f):
    return np.moveaxis(tensor, f, 0)


def _unsplit(tensor, f):
    return np.moveaxis(tensor, 0, f)


def schmidt(psi, bipartition):
    """Schmidt decomposition of ``psi`` across ``party | pair``.

    Rows of ``left_basis`` are single-party vectors, rows of ``right_basis``
    live on the remaining two parties (in ascending party order).  Each left
    vector is rephased so its largest-magnitude component is real positive.
    """
    f = _check_bipartition(bipartition)
    d = psi.d
    m = _split(psi.tensor(), f).reshape(d, d * d)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    left = u.T.copy()
    right = vh.copy()
    for i in range(left.shape[0]):
        k = int(np.argmax(np.abs(left[i])))
        phase = left[i, k] / abs(left[i, k])
        left[i] /= phase
        right[i] *= phase
    return SchmidtForm(s, left, right, bipartition)


def canonical_case_state(d, case, taus):
    """Canonical biseparable forms used by the bound derivations.

    ``case="i"``:  ``sum_k tau_k |k, 0, k>``;
    ``case="ii"``: ``sum_k tau_k |k, k, k>``.
    """
    d = _check_d(d)
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size > d:
        raise DimensionError(f"need at most {d} Schmidt coefficients, got shape {taus.shape}")
    if np.any(taus < 0):
        raise DomainError("Schmidt coefficients must be non-negative")
    if abs(np.sum(taus**2) - 1) > NORM_TOL:
        raise DomainError(f"sum of squared coefficients is {np.sum(taus**2):.15g}, not 1")
    if case not in ("i", "ii"):
        raise ValueError(f"case must be 'i' or 'ii', got {case!r}")
    a = np.zeros(d**3, dtype=complex)
    for k, tau in enumerate(taus):
        mid = 0 if case == "i" else k
        a[basis_index(d, k, mid, k)] = tau
    return PureState(d, a / np.linalg.norm(a))


def product_state(phi_f, phi_pair, bipartition, d):
    """Embed ``|phi_f> (x) |phi_pair>`` at the party ordering of ``bipartition``."""
    f = _check_bipartition(bipartition)
    phi_f = np.asarray(phi_f, dtype=complex).reshape(d)
    phi_pair = np.asarray(phi_pair, dtype=complex).reshape(d, d)
    t = np.einsum("a,bc->abc", phi_f, phi_pair)
    return PureState.normalized(d, _unsplit(t, f).reshape(-1))


def random_biseparable(d, bipartition, seed=None):
    """Haar-random product state across ``bipartition``."""
    d = _check_d(d)
    _check_bipartition(bipartition)
    rng = linalg.rng_from(seed)
    return product_state(linalg.haar_state(d, rng), linalg.haar_state(d * d, rng), bipartition, d)


def random_pure(d, seed=None):
    return PureState(d, linalg.haar_state(_check_d(d) ** 3, seed))


def random_density(d, seed=None, rank=None):
    """Random mixed state ``G G^dag / Tr`` from a complex Ginibre matrix."""
    d = _check_d(d)
    rng = linalg.rng_from(seed)
    dim = d**3
    k = dim if rank is None else int(rank)
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return bloch.DensityMatrix(d, m / np.trace(m).real)


def local_unitary(rho, u1=None, u2=None, u3=None):
    """Apply ``U1 (x) U2 (x) U3`` (identity where None) by conjugation."""
    d = rho.d
    eye = np.eye(d)
    u = linalg.kron_all(*(eye if v is None else v for v in (u1, u2, u3)))
    m = u @ rho.matrix @ u.conj().T
    return bloch.DensityMatrix(d, (m + m.conj().T) / 2)


STATISTICS = ("t_value", "norm_1_23", "norm_2_13", "norm_3_12")


def statistic(rho, name, config=bloch.DEFAULT_SLICES):
    if name not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}, got {name!r}")
    norms = bloch.n_norms(rho, config)
    if name == "t_value":
        return sum(norms) / 3.0
    return norms[STATISTICS.index(name) - 1]


def critical_x(fam, stat, threshold, method="analytic", tol=BISECT_TOL,
               config=bloch.DEFAULT_SLICES):
    """Smallest mixing weight at which ``stat`` exceeds ``threshold``.

    The statistic is linear through the origin along a white-noise family,
    so the analytic answer is ``threshold / stat(pure)``.  ``method="bisect"``
    treats the family as a generic monotone curve instead.  Returns None when
    the pure state itself does not exceed the threshold.
    """
    if threshold < 0:
        raise DomainError(f"threshold must be non-negative, got {threshold}")

    def f(x):
        return statistic(fam.member(x), stat, config)

    top = f(1.0)
    if top <= threshold:
        return None
    if method == "analytic":
        return threshold / top
    if method != "bisect":
        raise ValueError(f"method must be 'analytic' or 'bisect', got {method!r}")

    lo, hi = 0.0, 1.0
    f_lo, f_hi = f(lo), top
    if f_lo > threshold:
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid < f_lo - 1e-12 or f_mid > f_hi + 1e-12:
            raise NonMonotoneError(
                f"{stat} not monotone on [{lo:.6g}, {hi:.6g}]: "
                f"f({mid:.6g})={f_mid:.6g} outside [{f_lo:.6g}, {f_hi:.6g}]")
        if f_mid > threshold:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
