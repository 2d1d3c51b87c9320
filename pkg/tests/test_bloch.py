import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmebloch import bloch, linalg, states
from gmebloch.errors import ConsistencyError, DimensionError, InvalidStateError
from tests.conftest import oracle_generators, oracle_n_norms, oracle_three_body

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)

seeds = st.integers(0, 2**32 - 1)


def test_qubit_basis_is_z_x_y():
    g = bloch.gellmann_basis(2).generators
    assert len(g) == 3
    for got, want in zip(g, (SZ, SX, SY)):
        assert np.array_equal(got, want)


def test_qutrit_diagonal_generators():
    g = bloch.gellmann_basis(3).generators
    assert len(g) == 8
    assert np.allclose(g[0], np.diag([1, -1, 0]))
    assert np.allclose(g[1], np.diag([1, 1, -2]) / math.sqrt(3))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
def test_basis_invariants(d):
    g = bloch.gellmann_basis(d).generators
    assert len(g) == d * d - 1
    for a, ga in enumerate(g):
        assert np.max(np.abs(ga - ga.conj().T)) <= 1e-12
        assert abs(np.trace(ga)) <= 1e-12
        for b, gb in enumerate(g):
            assert abs(np.trace(ga @ gb) - 2 * (a == b)) <= 1e-12
    # block ordering: diagonal, then symmetric real, then antisymmetric imaginary
    n_pairs = d * (d - 1) // 2
    assert all(np.count_nonzero(x - np.diag(np.diag(x))) == 0 for x in g[:d - 1])
    assert all(np.isrealobj(x.real) and np.allclose(x.imag, 0) for x in g[d - 1:d - 1 + n_pairs])
    assert all(np.allclose(x.real, 0) for x in g[d - 1 + n_pairs:])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_basis_matches_oracle(d):
    for got, want in zip(bloch.gellmann_basis(d).generators, oracle_generators(d)):
        assert np.array_equal(got, want)


def test_basis_rejects_small_d():
    with pytest.raises(DimensionError):
        bloch.gellmann_basis(1)


def test_density_validation():
    with pytest.raises(InvalidStateError) as e:
        bloch.DensityMatrix(2, np.eye(8))
    assert e.value.check == "trace"
    m = np.eye(8, dtype=complex) / 8
    m[0, 1] = 0.01j
    with pytest.raises(InvalidStateError) as e:
        bloch.DensityMatrix(2, m)
    assert e.value.check == "hermiticity"
    m = np.diag([0.5, 0.5, 0.5, -0.5, 0, 0, 0, 0]).astype(complex)
    with pytest.raises(InvalidStateError) as e:
        bloch.DensityMatrix(2, m)
    assert e.value.check == "psd"
    with pytest.raises(InvalidStateError) as e:
        bloch.DensityMatrix(3, np.eye(8) / 8)
    assert e.value.check == "shape"
    # looser tolerance admits slightly off trace
    bloch.DensityMatrix(2, np.eye(8) / 8 * (1 + 1e-7), tol=bloch.Tolerances.uniform(1e-6))


def test_extract_maximally_mixed_is_zero():
    c = bloch.extract(bloch.DensityMatrix.maximally_mixed(2)).full()
    assert c[0, 0, 0] == pytest.approx(1)
    c[0, 0, 0] = 0
    assert np.all(np.abs(c) < 1e-15)


def test_extract_product_zero_state():
    psi = np.zeros(8)
    psi[0] = 1
    t = bloch.extract(bloch.DensityMatrix(2, np.outer(psi, psi)))
    for v in (t.t1, t.t2, t.t3):
        assert np.allclose(v, [1, 0, 0])
    expected = np.zeros((3, 3, 3))
    expected[0, 0, 0] = 1
    assert np.allclose(t.t, expected, atol=1e-15)


def test_extract_w_state_zzz():
    t = bloch.extract(states.w_qubit().density())
    assert t.t[0, 0, 0] == pytest.approx(-1, abs=1e-14)


@pytest.mark.parametrize("d", [2, 3])
def test_extract_matches_trace_oracle(d):
    rho = states.random_density(d, seed=d)
    t = bloch.extract(rho)
    assert np.allclose(t.t, oracle_three_body(rho.matrix, d), atol=1e-13)
    g = oracle_generators(d)
    eye = np.eye(d)
    for i, gi in enumerate(g):
        assert t.t1[i] == pytest.approx(np.trace(rho.matrix @ np.kron(np.kron(gi, eye), eye)).real, abs=1e-13)
        assert t.t3[i] == pytest.approx(np.trace(rho.matrix @ np.kron(np.kron(eye, eye), gi)).real, abs=1e-13)
        for j, gj in enumerate(g):
            want = np.trace(rho.matrix @ np.kron(np.kron(eye, gi), gj)).real
            assert t.t23[i, j] == pytest.approx(want, abs=1e-13)


def test_extract_rejects_non_hermitian_payload():
    # bypasses constructor validation to reach the extraction guard
    class FakeDM(bloch.DensityMatrix):
        def __init__(self):
            m = np.eye(8, dtype=complex) / 8
            m[0, 1] = 1e-3j
            object.__setattr__(self, "d", 2)
            object.__setattr__(self, "matrix", m)

    with pytest.raises(ConsistencyError):
        bloch.extract(FakeDM())


@pytest.mark.parametrize("d", [2, 3])
def test_reconstruct_zero_tensor(d):
    n = d * d - 1
    z = bloch.BlochTensor(d, np.zeros(n), np.zeros(n), np.zeros(n), np.zeros((n, n)),
                          np.zeros((n, n)), np.zeros((n, n)), np.zeros((n, n, n)))
    assert np.allclose(bloch.reconstruct(z).matrix, np.eye(d**3) / d**3, atol=1e-15)


def test_reconstruct_shape_mismatch():
    z = bloch.BlochTensor(2, np.zeros(3), np.zeros(3), np.zeros(3), np.zeros((3, 3)),
                          np.zeros((3, 3)), np.zeros((3, 3)), np.zeros((3, 3, 2)))
    with pytest.raises(DimensionError):
        bloch.reconstruct(z)


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 4]), seeds)
def test_round_trip(d, seed):
    rho = states.random_density(d, seed)
    back = bloch.reconstruct(bloch.extract(rho))
    assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-10


@given(st.sampled_from([2, 3]), seeds, st.floats(0, 1))
def test_extract_linear(d, seed, x):
    rng = np.random.default_rng(seed)
    ra, rb = states.random_density(d, rng), states.random_density(d, rng)
    mix = bloch.DensityMatrix(d, (1 - x) * ra.matrix + x * rb.matrix)
    lhs = bloch.extract(mix).full()
    rhs = (1 - x) * bloch.extract(ra).full() + x * bloch.extract(rb).full()
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


@given(st.sampled_from([2, 3]), seeds, st.floats(0, 1))
def test_white_noise_transparent(d, seed, x):
    psi = states.random_pure(d, seed)
    c_mix = bloch.extract(states.white_noise(psi, x)).full()
    c_pure = bloch.extract(psi.density()).full()
    c_pure[1:, :, :] *= x
    c_pure[0, 1:, :] *= x
    c_pure[0, 0, 1:] *= x
    assert np.max(np.abs(c_mix - c_pure)) <= 1e-10
    assert bloch.t_value(states.white_noise(psi, x)) == pytest.approx(
        x * bloch.t_value(psi.density()), abs=1e-10)


def test_slices_product_zero_state():
    psi = np.zeros(8)
    psi[0] = 1
    sl = bloch.slices(bloch.extract(bloch.DensityMatrix(2, np.outer(psi, psi))))
    expected = np.zeros((3, 3))
    expected[0, 0] = 1
    assert np.allclose(sl.T1_123, expected, atol=1e-15)
    assert linalg.trace_norm(sl.N_123) == pytest.approx(15)


def test_slices_bell_factor():
    phi = np.zeros(4)
    phi[[0, 3]] = 1 / math.sqrt(2)
    psi = states.product_state([1, 0], phi, "1|23", 2)
    sl = bloch.slices(bloch.extract(psi.density()))
    assert np.allclose(sl.T1_123, np.diag([1, 1, -1]), atol=1e-14)
    assert linalg.trace_norm(sl.N_123) == pytest.approx(45, abs=1e-9)


def test_slices_ghz_even():
    sl = bloch.slices(bloch.extract(states.ghz(2).density()))
    assert linalg.trace_norm(sl.N_123) == pytest.approx(2 * math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_slice_layout(d):
    rho = states.random_density(d, seed=11)
    t = bloch.extract(rho).t
    sl = bloch.slices(bloch.extract(rho))
    n = d * d - 1
    a, b, c = 0, d - 1, d * (d + 1) // 2 - 1
    for r in range(n):
        for s in range(n):
            assert sl.T1_123[r, s] == t[a, s, r]
            assert sl.T2_123[r, s] == t[b, s, r]
            assert sl.T3_123[r, s] == t[c, s, r]
            assert sl.T_213[r, s] == t[s, 0, r]
            assert sl.T1_312[r, s] == t[s, r, a]
            assert sl.T2_312[r, s] == t[s, r, b]
            assert sl.T3_312[r, s] == t[s, r, c]
    assert np.array_equal(sl.N_123, 15 * sl.T1_123 + sl.T2_123 + sl.T3_123)
    assert np.array_equal(sl.N_213, 4 * sl.T_213)
    assert np.array_equal(sl.N_312, 15 * sl.T1_312 + sl.T2_312 + sl.T3_312)
    for m in (sl.T1_123, sl.T_213, sl.N_312):
        assert m.shape == (n, n)


def test_slice_config_bounds_checked():
    with pytest.raises(DimensionError):
        bloch.SliceConfig(mid_index=9).indices(3)


def test_t_value_maximally_mixed():
    assert bloch.t_value(bloch.DensityMatrix.maximally_mixed(2)) == 0


def test_t_value_w_qubit():
    rho = states.w_qubit().density()
    assert bloch.t_value(rho) == pytest.approx(26.4918, abs=1e-3)
    assert bloch.n_norms(rho) == pytest.approx(oracle_n_norms(rho.matrix, 2), abs=1e-10)


def test_t_value_w_qutrit_against_oracle():
    rho = states.w3_qutrit().density()
    oracle = oracle_n_norms(rho.matrix, 3)
    assert bloch.n_norms(rho) == pytest.approx(oracle, abs=1e-10)
    assert bloch.t_value(rho) == pytest.approx(sum(oracle) / 3, abs=1e-10)


def test_w_qutrit_with_offdiagonal_mid_generator():
    # fixing the 2|13 slice at generator 3 (first symmetric) gives 34.5797
    rho = states.w3_qutrit().density()
    cfg = bloch.SliceConfig(mid_index=3)
    oracle = oracle_n_norms(rho.matrix, 3, mid=2)
    assert bloch.n_norms(rho, cfg) == pytest.approx(oracle, abs=1e-10)
    assert bloch.t_value(rho, cfg) == pytest.approx(34.5797, abs=1e-3)


def _lu_pair(d, party_free, seed):
    rng = np.random.default_rng(seed)
    rho = states.random_density(d, rng)
    us = [None, None, None]
    for p in party_free:
        us[p] = linalg.haar_unitary(d, rng)
    return rho, states.local_unitary(rho, *us)


@settings(max_examples=30)
@given(st.sampled_from([2, 3]), seeds)
def test_lu_covariance(d, seed):
    for idx, free in enumerate([(1, 2), (0, 2), (0, 1)]):
        rho, rho2 = _lu_pair(d, free, seed)
        assert abs(bloch.n_norms(rho)[idx] - bloch.n_norms(rho2)[idx]) <= 1e-8


def test_lu_on_fixed_party_can_change_norm():
    rho, rho2 = _lu_pair(2, (0,), 5)
    assert abs(bloch.n_norms(rho)[0] - bloch.n_norms(rho2)[0]) > 1e-6


@pytest.mark.parametrize("psi", [states.ghz(2), states.w_qubit(), states.ghz(3), states.w3_qutrit()])
def test_party_reversal_symmetry(psi):
    d = psi.d
    rev = states.PureState(d, np.transpose(psi.tensor(), (2, 1, 0)).reshape(-1))
    n = bloch.n_norms(psi.density())
    n_rev = bloch.n_norms(rev.density())
    assert n[2] == pytest.approx(n_rev[0], abs=1e-9)
