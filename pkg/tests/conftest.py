import itertools

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def oracle_generators(d):
    """Gell-Mann matrices built entry by entry, independent of the package."""
    gens = []
    for i in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for a in range(i):
            m[a, a] = 1
        m[i, i] = -i
        gens.append(np.sqrt(2 / (i * (i + 1))) * m)
    pairs = list(itertools.combinations(range(d), 2))
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1
        gens.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k], m[k, j] = -1j, 1j
        gens.append(m)
    return gens


def oracle_three_body(rho, d):
    """t_ijk by explicit Kronecker products and traces."""
    g = oracle_generators(d)
    n = len(g)
    t = np.zeros((n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        t[i, j, k] = np.trace(rho @ np.kron(np.kron(g[i], g[j]), g[k])).real
    return t


def oracle_trace_norm(m):
    m = np.asarray(m)
    if m.shape[0] < m.shape[1]:
        m = m.conj().T
    ev = np.linalg.eigvalsh(m.conj().T @ m)
    return float(np.sum(np.sqrt(np.clip(ev, 0, None))))


def oracle_n_norms(rho, d, mid=0):
    t = oracle_three_body(rho, d)
    a, b, c = 0, d - 1, d * (d + 1) // 2 - 1
    n1 = 15 * t[a].T + t[b].T + t[c].T
    n2 = 4 * t[:, mid, :].T
    n3 = 15 * t[:, :, a].T + t[:, :, b].T + t[:, :, c].T
    return tuple(oracle_trace_norm(m) for m in (n1, n2, n3))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
