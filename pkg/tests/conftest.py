import itertools

import numpy as np
import pytest

from mcc import kernels
from mcc._accel import HAVE_NUMBA
from mcc.gf import FieldSpec
from mcc.qring import RingSpec

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])

_acceptance_lines = []


@pytest.fixture(params=BACKENDS)
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gf2():
    return FieldSpec(2)


@pytest.fixture
def gf3():
    return FieldSpec(3)


@pytest.fixture
def gf4():
    return FieldSpec(2, 2)


def span_by_enumeration(spec: RingSpec, generators):
    """Every F_q-combination of every monomial multiple, grown as a set of tuples.

    Uses only scalar field arithmetic and index bookkeeping; no row reduction.
    """
    field = spec.field
    vectors = set()
    for g in generators:
        for alpha in itertools.product(*(range(r) for r in spec.rho)):
            v = [0] * spec.n
            for idx in np.flatnonzero(g.coeffs):
                beta = spec.exps[idx]
                target = tuple((a + b) % r for a, b, r in zip(alpha, beta, spec.rho))
                v[spec.lex_rank(target)] = int(g.coeffs[idx])
            vectors.add(tuple(v))
    span = {(0,) * spec.n}
    for v in vectors:
        if v in span:
            continue
        grown = set()
        for w in span:
            for c in range(field.q):
                scaled = [field.mul_codes(c, x) for x in v]
                grown.add(tuple(field.add_codes(a, b) for a, b in zip(w, scaled)))
        span = grown
    return span


def log_q(size: int, q: int) -> int:
    k = 0
    while q**k < size:
        k += 1
    assert q**k == size
    return k


def record_acceptance(line: str):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
