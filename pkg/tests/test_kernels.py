"""Both kernel backends against a scalar reference written with FieldSpec ops."""

import numpy as np
import pytest

from mcc import kernels
from mcc._accel import HAVE_NUMBA
from mcc.gf import FieldSpec
from mcc.qring import RingSpec

FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(7), FieldSpec(2, 2), FieldSpec(3, 2), FieldSpec(2, 4)]


def reference_rref(M, field):
    R = [list(map(int, row)) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        s = field.inv_code(R[r][c])
        R[r] = [field.mul_codes(s, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = field.neg_code(R[i][c])
                R[i] = [field.add_codes(x, field.mul_codes(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return np.array(R[:r], dtype=np.int64).reshape(r, cols), pivots


def reference_ring_mul(spec, f, g):
    field = spec.field
    out = [0] * spec.n
    for i in np.flatnonzero(f):
        for j in np.flatnonzero(g):
            e = tuple((a + b) % r for a, b, r in zip(spec.exps[i], spec.exps[j], spec.rho))
            k = spec.lex_rank(e)
            out[k] = field.add_codes(out[k], field.mul_codes(int(f[i]), int(g[j])))
    return np.array(out, dtype=np.int64)


def random_matrix(rng, field, rows, cols, density=0.5):
    vals = rng.integers(1, field.q, size=(rows, cols))
    return np.where(rng.random((rows, cols)) < density, vals, 0).astype(np.int64)


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@pytest.mark.parametrize("shape", [(1, 1), (4, 6), (7, 5), (9, 9), (12, 4)])
def test_rref_matches_reference(backend, field, shape, rng):
    for trial in range(3):
        M = random_matrix(rng, field, *shape, density=[0.2, 0.5, 0.9][trial])
        R, piv = kernels.rref(M, field.tables)
        R_ref, piv_ref = reference_rref(M, field)
        assert piv.tolist() == piv_ref
        assert np.array_equal(R, R_ref)


def test_rref_empty_and_zero(backend, gf3):
    R, piv = kernels.rref(np.zeros((0, 5), dtype=np.int64), gf3.tables)
    assert R.shape == (0, 5) and piv.size == 0
    R, piv = kernels.rref(np.zeros((3, 4), dtype=np.int64), gf3.tables)
    assert R.shape == (0, 4)


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_reduce_rows_membership(backend, field, rng):
    basis = random_matrix(rng, field, 3, 8)
    R, piv = kernels.rref(basis, field.tables)
    members = kernels.matmul(random_matrix(rng, field, 5, 3, 0.8), basis, field.tables)
    assert not kernels.reduce_rows(members, R, piv, field.tables).any()
    # reducing a row that lies outside leaves a nonzero remainder iff rank grows
    outsider = random_matrix(rng, field, 1, 8, 0.9)
    grows = kernels.rank(np.vstack([basis, outsider]), field.tables) > R.shape[0]
    assert kernels.reduce_rows(outsider, R, piv, field.tables).any() == grows


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_matmul_matches_scalar(backend, field, rng):
    A = random_matrix(rng, field, 3, 4)
    B = random_matrix(rng, field, 4, 5)
    C = kernels.matmul(A, B, field.tables)
    for i in range(3):
        for j in range(5):
            acc = 0
            for k in range(4):
                acc = field.add_codes(acc, field.mul_codes(int(A[i, k]), int(B[k, j])))
            assert C[i, j] == acc


@pytest.mark.parametrize("field", FIELDS[:4], ids=repr)
@pytest.mark.parametrize("rho", [(5,), (2, 3), (3, 3), (2, 2, 2), (1, 4)])
def test_ring_mul_matches_reference(backend, field, rho, rng):
    spec = RingSpec(field, rho)
    for _ in range(3):
        f = random_matrix(rng, field, 1, spec.n)[0]
        g = random_matrix(rng, field, 1, spec.n)[0]
        got = kernels.ring_mul(f, g, spec.exps, np.array(rho), spec.strides, field.tables)
        assert np.array_equal(got, reference_ring_mul(spec, f, g))


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_backends_agree_on_larger_inputs(rng):
    field = FieldSpec(3, 2)
    M = random_matrix(rng, field, 40, 60, 0.3)
    spec = RingSpec(field, (6, 5))
    f = random_matrix(rng, field, 1, spec.n)[0]
    g = random_matrix(rng, field, 1, spec.n)[0]
    out = {}
    for name in ("numba", "numpy"):
        with kernels.use_backend(name):
            R, piv = kernels.rref(M, field.tables)
            prod = kernels.ring_mul(f, g, spec.exps, np.array(spec.rho), spec.strides, field.tables)
            out[name] = (R, piv, prod)
    for a, b in zip(out["numba"], out["numpy"]):
        assert np.array_equal(a, b)


def test_backend_switch_validates():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
    before = kernels.get_backend()
    with kernels.use_backend("numpy"):
        assert kernels.get_backend() == "numpy"
    assert kernels.get_backend() == before
