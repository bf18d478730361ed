"""Hot loops over GF(q) element codes: row reduction, reduction against an
echelon basis, matrix products and the cyclic convolution of the quotient ring.

Every kernel has two implementations. The ``_loop_*`` functions are plain
scalar loops compiled with ``numba.njit``; the ``_np_*`` functions are
vectorised numpy. The active backend defaults to numba when it imports and
``MCC_DISABLE_NUMBA`` is unset, and can be switched at runtime with
:func:`use_backend`.

All arrays hold int64 field codes (see :mod:`mcc.gf`). The field enters as the
argument tuple ``FieldTables.args() = (p, m, exp, log, zech, neg, inv)``.
"""

from __future__ import annotations

import contextlib

import numpy as np

from . import _accel

BACKENDS = ("numba", "numpy")
_state = {"backend": _accel.default_backend()}


def get_backend() -> str:
    return _state["backend"]


def set_backend(name: str) -> None:
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    if name == "numba" and not _accel.HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _state["backend"] = name


@contextlib.contextmanager
def use_backend(name: str):
    previous = get_backend()
    set_backend(name)
    try:
        yield
    finally:
        _state["backend"] = previous


# ---------------------------------------------------------------------------
# scalar loop kernels (numba)
# ---------------------------------------------------------------------------


@_accel.njit
def _fadd(a, b, p, m, exp, log, zech):
    if m == 1:
        return (a + b) % p
    if a == 0:
        return b
    if b == 0:
        return a
    qm1 = exp.shape[0]
    la = log[a]
    d = log[b] - la
    if d < 0:
        d += qm1
    z = zech[d]
    if z < 0:
        return 0
    e = la + z
    if e >= qm1:
        e -= qm1
    return exp[e]


@_accel.njit
def _fmul(a, b, p, m, exp, log):
    if a == 0 or b == 0:
        return 0
    if m == 1:
        return (a * b) % p
    e = log[a] + log[b]
    qm1 = exp.shape[0]
    if e >= qm1:
        e -= qm1
    return exp[e]


@_accel.njit
def _row_axpy(y, a, x, start, p, m, exp, log, zech):
    """y[j] += a * x[j] for j >= start, in place."""
    n = y.shape[0]
    if m == 1:
        if p == 2:
            for j in range(start, n):
                y[j] ^= x[j]
        else:
            for j in range(start, n):
                y[j] = (y[j] + a * x[j]) % p
        return
    for j in range(start, n):
        if x[j] != 0:
            y[j] = _fadd(y[j], _fmul(a, x[j], p, m, exp, log), p, m, exp, log, zech)


@_accel.njit
def _loop_rref(M, p, m, exp, log, zech, neg, inv):
    R = M.copy()
    rows, cols = R.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                t = R[r, j]
                R[r, j] = R[pr, j]
                R[pr, j] = t
        s = inv[R[r, c]]
        if s != 1:
            for j in range(c, cols):
                R[r, j] = _fmul(s, R[r, j], p, m, exp, log)
        for i in range(rows):
            if i == r or R[i, c] == 0:
                continue
            _row_axpy(R[i], neg[R[i, c]], R[r], c, p, m, exp, log, zech)
        pivots[r] = c
        r += 1
    return R[:r].copy(), pivots[:r].copy()


@_accel.njit
def _loop_reduce_rows(V, R, pivots, p, m, exp, log, zech, neg, inv):
    out = V.copy()
    rows, cols = out.shape
    for v in range(rows):
        for k in range(pivots.shape[0]):
            c = pivots[k]
            x = out[v, c]
            if x == 0:
                continue
            _row_axpy(out[v], neg[x], R[k], c, p, m, exp, log, zech)
    return out


@_accel.njit
def _loop_matmul(A, B, p, m, exp, log, zech, neg, inv):
    rows, inner = A.shape
    cols = B.shape[1]
    out = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for k in range(inner):
            a = A[i, k]
            if a == 0:
                continue
            _row_axpy(out[i], a, B[k], 0, p, m, exp, log, zech)
    return out


@_accel.njit
def _loop_ring_mul(f, g, exps, rho, strides, p, m, exp, log, zech, neg, inv):
    n = f.shape[0]
    s = rho.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        a = f[i]
        if a == 0:
            continue
        for j in range(n):
            b = g[j]
            if b == 0:
                continue
            idx = 0
            for t in range(s):
                e = exps[i, t] + exps[j, t]
                if e >= rho[t]:
                    e -= rho[t]
                idx += e * strides[t]
            out[idx] = _fadd(out[idx], _fmul(a, b, p, m, exp, log), p, m, exp, log, zech)
    return out


# ---------------------------------------------------------------------------
# vectorised numpy kernels
# ---------------------------------------------------------------------------


def vadd(a, b, p, m, exp, log, zech):
    """Elementwise a + b on code arrays (broadcasting)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if m == 1:
        return (a + b) % p
    qm1 = exp.shape[0]
    a, b = np.broadcast_arrays(a, b)
    la = log[a]
    d = (log[b] - la) % qm1
    z = zech[d]
    summed = np.where(z < 0, 0, exp[(la + z) % qm1])
    return np.where(a == 0, b, np.where(b == 0, a, summed))


def vmul(a, b, p, m, exp, log):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if m == 1:
        return (a * b) % p
    qm1 = exp.shape[0]
    a, b = np.broadcast_arrays(a, b)
    prod = exp[(log[a] + log[b]) % qm1]
    return np.where((a == 0) | (b == 0), 0, prod)


def _np_rref(M, p, m, exp, log, zech, neg, inv):
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = vmul(inv[R[r, c]], R[r], p, m, exp, log)
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            factors = neg[R[others, c]][:, None]
            R[others] = vadd(R[others], vmul(factors, R[r][None, :], p, m, exp, log), p, m, exp, log, zech)
        pivots.append(c)
        r += 1
    return R[:r].copy(), np.array(pivots, dtype=np.int64)


def _np_reduce_rows(V, R, pivots, p, m, exp, log, zech, neg, inv):
    out = np.array(V, dtype=np.int64, copy=True)
    for k, c in enumerate(pivots):
        factors = neg[out[:, c]][:, None]
        hit = factors[:, 0] != 0
        if hit.any():
            out[hit] = vadd(out[hit], vmul(factors[hit], R[k][None, :], p, m, exp, log), p, m, exp, log, zech)
    return out


def _np_matmul(A, B, p, m, exp, log, zech, neg, inv):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if m == 1:
        # exact: entries < p <= 2^16, inner dimension <= cap keeps sums in int64
        return (A @ B) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = vadd(out, vmul(A[:, k][:, None], B[k][None, :], p, m, exp, log), p, m, exp, log, zech)
    return out


def _np_ring_mul(f, g, exps, rho, strides, p, m, exp, log, zech, neg, inv):
    n = f.shape[0]
    s = rho.shape[0]
    if s == 0:
        return vmul(f, g, p, m, exp, log)
    shape = tuple(int(r) for r in rho)
    G = g.reshape(shape)
    out = np.zeros(shape, dtype=np.int64)
    axes = tuple(range(s))
    for i in np.flatnonzero(f):
        shifted = np.roll(G, tuple(int(e) for e in exps[i]), axis=axes)
        out = vadd(out, vmul(f[i], shifted, p, m, exp, log), p, m, exp, log, zech)
    return out.reshape(n)


_IMPLS = {
    "numba": {
        "rref": _loop_rref,
        "reduce_rows": _loop_reduce_rows,
        "matmul": _loop_matmul,
        "ring_mul": _loop_ring_mul,
    },
    "numpy": {
        "rref": _np_rref,
        "reduce_rows": _np_reduce_rows,
        "matmul": _np_matmul,
        "ring_mul": _np_ring_mul,
    },
}


def _impl(name):
    return _IMPLS[_state["backend"]][name]


def _as_codes(a, ndim):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {a.shape}")
    return a


# ---------------------------------------------------------------------------
# public dispatchers
# ---------------------------------------------------------------------------


def rref(M, tables):
    """Reduced row echelon form over GF(q).

    Pivots are the first nonzero column of each row, normalised to 1 and
    cleared from every other row. Zero rows are dropped.

    Returns
    -------
    R : ndarray, shape (rank, cols)
    pivots : ndarray of int64, strictly increasing
    """
    M = _as_codes(M, 2)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return np.zeros((0, M.shape[1]), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return _impl("rref")(M, *tables.args())


def rank(M, tables) -> int:
    return int(rref(M, tables)[1].shape[0])


def reduce_rows(V, R, pivots, tables):
    """Reduce every row of ``V`` against an RREF basis; zero rows are members."""
    V = _as_codes(V, 2)
    if V.shape[0] == 0 or pivots.shape[0] == 0:
        return V.copy()
    return _impl("reduce_rows")(V, _as_codes(R, 2), _as_codes(pivots, 1), *tables.args())


def matmul(A, B, tables):
    A = _as_codes(A, 2)
    B = _as_codes(B, 2)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    return _impl("matmul")(A, B, *tables.args())


def ring_mul(f, g, exps, rho, strides, tables):
    """Convolution over Z/rho_1 x ... x Z/rho_s of two dense coefficient vectors."""
    return _impl("ring_mul")(
        _as_codes(f, 1), _as_codes(g, 1), _as_codes(exps, 2), _as_codes(rho, 1), _as_codes(strides, 1), *tables.args()
    )
