"""Multicyclic codes as ideals of R, checked by brute-force linear algebra."""

from __future__ import annotations

import itertools
import os
import threading
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .errors import CapExceededError, SpecMismatchError
from .qring import RingElement, RingSpec

DEFAULT_ENUM_CAP = 1 << 20


def enumeration_cap() -> int:
    env = os.environ.get("MCC_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


def monomial_multiples(spec: RingSpec, generators: Sequence[RingElement]) -> np.ndarray:
    """Rows x^alpha * g for every alpha in G_s and every generator g."""
    rows = []
    for g in generators:
        if g.spec != spec:
            raise SpecMismatchError(f"generator over {g.spec!r}, expected {spec!r}")
        if g.is_zero():
            continue
        if spec.s == 0:
            rows.append(g.coeffs[None, :])
            continue
        grid = g.coeffs.reshape(spec.rho)
        axes = tuple(range(spec.s))
        for alpha in spec.exps:
            rows.append(np.roll(grid, tuple(int(a) for a in alpha), axis=axes).reshape(1, spec.n))
    if not rows:
        return np.zeros((0, spec.n), dtype=np.int64)
    return np.concatenate(rows, axis=0)


def span_closure(spec: RingSpec, generators: Sequence[RingElement]):
    """RREF of the F_q-span of all monomial multiples of ``generators``.

    This span is the smallest ideal containing the generators. Returns
    ``(R, pivots)`` with pivots in increasing lex rank.
    """
    return kernels.rref(monomial_multiples(spec, generators), spec.tables)


class Code:
    """An ideal I of R given by generators.

    The RREF oracle basis is computed once, on first access, under a lock.
    """

    def __init__(self, spec: RingSpec, generators: Sequence[RingElement]):
        gens = []
        for g in generators:
            if g.spec != spec:
                raise SpecMismatchError(f"generator over {g.spec!r}, expected {spec!r}")
            if not g.is_zero():
                gens.append(g)
        self.spec = spec
        self.generators = tuple(gens)
        self._oracle = None
        self._lock = threading.Lock()

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Code({self.spec!r}, <{gens}>)"

    def _compute(self):
        with self._lock:
            if self._oracle is None:
                R, piv = span_closure(self.spec, self.generators)
                R.setflags(write=False)
                piv.setflags(write=False)
                self._oracle = (R, piv)
        return self._oracle

    @property
    def oracle_matrix(self) -> np.ndarray:
        return self._oracle[0] if self._oracle is not None else self._compute()[0]

    @property
    def pivots(self) -> np.ndarray:
        return self._oracle[1] if self._oracle is not None else self._compute()[1]

    @property
    def oracle_basis(self) -> list[RingElement]:
        return [RingElement(self.spec, row) for row in self.oracle_matrix]

    @property
    def dimension(self) -> int:
        return int(self.pivots.shape[0])

    def cardinality_log_q(self) -> int:
        """log_q |I|, which is the F_q-dimension of I."""
        return self.dimension

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Remainders of coefficient rows after reduction against the oracle basis."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        return kernels.reduce_rows(rows, self.oracle_matrix, self.pivots, self.spec.tables)

    def contains(self, f: RingElement) -> bool:
        if f.spec != self.spec:
            raise SpecMismatchError(f"{f.spec!r} vs {self.spec!r}")
        return not self.reduce(f.coeffs[None, :]).any()

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        """Boolean membership mask for a batch of coefficient rows."""
        return ~self.reduce(rows).any(axis=1)

    def __contains__(self, f):
        return self.contains(f)

    def encode_rows(self, messages: np.ndarray) -> np.ndarray:
        """Codeword rows ``messages @ oracle_matrix`` over F_q."""
        messages = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        return kernels.matmul(messages, self.oracle_matrix, self.spec.tables)

    def random_codewords(self, rng: np.random.Generator, count: int) -> np.ndarray:
        msgs = rng.integers(0, self.spec.field.q, size=(count, self.dimension))
        if self.dimension == 0:
            return np.zeros((count, self.spec.n), dtype=np.int64)
        return self.encode_rows(msgs)

    def enumerate_codewords(self, cap: int | None = None) -> Iterator[RingElement]:
        """All q^dim codewords, each exactly once."""
        cap = enumeration_cap() if cap is None else cap
        q, k = self.spec.field.q, self.dimension
        if q**k > cap:
            raise CapExceededError(f"q^dim = {q}^{k} exceeds enumeration cap {cap}")
        if k == 0:
            yield self.spec.zero()
            return
        for msg in itertools.product(range(q), repeat=k):
            row = kernels.matmul(np.array([msg], dtype=np.int64), self.oracle_matrix, self.spec.tables)[0]
            yield RingElement(self.spec, row)


def same_row_space(a: np.ndarray, b: np.ndarray, tables) -> bool:
    """True when two coefficient matrices have identical RREF."""
    ra, _ = kernels.rref(a, tables)
    rb, _ = kernels.rref(b, tables)
    return ra.shape == rb.shape and np.array_equal(ra, rb)
