"""Generator matrices: rows are basis coefficient vectors in lex column order."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import RankDeficiencyError, SpecMismatchError
from .qring import RingElement, RingSpec


class BasisSource(str, enum.Enum):
    SEPASDAR = "Sepasdar"
    ORACLE = "OracleRREF"


@dataclass(frozen=True)
class GeneratorMatrix:
    spec: RingSpec
    entries: np.ndarray  # (l, n) field codes
    basis_source: BasisSource

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def column_labels(self) -> list[tuple[int, ...]]:
        return [tuple(int(a) for a in e) for e in self.spec.exps]

    def row(self, i: int) -> RingElement:
        return RingElement(self.spec, self.entries[i])

    def basis(self) -> list[RingElement]:
        return [self.row(i) for i in range(self.rows)]

    def standardized(self) -> GeneratorMatrix:
        R, _ = kernels.rref(self.entries, self.spec.tables)
        return GeneratorMatrix(self.spec, R, self.basis_source)


def to_matrix(
    basis: Sequence[RingElement],
    source: BasisSource = BasisSource.SEPASDAR,
    spec: RingSpec | None = None,
    standardize: bool = False,
) -> GeneratorMatrix:
    """Stack ``basis`` into G, rejecting dependent rows.

    ``spec`` is only needed when ``basis`` is empty (the zero code).
    """
    basis = list(basis)
    if not basis:
        if spec is None:
            raise ValueError("empty basis needs an explicit ring spec")
        return GeneratorMatrix(spec, np.zeros((0, spec.n), dtype=np.int64), BasisSource(source))
    spec = basis[0].spec
    if any(b.spec != spec for b in basis):
        raise SpecMismatchError("basis elements from different rings")
    entries = np.stack([b.coeffs for b in basis]).astype(np.int64)
    if kernels.rank(entries, spec.tables) != len(basis):
        raise RankDeficiencyError("basis rows are linearly dependent")
    G = GeneratorMatrix(spec, entries, BasisSource(source))
    return G.standardized() if standardize else G


def encode(G: GeneratorMatrix, message) -> RingElement:
    """Codeword sum_l m_l g_l; message entries are field codes or FieldElements."""
    msg = np.array([int(getattr(c, "code", c)) for c in message], dtype=np.int64)
    if msg.shape[0] != G.rows:
        raise ValueError(f"message length {msg.shape[0]} != {G.rows}")
    if msg.size and (msg.min() < 0 or msg.max() >= G.spec.field.q):
        raise ValueError("message symbols out of range")
    if G.rows == 0:
        return G.spec.zero()
    row = kernels.matmul(msg[None, :], G.entries, G.spec.tables)[0]
    return RingElement(G.spec, row)


def format_text(G: GeneratorMatrix) -> str:
    """One line per row, entries separated by single spaces."""
    render = G.spec.field.render
    return "".join(" ".join(render(int(c)) for c in row) + "\n" for row in G.entries)


def format_csv(G: GeneratorMatrix) -> str:
    """Header of exponent labels ``a1,...,as``, then one record per row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([",".join(map(str, lab)) for lab in G.column_labels])
    render = G.spec.field.render
    for row in G.entries:
        writer.writerow([render(int(c)) for c in row])
    return buf.getvalue()
