"""Staircase ideal basis: generators of I grouped by their x_s-order.

Each stored polynomial of layer k has the shape

    P = p_k * x_s^k + p_{k+1} * x_s^(k+1) + ... ,   p_h in S, p_k != 0,

and ``a`` is the lex degree of p_k in S.

The layers come from echelonising the oracle basis under an x_s-major column
order: x_s exponent ascending, then the exponent in S *descending* in lex
order. The pivot of each echelon row is then exactly (k, a), so within a layer
the degrees ``a`` are pairwise distinct and cover every degree attained by a
leading coefficient p_k of an order-k element of I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .ideal import Code
from .qring import RingElement, RingSpec, render_polynomial

STRATEGIES = ("min_a_lex", "first")


@dataclass(frozen=True)
class LayerEntry:
    poly: RingElement
    k: int
    lead: RingElement  # p_k, an element of S
    a: tuple[int, ...]


@dataclass(frozen=True)
class StaircaseBasis:
    spec: RingSpec
    layers: tuple[tuple[LayerEntry, ...], ...]

    def polynomials(self) -> list[RingElement]:
        return [e.poly for layer in self.layers for e in layer]

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]


@dataclass(frozen=True)
class SelectedRepresentatives:
    spec: RingSpec
    reps: tuple[LayerEntry | None, ...]  # None marks an empty layer
    strategy: str

    def present(self) -> list[LayerEntry]:
        return [r for r in self.reps if r is not None]


def xs_major_order(spec: RingSpec) -> np.ndarray:
    """Column permutation: position j of the permuted matrix holds lex index order[j]."""
    rs = spec.rho[-1]
    n_sub = spec.n // rs
    return np.array([r * rs + k for k in range(rs) for r in reversed(range(n_sub))], dtype=np.int64)


def build_staircase(code: Code) -> StaircaseBasis:
    spec = code.spec
    if spec.s == 0:
        raise ValueError("a staircase needs at least one variable")
    rs = spec.rho[-1]
    order = xs_major_order(spec)
    R, piv = kernels.rref(code.oracle_matrix[:, order], spec.tables)
    rows = np.zeros_like(R)
    rows[:, order] = R

    layers: list[list[LayerEntry]] = [[] for _ in range(rs)]
    for row, pc in zip(rows, piv):
        poly = RingElement(spec, row)
        k = int(order[pc] % rs)
        lead = poly.xs_coefficient(k)
        a = lead.degree().coords
        layers[k].append(LayerEntry(poly, k, lead, a))
    return StaircaseBasis(spec, tuple(tuple(layer) for layer in layers))


def select_representatives(sb: StaircaseBasis, strategy: str = "min_a_lex") -> SelectedRepresentatives:
    """Pick one polynomial per nonempty layer.

    ``min_a_lex`` takes the lex-smallest ``a`` (ties: canonical rendering);
    ``first`` takes the first stored row, which under the echelon order is
    the one with the lex-largest ``a``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    reps = []
    for layer in sb.layers:
        if not layer:
            reps.append(None)
        elif strategy == "first":
            reps.append(layer[0])
        else:
            reps.append(min(layer, key=lambda e: (e.a, render_polynomial(e.poly))))
    return SelectedRepresentatives(sb.spec, tuple(reps), strategy)
