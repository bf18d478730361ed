"""The independent set B built from one representative per layer.

For the layer-k representative P_k with leading coefficient degree a_k, B
collects every shift x1^i1 * ... * x_{s-1}^i_{s-1} * P_k with
i_j < rho_j - a_{k,j} for all j. Such shifts cannot collapse: the product of
the shift with p_k keeps its lex degree, and the layers are triangular in
x_s. B is an F_q-basis of I exactly when |B| equals dim I.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import ContainmentError, RankDeficiencyError
from .ideal import Code
from .idealbasis import SelectedRepresentatives, build_staircase, select_representatives
from .qring import RingElement, RingSpec

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    PROVEN = "ProvenBasis"
    INDEPENDENT_ONLY = "IndependentOnly"


@dataclass(frozen=True)
class Member:
    poly: RingElement
    k: int
    shift: tuple[int, ...]


@dataclass(frozen=True)
class SepasdarBasis:
    spec: RingSpec
    members: tuple[Member, ...]
    status: Status
    expected_dim: int
    representatives: SelectedRepresentatives | None = field(default=None, compare=False)

    @property
    def gap(self) -> int:
        return self.expected_dim - len(self.members)

    def polynomials(self) -> list[RingElement]:
        return [m.poly for m in self.members]


def shift_box(rho_sub: Sequence[int], a: Sequence[int]) -> list[tuple[int, ...]]:
    """All i with i <+ rho_sub - a, strictly in every coordinate, in lex order."""
    return list(itertools.product(*(range(r - x) for r, x in zip(rho_sub, a))))


def box_size(rho_sub: Sequence[int], a: Sequence[int]) -> int:
    return int(np.prod([max(r - x, 0) for r, x in zip(rho_sub, a)], dtype=np.int64))


def build_B(reps: SelectedRepresentatives) -> list[Member]:
    spec = reps.spec
    rho_sub = spec.rho[:-1]
    members = []
    for rep in reps.present():
        if any(x >= r for x, r in zip(rep.a, rho_sub)):
            # unreachable for reduced exponents; kept as a consistency check
            log.warning("layer %d: degree %s outside %s, empty shift box", rep.k, rep.a, rho_sub)
            continue
        for i in shift_box(rho_sub, rep.a):
            members.append(Member(rep.poly.shift(i + (0,)), rep.k, i))
    return members


def _matrix(members) -> np.ndarray:
    polys = [m.poly if isinstance(m, Member) else m for m in members]
    if not polys:
        return np.zeros((0, 0), dtype=np.int64)
    return np.stack([p.coeffs for p in polys])


def verify_independence(members) -> bool:
    """Rank of the coefficient matrix equals the number of members."""
    members = list(members)
    if not members:
        return True
    M = _matrix(members)
    tables = (members[0].poly if isinstance(members[0], Member) else members[0]).spec.tables
    return kernels.rank(M, tables) == len(members)


def decide_status(members: Sequence[Member], code: Code, representatives=None) -> SepasdarBasis:
    members = tuple(members)
    if not verify_independence(members):
        raise RankDeficiencyError("members of B are linearly dependent")
    if members and not code.contains_rows(_matrix(members)).all():
        raise ContainmentError("a member of B lies outside the code")
    dim = code.cardinality_log_q()
    status = Status.PROVEN if len(members) == dim else Status.INDEPENDENT_ONLY
    return SepasdarBasis(code.spec, members, status, dim, representatives)


def sepasdar_basis(code: Code, strategy: str = "min_a_lex") -> SepasdarBasis:
    """Staircase, representative choice, B and its status in one call."""
    reps = select_representatives(build_staircase(code), strategy)
    return decide_status(build_B(reps), code, reps)
