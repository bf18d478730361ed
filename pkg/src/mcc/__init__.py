"""Generator matrices of multidimensional cyclic codes.

A code is an ideal of F_q[x1..xs]/<x1^rho1 - 1, ..., xs^rhos - 1>. From a
staircase ideal basis the package builds an independent set of shifted
generators, certifies it against a brute-force RREF oracle, and writes the
resulting generator matrix.
"""

from .gf import FieldElement, FieldSpec, field_add, field_enumerate, field_inv, field_mul
from .qring import ExponentVector, RingElement, RingSpec, lex_compare, leq_plus, lt_plus
from .ideal import Code, span_closure
from .idealbasis import StaircaseBasis, SelectedRepresentatives, build_staircase, select_representatives
from .sepasdar import SepasdarBasis, Status, build_B, decide_status, sepasdar_basis, verify_independence
from .genmatrix import BasisSource, GeneratorMatrix, encode, to_matrix

__all__ = [
    "FieldElement",
    "FieldSpec",
    "field_add",
    "field_enumerate",
    "field_inv",
    "field_mul",
    "ExponentVector",
    "RingElement",
    "RingSpec",
    "lex_compare",
    "leq_plus",
    "lt_plus",
    "Code",
    "span_closure",
    "StaircaseBasis",
    "SelectedRepresentatives",
    "build_staircase",
    "select_representatives",
    "SepasdarBasis",
    "Status",
    "build_B",
    "decide_status",
    "sepasdar_basis",
    "verify_independence",
    "BasisSource",
    "GeneratorMatrix",
    "encode",
    "to_matrix",
]
