"""Dense polynomials in R = F_q[x1..xs] / <x1^rho1 - 1, ..., xs^rhos - 1>.

A ring element is a length-n vector of field codes, n = rho1 * ... * rhos.
Index i holds the coefficient of the i-th exponent in lex order; the index of
an exponent is its mixed-radix value with x1 most significant, so index order
*is* lex order and the vector doubles as the coordinate vector in F_q^n.

The subring S on x1..x_{s-1} is ``spec.subring()``. A spec with ``rho = ()``
is the field itself (n = 1); it appears as S when s = 1.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import CapExceededError, ParseError, SpecMismatchError, UndefinedDegreeError
from .gf import FieldElement, FieldSpec

DEFAULT_N_CAP = 4096


def n_cap() -> int:
    env = os.environ.get("MCC_CAP")
    return int(env) if env else DEFAULT_N_CAP


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _check_arity(a, b):
    if len(a) != len(b):
        raise SpecMismatchError(f"arity mismatch: {len(a)} vs {len(b)}")


def lex_compare(a: Sequence[int], b: Sequence[int]) -> Cmp:
    """First differing coordinate decides."""
    _check_arity(a, b)
    for x, y in zip(a, b):
        if x != y:
            return Cmp.LT if x < y else Cmp.GT
    return Cmp.EQ


def leq_plus(a: Sequence[int], b: Sequence[int]) -> bool:
    _check_arity(a, b)
    return all(x <= y for x, y in zip(a, b))


def lt_plus(a: Sequence[int], b: Sequence[int]) -> bool:
    """Strict in every coordinate, e.g. (1,2) <+ (2,2) is False."""
    _check_arity(a, b)
    return all(x < y for x, y in zip(a, b))


@dataclass(frozen=True)
class ExponentVector:
    """An element of Z/rho1 x ... x Z/rhos, always reduced."""

    coords: tuple[int, ...]
    rho: tuple[int, ...]

    def __post_init__(self):
        _check_arity(self.coords, self.rho)
        if any(not 0 <= a < r for a, r in zip(self.coords, self.rho)):
            raise ValueError(f"exponent {self.coords} not reduced modulo {self.rho}")

    @classmethod
    def reduce(cls, coords, rho) -> ExponentVector:
        return cls(tuple(int(a) % r for a, r in zip(coords, rho)), tuple(rho))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def lex_rank(self) -> int:
        r = 0
        for a, m in zip(self.coords, self.rho):
            r = r * m + a
        return r

    def __add__(self, other: ExponentVector) -> ExponentVector:
        return exp_add_mod_rho(self, other)

    def __lt__(self, other: ExponentVector) -> bool:
        return lex_compare(self.coords, other.coords) is Cmp.LT

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def exp_add_mod_rho(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    if a.rho != b.rho:
        raise SpecMismatchError(f"exponents over {a.rho} and {b.rho}")
    return ExponentVector(tuple((x + y) % r for x, y, r in zip(a.coords, b.coords, a.rho)), a.rho)


class RingSpec:
    """The quotient ring over ``field`` with cyclic lengths ``rho``."""

    def __init__(self, field: FieldSpec, rho: Sequence[int], cap: int | None = None):
        rho = tuple(int(r) for r in rho)
        if any(r < 1 for r in rho):
            raise ValueError(f"every rho_i must be >= 1, got {rho}")
        n = int(np.prod(rho, dtype=np.int64)) if rho else 1
        cap = n_cap() if cap is None else cap
        if n > cap:
            raise CapExceededError(f"n = {n} exceeds cap {cap} (set MCC_CAP to raise it)")
        self.field = field
        self.rho = rho
        self.s = len(rho)
        self.n = n
        self._cap = cap

    def _key(self):
        return (self.field, self.rho)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"RingSpec({self.field!r}, rho={self.rho})"

    @cached_property
    def strides(self) -> np.ndarray:
        out = np.ones(self.s, dtype=np.int64)
        for i in range(self.s - 2, -1, -1):
            out[i] = out[i + 1] * self.rho[i + 1]
        return out

    @cached_property
    def exps(self) -> np.ndarray:
        """(n, s) table: row i is the i-th exponent in lex order."""
        if self.s == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grid = np.indices(self.rho).reshape(self.s, -1).T
        out = np.ascontiguousarray(grid, dtype=np.int64)
        out.setflags(write=False)
        return out

    @cached_property
    def _rho_arr(self) -> np.ndarray:
        return np.array(self.rho, dtype=np.int64)

    @property
    def tables(self):
        return self.field.tables

    def subring(self) -> RingSpec:
        """S: the ring on the first s-1 variables."""
        if self.s == 0:
            raise ValueError("the coefficient field has no proper subring")
        return RingSpec(self.field, self.rho[:-1], cap=self._cap)

    def exponent(self, index: int) -> ExponentVector:
        return ExponentVector(tuple(int(a) for a in self.exps[index]), self.rho)

    def exponent_vectors(self) -> list[ExponentVector]:
        return [self.exponent(i) for i in range(self.n)]

    def lex_rank(self, alpha) -> int:
        if isinstance(alpha, ExponentVector):
            if alpha.rho != self.rho:
                raise SpecMismatchError(f"exponent over {alpha.rho} used in ring over {self.rho}")
            return alpha.lex_rank
        _check_arity(alpha, self.rho)
        return ExponentVector.reduce(alpha, self.rho).lex_rank

    # -- constructors --

    def element(self, coeffs) -> RingElement:
        arr = np.array(coeffs, dtype=np.int64).reshape(-1)
        if arr.shape[0] != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {arr.shape[0]}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError("coefficient codes out of range")
        return RingElement(self, arr)

    def zero(self) -> RingElement:
        return RingElement(self, np.zeros(self.n, dtype=np.int64))

    def one(self) -> RingElement:
        return self.monomial((0,) * self.s)

    def monomial(self, alpha, coeff=1) -> RingElement:
        out = np.zeros(self.n, dtype=np.int64)
        out[self.lex_rank(alpha)] = self.field(coeff).code
        return RingElement(self, out)

    def variable(self, i: int) -> RingElement:
        """x_i with 1-based i."""
        if not 1 <= i <= self.s:
            raise ValueError(f"variable index {i} out of range 1..{self.s}")
        alpha = [0] * self.s
        alpha[i - 1] = 1
        return self.monomial(alpha)

    def from_terms(self, terms) -> RingElement:
        """Build from ``{exponent tuple: coefficient}``; exponents reduce mod rho."""
        out = self.zero()
        for alpha, c in dict(terms).items():
            out = out + self.monomial(alpha, c)
        return out

    def parse(self, text: str) -> RingElement:
        return parse_polynomial(self, text)

    def random(self, rng: np.random.Generator, density: float = 0.5) -> RingElement:
        """Each coefficient is nonzero with probability ``density``, uniform on F_q^* then."""
        mask = rng.random(self.n) < density
        vals = rng.integers(1, self.field.q, size=self.n) if self.field.q > 1 else np.zeros(self.n)
        return RingElement(self, np.where(mask, vals, 0).astype(np.int64))

    def shift_codes(self, coeffs: np.ndarray, alpha) -> np.ndarray:
        """Coefficients of x^alpha * f: a cyclic shift along each axis."""
        if self.s == 0:
            return np.array(coeffs, dtype=np.int64)
        alpha = tuple(int(a) for a in alpha)
        grid = np.asarray(coeffs).reshape(self.rho)
        return np.roll(grid, alpha, axis=tuple(range(self.s))).reshape(self.n)


class RingElement:
    """Immutable dense polynomial."""

    __slots__ = ("spec", "coeffs", "__weakref__")

    def __init__(self, spec: RingSpec, coeffs: np.ndarray):
        coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
        coeffs.setflags(write=False)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _same(self, other: RingElement):
        if not isinstance(other, RingElement):
            return False
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec!r} vs {other.spec!r}")
        return True

    def _args(self):
        t = self.spec.tables
        return t.p, t.m, t.exp, t.log, t.zech

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs.tobytes()))

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return RingElement(self.spec, kernels.vadd(self.coeffs, other.coeffs, *self._args()))

    def __neg__(self):
        return RingElement(self.spec, self.spec.tables.neg[self.coeffs])

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> RingElement:
        c = self.spec.field(c)
        p, m, exp, log, _ = self._args()
        return RingElement(self.spec, kernels.vmul(c.code, self.coeffs, p, m, exp, log))

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int, np.integer)):
            return self.scale(other)
        if not self._same(other):
            return NotImplemented
        spec = self.spec
        out = kernels.ring_mul(self.coeffs, other.coeffs, spec.exps, spec._rho_arr, spec.strides, spec.tables)
        return RingElement(spec, out)

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int, np.integer)):
            return self.scale(other)
        return NotImplemented

    def shift(self, alpha) -> RingElement:
        """x^alpha * self without a general multiplication."""
        return RingElement(self.spec, self.spec.shift_codes(self.coeffs, alpha))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __bool__(self):
        return not self.is_zero()

    def coefficient(self, alpha) -> FieldElement:
        return self.spec.field.element(int(self.coeffs[self.spec.lex_rank(alpha)]))

    def support(self) -> list[ExponentVector]:
        return [self.spec.exponent(i) for i in np.flatnonzero(self.coeffs)]

    def degree(self) -> ExponentVector:
        """Lex-largest exponent with a nonzero coefficient."""
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            raise UndefinedDegreeError("the zero polynomial has no degree")
        return self.spec.exponent(int(nz[-1]))

    def xs_coefficient(self, k: int) -> RingElement:
        """The S-polynomial multiplying x_s^k."""
        spec = self.spec
        if spec.s == 0:
            raise ValueError("no last variable in the coefficient field")
        rs = spec.rho[-1]
        if not 0 <= k < rs:
            raise ValueError(f"x_s exponent {k} out of range 0..{rs - 1}")
        return RingElement(spec.subring(), self.coeffs[k::rs])

    def xs_order(self) -> int:
        """Smallest k with a nonzero x_s^k coefficient."""
        if self.is_zero():
            raise UndefinedDegreeError("the zero polynomial has no x_s-order")
        rs = self.spec.rho[-1]
        cols = self.coeffs.reshape(-1, rs).any(axis=0)
        return int(np.flatnonzero(cols)[0])

    def embed(self, target: RingSpec) -> RingElement:
        return embed_from_S(self, target)

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"RingElement({self.spec.rho}, {self})"


def ring_add(f: RingElement, g: RingElement) -> RingElement:
    f._same(g)
    return f + g


def ring_neg(f: RingElement) -> RingElement:
    return -f


def ring_scale(f: RingElement, c) -> RingElement:
    return f.scale(c)


def ring_mul(f: RingElement, g: RingElement) -> RingElement:
    f._same(g)
    return f * g


def ring_degree(f: RingElement) -> ExponentVector:
    return f.degree()


def xs_coefficient(f: RingElement, k: int) -> RingElement:
    return f.xs_coefficient(k)


def xs_order(f: RingElement) -> int:
    return f.xs_order()


def embed_from_S(g: RingElement, target: RingSpec) -> RingElement:
    """Identify g in S with the class in R having x_s-exponent 0."""
    if target.s == 0 or g.spec != target.subring():
        raise SpecMismatchError(f"{g.spec!r} is not the subring of {target!r}")
    out = np.zeros(target.n, dtype=np.int64)
    out[:: target.rho[-1]] = g.coeffs
    return RingElement(target, out)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def _render_monomial(alpha) -> str:
    parts = []
    for i, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts)


def render_polynomial(f: RingElement) -> str:
    """Canonical text: nonzero terms by ascending lex rank joined by ' + '.

    A term is ``c*x1^a1*...`` with exponent-0 factors dropped, ``^1`` dropped,
    and a unit coefficient dropped when a variable is present. Coefficients
    of extension fields render as digit tuples ``(d0,d1,...)``.
    """
    field = f.spec.field
    terms = []
    for i in np.flatnonzero(f.coeffs):
        c = int(f.coeffs[i])
        mono = _render_monomial(f.spec.exps[i])
        if not mono:
            terms.append(field.render(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{field.render(c)}*{mono}")
    return " + ".join(terms) if terms else "0"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d*)|(?P<op>[-+*^(),]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, spec: RingSpec, text: str):
        self.spec = spec
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}", tok)
        return tok

    def integer(self):
        tok = self.take()
        if tok[0] != "int":
            self.fail("expected an integer", tok)
        return int(tok[1])

    def polynomial(self):
        spec = self.spec
        field = spec.field
        acc = np.zeros(spec.n, dtype=np.int64)
        p, m, exp, log, zech = field.tables.p, field.m, field.tables.exp, field.tables.log, field.tables.zech
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            code, rank = self.term()
            if sign < 0:
                code = field.neg_code(code)
            acc[rank] = kernels.vadd(acc[rank], code, p, m, exp, log, zech)
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[1] not in ("+", "-"):
                self.fail(f"unexpected {tok[1]!r}")
            sign = -1 if self.take()[1] == "-" else 1
        return RingElement(spec, acc)

    def term(self):
        field = self.spec.field
        code = 1
        alpha = [0] * self.spec.s
        first = True
        while True:
            tok = self.peek()
            if not first:
                if tok[1] == "*":
                    self.take()
                    tok = self.peek()
                elif tok[0] not in ("int", "var") and tok[1] != "(":
                    break
            first = False
            if tok[0] == "int":
                self.take()
                code = field.mul_codes(code, int(tok[1]) % field.p)
            elif tok[1] == "(":
                code = field.mul_codes(code, self.tuple_coeff())
            elif tok[0] == "var":
                self.take()
                idx = self.var_index(tok)
                e = 1
                if self.peek()[1] == "^":
                    self.take()
                    e = self.integer()
                alpha[idx] += e
            else:
                self.fail("expected a coefficient or variable")
        rank = ExponentVector.reduce(alpha, self.spec.rho).lex_rank if self.spec.s else 0
        return code, rank

    def tuple_coeff(self):
        field = self.spec.field
        start = self.expect("(")
        digits = [self.integer()]
        while self.peek()[1] == ",":
            self.take()
            digits.append(self.integer())
        self.expect(")")
        if len(digits) > field.m:
            self.fail(f"coefficient tuple has {len(digits)} entries, field degree is {field.m}", start)
        return field.from_digits(digits)

    def var_index(self, tok):
        name = tok[1]
        s = self.spec.s
        if name == "x":
            if s != 1:
                self.fail("bare 'x' is only allowed when s = 1", tok)
            return 0
        i = int(name[1:])
        if not 1 <= i <= s:
            self.fail(f"variable {name} out of range x1..x{s}", tok)
        return i - 1


def parse_polynomial(spec: RingSpec, text: str) -> RingElement:
    """Parse ``'1 + x1 + 2*x1^2*x2'`` style text; exponents reduce modulo rho."""
    return _Parser(spec, text).polynomial()
