"""Finite fields GF(p^m).

Elements are stored as integer codes ``c = sum(d_i * p**i)`` where ``d_i`` is
the coefficient of ``t**i`` in the polynomial representative modulo the
field's defining polynomial. Code 0 is zero and code 1 is one, so the natural
integer order gives an enumeration starting ``0, 1, ...``.

Scalar arithmetic here works directly on polynomial representatives and is
the reference the vectorised kernels are checked against.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import FieldSpecError, SpecMismatchError

MAX_ORDER = 1 << 16

# Coefficients constant term first; monic, so the last entry is 1.
BUILTIN_MODULI = {
    4: (2, 2, (1, 1, 1)),  # t^2 + t + 1
    8: (2, 3, (1, 1, 0, 1)),  # t^3 + t + 1
    9: (3, 2, (1, 0, 1)),  # t^2 + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- univariate polynomials over GF(p), lists with the constant term first ---


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        quot[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        _trim(a)
    return _trim(quot), a


def _monic_polys(degree, p):
    """All monic polynomials of the given degree over GF(p)."""
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        yield low + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim(list(modulus))
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            _, r = _poly_divmod(f, g, p)
            if not r:
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest (by code order of the low coefficients) monic irreducible of degree m."""
    for f in _monic_polys(m, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldSpecError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


class FieldTables:
    """Lookup tables consumed by the kernels.

    ``exp[i] = g**i`` for a primitive element ``g``; ``log`` inverts it with
    ``log[0] = -1``; ``zech[d] = log(1 + g**d)`` or -1 when that sum is zero.
    """

    __slots__ = ("p", "m", "q", "exp", "log", "zech", "neg", "inv")

    def __init__(self, p, m, q, exp, log, zech, neg, inv):
        self.p = p
        self.m = m
        self.q = q
        self.exp = exp
        self.log = log
        self.zech = zech
        self.neg = neg
        self.inv = inv

    def args(self):
        return (self.p, self.m, self.exp, self.log, self.zech, self.neg, self.inv)


class FieldSpec:
    """The field GF(p^m).

    ``modulus`` lists the m+1 coefficients of a monic irreducible polynomial
    over GF(p), constant term first. It is ignored for m = 1. When omitted for
    m > 1 a built-in modulus is used for q in {4, 8, 9}, otherwise the first
    irreducible found by search.
    """

    def __init__(self, p: int, m: int = 1, modulus=None):
        p, m = int(p), int(m)
        if not is_prime(p):
            raise FieldSpecError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldSpecError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_ORDER:
            raise FieldSpecError(f"field order {q} exceeds cap {MAX_ORDER}")
        if m == 1:
            modulus = (0, 1)
        elif modulus is None:
            builtin = BUILTIN_MODULI.get(q)
            modulus = builtin[2] if builtin and builtin[0] == p else find_irreducible(p, m)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != m + 1:
                raise FieldSpecError(f"modulus must have {m + 1} coefficients, got {len(modulus)}")
            if any(not 0 <= c < p for c in modulus):
                raise FieldSpecError(f"modulus coefficients must lie in [0, {p})")
            if modulus[-1] != 1:
                raise FieldSpecError("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise FieldSpecError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = tuple(modulus)
        self._tables = None
        self._lock = threading.Lock()

    @classmethod
    def of_order(cls, q: int) -> FieldSpec:
        """GF(q) for a prime power q, with the default modulus."""
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise FieldSpecError(f"{q} is not a prime power")
        m = 0
        r = q
        while r % p == 0:
            r //= p
            m += 1
        if r != 1 or not is_prime(p):
            raise FieldSpecError(f"{q} is not a prime power")
        return cls(p, m)

    def _key(self):
        return (self.p, self.m, self.modulus if self.m > 1 else ())

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # -- code-level scalar arithmetic --

    def digits(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.p**i) % self.p for i in range(self.m))

    def from_digits(self, digits) -> int:
        digits = list(digits)
        if len(digits) > self.m:
            raise FieldSpecError(f"expected at most {self.m} coordinates, got {len(digits)}")
        return sum((int(d) % self.p) * self.p**i for i, d in enumerate(digits))

    def add_codes(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.from_digits((x + y) % self.p for x, y in zip(da, db))

    def neg_code(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits((-x) % self.p for x in self.digits(a))

    def mul_codes(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        prod = _poly_mul(list(self.digits(a)), list(self.digits(b)), self.p)
        _, r = _poly_divmod(prod, self.modulus, self.p)
        return self.from_digits(r)

    def inv_code(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self!r}")
        if self.m == 1:
            return pow(a, -1, self.p)
        # extended Euclid: track s with s*a == r (mod modulus)
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.digits(a)))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        return self.from_digits([(x * c) % p for x in s0])

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_code(a), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul_codes(out, a)
            a = self.mul_codes(a, a)
            e >>= 1
        return out

    # -- elements --

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def __call__(self, value) -> FieldElement:
        """Coerce an int (prime-subfield value), digit tuple or element."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatchError(f"element of {value.spec!r} used in {self!r}")
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_digits(value))
        return FieldElement(self, int(value) % self.p)

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise FieldSpecError(f"code {code} out of range for {self!r}")
        return FieldElement(self, int(code))

    def enumerate(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def render(self, code: int) -> str:
        """Integer for prime fields, coefficient tuple ``(d0,d1,...)`` otherwise."""
        if self.m == 1:
            return str(int(code))
        return "(" + ",".join(str(d) for d in self.digits(int(code))) + ")"

    # -- tables --

    @property
    def tables(self) -> FieldTables:
        if self._tables is None:
            with self._lock:
                if self._tables is None:
                    self._tables = self._build_tables()
        return self._tables

    def primitive_element(self) -> int:
        if self.q == 2:
            return 1
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self.pow_code(g, (self.q - 1) // r) != 1 for r in factors):
                return g
        raise FieldSpecError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> FieldTables:
        q = self.q
        g = self.primitive_element()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul_codes(x, g)
        zech = np.empty(q - 1, dtype=np.int64)
        for d in range(q - 1):
            s = self.add_codes(1, int(exp[d]))
            zech[d] = log[s]
        neg = np.array([self.neg_code(c) for c in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        return FieldTables(self.p, self.m, q, exp, log, zech, neg, inv)


@dataclass(frozen=True, slots=True)
class FieldElement:
    spec: FieldSpec
    code: int

    @property
    def repr(self):
        """Canonical representative: int for m = 1, digit tuple otherwise."""
        if self.spec.m == 1:
            return self.code
        return self.spec.digits(self.code)

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatchError(f"{self.spec!r} vs {other.spec!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.spec(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, self.spec.add_codes(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_code(self.code))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, self.spec.mul_codes(self.code, other.code))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv_code(self.code))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_code(self.code, int(e)))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __str__(self):
        return self.spec.render(self.code)

    def __repr__(self):
        return f"{self.spec!r}({self})"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.spec != b.spec:
        raise SpecMismatchError(f"{a.spec!r} vs {b.spec!r}")
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.spec != b.spec:
        raise SpecMismatchError(f"{a.spec!r} vs {b.spec!r}")
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_enumerate(spec: FieldSpec) -> list[FieldElement]:
    return spec.enumerate()
