"""Univariate polynomials over GF(q) with scalar field arithmetic only.

Used as an oracle for s = 1: the cyclic code <g> of length n has dimension
n - deg gcd(g, X^n - 1). Nothing here touches the vectorised kernels.
"""

from __future__ import annotations

from .gf import FieldElement, FieldSpec


def _trim(a: list[FieldElement]) -> list[FieldElement]:
    while a and not a[-1]:
        a.pop()
    return a


def poly_divmod(a: list[FieldElement], b: list[FieldElement]):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    field = b[-1].spec
    inv_lead = b[-1].inverse()
    quot = [field.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead
        quot[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = a[i + shift] - c * y
        _trim(a)
    return _trim(quot), a


def poly_gcd(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    """Monic gcd; the gcd of two zero polynomials is the empty list."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1].inverse()
    return [c * lead for c in a]


def cyclic_code_dimension(field: FieldSpec, coeffs, n: int) -> int:
    """Dimension of <g> in GF(q)[X]/(X^n - 1); ``coeffs`` are codes, constant first."""
    g = _trim([field.element(int(c)) for c in coeffs])
    if not g:
        return 0
    modulus = [-field.one] + [field.zero] * (n - 1) + [field.one]
    d = poly_gcd(modulus, g)
    return n - (len(d) - 1)
