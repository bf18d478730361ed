import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcc.errors import FieldSpecError, SpecMismatchError
from mcc.gf import FieldSpec, field_add, field_enumerate, field_inv, field_mul, is_irreducible

SMALL_FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7), FieldSpec(2, 2), FieldSpec(2, 3), FieldSpec(3, 2)]


def test_add_examples(gf2, gf3, gf4):
    assert field_add(gf2(1), gf2(1)) == gf2.zero
    assert field_add(gf3(2), gf3(2)) == gf3(1)
    t = gf4((0, 1))
    assert field_add(t, gf4.one) == gf4((1, 1))


def test_mul_examples(gf3, gf4):
    assert field_mul(gf3(2), gf3(2)) == gf3(1)
    t = gf4((0, 1))
    assert field_mul(t, t) == gf4((1, 1))
    gf5 = FieldSpec(5)
    assert field_mul(gf5(3), gf5(4)) == gf5(2)


def test_inv_examples(gf2, gf4):
    gf7 = FieldSpec(7)
    assert field_inv(gf7(3)) == gf7(5)
    assert field_inv(gf2(1)) == gf2(1)
    assert field_inv(gf4((0, 1))) == gf4((1, 1))


def test_inv_zero_raises(gf3):
    with pytest.raises(ZeroDivisionError):
        field_inv(gf3.zero)


def test_spec_mismatch(gf2, gf3):
    with pytest.raises(SpecMismatchError):
        field_add(gf2(1), gf3(1))
    with pytest.raises(SpecMismatchError):
        field_mul(gf2(1), gf3(1))


def test_enumerate_small():
    assert [e.repr for e in field_enumerate(FieldSpec(2))] == [0, 1]
    assert [e.repr for e in field_enumerate(FieldSpec(3))] == [0, 1, 2]
    els = field_enumerate(FieldSpec(2, 2))
    assert len(set(els)) == 4
    assert els[0] == FieldSpec(2, 2).zero and els[1] == FieldSpec(2, 2).one


def test_repr_canonical(gf4):
    assert FieldSpec(5)(7).repr == 2
    assert gf4((1, 1)).repr == (1, 1)
    assert str(gf4((0, 1))) == "(0,1)"


def test_builtin_moduli():
    assert FieldSpec(2, 2).modulus == (1, 1, 1)
    assert FieldSpec(2, 3).modulus == (1, 1, 0, 1)
    assert FieldSpec(3, 2).modulus == (1, 0, 1)
    assert FieldSpec.of_order(9) == FieldSpec(3, 2)
    # no built-in for 16: found by search, t^4 + t + 1
    assert FieldSpec(2, 4).modulus == (1, 1, 0, 0, 1)


@pytest.mark.parametrize(
    "p, m, modulus, message",
    [
        (4, 1, None, "not prime"),
        (2, 0, None, "degree"),
        (2, 2, (1, 0, 1), "reducible"),  # t^2 + 1 = (t + 1)^2
        (2, 2, (1, 1, 0), "monic"),
        (2, 2, (1, 1), "coefficients"),
        (2, 17, None, "exceeds cap"),
    ],
)
def test_invalid_specs(p, m, modulus, message):
    with pytest.raises(FieldSpecError, match=message):
        FieldSpec(p, m, modulus)


def test_irreducibility_check():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)
    assert is_irreducible((1, 0, 1), 3)  # t^2 + 1, -1 is a non-residue mod 3
    assert not is_irreducible((2, 0, 1), 3)  # t^2 - 1
    assert is_irreducible((1, 1, 0, 1), 2)


def _elements(spec):
    return st.integers(0, spec.q - 1).map(spec.element)


@pytest.mark.parametrize("spec", SMALL_FIELDS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(spec, data):
    a, b, c = (data.draw(_elements(spec)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + spec.zero == a and a * spec.one == a
    assert a + (-a) == spec.zero
    if a:
        assert a * a.inverse() == spec.one


@pytest.mark.parametrize("spec", SMALL_FIELDS, ids=repr)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_frobenius(spec, data):
    a, b = data.draw(_elements(spec)), data.draw(_elements(spec))
    assert (a + b) ** spec.p == a**spec.p + b**spec.p


@pytest.mark.parametrize("spec", [f for f in SMALL_FIELDS if f.q <= 9], ids=repr)
def test_enumeration_closed(spec):
    els = spec.enumerate()
    assert len(els) == spec.q == len(set(els))
    seen = set(els)
    for a, b in itertools.product(els, repeat=2):
        assert a + b in seen and a * b in seen


@pytest.mark.parametrize("spec", SMALL_FIELDS + [FieldSpec(2, 4), FieldSpec(5, 2), FieldSpec(251)], ids=repr)
def test_tables_agree_with_scalar_arithmetic(spec):
    t = spec.tables
    assert sorted(t.exp.tolist()) == list(range(1, spec.q))
    for a in range(1, spec.q):
        assert spec.mul_codes(a, int(t.inv[a])) == 1
        assert int(t.neg[a]) == spec.neg_code(a)
    for d in range(spec.q - 1):
        s = spec.add_codes(1, int(t.exp[d]))
        assert (t.zech[d] == -1) == (s == 0)
        if s:
            assert int(t.exp[t.zech[d]]) == s


def test_inverse_matches_table_large_extension():
    spec = FieldSpec(2, 8)
    rng = np.random.default_rng(3)
    for a in rng.integers(1, spec.q, size=50):
        assert spec.mul_codes(int(a), spec.inv_code(int(a))) == 1
