import pytest
from hypothesis import given, settings, strategies as st

from segredecomp.errors import DivisionByZero, NonPrimeCharacteristic, UnsupportedSize
from segredecomp.gf import (
    Field, FieldAutomorphism, arith, automorphism_group, field_new, frobenius_apply,
)

gf9 = Field(3, 2)
elements9 = st.integers(min_value=0, max_value=8)


def test_field_new_validates():
    assert field_new(3, 2) == Field(3, 2)

    with pytest.raises(NonPrimeCharacteristic):
        field_new(4, 1)
    with pytest.raises(UnsupportedSize):
        field_new(2, 17)
    with pytest.raises(UnsupportedSize):
        field_new(2, 0)


def test_conway_moduli():
    # t^2 + t + 1 and t^2 + 2t + 2, lowest degree first
    assert Field(2, 2).modulus == (1, 1, 1)
    assert Field(3, 2).modulus == (2, 2, 1)


def test_gf4_multiplication_table(gf4):
    # 2 encodes t, 3 encodes t + 1
    assert arith(gf4, 2, 2, 'mul') == 3
    assert arith(gf4, 2, 3, 'mul') == 1
    assert arith(gf4, 3, 3, 'mul') == 2
    assert arith(gf4, 2, 3, 'add') == 1
    assert arith(gf4, 1, 3, 'div') == 2


def test_division_by_zero(gf3):
    with pytest.raises(DivisionByZero):
        arith(gf3, 1, 0, 'div')
    with pytest.raises(ZeroDivisionError):
        arith(gf3, 2, 0, 'div')


def test_unknown_operation(gf3):
    with pytest.raises(ValueError):
        arith(gf3, 1, 1, 'pow')


def test_inverses_exhaustive():
    for field in (Field(2), Field(3), Field(2, 2), Field(5), Field(3, 2)):
        for a in range(1, field.q):
            assert arith(field, a, arith(field, 1, a, 'div'), 'mul') == 1


def test_frobenius(gf4):
    sigma = FieldAutomorphism(gf4, 1)
    assert [frobenius_apply(sigma, x) for x in gf4.elements()] == [0, 1, 3, 2]
    assert sigma.order == 2
    assert sigma.inverse().j == 1
    assert FieldAutomorphism(gf4).is_identity


def test_frobenius_is_multiplicative():
    sigma = FieldAutomorphism(gf9, 1)
    for a in gf9.elements():
        for b in gf9.elements():
            assert sigma(arith(gf9, a, b, 'mul')) == arith(gf9, sigma(a), sigma(b), 'mul')
            assert sigma(arith(gf9, a, b, 'add')) == arith(gf9, sigma(a), sigma(b), 'add')


def test_automorphism_group_sizes():
    assert len(automorphism_group(Field(5))) == 1
    assert len(automorphism_group(Field(2, 3))) == 3

    with pytest.raises(ValueError):
        FieldAutomorphism(Field(5), 1)


@given(a=elements9, b=elements9, c=elements9)
@settings(max_examples=100, deadline=None)
def test_field_axioms(a, b, c):
    assert arith(gf9, arith(gf9, a, b, 'add'), c, 'add') == arith(
        gf9, a, arith(gf9, b, c, 'add'), 'add'
    )
    assert arith(gf9, arith(gf9, a, b, 'mul'), c, 'mul') == arith(
        gf9, a, arith(gf9, b, c, 'mul'), 'mul'
    )
    assert arith(gf9, a, b, 'add') == arith(gf9, b, a, 'add')
    assert arith(gf9, a, b, 'mul') == arith(gf9, b, a, 'mul')
    assert arith(gf9, a, arith(gf9, b, c, 'add'), 'mul') == arith(
        gf9, arith(gf9, a, b, 'mul'), arith(gf9, a, c, 'mul'), 'add'
    )
    assert arith(gf9, arith(gf9, a, b, 'sub'), b, 'add') == a


SMALL_FIELDS = [Field(2), Field(3), Field(2, 2), Field(5), Field(7), Field(2, 3), Field(3, 2)]


@pytest.mark.parametrize('field', SMALL_FIELDS, ids=str)
def test_multiplicative_group_order(field):
    for a in range(1, field.q):
        power = 1
        for _ in range(field.q - 1):
            power = arith(field, power, a, 'mul')
        assert power == 1


@pytest.mark.parametrize('field', SMALL_FIELDS, ids=str)
def test_every_automorphism_exhaustive(field):
    for sigma in automorphism_group(field):
        for a in field.elements():
            for b in field.elements():
                assert sigma(arith(field, a, b, 'add')) == arith(field, sigma(a), sigma(b), 'add')
                assert sigma(arith(field, a, b, 'mul')) == arith(field, sigma(a), sigma(b), 'mul')
        assert [sigma(c) for c in range(field.p)] == list(range(field.p))
        assert sorted(sigma(c) for c in field.elements()) == list(field.elements())

    assert [sigma.j for sigma in automorphism_group(field)] == list(range(field.k))


# vim:sw=4:ts=4:et:
