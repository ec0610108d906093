import pytest
from hypothesis import given, strategies as st

from pisanokit import ModulusMismatch, NotAUnit, Residue
from pisanokit import residue as rmod

from oracles import order_by_powers


def test_add_examples():
    assert rmod.add(Residue(3, 7), Residue(5, 7)) == Residue(1, 7)
    assert rmod.add(Residue(0, 9), Residue(4, 9)) == Residue(4, 9)
    assert rmod.add(Residue(6, 11), Residue(5, 11)) == Residue(0, 11)


def test_mul_examples():
    # r*s = -1 for the roots 8, 4 of x^2 - x - 1 mod 11
    assert rmod.mul(Residue(8, 11), Residue(4, 11)) == Residue(10, 11)
    assert rmod.mul(Residue(1, 13), Residue(9, 13)) == Residue(9, 13)
    assert rmod.mul(Residue(0, 13), Residue(9, 13)) == Residue(0, 13)


def test_inverse_examples():
    assert rmod.inverse(Residue(2, 11)) == Residue(6, 11)
    assert rmod.inverse(Residue(8, 11)) == Residue(7, 11)
    with pytest.raises(NotAUnit) as exc:
        rmod.inverse(Residue(5, 10))
    assert exc.value.gcd == 5


def test_pow_examples():
    assert rmod.power(Residue(8, 11), 0) == Residue(1, 11)
    assert rmod.power(Residue(8, 11), 10) == Residue(1, 11)
    assert order_by_powers(8, 11) == 10
    assert rmod.power(Residue(2, 1000000007), 10) == Residue(1024, 1000000007)


def test_canonical_representative():
    assert Residue(-1, 7).value == 6
    assert Residue(15, 7) == Residue(1, 7)
    assert Residue(3, 7) == 10


@pytest.mark.parametrize("n", [0, 1, -3])
def test_null_ring_rejected(n):
    with pytest.raises(ValueError):
        Residue(0, n)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        rmod.add(Residue(1, 7), Residue(1, 11))
    with pytest.raises(ModulusMismatch):
        Residue(1, 7) * Residue(1, 11)


def test_immutable():
    x = Residue(3, 7)
    with pytest.raises(AttributeError):
        x.value = 4


moduli = st.integers(min_value=2, max_value=10**12)


@given(moduli, st.integers(), st.integers(), st.integers())
def test_ring_axioms(n, a, b, c):
    a, b, c = Residue(a, n), Residue(b, n), Residue(c, n)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == 0


@given(moduli, st.integers())
def test_unit_inverse(n, a):
    x = Residue(a, n)
    if x.is_unit():
        assert x * x.inverse() == 1
    else:
        with pytest.raises(NotAUnit):
            x.inverse()


@given(moduli, st.integers(), st.integers(0, 10**6), st.integers(0, 10**6))
def test_pow_additive_in_exponent(n, a, j, k):
    x = Residue(a, n)
    assert x ** (j + k) == x**j * x**k
