"""Arithmetic in (Z/nZ)[x]/(x^2 - x - 1).

Elements are written a + b*w where w is the class of x, so w^2 = w + 1.
The map sigma: x -> 1 - x fixes x^2 - x - 1, hence descends to the quotient,
where it swaps the two roots w and 1 - w.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ModulusMismatch, NotAUnit
from .residue import Residue, check_modulus


@dataclass(frozen=True, slots=True)
class QuadElem:
    a: int
    b: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "a", self.a % self.modulus)
        object.__setattr__(self, "b", self.b % self.modulus)

    @classmethod
    def omega(cls, n: int) -> QuadElem:
        return cls(0, 1, n)

    @classmethod
    def one(cls, n: int) -> QuadElem:
        return cls(1, 0, n)

    @classmethod
    def zero(cls, n: int) -> QuadElem:
        return cls(0, 0, n)

    @property
    def base(self) -> Residue:
        return Residue(self.a, self.modulus)

    @property
    def coeff(self) -> Residue:
        """The w-coefficient."""
        return Residue(self.b, self.modulus)

    def is_base(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"mod {self.modulus} and mod {other.modulus} do not mix"
                )
            return other
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"mod {self.modulus} and mod {other.modulus} do not mix"
                )
            return QuadElem(other.value, 0, self.modulus)
        if isinstance(other, int):
            return QuadElem(other, 0, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.a + other.a, self.b + other.b, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.a - other.a, self.b - other.b, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(w + 1)
        return QuadElem(a * c + bd, a * d + b * c + bd, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QuadElem:
        if k < 0:
            return self.inverse() ** -k
        n = self.modulus
        result = QuadElem(1, 0, n)
        for bit in bin(k)[2:]:
            result = result * result
            if bit == "1":
                result = result * self
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return (self.a, self.b, self.modulus) == (other.a, other.b, other.modulus)
        if isinstance(other, Residue):
            return self.b == 0 and self.a == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.modulus))

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, {self.modulus})"

    def __str__(self):
        return f"{self.a} + {self.b}*w"

    def sigma(self) -> QuadElem:
        # a + b(1 - w)
        return QuadElem(self.a + self.b, -self.b, self.modulus)

    def norm(self) -> Residue:
        """u * sigma(u), which always lands in the base ring."""
        a, b = self.a, self.b
        return Residue(a * a + a * b - b * b, self.modulus)

    def is_unit(self) -> bool:
        return self.norm().is_unit()

    def inverse(self) -> QuadElem:
        nm = self.norm()
        g = gcd(nm.value, self.modulus)
        if g != 1:
            raise NotAUnit(str(self), self.modulus, g)
        inv = pow(nm.value, -1, self.modulus)
        s = self.sigma()
        return QuadElem(s.a * inv, s.b * inv, self.modulus)


def embed(x: Residue) -> QuadElem:
    return QuadElem(x.value, 0, x.modulus)


def mul(u: QuadElem, v: QuadElem) -> QuadElem:
    if u.modulus != v.modulus:
        raise ModulusMismatch(f"mod {u.modulus} and mod {v.modulus} do not mix")
    return u * v


def sigma(u: QuadElem) -> QuadElem:
    return u.sigma()


def norm(u: QuadElem) -> Residue:
    return u.norm()


def inverse(u: QuadElem) -> QuadElem:
    return u.inverse()


def power(u: QuadElem, k: int) -> QuadElem:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    return u**k
