"""Exact arithmetic in Z/nZ."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ModulusMismatch, NotAUnit


def check_modulus(n: int) -> int:
    """Validate a modulus; Z/1Z is the null ring and is rejected."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"modulus must be an int, got {type(n).__name__}")
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    return n


@dataclass(frozen=True, slots=True)
class Residue:
    """The class of ``value`` in Z/``modulus``Z, stored in [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> Residue:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"mod {self.modulus} and mod {other.modulus} do not mix"
                )
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Residue:
        if k < 0:
            return self.inverse() ** -k
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"

    def __str__(self):
        return f"{self.value} mod {self.modulus}"

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> Residue:
        """Multiplicative inverse; raises NotAUnit carrying gcd(value, n)."""
        g = gcd(self.value, self.modulus)
        if g != 1:
            raise NotAUnit(self.value, self.modulus, g)
        return Residue(pow(self.value, -1, self.modulus), self.modulus)


def add(a: Residue, b: Residue) -> Residue:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"mod {a.modulus} and mod {b.modulus} do not mix")
    return a + b


def mul(a: Residue, b: Residue) -> Residue:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"mod {a.modulus} and mod {b.modulus} do not mix")
    return a * b


def inverse(a: Residue) -> Residue:
    return a.inverse()


def power(a: Residue, k: int) -> Residue:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    return a**k
