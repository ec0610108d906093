"""2x2 matrices over Z/nZ."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ModulusMismatch, NotAUnit
from .residue import Residue, check_modulus


@dataclass(frozen=True, slots=True)
class Mat2:
    """[[m00, m01], [m10, m11]] with entries reduced mod ``modulus``."""

    m00: int
    m01: int
    m10: int
    m11: int
    modulus: int

    def __post_init__(self):
        n = check_modulus(self.modulus)
        object.__setattr__(self, "m00", self.m00 % n)
        object.__setattr__(self, "m01", self.m01 % n)
        object.__setattr__(self, "m10", self.m10 % n)
        object.__setattr__(self, "m11", self.m11 % n)

    @classmethod
    def identity(cls, n: int) -> Mat2:
        return cls(1, 0, 0, 1, n)

    @classmethod
    def diag(cls, x: Residue, y: Residue) -> Mat2:
        _same(x.modulus, y.modulus)
        return cls(x.value, 0, 0, y.value, x.modulus)

    @classmethod
    def from_rows(cls, rows, n: int) -> Mat2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d), n)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def entry(self, i: int, j: int) -> Residue:
        return Residue(self.rows()[i][j], self.modulus)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        n = _same(self.modulus, other.modulus)
        a, b, c, d = self.m00, self.m01, self.m10, self.m11
        e, f, g, h = other.m00, other.m01, other.m10, other.m11
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, n)

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return self.inverse() ** -k
        result = Mat2.identity(self.modulus)
        # left-to-right: one squaring per bit, one multiply per set bit
        for bit in bin(k)[2:]:
            result = result * result
            if bit == "1":
                result = result * self
        return result

    def det(self) -> Residue:
        return Residue(self.m00 * self.m11 - self.m01 * self.m10, self.modulus)

    def is_identity(self) -> bool:
        return self.m00 == 1 % self.modulus and self.m11 == 1 % self.modulus and not (
            self.m01 or self.m10
        )

    def inverse(self) -> Mat2:
        """Adjugate divided by the determinant."""
        d = self.det().value
        g = gcd(d, self.modulus)
        if g != 1:
            raise NotAUnit(f"det={d}", self.modulus, g)
        inv = pow(d, -1, self.modulus)
        return Mat2(
            self.m11 * inv, -self.m01 * inv, -self.m10 * inv, self.m00 * inv,
            self.modulus,
        )

    def __str__(self):
        return f"[[{self.m00}, {self.m01}], [{self.m10}, {self.m11}]] mod {self.modulus}"


def _same(n1: int, n2: int) -> int:
    if n1 != n2:
        raise ModulusMismatch(f"mod {n1} and mod {n2} do not mix")
    return n1


def fibonacci_matrix(n: int) -> Mat2:
    """Q = [[0, 1], [1, 1]]; Q^k = [[F(k-1), F(k)], [F(k), F(k+1)]]."""
    return Mat2(0, 1, 1, 1, n)


def change_of_basis(r: Residue, s: Residue) -> Mat2:
    """P = [[1, 1], [r, s]]. Does not check that r, s solve x^2 = x + 1."""
    n = _same(r.modulus, s.modulus)
    return Mat2(1, 1, r.value, s.value, n)


def mul(A: Mat2, B: Mat2) -> Mat2:
    return A * B


def power(A: Mat2, k: int) -> Mat2:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    return A**k


def inverse(A: Mat2) -> Mat2:
    return A.inverse()


def det(A: Mat2) -> Residue:
    return A.det()
