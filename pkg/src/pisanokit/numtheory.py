"""Factorization, modular square roots and multiplicative orders."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import Any, Callable, Iterable

from .errors import IncompleteFactorization, NotAnExponentMultiple
from .residue import Residue

TRIAL_BOUND = 10**6
RHO_STEP_CAP = 10**7

# Bases 2..41 are a deterministic Miller-Rabin witness set below this bound.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64


@lru_cache(maxsize=1)
def small_primes(bound: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 64 seeded rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES)
    rng = random.Random(n)
    return all(
        _mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(_MR_RANDOM_ROUNDS)
    )


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``n``; ``factors`` maps prime -> exponent."""

    n: int
    factors: dict[int, int] = field(default_factory=dict)
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "factors", dict(sorted(self.factors.items())))

    def primes(self) -> list[int]:
        return list(self.factors)

    def items(self):
        return self.factors.items()

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors.items()]

    def product(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p**e
        return out

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def __mul__(self, other: Factorization) -> Factorization:
        merged = dict(self.factors)
        for p, e in other.items():
            merged[p] = merged.get(p, 0) + e
        return Factorization(self.n * other.n, merged, self.complete and other.complete)

    def lcm(self, other: Factorization) -> Factorization:
        merged = dict(self.factors)
        for p, e in other.items():
            merged[p] = max(merged.get(p, 0), e)
        out = Factorization(0, merged, self.complete and other.complete)
        object.__setattr__(out, "n", out.product())
        return out

    @classmethod
    def prime_power(cls, p: int, e: int) -> Factorization:
        return cls(p**e, {p: e} if e else {})

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors.items())


def _brent_rho(n: int, budget: list[int], seed: int) -> int | None:
    """One Brent-Pollard rho attempt; returns a nontrivial factor or None.

    ``budget`` is a single-item list holding the remaining step allowance.
    """
    rng = random.Random(seed)
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        budget[0] -= r
        if budget[0] <= 0 and g == 1:
            return None
        r *= 2
    if g == n:
        # the batched product overshot; walk the last block one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, out: dict[int, int], budget: list[int]) -> list[int]:
    """Fully split ``n`` into ``out``; return any composites left unsplit."""
    stack = [n]
    stuck = []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        attempt = 0
        d = None
        while d is None and budget[0] > 0:
            d = _brent_rho(m, budget, seed=m + attempt)
            attempt += 1
        if d is None:
            stuck.append(m)
        else:
            stack += [d, m // d]
    return stuck


def factor(m: int, strict: bool = True) -> Factorization:
    """Trial division by primes below 10^6, then Brent-Pollard rho.

    With ``strict`` (the default) a composite that survives the rho step cap
    raises IncompleteFactorization; otherwise it is left out and the result
    carries ``complete=False``.
    """
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    n = m
    out: dict[int, int] = {}
    if n > 1 and not is_prime(n):
        for p in small_primes():
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out[p] = e
                if is_prime(n):
                    break
    if n > 1:
        stuck = _split(n, out, [RHO_STEP_CAP])
        if stuck:
            partial = Factorization(m, out, complete=False)
            if strict:
                raise IncompleteFactorization(m, partial, stuck[0])
            return partial
    return Factorization(m, out)


def factor_product(*parts: int) -> Factorization:
    """Factor a product given as separate (easier) factors."""
    out = Factorization(1)
    for part in parts:
        out = out * factor(part)
    return out


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = lcm(out, v)
    return out


def crt(residues: list[int], moduli: list[int]) -> int:
    """Combine x = r_i mod m_i for pairwise coprime moduli."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        t = (r - x) * pow(m, -1, mi) % mi
        x += m * t
        m *= mi
    return x % m


def euler_criterion(a: int, p: int) -> int:
    """a^((p-1)/2) mod p, reported as 1, -1 or 0."""
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _canonical(y: int, n: int) -> int:
    y %= n
    return min(y, n - y) if y else 0


def sqrt_mod_prime(a, p: int) -> Residue | None:
    """Tonelli-Shanks. Returns the root y with y <= p - y, or None."""
    value = a.value if isinstance(a, Residue) else a
    if p == 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    value %= p
    if value == 0:
        raise ValueError("a must be a unit mod p")
    if euler_criterion(value, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return Residue(_canonical(pow(value, (p + 1) // 4, p), p), p)
    z = 2
    while euler_criterion(z, p) != -1:
        z += 1
    m, c, t, y = s, pow(z, q, p), pow(value, q, p), pow(value, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, y = t * c % p, y * b % p
    return Residue(_canonical(y, p), p)


def sqrt_lift_prime_power(a, p: int, e: int) -> Residue | None:
    """Square root of ``a`` mod p^e by Hensel lifting from mod p."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    value = a.value if isinstance(a, Residue) else a
    base = sqrt_mod_prime(value, p)
    if base is None:
        return None
    y, pk = base.value, p
    for _ in range(e - 1):
        pk *= p
        # y^2 = a mod pk/p; Newton step y <- y - (y^2 - a) / 2y
        y = (y - (y * y - value) * pow(2 * y, -1, pk)) % pk
    return Residue(_canonical(y, pk), pk)


@dataclass(frozen=True)
class OrderResult:
    element: str
    order: int
    exponent_multiple_used: int


def order_from_multiple(
    powfn: Callable[[int], Any],
    multiple: int,
    factorization: Factorization | None = None,
    element: str = "",
    one: Any = None,
) -> OrderResult:
    """Exact order of an element given any exponent that kills it.

    ``powfn(k)`` must return the k-th power of the element; ``one`` defaults
    to ``powfn(0)``. Each prime is divided out of the candidate for as long
    as the smaller exponent still gives the identity.
    """
    if multiple < 1:
        raise ValueError("multiple must be positive")
    if one is None:
        one = powfn(0)
    if powfn(multiple) != one:
        raise NotAnExponentMultiple(f"{element or 'element'}^{multiple} != 1")
    if factorization is None:
        factorization = factor(multiple)
    elif factorization.n != multiple:
        raise ValueError("factorization does not match multiple")
    if not factorization.complete:
        raise IncompleteFactorization(multiple, factorization, None)
    order = multiple
    for q in factorization.primes():
        while order % q == 0 and powfn(order // q) == one:
            order //= q
    return OrderResult(element, order, multiple)
