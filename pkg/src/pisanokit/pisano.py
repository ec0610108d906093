"""Pisano periods from the roots of x^2 - x - 1.

For a prime power q = p^e coprime to 5 the two roots r, s = 1 - r of
x^2 = x + 1 live either in Z/qZ or, failing that, in the extension
(Z/qZ)[w] with r = w and s = sigma(w). Since r and s diagonalize the
Fibonacci matrix Q, the local period is lcm(ord r, ord s); the period mod n
is the lcm of the local periods. Moduli divisible by 5 fall outside that
argument and their 5-part is computed directly from the recurrence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Union

from .errors import CapExceeded, HypothesisViolated, InternalInconsistency, NotAnExponentMultiple
from .linalg2 import Mat2, change_of_basis, fibonacci_matrix
from .numtheory import (
    Factorization,
    OrderResult,
    TRIAL_BOUND,
    crt,
    factor,
    factor_product,
    is_prime,
    lcm,
    lcm_all,
    order_from_multiple,
    small_primes,
    sqrt_lift_prime_power,
)
from .quadext import QuadElem
from .residue import Residue, check_modulus

Elem = Union[Residue, QuadElem]

ITERATIVE_LIMIT = 10**7
# 5-parts up to this size go through the recurrence directly
BRUTE_FIVE_LIMIT = 10**5


class Location(str, enum.Enum):
    BASE = "base"
    EXTENSION = "extension"


class CaseTag(str, enum.Enum):
    CHAR_TWO = "CharTwo"
    ODD_DOUBLE = "OddDouble"
    BOTH_EVEN = "BothEven"
    EXTENSION_ONLY = "ExtensionOnly"
    FALLBACK = "Fallback"


class Method(str, enum.Enum):
    ROOTS = "Roots"
    MATRIX_ORDER = "MatrixOrder"
    BRUTE_FORCE = "BruteForce"


class FibMethod(str, enum.Enum):
    ITERATIVE = "iterative"
    MATRIX = "matrix"
    BINET = "binet"


def elem_to_json(x: Elem | None):
    if x is None:
        return None
    if isinstance(x, QuadElem):
        return [x.a, x.b]
    return x.value


def elem_to_text(x: Elem) -> str:
    if isinstance(x, QuadElem):
        return f"{x.a} + {x.b}*w"
    return str(x.value)


@dataclass(frozen=True)
class RootPair:
    location: Location
    r: Elem
    s: Elem

    @property
    def modulus(self) -> int:
        return self.r.modulus

    @property
    def sqrt5(self) -> Elem:
        return self.r - self.s

    def one(self) -> Elem:
        if self.location is Location.BASE:
            return Residue(1, self.modulus)
        return QuadElem.one(self.modulus)

    def check(self) -> list[str]:
        """Names of the violated root identities (empty when all hold)."""
        r, s = self.r, self.s
        bad = []
        if r * r != r + 1:
            bad.append("r^2 = r + 1")
        if s * s != s + 1:
            bad.append("s^2 = s + 1")
        if r + s != 1:
            bad.append("r + s = 1")
        if r * s != -1:
            bad.append("r*s = -1")
        if self.sqrt5 * self.sqrt5 != 5:
            bad.append("(r - s)^2 = 5")
        return bad


def _prime_power(q: int) -> tuple[int, int]:
    f = factor(q)
    if not f.is_prime_power():
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


def solve_E(q: int, validate: bool = True) -> RootPair:
    """Roots of x^2 - x - 1 modulo the prime power ``q``.

    r = (1 + y)/2 with y the canonical square root of 5 when one exists and
    2 is invertible; otherwise r = w, s = 1 - w in the extension ring.
    """
    check_modulus(q)
    if gcd(q, 5) != 1:
        raise HypothesisViolated(q)
    p, e = _prime_power(q)
    y = None if p == 2 else sqrt_lift_prime_power(5, p, e)
    if y is None:
        w = QuadElem.omega(q)
        pair = RootPair(Location.EXTENSION, w, w.sigma())
    else:
        r = (1 + y) * Residue(2, q).inverse()
        pair = RootPair(Location.BASE, r, 1 - r)
    bad = pair.check() if validate else []
    if bad:
        raise InternalInconsistency(f"roots mod {q} violate {', '.join(bad)}")
    return pair


def unit_group_multiple(p: int, e: int, location: Location) -> Factorization:
    """An exponent killing every unit where the roots live.

    phi(p^e) for the base ring, (p^2 - 1) p^(2(e-1)) for the extension.
    """
    if location is Location.BASE:
        return factor(p - 1) * Factorization.prime_power(p, e - 1)
    return factor_product(p - 1, p + 1) * Factorization.prime_power(p, 2 * (e - 1))


def element_order(x: Elem, multiple: Factorization, label: str = "") -> OrderResult:
    return order_from_multiple(
        lambda k: x**k, multiple.n, factorization=multiple, element=label or str(x)
    )


def root_orders(pair: RootPair, p: int, e: int) -> tuple[int, int]:
    multiple = unit_group_multiple(p, e, pair.location)
    ord_r = element_order(pair.r, multiple, "r").order
    ord_s = element_order(pair.s, multiple, "s").order
    return ord_r, ord_s


def classify(pair: RootPair, ord_r: int, ord_s: int) -> CaseTag:
    """Which branch of the root-order trichotomy the pair falls into."""
    if pair.modulus == 2:
        if ord_r == ord_s == 3:
            return CaseTag.CHAR_TWO
        raise InternalInconsistency(f"char 2 orders {ord_r}, {ord_s} != 3")
    if pair.location is Location.EXTENSION:
        if ord_r == ord_s and ord_r % 2 == 0:
            return CaseTag.EXTENSION_ONLY
        raise InternalInconsistency(
            f"extension orders mod {pair.modulus}: {ord_r}, {ord_s} not equal and even"
        )
    odd_r, odd_s = ord_r % 2, ord_s % 2
    if odd_r != odd_s:
        odd, even = (ord_r, ord_s) if odd_r else (ord_s, ord_r)
        if even == 2 * odd:
            return CaseTag.ODD_DOUBLE
    elif not odd_r and ord_r == ord_s:
        return CaseTag.BOTH_EVEN
    raise InternalInconsistency(
        f"orders {ord_r}, {ord_s} mod {pair.modulus} match no case"
    )


def matrix_multiple(p: int, e: int) -> Factorization:
    """An exponent killing Q mod p^e, derived without the roots.

    ord(Q mod p) divides p - 1 or 2(p + 1) (3 for p = 2, 20 for p = 5), and
    lifting to p^e multiplies the order by at most p^(e-1).
    """
    if p == 5:
        base = Factorization(20, {2: 2, 5: 1})
    else:
        base = factor(p - 1).lcm(Factorization(2, {2: 1}) * factor(p + 1))
    return base * Factorization.prime_power(p, e - 1)


def is_annihilated(n: int, k: int) -> bool:
    return (fibonacci_matrix(n) ** k).is_identity()


def matrix_order(n: int, multiple: Factorization | None = None) -> OrderResult:
    """ord(Q mod n) from an exponent multiple; falls back to the recurrence."""
    check_modulus(n)
    if multiple is None:
        multiple = Factorization(1)
        for p, e in factor(n).items():
            multiple = multiple.lcm(matrix_multiple(p, e))
    Q = fibonacci_matrix(n)
    try:
        return order_from_multiple(
            lambda k: Q**k, multiple.n, factorization=multiple,
            element=f"Q mod {n}", one=Mat2.identity(n),
        )
    except NotAnExponentMultiple:
        k = pisano_brute(n)
        return OrderResult(f"Q mod {n}", k, k)


def pisano_brute(n: int, cap: int | None = None) -> int:
    """Smallest k >= 1 with (F_k, F_k+1) = (0, 1) mod n, by iteration."""
    check_modulus(n)
    if cap is None:
        cap = 6 * n
    a, b = 0, 1
    for k in range(1, cap + 1):
        a, b = b, (a + b) % n
        if a == 0 and b == 1:
            return k
    raise CapExceeded(n, cap)


@dataclass(frozen=True)
class LocalPeriod:
    prime: int
    exponent: int
    period: int
    case: CaseTag
    method: Method
    pair: RootPair | None = None
    ord_r: int | None = None
    ord_s: int | None = None

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "exponent": self.exponent,
            "local_period": self.period,
            "case": self.case.value,
            "ord_r": self.ord_r,
            "ord_s": self.ord_s,
            "root_location": self.pair.location.value if self.pair else None,
            "r": elem_to_json(self.pair.r) if self.pair else None,
            "s": elem_to_json(self.pair.s) if self.pair else None,
        }


@lru_cache(maxsize=4096)
def local_period(p: int, e: int = 1) -> LocalPeriod:
    """Period mod p^e from root orders (e = 1) or a lifted matrix order."""
    if p == 5:
        raise HypothesisViolated(p**e)
    q = p**e
    pair = solve_E(q)
    ord_r, ord_s = root_orders(pair, p, e)
    case = classify(pair, ord_r, ord_s)
    from_roots = lcm(ord_r, ord_s)
    if e == 1:
        period = from_roots
    else:
        base = local_period(p, 1).period
        candidate = factor(base) * Factorization.prime_power(p, e - 1)
        if is_annihilated(q, candidate.n):
            period = matrix_order(q, candidate).order
        else:
            period = pisano_brute(q)
        if period != from_roots:
            raise InternalInconsistency(
                f"ord(Q mod {q}) = {period} but lcm(ord r, ord s) = {from_roots}"
            )
    return LocalPeriod(p, e, period, case, Method.ROOTS, pair, ord_r, ord_s)


def fallback_period(p: int, e: int, cap: int | None = None) -> LocalPeriod:
    """Period mod p^e without the roots; used for the 5-part."""
    q = p**e
    if q <= BRUTE_FIVE_LIMIT:
        return LocalPeriod(p, e, pisano_brute(q, cap), CaseTag.FALLBACK, Method.BRUTE_FORCE)
    period = matrix_order(q, matrix_multiple(p, e)).order
    return LocalPeriod(p, e, period, CaseTag.FALLBACK, Method.MATRIX_ORDER)


@dataclass
class PeriodCertificate:
    n: int
    period: int
    method: Method
    verified: bool = False
    components: list[LocalPeriod] = field(default_factory=list)

    @property
    def fallback(self) -> bool:
        return any(c.case is CaseTag.FALLBACK for c in self.components)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "period": self.period,
            "method": self.method.value,
            "verified": self.verified,
            "components": [c.to_json() for c in self.components],
        }


def verify_period(n: int, period: int) -> bool:
    """Q^period = I and Q^(period/q) != I for every prime q | period."""
    if not is_annihilated(n, period):
        return False
    return all(not is_annihilated(n, period // q) for q in factor(period).primes())


def pisano_period(n: int, method: Method | str = "auto", cap: int | None = None) -> PeriodCertificate:
    """Certified Pisano period of ``n``.

    ``method`` is ``auto`` (roots, with the 5-part handled directly),
    ``roots`` (refuses moduli divisible by 5), ``matrix`` or ``brute``.
    """
    check_modulus(n)
    method = str(getattr(method, "value", method)).lower()
    if method in ("brute", "bruteforce"):
        cert = PeriodCertificate(n, pisano_brute(n, cap), Method.BRUTE_FORCE)
    elif method in ("matrix", "matrixorder"):
        cert = PeriodCertificate(n, matrix_order(n).order, Method.MATRIX_ORDER)
    elif method in ("auto", "roots"):
        if method == "roots" and gcd(n, 5) != 1:
            raise HypothesisViolated(n)
        components = []
        for p, e in factor(n).items():
            if p == 5:
                components.append(fallback_period(p, e, cap))
            else:
                components.append(local_period(p, e))
        period = lcm_all(c.period for c in components)
        used = {c.method for c in components}
        if Method.BRUTE_FORCE in used:
            overall = Method.BRUTE_FORCE
        elif Method.MATRIX_ORDER in used:
            overall = Method.MATRIX_ORDER
        else:
            overall = Method.ROOTS
        cert = PeriodCertificate(n, period, overall, components=components)
    else:
        raise ValueError(f"unknown method {method!r}")
    cert.verified = verify_period(n, cert.period)
    return cert


def _fib_iterative(k: int, n: int) -> int:
    a, b = 0, 1 % n
    for _ in range(k):
        a, b = b, (a + b) % n
    return a


def binet(k: int, pair: RootPair) -> Elem:
    """(r^k - s^k) / (r - s) in the ring where the roots live."""
    return (pair.r**k - pair.s**k) / pair.sqrt5


def _fib_binet(k: int, n: int) -> int:
    if gcd(n, 5) != 1:
        raise HypothesisViolated(n)
    values, moduli = [], []
    for q in factor(n).prime_powers():
        val = binet(k, solve_E(q))
        if isinstance(val, QuadElem):
            if val.b != 0:
                raise InternalInconsistency(f"Binet left the base ring mod {q}: {val}")
            val = val.base
        values.append(val.value)
        moduli.append(q)
    return crt(values, moduli)


def fib(k: int, n: int, method: FibMethod | str = FibMethod.MATRIX) -> Residue:
    """F_k mod n by iteration, matrix power or the Binet formula."""
    check_modulus(n)
    if k < 0:
        raise ValueError("k must be nonnegative")
    method = FibMethod(getattr(method, "value", method))
    if method is FibMethod.ITERATIVE:
        value = _fib_iterative(k, n)
    elif method is FibMethod.MATRIX:
        value = (fibonacci_matrix(n) ** k).m01
    else:
        value = _fib_binet(k, n)
    return Residue(value, n)


@dataclass
class ItemResult:
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


@dataclass
class Lemma1Report:
    n: int
    location: Location
    items: dict[int, ItemResult]
    ord_r: int | None = None
    ord_s: int | None = None
    case: CaseTag | None = None

    @property
    def passed(self) -> bool:
        return all(item.status != "fail" for item in self.items.values())

    def failures(self) -> list[int]:
        return [i for i, item in self.items.items() if item.status == "fail"]


def _item(ok: bool, detail: str = "") -> ItemResult:
    return ItemResult("pass" if ok else "fail", "" if ok else detail)


def verify_lemma1(q: int, binet_terms: int = 64) -> Lemma1Report:
    """Check the root identities, Binet and diagonalization mod a prime power.

    Never raises on a failed identity; failures are reported per item.
    """
    pair = solve_E(q, validate=False)
    p, e = _prime_power(q)
    r, s = pair.r, pair.s
    one = pair.one()
    items: dict[int, ItemResult] = {}

    items[1] = _item(s == 1 - r and r * r == r + 1 and s * s == s + 1, "s = 1 - r is not a root")
    items[2] = _item(r * (-s) == one and s * (-r) == one, "r*(-s) != 1")
    d = pair.sqrt5
    items[3] = _item(d * d == 5 and d.is_unit(), "(r - s)^2 != 5 or r - s not a unit")

    fibs = [_fib_iterative(k, q) for k in range(binet_terms + 1)]
    try:
        ok = all(binet(k, pair) == fibs[k] for k in range(binet_terms + 1))
        items[4] = _item(ok, "Binet disagrees with iteration")
    except ArithmeticError as exc:
        items[4] = ItemResult("fail", str(exc))

    if pair.location is Location.BASE:
        P = change_of_basis(r, s)
        Q = fibonacci_matrix(q)
        D = Mat2.diag(r, s)
        det_ok = P.det() == s - r and P.det().is_unit()
        if det_ok:
            Pinv = P.inverse()
            k = (s - r).inverse().value
            expected = Mat2(k * s.value, -k, -k * r.value, k, q)
            items[5] = _item(Pinv == expected and (P * Pinv).is_identity(), "inverse formula fails")
            items[6] = _item(Q * P == P * D and Pinv * Q * P == D, "P^-1 Q P != diag(r, s)")
        else:
            items[5] = ItemResult("fail", "det(P) is not s - r or not a unit")
            items[6] = ItemResult("skip", "P not invertible")
    else:
        items[5] = ItemResult("skip", "roots only in the extension")
        items[6] = ItemResult("skip", "roots only in the extension")

    ord_r = ord_s = case = None
    try:
        ord_r, ord_s = root_orders(pair, p, e)
        ord_q = matrix_order(q, matrix_multiple(p, e)).order
        items[7] = _item(lcm(ord_r, ord_s) == ord_q, f"lcm({ord_r}, {ord_s}) != ord(Q) = {ord_q}")
        case = classify(pair, ord_r, ord_s)
    except (ArithmeticError, NotAnExponentMultiple) as exc:
        items[7] = ItemResult("fail", str(exc))
    except InternalInconsistency:
        pass
    return Lemma1Report(q, pair.location, items, ord_r, ord_s, case)


@dataclass
class SweepRow:
    n: int
    period: int
    brute: int
    verified: bool
    cases: list[str]
    lemma_failures: list[str]

    @property
    def ok(self) -> bool:
        return self.period == self.brute and self.verified and not self.lemma_failures


def sweep(max_n: int) -> list[SweepRow]:
    """Compare root-method periods with brute force for 2 <= n <= max_n."""
    rows = []
    for n in range(2, max_n + 1):
        try:
            cert = pisano_period(n)
        except InternalInconsistency as exc:
            rows.append(SweepRow(n, 0, pisano_brute(n), False, [], [str(exc)]))
            continue
        failures = []
        for c in cert.components:
            if c.case is CaseTag.FALLBACK:
                continue
            report = verify_lemma1(c.modulus)
            failures += [f"{c.modulus}: item {i}" for i in report.failures()]
            if report.case is not c.case:
                failures.append(f"{c.modulus}: case {report.case} != {c.case}")
        rows.append(
            SweepRow(n, cert.period, pisano_brute(n), cert.verified,
                     [c.case.value for c in cert.components], failures)
        )
    return rows


def primes_up_to(limit: int) -> list[int]:
    if limit <= TRIAL_BOUND:
        return [p for p in small_primes() if p <= limit]
    return [p for p in range(2, limit + 1) if is_prime(p)]


def classify_primes(limit: int) -> list[LocalPeriod]:
    return [local_period(p, 1) for p in primes_up_to(limit) if p != 5]
