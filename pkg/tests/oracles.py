"""Independent reference computations.

Nothing here imports pisanokit: each helper is the naive definition the
library is checked against.
"""


def fib_pairs_period(n):
    """Period of (F_k, F_k+1) mod n by walking the sequence."""
    a, b, k = 0, 1 % n, 0
    while True:
        a, b = b, (a + b) % n
        k += 1
        if a == 0 and b == 1 % n:
            return k


def fib_list(count, n):
    out, a, b = [], 0, 1
    for _ in range(count):
        out.append(a % n)
        a, b = b, a + b
    return out


def fib_fast_doubling(k, n):
    """F_k mod n via F(2m) = F(m)(2F(m+1) - F(m)), F(2m+1) = F(m)^2 + F(m+1)^2."""
    def rec(m):
        if m == 0:
            return 0, 1
        a, b = rec(m >> 1)
        c = a * ((2 * b - a) % n) % n
        d = (a * a + b * b) % n
        return (d, (c + d) % n) if m & 1 else (c, d)
    return rec(k)[0]


def roots_of_E(n):
    return [x for x in range(n) if (x * x - x - 1) % n == 0]


def square_roots(a, n):
    return [y for y in range(n) if (y * y - a) % n == 0]


def order_by_powers(x, n):
    """Least k >= 1 with x^k = 1 mod n, by repeated multiplication."""
    y, k = x % n, 1
    while y != 1 % n:
        y = y * x % n
        k += 1
        if k > n:
            raise ValueError(f"{x} is not a unit mod {n}")
    return k


def trial_factor(m):
    out, d = {}, 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime_naive(m):
    return m >= 2 and all(m % d for d in range(2, int(m**0.5) + 1))


def poly_mul_mod(u, v, n):
    """(u0 + u1 x)(v0 + v1 x) reduced by x^2 - x - 1 and by n, via long division."""
    c = [0, 0, 0]
    for i, ui in enumerate(u):
        for j, vj in enumerate(v):
            c[i + j] += ui * vj
    # x^2 -> x + 1
    top = c.pop()
    c[0] += top
    c[1] += top
    return (c[0] % n, c[1] % n)


def quad_order(a, b, n, limit=None):
    """Order of a + b x in (Z/nZ)[x]/(x^2 - x - 1) by repeated multiplication."""
    limit = limit or 2 * n * n + 2
    cur, k = (a % n, b % n), 1
    while cur != (1 % n, 0):
        cur = poly_mul_mod(cur, (a, b), n)
        k += 1
        if k > limit:
            raise ValueError("not a unit")
    return k


def mat_mul(A, B, n):
    return [[sum(A[i][t] * B[t][j] for t in range(2)) % n for j in range(2)] for i in range(2)]


def mat_pow_naive(A, k, n):
    R = [[1 % n, 0], [0, 1 % n]]
    for _ in range(k):
        R = mat_mul(R, A, n)
    return R
