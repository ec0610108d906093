"""Exception types shared across the package."""


class PisanoError(Exception):
    """Base class for every error raised by pisanokit."""


class ModulusMismatch(PisanoError, ValueError):
    """Operands live in rings with different moduli."""


class NotAUnit(PisanoError, ArithmeticError):
    """An element has no multiplicative inverse.

    ``gcd`` is the nontrivial common divisor with the modulus that blocked
    the inversion (for the extension ring, the gcd of the norm).
    """

    def __init__(self, value, modulus, gcd):
        self.value = value
        self.modulus = modulus
        self.gcd = gcd
        super().__init__(f"{value} is not a unit mod {modulus} (gcd={gcd})")


class HypothesisViolated(PisanoError):
    """5 is not a unit modulo n, so the root method does not apply."""

    def __init__(self, n):
        self.n = n
        super().__init__(f"5 is not a unit mod {n} (gcd(n, 5) = 5)")


class IncompleteFactorization(PisanoError):
    """Pollard rho hit its iteration cap before fully splitting the input."""

    def __init__(self, m, partial, cofactor):
        self.m = m
        self.partial = partial
        self.cofactor = cofactor
        super().__init__(f"could not factor {cofactor} (from {m})")


class NotAnExponentMultiple(PisanoError):
    """The supplied multiple does not annihilate the element."""


class InternalInconsistency(PisanoError):
    """A computed quantity contradicts an identity that must hold."""


class CapExceeded(PisanoError):
    """Brute-force search ran past its iteration cap."""

    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"no period found mod {n} within {cap} steps")
