"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Scalars are stored raw (``fractions.Fraction`` over Q, plain ``int`` residues
in ``[0, p)`` over F_p); every container (matrix, polynomial) carries a field
handle and refuses to mix backends.
"""
from __future__ import annotations

from fractions import Fraction

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers 64-bit)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


#: Default prime for F_p computations: the largest prime below 2^62.
DEFAULT_PRIME = (1 << 62) - 57
assert is_prime(DEFAULT_PRIME)


class BackendMismatch(TypeError):
    """Raised when scalars from different coefficient fields are combined."""


class Rationals:
    """The field Q with Fraction scalars (lowest terms, positive denominator)."""

    name = "q"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def scalar_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("field:q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field F_p; scalars are ints reduced into [0, p)."""

    characteristic: int

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/", 1)
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(x) % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def scalar_str(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field:fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_spec(spec: str):
    """Parse a field spec: "q" for the rationals, "fp:<prime>" or "fp" for F_p."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational", "rationals"):
        return QQ
    if spec == "fp":
        return PrimeField(DEFAULT_PRIME)
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r} (expected 'q' or 'fp:<prime>')")


def ensure_same_field(a, b):
    if a != b:
        raise BackendMismatch(f"mixed coefficient fields: {a!r} vs {b!r}")
    return a
