"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields F_p.

Rationals are `fractions.Fraction`, which is already canonical (positive
denominator, fully reduced, zero is 0/1).  Prime-field values are plain ints
in [0, p) with the modulus carried by a `FieldTag` context; the thin
`PrimeFieldElement` wrapper is available where a self-describing element is
more convenient than a (value, context) pair.

All values are immutable and safe to share between threads.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, DivisionByZero, FormatError

Rational = Fraction

# Moduli are capped below 2^62 so a product of two reduced values stays
# below 2^124; Python ints at that size still use fast fixed paths.
PRIME_MODULUS_CAP = 1 << 62

# Fixed certification primes: the Mersenne prime 2^61 - 1 and the next two
# primes above 2^61.  Override with BRLAB_PRIMES="p1,p2,..." when needed.
DEFAULT_CERTIFICATION_PRIMES = (
    2305843009213693951,
    2305843009213693967,
    2305843009213693973,
)

# Witnesses making Miller-Rabin deterministic for all n < 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for n < 2^64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def certification_primes() -> tuple[int, ...]:
    """Active certification prime list: BRLAB_PRIMES override, else defaults."""
    raw = os.environ.get("BRLAB_PRIMES")
    if raw is None:
        return DEFAULT_CERTIFICATION_PRIMES
    try:
        primes = tuple(int(tok) for tok in raw.replace(",", " ").split())
    except ValueError as exc:
        raise BadPrime(f"BRLAB_PRIMES is not a list of integers: {raw!r}") from exc
    if not primes:
        raise BadPrime("BRLAB_PRIMES is set but empty")
    for p in primes:
        if not (2 <= p < PRIME_MODULUS_CAP):
            raise BadPrime(f"BRLAB_PRIMES entry {p} outside [2, 2^62)")
        if not is_prime(p):
            raise BadPrime(f"BRLAB_PRIMES entry {p} is not prime")
    return primes


def normalize(n: int, d: int) -> Fraction:
    """Canonical rational n/d: reduced, positive denominator, zero is 0/1."""
    if d == 0:
        raise DivisionByZero("zero denominator")
    return Fraction(n, d)


def format_rational(q: Fraction | int) -> str:
    """Serialize as "num/den", with the denominator omitted when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise DivisionByZero(f"zero denominator in {s!r}") from exc
    except ValueError as exc:
        raise FormatError(f"bad rational literal {s!r}") from exc


@dataclass(frozen=True)
class FieldTag:
    """Field of computation: the rationals ("Q") or F_p for a checked prime.

    Carries the arithmetic on raw values (Fraction for Q, int in [0, p) for
    F_p) so bulk code can work with unwrapped scalars.
    """

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "Q":
            if self.p is not None:
                raise BadPrime("the rationals carry no modulus")
        elif self.kind == "Fp":
            p = self.p
            if p is None or not (2 <= p < PRIME_MODULUS_CAP):
                raise BadPrime(f"modulus {p} outside [2, 2^62)")
            if not is_prime(p):
                raise BadPrime(f"modulus {p} is not prime")
        else:
            raise BadPrime(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldTag":
        return FieldTag("Q")

    @staticmethod
    def prime_field(p: int) -> "FieldTag":
        return FieldTag("Fp", p)

    @staticmethod
    def from_string(s: str) -> "FieldTag":
        """Parse "Q" or "Fp:<p>"."""
        if s == "Q":
            return FieldTag.rationals()
        if s.startswith("Fp:"):
            try:
                return FieldTag.prime_field(int(s[3:]))
            except ValueError as exc:
                raise BadPrime(f"bad field string {s!r}") from exc
        raise BadPrime(f"bad field string {s!r}")

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @property
    def is_q(self) -> bool:
        return self.kind == "Q"

    # -- arithmetic on raw values --------------------------------------

    def zero(self):
        return Fraction(0) if self.is_q else 0

    def one(self):
        return Fraction(1) if self.is_q else 1

    def add(self, x, y):
        return x + y if self.is_q else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.is_q else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.is_q else (x * y) % self.p

    def neg(self, x):
        return -x if self.is_q else (-x) % self.p

    def inv(self, x):
        if self.is_q:
            if x == 0:
                raise DivisionByZero("inverse of zero")
            return 1 / Fraction(x)
        x %= self.p
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return pow(x, -1, self.p)

    def coerce(self, v):
        """Bring an int or Fraction into this field's raw representation."""
        if self.is_q:
            return Fraction(v)
        if isinstance(v, Fraction):
            if v.denominator == 1:
                return v.numerator % self.p
            return self.from_fraction(v)
        return v % self.p

    def from_int(self, n: int):
        return Fraction(n) if self.is_q else n % self.p

    def from_fraction(self, q: Fraction):
        if self.is_q:
            return Fraction(q)
        den = q.denominator % self.p
        if den == 0:
            raise BadPrime(f"denominator {q.denominator} vanishes mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    # -- element serialization ("num/den" over Q, decimal over F_p) ----

    def serialize(self, x) -> str:
        if self.is_q:
            return format_rational(x)
        return str(x % self.p)

    def parse(self, s: str):
        if self.is_q:
            return parse_rational(s)
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise FormatError(f"bad F_{self.p} literal {s!r}") from exc


@dataclass(frozen=True)
class PrimeFieldElement:
    """Self-describing element of F_p; the value is reduced into [0, p)."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if not (2 <= self.p < PRIME_MODULUS_CAP) or not is_prime(self.p):
            raise BadPrime(f"modulus {self.p} is not a usable prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise BadPrime(f"mixed moduli {self.p} and {other.p}")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return PrimeFieldElement((self.value + self._coerce(other)) % self.p, self.p)

    def __sub__(self, other):
        return PrimeFieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._coerce(other) % self.p, self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.p, self.p)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = PrimeFieldElement(self._coerce(other), self.p)
        return self * o.inverse()

    def __str__(self) -> str:
        return str(self.value)


def field_inverse(x):
    """Multiplicative inverse of a Fraction, int, or PrimeFieldElement."""
    if isinstance(x, PrimeFieldElement):
        return x.inverse()
    if x == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / Fraction(x)
