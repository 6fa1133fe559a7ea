"""Exact base fields: arbitrary-precision rationals and prime fields F_p.

Every condition the package decides is a rank or membership condition
defined over the prime field, so Q and F_p act as exact proxies for the
complex numbers.  F_p (default p = 101) is the sampling workhorse, Q the
audit field.

Scalars are stored raw (`Fraction` over Q, canonical `int` in [0, p) over
F_p); the field object carries the arithmetic.  This keeps matrices and
coefficient dicts lightweight and lets the linear algebra pick a numpy
backend for prime fields.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Union

from .errors import FieldMismatchError

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q with `Fraction` scalars."""

    kind = "rational"

    def normalize(self, x: Any) -> Fraction:
        return Fraction(x)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

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
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / Fraction(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def encode_coeff(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def decode_coeff(self, s) -> Fraction:
        if isinstance(s, str):
            return Fraction(s)
        if isinstance(s, int):
            return Fraction(s)
        raise ValueError(f"bad rational coefficient encoding: {s!r}")

    def to_json(self) -> dict:
        return {"kind": "rational"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")


class PrimeField:
    """The field F_p with canonical integer representatives in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def normalize(self, x: Any) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by p={self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def encode_coeff(self, a) -> int:
        return a % self.p

    def decode_coeff(self, s) -> int:
        if isinstance(s, int):
            v = s
        elif isinstance(s, str):
            v = int(s, 10)
        else:
            raise ValueError(f"bad prime-field coefficient encoding: {s!r}")
        if not 0 <= v < self.p:
            raise ValueError(f"coefficient {v} outside [0, {self.p})")
        return v

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatchError(f"mixed fields {a!r} and {b!r}")


def parse_field(spec: str) -> Field:
    """Parse a CLI field spec: ``rational``/``q`` or ``p:<prime>``."""
    s = spec.strip().lower()
    if s in ("rational", "q", "qq"):
        return QQ
    if s.startswith("p:"):
        return PrimeField(int(s[2:]))
    raise ValueError(f"cannot parse field spec {spec!r} (want 'rational' or 'p:<prime>')")


def field_from_json(d: dict) -> Field:
    kind = d.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(d["p"]))
    raise ValueError(f"unknown field encoding {d!r}")


def field_name(f: Field) -> str:
    return "rational" if f.kind == "rational" else f"p:{f.p}"
