"""Field carriers the map checks run over.

A :class:`Field` bundles the arithmetic for one carrier so the checking code
is generic: exact rationals, real quadratic extensions Q(sqrt(d)), odd prime
fields, floating complex numbers under a tolerance, and the field of
univariate rational functions (the image of a transcendental under all
polynomial relations). Elements are plain values; the field object owns the
operations, so mixing carriers fails loudly instead of silently coercing.
"""

from __future__ import annotations

import cmath
import math
import random
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Iterator, TypeVar

from .exact import (
    Coefficient,
    DivisionByZero,
    ParseError,
    Polynomial,
    RationalFunction,
    format_rational_function,
    parse_rational,
    parse_rational_function,
)

T = TypeVar("T")


class FieldMismatch(ValueError):
    """Operands live in different fields (e.g. different sqrt(d) adjunctions)."""


# --- primality (deterministic Miller-Rabin for 64-bit range) ---------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def validate_d(d: Coefficient | Fraction) -> str | None:
    """Reason the rational d is unfit for adjoining sqrt(d), or None if fit.

    d must be nonzero and not a square in Q; a rational p/q in lowest terms
    is a square exactly when p*q is a perfect square.
    """
    d = Fraction(d)
    if d == 0:
        return "d must be nonzero"
    prod = d.numerator * d.denominator
    if prod > 0 and math.isqrt(prod) ** 2 == prod:
        return f"{d} is a perfect square in Q, so sqrt({d}) is rational"
    return None


@dataclass(frozen=True)
class QuadraticElement:
    """a + b*sqrt(d) with rational a, b and a fixed non-square rational d."""

    a: Fraction
    b: Fraction
    d: Fraction

    @staticmethod
    def of(a: Coefficient, b: Coefficient, d: Coefficient) -> "QuadraticElement":
        return QuadraticElement(Fraction(a), Fraction(b), Fraction(d))

    def _check(self, other: "QuadraticElement") -> None:
        if self.d != other.d:
            raise FieldMismatch(f"cannot mix sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._check(other)
        return QuadraticElement(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._check(other)
        return QuadraticElement(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "QuadraticElement":
        return QuadraticElement(-self.a, -self.b, self.d)

    def __mul__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._check(other)
        return QuadraticElement(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def inverse(self) -> "QuadraticElement":
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        n = self.norm()
        # norm is zero only when sqrt(d) is rational, which validate_d rules out
        return QuadraticElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._check(other)
        return self * other.inverse()

    def __str__(self) -> str:
        return format_quadratic(self)


class Field(ABC, Generic[T]):
    """Arithmetic bundle; all element manipulation goes through the field."""

    name: str

    @property
    @abstractmethod
    def zero(self) -> T: ...

    @property
    @abstractmethod
    def one(self) -> T: ...

    @abstractmethod
    def add(self, x: T, y: T) -> T: ...

    @abstractmethod
    def sub(self, x: T, y: T) -> T: ...

    @abstractmethod
    def mul(self, x: T, y: T) -> T: ...

    @abstractmethod
    def div(self, x: T, y: T) -> T: ...

    @abstractmethod
    def neg(self, x: T) -> T: ...

    @abstractmethod
    def from_int(self, n: int) -> T: ...

    @abstractmethod
    def random_element(self, rng: random.Random) -> T: ...

    def eq(self, x: T, y: T) -> bool:
        return x == y

    def is_zero(self, x: T) -> bool:
        return self.eq(x, self.zero)

    def format(self, x: T) -> str:
        return str(x)

    def random_pair(self, rng: random.Random) -> tuple[T, T]:
        """A pair with x != y, as the defining equation requires."""
        x = self.random_element(rng)
        while True:
            y = self.random_element(rng)
            if not self.eq(x, y):
                return x, y

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _random_fraction(rng: random.Random, span: int = 10**6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


class RationalField(Field[Fraction]):
    name = "Q"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def sub(self, x: Fraction, y: Fraction) -> Fraction:
        return x - y

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def div(self, x: Fraction, y: Fraction) -> Fraction:
        if y == 0:
            raise DivisionByZero("division by zero in Q")
        return x / y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def random_element(self, rng: random.Random) -> Fraction:
        return _random_fraction(rng)


class QuadraticField(Field[QuadraticElement]):
    """Q(sqrt(d)) for a nonzero rational d that is not a square in Q."""

    def __init__(self, d: Coefficient) -> None:
        d = Fraction(d)
        reason = validate_d(d)
        if reason is not None:
            raise ValueError(reason)
        self.d = d
        self.name = f"Q(sqrt({d}))"

    @property
    def zero(self) -> QuadraticElement:
        return QuadraticElement(Fraction(0), Fraction(0), self.d)

    @property
    def one(self) -> QuadraticElement:
        return QuadraticElement(Fraction(1), Fraction(0), self.d)

    @property
    def sqrt_d(self) -> QuadraticElement:
        return QuadraticElement(Fraction(0), Fraction(1), self.d)

    def element(self, a: Coefficient, b: Coefficient = 0) -> QuadraticElement:
        return QuadraticElement(Fraction(a), Fraction(b), self.d)

    def add(self, x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
        return x + y

    def sub(self, x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
        return x - y

    def mul(self, x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
        return x * y

    def div(self, x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
        return x / y

    def neg(self, x: QuadraticElement) -> QuadraticElement:
        return -x

    def from_int(self, n: int) -> QuadraticElement:
        return self.element(n)

    def conjugate(self, x: QuadraticElement) -> QuadraticElement:
        return x.conjugate()

    def random_element(self, rng: random.Random) -> QuadraticElement:
        return QuadraticElement(_random_fraction(rng), _random_fraction(rng), self.d)


class PrimeField(Field[int]):
    """Z/pZ for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p: int) -> None:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("p must be odd: x + y = x - y collapses mod 2")
        self.p = p
        self.name = f"F_{p}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def div(self, x: int, y: int) -> int:
        if y % self.p == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return x * pow(y, self.p - 2, self.p) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self) -> range:
        return range(self.p)

    def ordered_pairs(self) -> Iterator[tuple[int, int]]:
        """Canonical scan order: pairs with y < x first, then y > x."""
        for x in range(self.p):
            for y in range(x):
                yield x, y
        for x in range(self.p):
            for y in range(x + 1, self.p):
                yield x, y

    def format(self, x: int) -> str:
        return f"{x % self.p} mod {self.p}"


class ApproxComplexField(Field[complex]):
    """Complex floats compared under a mixed absolute/relative tolerance."""

    def __init__(self, tolerance: float = 1e-9) -> None:
        if tolerance <= 0:
            raise ValueError("tolerance must be positive")
        self.tolerance = tolerance
        self.name = "C(approx)"

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j

    def add(self, x: complex, y: complex) -> complex:
        return x + y

    def sub(self, x: complex, y: complex) -> complex:
        return x - y

    def mul(self, x: complex, y: complex) -> complex:
        return x * y

    def div(self, x: complex, y: complex) -> complex:
        if y == 0:
            raise DivisionByZero("division by zero in C")
        return x / y

    def neg(self, x: complex) -> complex:
        return -x

    def from_int(self, n: int) -> complex:
        return complex(n, 0)

    def eq(self, x: complex, y: complex) -> bool:
        return abs(x - y) <= self.tolerance * max(1.0, abs(x), abs(y))

    def random_element(self, rng: random.Random) -> complex:
        return complex(rng.uniform(-10, 10), rng.uniform(-10, 10))

    def random_unit(self, rng: random.Random) -> complex:
        return cmath.exp(1j * rng.uniform(-math.pi, math.pi))

    def format(self, x: complex) -> str:
        return format_complex(x)


class FunctionField(Field[RationalFunction]):
    """Q(x): all rational expressions in one transcendental generator."""

    name = "Q(x)"

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction(0)

    @property
    def one(self) -> RationalFunction:
        return RationalFunction(1)

    @property
    def generator(self) -> RationalFunction:
        return RationalFunction.variable()

    def add(self, x: RationalFunction, y: RationalFunction) -> RationalFunction:
        return x + y

    def sub(self, x: RationalFunction, y: RationalFunction) -> RationalFunction:
        return x - y

    def mul(self, x: RationalFunction, y: RationalFunction) -> RationalFunction:
        return x * y

    def div(self, x: RationalFunction, y: RationalFunction) -> RationalFunction:
        return x / y

    def neg(self, x: RationalFunction) -> RationalFunction:
        return -x

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction(n)

    def random_element(self, rng: random.Random) -> RationalFunction:
        def poly(max_deg: int, nonzero: bool) -> Polynomial:
            while True:
                deg = rng.randint(0, max_deg)
                coeffs = [
                    Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                    for _ in range(deg + 1)
                ]
                p = Polynomial(coeffs)
                if not (nonzero and p.is_zero):
                    return p

        return RationalFunction(poly(3, nonzero=False), poly(2, nonzero=True))

    def format(self, x: RationalFunction) -> str:
        return format_rational_function(x)


# --- substitution endomorphisms of Q(x) ------------------------------------

def power_substitution(func: RationalFunction, exponent: int) -> RationalFunction:
    """The endomorphism of Q(x) sending the generator x to x**exponent."""
    if exponent < 1:
        raise ValueError("exponent must be positive")
    return func.compose_power(exponent)


def power_image_witness(exponent: int, func: RationalFunction) -> int | None:
    """Exponent witnessing that func is not a substitution image, or None.

    g = p(x**k)/q(x**k) in reduced form has nonzero coefficients only at
    exponents divisible by k (reduction preserves this: if p, q are coprime
    then so are p(x**k), q(x**k)). A returned value is the first exponent
    carried by func that k does not divide.
    """
    if exponent < 1:
        raise ValueError("exponent must be positive")
    for poly in (func.num, func.den):
        for i, c in enumerate(poly.coefficients):
            if c != 0 and i % exponent:
                return i
    return None


# --- literal formats --------------------------------------------------------

def format_quadratic(z: QuadraticElement) -> str:
    if z.b == 0:
        return str(z.a)
    mag = abs(z.b)
    stem = f"sqrt({z.d})" if mag == 1 else f"{mag}*sqrt({z.d})"
    if z.a == 0:
        return stem if z.b > 0 else f"-{stem}"
    sign = "+" if z.b > 0 else "-"
    return f"{z.a}{sign}{stem}"


_QUAD_RE = re.compile(
    r"""^
    (?:(?P<a>[+-]?\d+(?:/\d+)?))?
    (?:
        (?P<sign>[+-])?
        (?:(?P<b>\d+(?:/\d+)?)\*)?
        sqrt\((?P<d>[+-]?\d+(?:/\d+)?)\)
    )?
    $""",
    re.VERBOSE,
)


def parse_quadratic(text: str, d: Coefficient | None = None) -> QuadraticElement:
    """Parse "a+b*sqrt(d)" (either part optional, not both absent)."""
    s = text.replace(" ", "")
    m = _QUAD_RE.match(s)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ParseError(f"bad quadratic literal {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        if d is None:
            raise ParseError(f"no sqrt part in {text!r} and no ambient d given")
        return QuadraticElement(a, Fraction(0), Fraction(d))
    lit_d = Fraction(m.group("d"))
    if d is not None and lit_d != Fraction(d):
        raise FieldMismatch(f"literal uses sqrt({lit_d}), ambient field has sqrt({d})")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    if m.group("a") and m.group("sign") is None:
        raise ParseError(f"missing sign between parts in {text!r}")
    return QuadraticElement(a, b, lit_d)


def format_fp(value: int, p: int) -> str:
    return f"{value % p} mod {p}"


_FP_RE = re.compile(r"^\s*(\d+)\s*mod\s*(\d+)\s*$")


def parse_fp(text: str, p: int | None = None) -> tuple[int, int]:
    m = _FP_RE.match(text)
    if not m:
        raise ParseError(f"bad residue literal {text!r}")
    value, modulus = int(m.group(1)), int(m.group(2))
    if p is not None and modulus != p:
        raise FieldMismatch(f"literal is mod {modulus}, ambient field is mod {p}")
    return value % modulus, modulus


_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>{_FLOAT})?(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])\*?i)?$"
)


def format_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}*i"


def parse_complex(text: str) -> complex:
    s = text.replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ParseError(f"bad complex literal {text!r}")
    re_part = float(m.group("re")) if m.group("re") else 0.0
    im_text = m.group("im")
    if im_text is None:
        im_part = 0.0
    elif im_text in ("+", "-"):
        im_part = 1.0 if im_text == "+" else -1.0
    else:
        im_part = float(im_text)
    z = complex(re_part, im_part)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError(f"non-finite complex literal {text!r}")
    return z
