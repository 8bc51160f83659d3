"""Exact arithmetic substrate: rationals, dense polynomials, rational functions.

Rationals are stdlib :class:`fractions.Fraction` values, which already carry
the canonical form we need (reduced, positive denominator, unique zero).
``Polynomial`` and ``RationalFunction`` maintain the canonical forms the rest
of the package relies on for structural equality: no trailing zero
coefficients, quotients reduced by their polynomial gcd, monic denominators.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Fraction

Coefficient = Union[int, Fraction]

NEG_INFINITY = float("-inf")


class DivisionByZero(ZeroDivisionError):
    """Division by an exact zero (scalar, polynomial, or function)."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a root of its denominator."""


class UndefinedGcd(ValueError):
    """gcd(0, 0) requested."""


class UndefinedRoots(ValueError):
    """Root enumeration of the zero polynomial requested."""


class ParseError(ValueError):
    """Literal does not match the grammar the formatters emit."""


def _as_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class Polynomial:
    """Dense univariate polynomial over the rationals.

    Coefficients are stored in ascending degree order with trailing zeros
    stripped, so equal polynomials are structurally equal. The zero
    polynomial is the empty coefficient tuple and reports degree -inf.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Coefficient] = ()) -> None:
        coeffs = [_as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, value: Coefficient) -> "Polynomial":
        return cls((value,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, exponent: int, coefficient: Coefficient = 1) -> "Polynomial":
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return cls((0,) * exponent + (coefficient,))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> Union[int, float]:
        return len(self._coeffs) - 1 if self._coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self._coeffs):
            return self._coeffs[exponent]
        return Fraction(0)

    def _coerce(self, other: object) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return None

    def __add__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._coeffs, rhs._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self._coeffs))

    def __sub__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(rhs._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(rhs._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial((1,))
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: object) -> tuple["Polynomial", "Polynomial"]:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero:
            raise DivisionByZero("polynomial division by zero")
        if self.degree < rhs.degree:
            return Polynomial(), self
        rem = list(self._coeffs)
        ddeg = len(rhs._coeffs) - 1
        dlead = rhs.leading
        quot = [Fraction(0)] * (len(rem) - ddeg)
        for shift in range(len(rem) - ddeg - 1, -1, -1):
            c = rem[shift + ddeg] / dlead
            if c == 0:
                continue
            quot[shift] = c
            for i, oc in enumerate(rhs._coeffs):
                rem[shift + i] -= c * oc
        return Polynomial(quot), Polynomial(rem[:ddeg])

    def __floordiv__(self, other: object) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: object) -> "Polynomial":
        return divmod(self, other)[1]

    def __call__(self, point: Coefficient) -> Fraction:
        x = _as_fraction(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero or self.leading == 1:
            return self
        lead = self.leading
        return Polynomial(tuple(c / lead for c in self._coeffs))

    def primitive_part(self) -> "Polynomial":
        """Integer-coefficient associate with content 1 and positive leading."""
        if self.is_zero:
            return self
        den_lcm = 1
        for c in self._coeffs:
            den_lcm = math.lcm(den_lcm, c.denominator)
        nums = [int(c * den_lcm) for c in self._coeffs]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        if nums[-1] < 0:
            g = -g
        return Polynomial(tuple(Fraction(n, g) for n in nums))

    def compose_power(self, exponent: int) -> "Polynomial":
        """Substitute x -> x**exponent."""
        if exponent < 1:
            raise ValueError("exponent must be positive")
        if self.is_zero or exponent == 1:
            return self
        out = [Fraction(0)] * ((len(self._coeffs) - 1) * exponent + 1)
        for i, c in enumerate(self._coeffs):
            out[i * exponent] = c
        return Polynomial(out)

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._coeffs == rhs._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"Polynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def poly_gcd(first: Polynomial, second: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(p, 0) = monic p.

    Remainders are reduced to primitive integer form at each step to keep
    coefficient growth polynomial rather than exponential.
    """
    if first.is_zero and second.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    a, b = first, second
    while not b.is_zero:
        a, b = b, (a % b).primitive_part()
    return a.monic()


def _divisors(n: int) -> Iterator[int]:
    n = abs(n)
    small, large = [], []
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    yield from small
    yield from reversed(large)


def rational_roots(poly: Polynomial) -> dict[Fraction, int]:
    """All rational roots with multiplicities, by the rational root theorem."""
    if poly.is_zero:
        raise UndefinedRoots("the zero polynomial vanishes everywhere")
    roots: dict[Fraction, int] = {}
    coeffs = poly.coefficients
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots[Fraction(0)] = low
        poly = Polynomial(coeffs[low:])
    if poly.degree == 0:
        return roots
    prim = poly.primitive_part()
    const = int(prim.coefficients[0])
    lead = int(prim.leading)
    seen: set[Fraction] = set()
    x = Polynomial.variable()
    for num in _divisors(const):
        for den in _divisors(lead):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                if cand in seen:
                    continue
                seen.add(cand)
                if prim(cand) != 0:
                    continue
                mult = 0
                q = prim
                while not q.is_zero and q(cand) == 0:
                    q, rem = divmod(q, x - cand)
                    assert rem.is_zero
                    mult += 1
                roots[cand] = mult
    return roots


class RationalFunction:
    """Quotient of polynomials in reduced canonical form.

    Invariants: denominator nonzero and monic, gcd(num, den) = 1, and the
    zero function is exactly 0/1. Structural equality is therefore equality
    of values.
    """

    __slots__ = ("_num", "_den")

    def __init__(
        self,
        numerator: Union[Polynomial, Coefficient] = 0,
        denominator: Union[Polynomial, Coefficient] = 1,
    ) -> None:
        num = numerator if isinstance(numerator, Polynomial) else Polynomial((numerator,))
        den = denominator if isinstance(denominator, Polynomial) else Polynomial((denominator,))
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero:
            self._num = Polynomial()
            self._den = Polynomial((1,))
            return
        common = poly_gcd(num, den)
        if common.degree > 0:
            num = num // common
            den = den // common
        lead = den.leading
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self._num = num
        self._den = den

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(Polynomial.variable())

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    def _coerce(self, other: object) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other)
        return None

    def __add__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalFunction(
            self._num * rhs._den + rhs._num * self._den, self._den * rhs._den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out._num = -self._num
        out._den = self._den
        return out

    def __sub__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalFunction(self._num * rhs._num, self._den * rhs._den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero:
            raise DivisionByZero("division by the zero function")
        return RationalFunction(self._num * rhs._den, self._den * rhs._num)

    def __rtruediv__(self, other: object) -> "RationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs / self

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return RationalFunction(1) / (self ** (-exponent))
        return RationalFunction(self._num**exponent, self._den**exponent)

    def evaluate(self, point: Coefficient) -> Fraction:
        x = _as_fraction(point)
        dval = self._den(x)
        if dval == 0:
            raise PoleError(f"pole at {x}")
        return self._num(x) / dval

    def compose_power(self, exponent: int) -> "RationalFunction":
        """Substitute x -> x**exponent in numerator and denominator."""
        return RationalFunction(
            self._num.compose_power(exponent), self._den.compose_power(exponent)
        )

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._num == rhs._num and self._den == rhs._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"RationalFunction({self._num!r}, {self._den!r})"

    def __str__(self) -> str:
        return format_rational_function(self)


# --- literal formatting and parsing ---------------------------------------
#
# The formatters below define the grammar; the parsers accept exactly what
# the formatters emit (plus optional whitespace and sign freedom), so
# format/parse round-trips are identities.

def format_rational(value: Fraction) -> str:
    return str(value)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}: {exc}") from None


def format_polynomial(poly: Polynomial, var: str = "x") -> str:
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for exp in range(len(poly.coefficients) - 1, -1, -1):
        c = poly.coefficients[exp]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            stem = var if exp == 1 else f"{var}^{exp}"
            body = stem if mag == 1 else f"{mag}*{stem}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM_RE = re.compile(
    r"""^
    (?:
        (?P<coeff>\d+(?:/\d+)?)         # rational coefficient
        (?:\*(?P<var1>[A-Za-z_]\w*)(?:\^(?P<exp1>\d+))?)?
      |
        (?P<var2>[A-Za-z_]\w*)(?:\^(?P<exp2>\d+))?
    )
    $""",
    re.VERBOSE,
)


def parse_polynomial(text: str, var: str | None = None) -> Polynomial:
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial literal")
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, Fraction] = {}
    seen_var: str | None = var
    for raw in s.split("+"):
        term = raw.replace(" ", "")
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise ParseError(f"bad polynomial term {raw.strip()!r} in {text!r}")
        name = m.group("var1") or m.group("var2")
        if name is not None:
            if seen_var is None:
                seen_var = name
            elif name != seen_var:
                raise ParseError(f"mixed variables {seen_var!r} and {name!r} in {text!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        exp_text = m.group("exp1") or m.group("exp2")
        if name is None:
            exp = 0
        else:
            exp = int(exp_text) if exp_text else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coeff
    out = [Fraction(0)] * (max(coeffs) + 1)
    for exp, c in coeffs.items():
        out[exp] = c
    return Polynomial(out)


def format_rational_function(func: RationalFunction, var: str = "x") -> str:
    if func.den == Polynomial((1,)):
        return format_polynomial(func.num, var)
    return f"({format_polynomial(func.num, var)})/({format_polynomial(func.den, var)})"


def parse_rational_function(text: str, var: str | None = None) -> RationalFunction:
    s = text.strip()
    if s.startswith("("):
        depth = 0
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    head, tail = s[1:i], s[i + 1 :].strip()
                    if not tail.startswith("/"):
                        break
                    tail = tail[1:].strip()
                    if not (tail.startswith("(") and tail.endswith(")")):
                        raise ParseError(f"bad quotient literal {text!r}")
                    return RationalFunction(
                        parse_polynomial(head, var), parse_polynomial(tail[1:-1], var)
                    )
    return RationalFunction(parse_polynomial(s, var))
