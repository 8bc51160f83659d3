"""Checking engine for sum-difference ratio preserving maps.

A self-map f of a field is of interest when, for every pair x != y,

    f((x + y) / (x - y)) = (f(x) + f(y)) / (f(x) - f(y)).

Such maps are forced to fix 0 and 1, to be odd, multiplicative, and
injective. This module provides the residual/report machinery for checking
candidates over any carrier, the exact symbolic sequence generated by the
defining equation on consecutive integers, the constraint that pins the one
free value down to 2, and the arithmetic-progression propagation engine that
turns three fixed points into a certified line of them.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Generic, Iterable, Sequence, TypeVar

from .exact import RationalFunction, format_rational_function
from .fields import Field, FunctionField, PrimeField, QuadraticField

T = TypeVar("T")

MAX_RECORDED_VIOLATIONS = 100
SYMBOLIC_CAP = 50


class InvalidPair(ValueError):
    """The defining equation needs x != y."""


class InjectivityViolation(Exception):
    """f(x) = f(y) for some x != y, so the right side is undefined."""

    def __init__(self, x: object, y: object) -> None:
        super().__init__(f"f({x}) = f({y}) with x != y")
        self.x = x
        self.y = y


class RecurrenceDegenerate(Exception):
    """The symbolic recurrence divided by entry - 1 where the entry was 1."""


class ZeroTermEncountered(Exception):
    """Forward propagation reached the term 0, where the move is undefined."""

    def __init__(self, index: int) -> None:
        super().__init__(f"progression term at offset {index} is zero")
        self.index = index


class CertificationFailed(Exception):
    """A replayed derivation step disagreed with the candidate map."""


class SelfCheckFailed(Exception):
    """An internally recomputed fact came out different from the known one."""


@dataclass(frozen=True)
class SdCandidate(Generic[T]):
    """A self-map of a field, wrapped for checking."""

    field: Field[T]
    func: Callable[[T], T]
    name: str

    def __call__(self, x: T) -> T:
        return self.func(x)


@dataclass
class SdReport:
    """Outcome of a batch of checks.

    ``violations`` entries are dicts with keys x, y, lhs, rhs (all formatted
    strings); at most MAX_RECORDED_VIOLATIONS are stored, the rest are only
    counted. ``notes`` is free text.
    """

    status: str = "pass"
    checked_pairs: int = 0
    violations: list[dict[str, str]] = dataclass_field(default_factory=list)
    notes: str = ""
    violation_count: int = 0

    def record(self, x: str, y: str, lhs: str, rhs: str) -> None:
        self.status = "fail"
        self.violation_count += 1
        if len(self.violations) < MAX_RECORDED_VIOLATIONS:
            self.violations.append({"x": x, "y": y, "lhs": lhs, "rhs": rhs})

    def add_note(self, text: str) -> None:
        self.notes = text if not self.notes else f"{self.notes}\n{text}"

    def finish(self) -> "SdReport":
        if self.violation_count > len(self.violations):
            self.add_note(
                f"{self.violation_count - len(self.violations)} further "
                "violations not recorded"
            )
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checked_pairs": self.checked_pairs,
            "violations": self.violations,
            "notes": self.notes,
        }

    def to_text(self) -> str:
        lines = [f"status: {self.status} ({self.checked_pairs} pairs checked)"]
        for v in self.violations:
            lines.append(
                f"  violation at x={v['x']}, y={v['y']}: lhs={v['lhs']}, rhs={v['rhs']}"
            )
        if self.notes:
            lines.extend(f"  note: {line}" for line in self.notes.splitlines())
        return "\n".join(lines)


def sd_residual(candidate: SdCandidate[T], x: T, y: T) -> tuple[T, T]:
    """Both sides of the defining equation at (x, y).

    Raises InvalidPair when x = y and InjectivityViolation when the right
    side's denominator f(x) - f(y) vanishes.
    """
    f = candidate.field
    if f.eq(x, y):
        raise InvalidPair("the defining equation requires x != y")
    fx, fy = candidate(x), candidate(y)
    if f.eq(fx, fy):
        raise InjectivityViolation(f.format(x), f.format(y))
    lhs = candidate(f.div(f.add(x, y), f.sub(x, y)))
    rhs = f.div(f.add(fx, fy), f.sub(fx, fy))
    return lhs, rhs


def check_sd(
    candidate: SdCandidate[T],
    pairs: Iterable[tuple[T, T]],
    max_violations: int = MAX_RECORDED_VIOLATIONS,
) -> SdReport:
    """Check the defining equation over explicit pairs."""
    f = candidate.field
    report = SdReport()
    for x, y in pairs:
        report.checked_pairs += 1
        try:
            lhs, rhs = sd_residual(candidate, x, y)
        except InjectivityViolation:
            report.violation_count += 1
            report.status = "fail"
            if len(report.violations) < max_violations:
                report.violations.append(
                    {
                        "x": f.format(x),
                        "y": f.format(y),
                        "lhs": f.format(candidate(f.div(f.add(x, y), f.sub(x, y)))),
                        "rhs": "undefined (f(x) = f(y))",
                    }
                )
            continue
        if not f.eq(lhs, rhs):
            report.violation_count += 1
            report.status = "fail"
            if len(report.violations) < max_violations:
                report.violations.append(
                    {
                        "x": f.format(x),
                        "y": f.format(y),
                        "lhs": f.format(lhs),
                        "rhs": f.format(rhs),
                    }
                )
    return report.finish()


def check_properties(
    candidate: SdCandidate[T],
    sample: Sequence[T],
) -> SdReport:
    """Check the forced consequences: f(0)=0, f(1)=1, oddness,
    multiplicativity, and injectivity over the sample."""
    f = candidate.field
    report = SdReport()

    def expect(cond: bool, x: str, y: str, lhs: str, rhs: str) -> None:
        report.checked_pairs += 1
        if not cond:
            report.record(x, y, lhs, rhs)

    f0 = candidate(f.zero)
    expect(f.is_zero(f0), f.format(f.zero), "-", f.format(f0), f.format(f.zero))
    f1 = candidate(f.one)
    expect(f.eq(f1, f.one), f.format(f.one), "-", f.format(f1), f.format(f.one))
    for x in sample:
        fx = candidate(x)
        fneg = candidate(f.neg(x))
        expect(
            f.eq(fneg, f.neg(fx)),
            f.format(f.neg(x)),
            f.format(x),
            f.format(fneg),
            f.format(f.neg(fx)),
        )
    for x, y in zip(sample, sample[1:]):
        fxy = candidate(f.mul(x, y))
        prod = f.mul(candidate(x), candidate(y))
        expect(
            f.eq(fxy, prod),
            f.format(x),
            f.format(y),
            f.format(fxy),
            f.format(prod),
        )
    for i, x in enumerate(sample):
        for y in sample[i + 1 :]:
            if f.eq(x, y):
                continue
            report.checked_pairs += 1
            if f.eq(candidate(x), candidate(y)):
                report.record(
                    f.format(x), f.format(y), f.format(candidate(x)), "equal images"
                )
    report.add_note(
        "properties checked: fixes 0 and 1, oddness, multiplicativity, injectivity"
    )
    return report.finish()


# --- candidate constructors -------------------------------------------------

def identity_map(field: Field[T]) -> SdCandidate[T]:
    return SdCandidate(field, lambda x: x, "identity")


def conjugation_map(field: QuadraticField) -> SdCandidate:
    return SdCandidate(field, lambda z: z.conjugate(), "conjugation")


def table_map(field: PrimeField, table: Sequence[int], name: str = "table") -> SdCandidate[int]:
    if len(table) != field.p:
        raise ValueError("table length must equal p")
    frozen = tuple(v % field.p for v in table)
    return SdCandidate(field, lambda x: frozen[x], name)


def power_map(field: PrimeField, exponent: int) -> SdCandidate[int]:
    p = field.p
    return SdCandidate(field, lambda x: pow(x, exponent, p), f"x^{exponent}")


def function_power_map(field: FunctionField, exponent: int) -> SdCandidate[RationalFunction]:
    return SdCandidate(
        field, lambda g: g.compose_power(exponent), f"x->x^{exponent} substitution"
    )


def sample_pairs(
    field: Field[T], rng: random.Random, count: int
) -> list[tuple[T, T]]:
    return [field.random_pair(rng) for _ in range(count)]


# --- the symbolic integer sequence ------------------------------------------

@dataclass(frozen=True)
class SymbolicSequence:
    """Values f(0)..f(n) forced by the defining equation on integers,
    written as rational functions of the one free value t = f(2)."""

    entries: tuple[RationalFunction, ...]

    def entry(self, n: int) -> RationalFunction:
        return self.entries[n]

    def render(self, var: str = "t") -> list[str]:
        return [format_rational_function(e, var) for e in self.entries]


def symbolic_sequence(n_max: int, cap: int = SYMBOLIC_CAP) -> SymbolicSequence:
    """Entries 0..n_max of the forced sequence over Q(t).

    Taking x = n, y = 1 in the defining equation and using that f fixes
    0 and 1 gives f(n+1) = f(n-1) * (f(n) + 1) / (f(n) - 1). Starting from
    f(0) = 0, f(1) = 1 and the free value f(2) = t, every later entry is a
    rational function of t. Division by f(n) - 1 is legal because no entry
    collapses to the constant 1; if one ever did, RecurrenceDegenerate is
    raised rather than silently dividing.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2 to include the free value")
    if n_max > cap:
        raise ValueError(f"n_max {n_max} exceeds cap {cap}; raise cap explicitly")
    t = RationalFunction.variable()
    one = RationalFunction(1)
    entries = [RationalFunction(0), one, t]
    for n in range(2, n_max):
        cur, prev = entries[n], entries[n - 1]
        if cur == one:
            raise RecurrenceDegenerate(f"entry {n} is identically 1")
        entries.append(prev * (cur + one) / (cur - one))
    return SymbolicSequence(tuple(entries))


@dataclass(frozen=True)
class FreeValueConstraint:
    """The polynomial constraint that pins the free value t = f(2)."""

    polynomial: object  # Polynomial; kept loose to avoid an import cycle in docs
    roots: tuple[tuple[Fraction, int], ...]
    survivor: Fraction


def free_value_constraint() -> FreeValueConstraint:
    """Derive and solve the constraint forcing f(2) = 2.

    Multiplicativity forces f(8) = f(2) * f(4). Subtracting t * entry(4)
    from entry(8) leaves a polynomial whose rational roots are 0 (twice),
    1, and 2; injectivity rules out 0 (= f(0)) and 1 (= f(1)), leaving 2.
    Raises SelfCheckFailed if recomputation does not reproduce that picture.
    """
    from .exact import rational_roots

    seq = symbolic_sequence(8)
    t = RationalFunction.variable()
    diff = seq.entry(8) - t * seq.entry(4)
    numerator = diff.num
    roots = rational_roots(numerator)
    expected = {Fraction(0): 2, Fraction(1): 1, Fraction(2): 1}
    if roots != expected:
        raise SelfCheckFailed(f"constraint roots {roots} != expected {expected}")
    survivors = [r for r in roots if r not in (Fraction(0), Fraction(1))]
    if survivors != [Fraction(2)]:
        raise SelfCheckFailed(f"surviving roots {survivors} != [2]")
    return FreeValueConstraint(
        polynomial=numerator,
        roots=tuple(sorted(roots.items())),
        survivor=Fraction(2),
    )


def integer_induction_check(n_max: int) -> SdReport:
    """Replay the forced recurrence with f(2) = 2 up to n_max.

    With the free value resolved to 2 the recurrence must produce
    f(n) = n for every n; each step is re-derived, not assumed.
    """
    if n_max < 3:
        raise ValueError("need n_max >= 3 for the recurrence to move")
    report = SdReport()
    prev, cur = Fraction(1), Fraction(2)
    for n in range(2, n_max):
        nxt = prev * (cur + 1) / (cur - 1)
        report.checked_pairs += 1
        if nxt != n + 1:
            report.record(str(n), "1", str(nxt), str(n + 1))
        prev, cur = cur, nxt
    report.add_note(f"recurrence with f(2) = 2 reproduced f(n) = n up to n = {n_max}")
    return report.finish()


# --- arithmetic-progression propagation ------------------------------------

def _certify_fixed(candidate: SdCandidate[T], value: T, what: str) -> None:
    f = candidate.field
    got = candidate(value)
    if not f.eq(got, value):
        raise CertificationFailed(
            f"{candidate.name} moves {what} {f.format(value)} to {f.format(got)}"
        )


def ap_propagate(
    candidate: SdCandidate[T],
    a: T,
    d: T,
    steps: int,
    order: str = "forward_first",
) -> list[tuple[int, T]]:
    """Derive that f fixes a + k*d for |k| <= steps from three fixed points.

    Requires f to fix a, a + d and d (checked, CertificationFailed if not).
    Forward move: the defining equation at (a + (k-1)d, d) shows f fixes
    (a + kd) / (a + (k-2)d), and multiplicativity extends to a + kd. The
    backward move uses the equation at (a + (k+1)d, -d), whose left side is
    the (a - d)/(a + d) pattern, together with oddness of f at d.

    A zero forward term raises ZeroTermEncountered. A zero backward term is
    emitted (its ratio certificate degenerates to f(0) = 0) and the backward
    walk stops there. ``order`` only changes interleaving ("forward_first"
    or "interleaved"); the derived set is the same.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if order not in ("forward_first", "interleaved"):
        raise ValueError(f"unknown order {order!r}")
    f = candidate.field
    _certify_fixed(candidate, a, "progression base")
    _certify_fixed(candidate, f.add(a, d), "second progression term")
    _certify_fixed(candidate, d, "progression step")
    if f.is_zero(d):
        return []
    if f.is_zero(a):
        raise ZeroTermEncountered(0)

    derived: list[tuple[int, T]] = []
    neg_d = f.neg(d)
    f_neg_d = candidate(neg_d)
    if not f.eq(f_neg_d, f.neg(candidate(d))):
        raise CertificationFailed(f"{candidate.name} is not odd at {f.format(d)}")

    # forward window (lo, hi) = (a + (k-2)d, a + (k-1)d), both already fixed
    fw_lo, fw_hi = a, f.add(a, d)
    fw_k = 2
    # backward window top w = a + (k+1)d, already fixed
    bw_w = a
    bw_k = -1
    bw_alive = True

    def forward_step() -> None:
        nonlocal fw_lo, fw_hi, fw_k
        term = f.add(fw_hi, d)
        if f.is_zero(term):
            raise ZeroTermEncountered(fw_k)
        f_hi, f_d = candidate(fw_hi), candidate(d)
        if f.eq(f_hi, f_d):
            raise CertificationFailed(
                f"injectivity broken: f({f.format(fw_hi)}) = f({f.format(d)})"
            )
        ratio = f.div(term, fw_lo)
        f_ratio = candidate(ratio)
        rhs = f.div(f.add(f_hi, f_d), f.sub(f_hi, f_d))
        if not f.eq(f_ratio, rhs) or not f.eq(f_ratio, ratio):
            raise CertificationFailed(
                f"forward move failed at offset {fw_k}: "
                f"f({f.format(ratio)}) = {f.format(f_ratio)}"
            )
        f_term = candidate(term)
        if not f.eq(f_term, f.mul(f_ratio, candidate(fw_lo))) or not f.eq(f_term, term):
            raise CertificationFailed(
                f"multiplicative extension failed at offset {fw_k}"
            )
        derived.append((fw_k, term))
        fw_lo, fw_hi, fw_k = fw_hi, term, fw_k + 1

    def backward_step() -> None:
        nonlocal bw_w, bw_k, bw_alive
        term = f.sub(bw_w, d)
        above = f.add(bw_w, d)  # a + (k+2)d, fixed earlier, nonzero
        f_w = candidate(bw_w)
        if f.eq(f_w, f_neg_d):
            raise CertificationFailed(
                f"injectivity broken: f({f.format(bw_w)}) = f({f.format(neg_d)})"
            )
        ratio = f.div(term, above)
        f_ratio = candidate(ratio)
        rhs = f.div(f.add(f_w, f_neg_d), f.sub(f_w, f_neg_d))
        if not f.eq(f_ratio, rhs) or not f.eq(f_ratio, ratio):
            raise CertificationFailed(
                f"backward move failed at offset {bw_k}: "
                f"f({f.format(ratio)}) = {f.format(f_ratio)}"
            )
        f_term = candidate(term)
        if not f.eq(f_term, f.mul(f_ratio, candidate(above))) or not f.eq(f_term, term):
            raise CertificationFailed(
                f"multiplicative extension failed at offset {bw_k}"
            )
        derived.append((bw_k, term))
        if f.is_zero(term):
            bw_alive = False  # f(0) = 0 certified; no move leads past zero
            return
        bw_w, bw_k = term, bw_k - 1

    forward_moves = max(0, steps - 1)
    backward_moves = steps
    if order == "forward_first":
        for _ in range(forward_moves):
            forward_step()
        for _ in range(backward_moves):
            if not bw_alive:
                break
            backward_step()
    else:
        fw_left, bw_left = forward_moves, backward_moves
        while fw_left or bw_left:
            if fw_left:
                forward_step()
                fw_left -= 1
            if bw_left:
                if not bw_alive:
                    bw_left = 0
                else:
                    backward_step()
                    bw_left -= 1
    return derived


def report_to_json_str(report: SdReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True)
