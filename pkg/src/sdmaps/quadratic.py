"""Verification of the classification over real quadratic extensions.

Over Q(sqrt(d)) the only maps satisfying the defining equation are the
identity and conjugation. This module replays the proof's moving parts as
machine checks: the two automorphisms really satisfy the equation, the
norm-cleared case identities hold, the wrong sign choice for f(1 + sqrt(d))
collides with rationality, and a full integer lattice of points is pinned
by arithmetic-progression propagation alone. The floating-complex analogue
(conjugation on C, half-angle identities on the unit circle) lives here too.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .core import (
    CertificationFailed,
    SdCandidate,
    SdReport,
    ap_propagate,
    check_sd,
    conjugation_map,
    identity_map,
    sample_pairs,
)
from .exact import Coefficient
from .fields import ApproxComplexField, QuadraticElement, QuadraticField

AUTOMORPHISMS = ("identity", "conjugation")


def _candidate(field: QuadraticField, which: str) -> SdCandidate[QuadraticElement]:
    if which == "identity":
        return identity_map(field)
    if which == "conjugation":
        return conjugation_map(field)
    raise ValueError(f"unknown automorphism {which!r}")


def verify_automorphism_sd(
    d: Coefficient, which: str, sample_size: int = 500, seed: int = 0
) -> SdReport:
    """Sampled check that the automorphism satisfies the defining equation."""
    field = QuadraticField(d)
    candidate = _candidate(field, which)
    rng = random.Random(seed)
    report = check_sd(candidate, sample_pairs(field, rng, sample_size))
    report.add_note(f"{which} on {field.name}, {sample_size} sampled pairs, seed {seed}")
    return report


def check_case_formulas(
    d: Coefficient,
    case: str,
    zs: Iterable[QuadraticElement] | None = None,
    sample_size: int = 200,
    seed: int = 0,
) -> SdReport:
    """Check the two-case picture on nonzero elements.

    Writing zbar for the conjugate and N(z) = z * zbar for the norm, any map
    satisfying the equation falls into one case per element; for the two
    automorphisms the case is global:

      identity   ("plus"):  f(z/zbar) = z/zbar,  f(z)^2 = z^2
      conjugation ("minus"): f(z/zbar) = zbar/z,  f(z)^2 = zbar^2

    Both cases share the norm-cleared chain f(z/zbar) * N(z) = f(z^2), which
    is checked exactly, together with its algebraic input (z/zbar) * N(z) = z^2.
    """
    field = QuadraticField(d)
    if case == "plus":
        candidate = _candidate(field, "identity")
    elif case == "minus":
        candidate = _candidate(field, "conjugation")
    else:
        raise ValueError(f"unknown case {case!r}")
    if zs is None:
        rng = random.Random(seed)
        pool: list[QuadraticElement] = []
        while len(pool) < sample_size:
            z = field.random_element(rng)
            if not z.is_zero:
                pool.append(z)
        zs = pool
    else:
        zs = list(zs)

    report = SdReport()

    def expect(cond: bool, z: QuadraticElement, lhs: QuadraticElement, rhs: QuadraticElement, tag: str) -> None:
        report.checked_pairs += 1
        if not cond:
            report.record(field.format(z), tag, field.format(lhs), field.format(rhs))

    for z in zs:
        zbar = z.conjugate()
        norm_el = z * zbar  # rational: b-component cancels
        z_sq = z * z
        ratio = z / zbar
        expect(ratio * norm_el == z_sq, z, ratio * norm_el, z_sq, "ratio*norm=z^2")
        f_ratio = candidate(ratio)
        target_ratio = ratio if case == "plus" else zbar / z
        expect(f_ratio == target_ratio, z, f_ratio, target_ratio, "f(z/zbar)")
        expect(
            f_ratio * norm_el == candidate(z_sq),
            z,
            f_ratio * norm_el,
            candidate(z_sq),
            "f(z/zbar)*N=f(z^2)",
        )
        fz_sq = candidate(z) * candidate(z)
        target_sq = z_sq if case == "plus" else zbar * zbar
        expect(fz_sq == target_sq, z, fz_sq, target_sq, "f(z)^2")
    report.add_note(f"case {case} formulas on {field.name}, {len(zs)} elements")
    return report.finish()


@dataclass(frozen=True)
class ContradictionReport:
    """Replay of the wrong-sign collision at 2 + sqrt(d).

    ``branch`` records the resolved sign of f(sqrt(d)); ``hypothetical`` is
    the value of f(2 + sqrt(d)) forced by the progression move if
    f(1 + sqrt(d)) took the wrong sign; the forced value must then square-
    match a target with nonzero sqrt-coefficient difference, which no
    rational-normed identity can absorb.
    """

    d: Fraction
    branch: str
    hypothetical: QuadraticElement
    closed_form_ok: bool
    targets: tuple[QuadraticElement, QuadraticElement]
    cleared_sqrt_coefficients: tuple[Fraction, Fraction]
    confirmed: bool

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "branch": self.branch,
            "hypothetical": str(self.hypothetical),
            "closed_form_ok": self.closed_form_ok,
            "targets": [str(t) for t in self.targets],
            "cleared_sqrt_coefficients": [str(c) for c in self.cleared_sqrt_coefficients],
            "confirmed": self.confirmed,
        }


def wrong_sign_contradiction(d: Coefficient, branch: str) -> ContradictionReport:
    """Show the wrong sign for f(1 + sqrt(d)) is impossible, exactly.

    In branch "plus" (f(sqrt(d)) = sqrt(d)) suppose f(1 + sqrt(d)) were
    -(1 + sqrt(d)); the progression move at (1 + sqrt(d), 1) then forces
    f(2 + sqrt(d)) = d / (2 + sqrt(d)), yet the case formula allows only
    +-(2 + sqrt(d)). Clearing denominators, the two candidate equalities
    differ by a nonzero multiple of sqrt(d) from a rational, which is
    impossible. Branch "minus" (f(sqrt(d)) = -sqrt(d)) runs the same way
    with wrong sign -(1 - sqrt(d)) and targets +-(2 - sqrt(d)).
    """
    field = QuadraticField(d)
    if branch not in ("plus", "minus"):
        raise ValueError(f"unknown branch {branch!r}")
    one = field.one
    two = field.from_int(2)
    s = field.sqrt_d
    d_el = field.element(field.d)

    if branch == "plus":
        f_s = s
        wrong = -(one + s)
        targets = (two + s, -(two + s))
        clearer = two + s
        expected_product = d_el
    else:
        f_s = -s
        wrong = -(one - s)
        targets = (two - s, -(two - s))
        clearer = s - two
        expected_product = -d_el

    # the forward progression move, with the wrong sign substituted in
    hypothetical = f_s * ((wrong + one) / (wrong - one))
    closed_form_ok = hypothetical * clearer == expected_product

    cleared = tuple((hypothetical - t) * clearer for t in targets)
    coeffs = (cleared[0].b, cleared[1].b)
    confirmed = (
        closed_form_ok
        and all(hypothetical != t for t in targets)
        and all(c != 0 for c in coeffs)
    )
    return ContradictionReport(
        d=field.d,
        branch=branch,
        hypothetical=hypothetical,
        closed_form_ok=closed_form_ok,
        targets=targets,
        cleared_sqrt_coefficients=coeffs,
        confirmed=confirmed,
    )


@dataclass
class LatticeFixation:
    """Certified fixed points m + n*sqrt(d) over a rectangle of indices.

    ``points`` maps (m, n) to the provenance of its certificate. When the
    candidate sends sqrt(d) to -sqrt(d) the walk runs on the conjugated map
    (g = conjugation composed with candidate) and every point is checked
    against the original candidate at the end; ``conjugated_device`` records
    that reconstruction.
    """

    d: Fraction
    which: str
    m_bound: int
    n_bound: int
    order: str
    conjugated_device: bool
    points: dict[tuple[int, int], str]

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "which": self.which,
            "m_bound": self.m_bound,
            "n_bound": self.n_bound,
            "order": self.order,
            "conjugated_device": self.conjugated_device,
            "count": self.count,
            "points": [
                {"m": m, "n": n, "provenance": prov}
                for (m, n), prov in sorted(self.points.items())
            ],
        }


def lattice_fix(
    d: Coefficient,
    which: str,
    m_bound: int,
    n_bound: int,
    order: str = "row_major",
) -> LatticeFixation:
    """Certify the candidate on every lattice point of the rectangle.

    The only inputs taken on faith are the things the surrounding theory
    supplies: the candidate fixes the rationals, fixes (or negates) sqrt(d),
    and takes the resolved sign at 1 + sqrt(d). Everything else is derived
    by replayed progression moves. ``order`` picks the sweep (row_major:
    one vertical line then horizontal lines; column_major: the transpose);
    both must certify the same point set.
    """
    if m_bound < 1 or n_bound < 1:
        raise ValueError("bounds must be at least 1")
    if order not in ("row_major", "column_major"):
        raise ValueError(f"unknown order {order!r}")
    field = QuadraticField(d)
    candidate = _candidate(field, which)
    s = field.sqrt_d
    one = field.one

    f_s = candidate(s)
    if f_s == s:
        device = False
        g = candidate
    elif f_s == -s:
        device = True
        g = SdCandidate(field, lambda z: candidate(z).conjugate(), f"conj*{candidate.name}")
    else:
        raise CertificationFailed(
            f"{candidate.name} sends sqrt(d) to {field.format(f_s)}, not +-sqrt(d)"
        )

    points: dict[tuple[int, int], str] = {}

    def aim(m: int, n: int) -> QuadraticElement:
        return field.element(m, n)

    def certify(m: int, n: int, prov: str) -> None:
        el = aim(m, n)
        got = g(el)
        if got != el:
            raise CertificationFailed(
                f"lattice point {field.format(el)} maps to {field.format(got)}"
            )
        points[(m, n)] = prov

    # axes: rational points by the rational classification, sqrt multiples
    # by multiplicativity through the fixed generator
    for m in range(-m_bound, m_bound + 1):
        if m:
            certify(m, 0, "axis_rational")
    for n in range(-n_bound, n_bound + 1):
        if n:
            el = aim(0, n)
            via_mult = g(field.from_int(n)) * g(s)
            if g(el) != via_mult or g(el) != el:
                raise CertificationFailed(
                    f"sqrt-axis point {field.format(el)} not fixed multiplicatively"
                )
            points[(0, n)] = "axis_sqrt_multiple"
    certify(1, 1, "sign_resolution")

    def run_line(a: QuadraticElement, step: QuadraticElement, steps: int,
                 place: Callable[[int], tuple[int, int]], prov: str) -> None:
        for k, _term in ap_propagate(g, a, step, steps):
            points[place(k)] = prov

    if order == "row_major":
        run_line(one, s, n_bound, lambda k: (1, k), "ap_vertical_line")
        for n in range(-n_bound, n_bound + 1):
            if n:
                run_line(aim(0, n), one, m_bound, lambda k, n=n: (k, n), "ap_row")
    else:
        run_line(s, one, m_bound, lambda k: (k, 1), "ap_horizontal_line")
        for m in range(-m_bound, m_bound + 1):
            if m:
                run_line(aim(m, 0), s, n_bound, lambda k, m=m: (m, k), "ap_column")

    expected = {
        (m, n)
        for m in range(-m_bound, m_bound + 1)
        for n in range(-n_bound, n_bound + 1)
        if (m, n) != (0, 0)
    }
    if set(points) != expected:
        missing = sorted(expected - set(points))[:5]
        raise CertificationFailed(f"lattice coverage gap, first missing: {missing}")

    # reconstruct the original candidate's action on every certified point
    for (m, n) in points:
        el = aim(m, n)
        target = el.conjugate() if device else el
        if candidate(el) != target:
            raise CertificationFailed(
                f"candidate value at {field.format(el)} is "
                f"{field.format(candidate(el))}, expected {field.format(target)}"
            )

    return LatticeFixation(
        d=field.d,
        which=which,
        m_bound=m_bound,
        n_bound=n_bound,
        order=order,
        conjugated_device=device,
        points=points,
    )


# --- floating complex analogue ----------------------------------------------

def verify_complex_automorphisms(
    tolerance: float = 1e-9, sample_size: int = 1000, seed: int = 0
) -> dict[str, SdReport]:
    """Sampled equation check for identity and conjugation on C."""
    field = ApproxComplexField(tolerance)
    rng = random.Random(seed)
    out: dict[str, SdReport] = {}
    for which, func in (("identity", lambda z: z), ("conjugation", lambda z: z.conjugate())):
        candidate = SdCandidate(field, func, which)
        report = check_sd(candidate, sample_pairs(field, rng, sample_size))
        report.add_note(f"{which} on C, {sample_size} pairs, tolerance {tolerance}")
        out[which] = report
    return out


def check_half_angle_identities(
    tolerance: float = 1e-9, sample_size: int = 1000, seed: int = 0
) -> SdReport:
    """Unit-circle structure behind the complex two-case picture.

    For w = exp(i*theta/2): w/conj(w) = exp(i*theta), and the half-angle
    square roots recover the components: cos(theta/2) = sqrt((1+cos)/2) on
    theta in (-pi, pi), and sqrt((1-cos)/2) gives |sin(theta/2)| (the sign
    is lost by squaring, so only the magnitude is determined).
    """
    field = ApproxComplexField(tolerance)
    rng = random.Random(seed)
    report = SdReport()

    def expect(cond: bool, theta: float, lhs: complex, rhs: complex, tag: str) -> None:
        report.checked_pairs += 1
        if not cond:
            report.record(repr(theta), tag, field.format(lhs), field.format(rhs))

    for _ in range(sample_size):
        theta = rng.uniform(-math.pi, math.pi)
        w = cmath.exp(1j * theta / 2)
        ratio = w / w.conjugate()
        expect(field.eq(ratio, cmath.exp(1j * theta)), theta, ratio, cmath.exp(1j * theta), "w/conj(w)")
        cos_half = math.sqrt((1 + math.cos(theta)) / 2)
        expect(
            abs(cos_half - math.cos(theta / 2)) <= tolerance,
            theta,
            complex(cos_half),
            complex(math.cos(theta / 2)),
            "cos half-angle",
        )
        sin_half = math.sqrt((1 - math.cos(theta)) / 2)
        expect(
            abs(sin_half - abs(math.sin(theta / 2))) <= tolerance,
            theta,
            complex(sin_half),
            complex(abs(math.sin(theta / 2))),
            "sin half-angle magnitude",
        )
    report.add_note(
        f"half-angle identities on {sample_size} sampled angles, tolerance {tolerance}"
    )
    return report.finish()
