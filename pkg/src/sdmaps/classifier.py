"""Classification of equation-satisfying self-maps of odd prime fields.

The classification theorem says the maps of F_p satisfying the defining
equation are exactly the power maps x -> x**k with k odd and gcd(k, p-1) = 1.
This module searches for them three ways, from assumption-free to targeted:

  all_maps     every self-map table, p**p of them (affordable for p <= 7)
  constrained  every permutation fixing 0, 1 and p-1 ((p-3)! of them,
               affordable for p <= 13); the constraints are consequences
               of the equation, so nothing is lost
  power_map    only candidate exponents (any p up to the size cap)

Tiers that run must agree exactly, and every reported map is re-verified
after the fact by the generic engine over the complete pair set; any
disagreement raises InternalInconsistency rather than returning quietly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dataclass_field

from ._kernels import canonical_pairs, inverse_table, load_kernels
from .core import check_sd, table_map
from .fields import PrimeField, is_prime

ALL_MAPS_BUDGET = 7
CONSTRAINED_BUDGET = 13
DEFAULT_MAX_PRIME = 10007
POSTHOC_PAIR_LIMIT = 100_000

TIERS = ("power_map", "constrained", "all_maps")


class BudgetExceeded(ValueError):
    """The requested oracle enumeration is too large for its tier."""


class InternalInconsistency(Exception):
    """Two routes that must agree did not; the result cannot be trusted."""


@dataclass(frozen=True)
class FpMap:
    """One classified map of F_p, as an explicit table."""

    p: int
    table: tuple[int, ...]
    provenance: str

    @property
    def power_exponent(self) -> int | None:
        """The k with table = x -> x**k, if the map is a power map."""
        for k in power_map_candidates(self.p):
            if all(self.table[x] == pow(x, k, self.p) for x in range(self.p)):
                return k
        return None

    def as_candidate(self):
        return table_map(PrimeField(self.p), self.table, name=f"table mod {self.p}")

    def to_json(self) -> dict:
        entry: dict = {"provenance": self.provenance, "table": list(self.table)}
        k = self.power_exponent
        if k is not None:
            entry["k"] = k
        return entry


@dataclass
class ClassificationResult:
    p: int
    maps: list[FpMap]
    method: str
    stats: dict = dataclass_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "method": self.method,
            "maps": [m.to_json() for m in self.maps],
            "stats": self.stats,
        }


@dataclass(frozen=True)
class PowerMapCheck:
    """Outcome of checking one exponent, with the first witness on failure."""

    p: int
    k: int
    ok: bool
    witness: tuple[int, int] | None = None
    lhs: int | None = None
    rhs: int | None = None

    def to_json(self) -> dict:
        out: dict = {"p": self.p, "k": self.k, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["lhs"] = self.lhs
            out["rhs"] = self.rhs
        return out


def _decode_all_maps_id(idx: int, p: int) -> tuple[int, ...]:
    table = []
    t = idx
    for _ in range(p):
        table.append(t % p)
        t //= p
    return tuple(table)


def _decode_permutation_rank(rank: int, p: int) -> tuple[int, ...]:
    m = p - 3
    avail = list(range(2, p - 1))
    middle = []
    rem = rank
    for pos in range(m):
        f = math.factorial(m - 1 - pos)
        digit, rem = divmod(rem, f)
        middle.append(avail.pop(digit))
    return (0, 1, *middle, p - 1)


def _validate_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")


def oracle_all_maps(p: int, backend: str | None = None) -> list[tuple[int, ...]]:
    """Every self-map table of F_p passing all pairs; p <= 7 only."""
    _validate_odd_prime(p)
    if p > ALL_MAPS_BUDGET:
        raise BudgetExceeded(
            f"all-maps oracle enumerates p**p tables; p = {p} exceeds {ALL_MAPS_BUDGET}"
        )
    _, kernels = load_kernels(backend)
    inv = inverse_table(p)
    xs, ys, args = canonical_pairs(p)
    ids = kernels.scan_all_maps(p, inv, xs, ys, args)
    return [_decode_all_maps_id(int(i), p) for i in ids]


def oracle_constrained(p: int, backend: str | None = None) -> list[tuple[int, ...]]:
    """Every permutation fixing 0, 1, p-1 that passes all pairs; p <= 13.

    Restricting to such permutations is sound: the equation forces maps to
    be injective (hence permutations of a finite field), to fix 0 and 1,
    and to fix -1 by oddness.
    """
    _validate_odd_prime(p)
    if p > CONSTRAINED_BUDGET:
        raise BudgetExceeded(
            f"constrained oracle enumerates (p-3)! permutations; "
            f"p = {p} exceeds {CONSTRAINED_BUDGET}"
        )
    _, kernels = load_kernels(backend)
    inv = inverse_table(p)
    xs, ys, args = canonical_pairs(p)
    ranks = kernels.scan_constrained(p, inv, xs, ys, args)
    return [_decode_permutation_rank(int(r), p) for r in ranks]


def power_map_candidates(p: int) -> list[int]:
    """Exponents k (odd, coprime to p-1, 1 <= k < p-1) worth checking.

    Oddness of the map forces k odd; bijectivity forces gcd(k, p-1) = 1;
    exponents repeat mod p-1 on nonzero elements, so higher k add nothing.
    """
    _validate_odd_prime(p)
    return [k for k in range(1, p - 1, 2) if math.gcd(k, p - 1) == 1]


def is_sd_power_map(p: int, k: int, backend: str | None = None) -> PowerMapCheck:
    """Check x -> x**k over every ordered pair, reporting the first failure."""
    _validate_odd_prime(p)
    if k < 1:
        raise ValueError("exponent must be positive")
    _, kernels = load_kernels(backend)
    inv = inverse_table(p)
    hit = int(kernels.first_violation_power(p, k, inv))
    if hit < 0:
        return PowerMapCheck(p=p, k=k, ok=True)
    x, y = divmod(hit, p)
    fx, fy = pow(x, k, p), pow(y, k, p)
    arg = (x + y) * pow(x - y, -1, p) % p
    lhs = pow(arg, k, p)
    rhs = (fx + fy) * pow(fx - fy, -1, p) % p if fx != fy else None
    return PowerMapCheck(p=p, k=k, ok=False, witness=(x, y), lhs=lhs, rhs=rhs)


def classify(
    p: int,
    tier: str = "auto",
    backend: str | None = None,
    max_prime: int = DEFAULT_MAX_PRIME,
    posthoc_pair_limit: int = POSTHOC_PAIR_LIMIT,
) -> ClassificationResult:
    """Classify the equation-satisfying maps of F_p, cross-checking tiers.

    ``tier`` caps how much enumeration to attempt: "power_map" runs only
    the exponent search, "constrained" adds the permutation oracle when
    affordable, "all_maps" / "auto" add every affordable tier. All tiers
    that run must produce the same set of tables. Maps are additionally
    re-verified against the generic checking engine over the full pair set
    whenever p*(p-1) <= posthoc_pair_limit.
    """
    _validate_odd_prime(p)
    if p > max_prime:
        raise ValueError(f"p = {p} exceeds the size cap {max_prime}")
    if tier not in TIERS and tier != "auto":
        raise ValueError(f"unknown tier {tier!r}")
    resolved, _ = load_kernels(backend)
    tier_rank = {"power_map": 0, "constrained": 1, "all_maps": 2}
    cap = tier_rank.get(tier, 2)

    t0 = time.perf_counter()
    examined: dict[str, int] = {}
    found: dict[str, set[tuple[int, ...]]] = {}

    candidates = power_map_candidates(p)
    examined["power_map"] = len(candidates)
    passing = [
        tuple(pow(x, k, p) for x in range(p))
        for k in candidates
        if is_sd_power_map(p, k, backend=backend).ok
    ]
    found["power_map"] = set(passing)

    if cap >= 1 and p <= CONSTRAINED_BUDGET:
        examined["constrained"] = math.factorial(p - 3)
        found["constrained"] = set(oracle_constrained(p, backend=backend))
    if cap >= 2 and p <= ALL_MAPS_BUDGET:
        examined["all_maps"] = p**p
        found["all_maps"] = set(oracle_all_maps(p, backend=backend))

    reference: set[tuple[int, ...]] | None = None
    for name in TIERS:
        if name not in found:
            continue
        if reference is None:
            reference = found[name]
        elif found[name] != reference:
            raise InternalInconsistency(
                f"tier disagreement for p = {p}: "
                + "; ".join(f"{n}: {sorted(s)}" for n, s in found.items())
            )
    method = max(found, key=lambda name: tier_rank[name])

    field = PrimeField(p)
    reverified = p * (p - 1) <= posthoc_pair_limit
    if reverified:
        for table in sorted(found[method]):
            report = check_sd(
                table_map(field, table, name=f"table mod {p}"), field.ordered_pairs()
            )
            if not report.passed:
                raise InternalInconsistency(
                    f"search accepted a table that fails re-verification: {table}"
                )

    maps = [FpMap(p=p, table=t, provenance=method) for t in sorted(found[method])]
    stats = {
        "backend": resolved,
        "examined": examined,
        "posthoc_reverified": reverified,
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    return ClassificationResult(p=p, maps=maps, method=method, stats=stats)


@dataclass
class RangeOutcome:
    """classify() applied to one prime of a batch; error text if it failed."""

    p: int
    result: ClassificationResult | None = None
    error: str | None = None

    def to_json(self) -> dict:
        if self.result is not None:
            return self.result.to_json()
        return {"p": self.p, "error": self.error}


def classify_range(primes: list[int], **kwargs) -> list[RangeOutcome]:
    """classify() over a batch; per-entry failures do not stop the batch."""
    out = []
    for p in primes:
        try:
            out.append(RangeOutcome(p=p, result=classify(p, **kwargs)))
        except InternalInconsistency:
            raise  # never paper over a cross-check failure
        except (ValueError, BudgetExceeded, RuntimeError) as exc:
            out.append(RangeOutcome(p=p, error=str(exc)))
    return out


def exhaustive_pair_count(p: int) -> int:
    return p * (p - 1)
