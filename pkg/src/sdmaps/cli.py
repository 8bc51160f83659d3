"""Command line interface.

Subcommands bundle the verification flows: symbolic forcing on the integers
(verify-symbolic), finite-field classification (classify), quadratic and
floating-complex automorphism checks (verify-quad, verify-complex), the
arithmetic-progression propagation demo (ap-demo), and the non-surjective
endomorphisms of Q(x) (counterexamples).

Every run produces one payload, printable as text or JSON and optionally
written to a file. Payloads are deterministic for fixed arguments and seed
except for the segregated "stats" blocks (wall times and the like).

Exit codes: 0 all checks passed, 1 usage or configuration error, 2 a
mathematical check failed, 3 an internal cross-check disagreed.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import classifier, core, quadratic
from .exact import ParseError, format_polynomial
from .fields import (
    FunctionField,
    QuadraticField,
    RationalField,
    is_prime,
    parse_quadratic,
    power_image_witness,
    validate_d,
)


class UsageError(Exception):
    """Bad arguments or configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        # accept values like -1/2 or -1+sqrt(2) after --a / --d; no option
        # here starts with a digit, so anything -<digit>... is a value
        self._negative_number_matcher = re.compile(r"^-\d")

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass
class RunConfig:
    """Resolved settings for one invocation (flags beat config beats defaults)."""

    command: str
    seed: int
    out_format: str
    json_path: str | None
    options: dict

    def payload_view(self) -> dict:
        return {"seed": self.seed, **self.options}


_GLOBAL_KEYS = {"seed", "format", "json"}
_COMMAND_KEYS = {
    "verify-symbolic": {"max-n"},
    "classify": {"primes", "max-oracle-tier", "backend", "max-prime"},
    "verify-quad": {"d", "map", "grid", "sample-size"},
    "verify-complex": {"tolerance", "sample-size"},
    "ap-demo": {"a", "d", "steps", "quad-d", "order"},
    "counterexamples": {"k", "samples"},
}
_ALL_KEYS = _GLOBAL_KEYS.union(*_COMMAND_KEYS.values())


def _load_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in _ALL_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                out[key] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return out


def _resolve(args: argparse.Namespace, cfg: dict[str, str], key: str,
             default, cast: Callable):
    cli_value = getattr(args, key.replace("-", "_"), None)
    if cli_value is not None:
        return cli_value
    if key in cfg:
        try:
            return cast(cfg[key])
        except (ValueError, ParseError) as exc:
            raise UsageError(f"config key {key}: {exc}") from None
    return default


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _grid(text: str) -> tuple[int, int]:
    try:
        m_text, n_text = text.lower().split("x")
        m, n = int(m_text), int(n_text)
    except ValueError:
        raise UsageError(f"expected MxN grid like 20x20, got {text!r}") from None
    if m < 1 or n < 1:
        raise UsageError("grid bounds must be at least 1")
    return m, n


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a rational like 3/2, got {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None
    if value <= 0:
        raise UsageError("tolerance must be positive")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="sdmaps", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    common.add_argument("--json", metavar="PATH", default=None,
                        help="also write the JSON payload to PATH")
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help="stdout format (default text)")
    common.add_argument("--config", metavar="PATH", default=None,
                        help="key=value config file; command line wins")

    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("verify-symbolic", parents=[common],
                       help="forced integer values, free-value constraint, induction")
    p.add_argument("--max-n", type=int, default=None,
                   help="induction horizon (default 1000)")

    p = sub.add_parser("classify", parents=[common],
                       help="classify equation-satisfying maps of F_p")
    p.add_argument("--primes", default=None,
                   help="comma-separated odd primes, e.g. 3,5,7")
    p.add_argument("--max-oracle-tier", dest="max_oracle_tier", default=None,
                   choices=("auto", "power-map", "constrained", "all-maps"),
                   help="strongest enumeration tier to attempt (default auto)")
    p.add_argument("--backend", choices=("auto", "numba", "numpy"), default=None,
                   help="kernel backend (default: SDMAPS_BACKEND or auto)")
    p.add_argument("--max-prime", dest="max_prime", type=int, default=None,
                   help=f"size cap (default {classifier.DEFAULT_MAX_PRIME})")

    p = sub.add_parser("verify-quad", parents=[common],
                       help="automorphism checks over Q(sqrt(d))")
    p.add_argument("--d", default=None, help="nonzero non-square rational d")
    p.add_argument("--map", default=None,
                   choices=("identity", "conjugation", "both"))
    p.add_argument("--grid", default=None, help="lattice bounds MxN (default 20x20)")
    p.add_argument("--sample-size", dest="sample_size", type=int, default=None,
                   help="sampled pairs per check (default 500)")

    p = sub.add_parser("verify-complex", parents=[common],
                       help="identity/conjugation on C plus half-angle structure")
    p.add_argument("--tolerance", default=None, help="comparison tolerance (default 1e-9)")
    p.add_argument("--sample-size", dest="sample_size", type=int, default=None,
                   help="sampled pairs per check (default 1000)")

    p = sub.add_parser("ap-demo", parents=[common],
                       help="arithmetic-progression propagation from three fixed points")
    p.add_argument("--a", default=None, help="progression base (rational, or quadratic with --quad-d)")
    p.add_argument("--d", default=None, help="progression step")
    p.add_argument("--steps", type=int, default=None, help="moves per direction (default 10)")
    p.add_argument("--quad-d", dest="quad_d", default=None,
                   help="work in Q(sqrt(quad-d)) and parse --a/--d as a+b*sqrt(d)")
    p.add_argument("--order", choices=("forward_first", "interleaved"), default=None)

    p = sub.add_parser("counterexamples", parents=[common],
                       help="equation-satisfying but non-surjective maps of Q(x)")
    p.add_argument("--k", default=None, help="comma-separated exponents (default 2,3)")
    p.add_argument("--samples", type=int, default=None,
                   help="sampled pairs per exponent (default 200)")

    return parser


# --- command runners ---------------------------------------------------------

def _report_check(name: str, report: core.SdReport, **extra) -> dict:
    entry = {"name": name, **report.to_json(), **extra}
    return entry


def _run_verify_symbolic(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    max_n = _resolve(args, cfg, "max-n", 1000, int)
    if max_n < 3:
        raise UsageError("--max-n must be at least 3")
    run = RunConfig("verify-symbolic", seed, "text", None, {"max_n": max_n})

    seq = core.symbolic_sequence(8)
    rendered = seq.render("t")
    at_two = [entry.evaluate(Fraction(2)) for entry in seq.entries]
    table_ok = at_two == [Fraction(n) for n in range(9)]
    checks = [{
        "name": "symbolic-table",
        "status": "pass" if table_ok else "fail",
        "entries": rendered,
        "evaluated_at_2": [str(v) for v in at_two],
    }]

    constraint = core.free_value_constraint()
    checks.append({
        "name": "free-value-constraint",
        "status": "pass",
        "polynomial": format_polynomial(constraint.polynomial, "t"),
        "roots": [[str(r), m] for r, m in constraint.roots],
        "survivor": str(constraint.survivor),
    })

    induction = core.integer_induction_check(max_n)
    checks.append(_report_check("integer-induction", induction))
    return run, {"checks": checks}


_TIER_NAMES = {
    "auto": "auto",
    "power-map": "power_map",
    "constrained": "constrained",
    "all-maps": "all_maps",
}


def _run_classify(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    primes = _resolve(args, cfg, "primes", None, _int_list)
    if isinstance(primes, str):
        primes = _int_list(primes)
    if not primes:
        raise UsageError("classify needs --primes, e.g. --primes 3,5,7")
    tier = _resolve(args, cfg, "max-oracle-tier", "auto", str)
    if tier not in _TIER_NAMES:
        raise UsageError(f"unknown tier {tier!r}")
    backend = _resolve(args, cfg, "backend", None, str)
    max_prime = _resolve(args, cfg, "max-prime", classifier.DEFAULT_MAX_PRIME, int)
    for p in primes:
        if not is_prime(p) or p == 2:
            raise UsageError(f"{p} is not an odd prime")
        if p > max_prime:
            raise UsageError(f"{p} exceeds the size cap {max_prime}")
    run = RunConfig("classify", seed, "text", None, {
        "primes": primes,
        "max_oracle_tier": tier,
        "backend": backend or "auto",
        "max_prime": max_prime,
    })
    outcomes = classifier.classify_range(
        primes, tier=_TIER_NAMES[tier], backend=backend, max_prime=max_prime
    )
    results = [o.to_json() for o in outcomes]
    ok = all(o.error is None for o in outcomes)
    payload = {"results": results}
    if not ok:
        payload["status_hint"] = "one or more primes failed to classify"
    payload["_ok"] = ok
    return run, payload


def _run_verify_quad(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    d_text = _resolve(args, cfg, "d", None, str)
    if d_text is None:
        raise UsageError("verify-quad needs --d")
    d = _fraction(str(d_text))
    reason = validate_d(d)
    if reason is not None:
        raise UsageError(reason)
    which = _resolve(args, cfg, "map", "both", str)
    if which not in ("identity", "conjugation", "both"):
        raise UsageError(f"unknown map {which!r}")
    grid_text = _resolve(args, cfg, "grid", "20x20", str)
    m_bound, n_bound = _grid(str(grid_text))
    sample_size = _resolve(args, cfg, "sample-size", 500, int)
    if sample_size < 1:
        raise UsageError("--sample-size must be positive")
    run = RunConfig("verify-quad", seed, "text", None, {
        "d": str(d),
        "map": which,
        "grid": f"{m_bound}x{n_bound}",
        "sample_size": sample_size,
    })

    maps = ("identity", "conjugation") if which == "both" else (which,)
    checks: list[dict] = []
    field = QuadraticField(d)
    for name in maps:
        report = quadratic.verify_automorphism_sd(d, name, sample_size, seed)
        checks.append(_report_check(f"automorphism-sd:{name}", report))

        rng = random.Random(seed + 1)
        sample = [field.random_element(rng) for _ in range(min(sample_size, 50))]
        candidate = core.identity_map(field) if name == "identity" else core.conjugation_map(field)
        checks.append(_report_check(
            f"properties:{name}", core.check_properties(candidate, sample)
        ))

        case = "plus" if name == "identity" else "minus"
        case_report = quadratic.check_case_formulas(
            d, case, sample_size=min(sample_size, 200), seed=seed
        )
        checks.append(_report_check(f"case-formulas:{case}", case_report))

        lattice = quadratic.lattice_fix(d, name, m_bound, n_bound)
        checks.append({
            "name": f"lattice:{name}",
            "status": "pass",
            "certified_points": lattice.count,
            "conjugated_device": lattice.conjugated_device,
            "provenance_counts": _provenance_counts(lattice),
        })

    for branch in ("plus", "minus"):
        contradiction = quadratic.wrong_sign_contradiction(d, branch)
        checks.append({
            "name": f"wrong-sign-contradiction:{branch}",
            "status": "pass" if contradiction.confirmed else "fail",
            **contradiction.to_json(),
        })
    return run, {"checks": checks}


def _provenance_counts(lattice: quadratic.LatticeFixation) -> dict[str, int]:
    counts: dict[str, int] = {}
    for prov in lattice.points.values():
        counts[prov] = counts.get(prov, 0) + 1
    return dict(sorted(counts.items()))


def _run_verify_complex(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    tolerance = _resolve(args, cfg, "tolerance", 1e-9, _positive_float)
    if isinstance(tolerance, str):
        tolerance = _positive_float(tolerance)
    if tolerance <= 0:
        raise UsageError("tolerance must be positive")
    sample_size = _resolve(args, cfg, "sample-size", 1000, int)
    if sample_size < 1:
        raise UsageError("--sample-size must be positive")
    run = RunConfig("verify-complex", seed, "text", None, {
        "tolerance": tolerance,
        "sample_size": sample_size,
    })
    checks = []
    for name, report in quadratic.verify_complex_automorphisms(
        tolerance, sample_size, seed
    ).items():
        checks.append(_report_check(f"automorphism-sd:{name}", report))
    checks.append(_report_check(
        "half-angle-identities",
        quadratic.check_half_angle_identities(tolerance, sample_size, seed),
    ))
    return run, {"checks": checks}


def _run_ap_demo(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    a_text = _resolve(args, cfg, "a", None, str)
    d_text = _resolve(args, cfg, "d", None, str)
    if a_text is None or d_text is None:
        raise UsageError("ap-demo needs --a and --d")
    steps = _resolve(args, cfg, "steps", 10, int)
    if steps < 0:
        raise UsageError("--steps must be nonnegative")
    order = _resolve(args, cfg, "order", "forward_first", str)
    if order not in ("forward_first", "interleaved"):
        raise UsageError(f"unknown order {order!r}")
    quad_d = _resolve(args, cfg, "quad-d", None, str)

    if quad_d is not None:
        dq = _fraction(str(quad_d))
        reason = validate_d(dq)
        if reason is not None:
            raise UsageError(reason)
        field = QuadraticField(dq)
        try:
            a = parse_quadratic(str(a_text), dq)
            d = parse_quadratic(str(d_text), dq)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
    else:
        field = RationalField()
        a = _fraction(str(a_text))
        d = _fraction(str(d_text))

    run = RunConfig("ap-demo", seed, "text", None, {
        "a": field.format(a),
        "d": field.format(d),
        "steps": steps,
        "order": order,
        **({"quad_d": str(quad_d)} if quad_d is not None else {}),
    })
    candidate = core.identity_map(field)
    try:
        derived = core.ap_propagate(candidate, a, d, steps, order)
    except core.ZeroTermEncountered as exc:
        return run, {
            "derived": [],
            "error": str(exc),
            "zero_offset": exc.index,
            "_ok": False,
        }
    terms = [{"offset": k, "term": field.format(t)} for k, t in derived]
    return run, {"derived": terms, "count": len(terms)}


def _run_counterexamples(args, cfg) -> tuple[RunConfig, dict]:
    seed = _resolve(args, cfg, "seed", 0, int)
    ks = _resolve(args, cfg, "k", [2, 3], _int_list)
    if isinstance(ks, str):
        ks = _int_list(ks)
    if any(k < 2 for k in ks):
        raise UsageError("exponents must be at least 2 to be proper substitutions")
    samples = _resolve(args, cfg, "samples", 200, int)
    if samples < 1:
        raise UsageError("--samples must be positive")
    run = RunConfig("counterexamples", seed, "text", None, {
        "k": ks,
        "samples": samples,
    })
    field = FunctionField()
    checks = []
    for k in ks:
        candidate = core.function_power_map(field, k)
        rng = random.Random(seed)
        report = core.check_sd(candidate, core.sample_pairs(field, rng, samples))
        report.add_note(f"substitution x -> x^{k} on {samples} sampled pairs")
        generator = field.generator
        witness = power_image_witness(k, generator)
        image_of_generator = candidate(generator)
        round_trip = power_image_witness(k, image_of_generator)
        checks.append({
            "name": f"substitution:k={k}",
            **report.to_json(),
            "non_surjective": witness is not None,
            "missing_element": field.format(generator),
            "witness_exponent": witness,
            "image_control": {
                "element": field.format(image_of_generator),
                "in_image": round_trip is None,
            },
            "status": "pass" if (report.passed and witness is not None and round_trip is None) else "fail",
        })
    return run, {"checks": checks}


_RUNNERS = {
    "verify-symbolic": _run_verify_symbolic,
    "classify": _run_classify,
    "verify-quad": _run_verify_quad,
    "verify-complex": _run_verify_complex,
    "ap-demo": _run_ap_demo,
    "counterexamples": _run_counterexamples,
}


# --- payload assembly and output ---------------------------------------------

def _overall_ok(payload: dict) -> bool:
    if payload.pop("_ok", True) is False:
        return False
    for check in payload.get("checks", []):
        if check.get("status") == "fail":
            return False
    return True


def _render_text(payload: dict) -> str:
    lines = [f"command: {payload['command']}", f"status: {payload['status']}"]
    for key, value in payload.get("config", {}).items():
        lines.append(f"  config {key} = {value}")
    for check in payload.get("checks", []):
        name, status = check.get("name"), check.get("status", "-")
        lines.append(f"check {name}: {status}")
        if "checked_pairs" in check:
            lines.append(f"  checked: {check['checked_pairs']}")
        for violation in check.get("violations", [])[:5]:
            lines.append(
                f"  violation x={violation['x']} y={violation['y']} "
                f"lhs={violation['lhs']} rhs={violation['rhs']}"
            )
        if check.get("notes"):
            for note in str(check["notes"]).splitlines():
                lines.append(f"  note: {note}")
        for key in ("certified_points", "survivor", "witness_exponent",
                    "non_surjective", "hypothetical", "confirmed"):
            if key in check:
                lines.append(f"  {key}: {check[key]}")
    for result in payload.get("results", []):
        if "error" in result:
            lines.append(f"p={result['p']}: error: {result['error']}")
        else:
            descs = []
            for entry in result["maps"]:
                k = entry.get("k")
                descs.append(f"x^{k}" if k is not None else str(entry["table"]))
            lines.append(
                f"p={result['p']}: {len(result['maps'])} map(s) via {result['method']}: "
                + ", ".join(descs)
            )
    if "derived" in payload:
        for item in payload["derived"]:
            lines.append(f"  offset {item['offset']}: {item['term']}")
    if payload.get("error"):
        lines.append(f"error: {payload['error']}")
    return "\n".join(lines)


def _finish(run: RunConfig, body: dict) -> tuple[dict, bool]:
    ok = _overall_ok(body)
    payload = {
        "command": run.command,
        "config": run.payload_view(),
        "status": "pass" if ok else "fail",
        **body,
    }
    return payload, ok


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1

    started = time.perf_counter()
    try:
        cfg = _load_config(args.config) if args.config else {}
        run, body = _RUNNERS[args.command](args, cfg)
        run.seed = _resolve(args, cfg, "seed", 0, int)
        run.out_format = _resolve(args, cfg, "format", "text", str)
        if run.out_format not in ("text", "json"):
            raise UsageError(f"unknown format {run.out_format!r}")
        run.json_path = _resolve(args, cfg, "json", None, str)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except classifier.InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (core.CertificationFailed, core.SelfCheckFailed,
            core.RecurrenceDegenerate, core.ZeroTermEncountered) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2

    payload, ok = _finish(run, body)
    payload["stats"] = {"elapsed_s": round(time.perf_counter() - started, 6)}
    json_text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if run.out_format == "json":
        sys.stdout.write(json_text)
    else:
        print(_render_text(payload))
    if run.json_path:
        with open(run.json_path, "w", encoding="utf-8") as fh:
            fh.write(json_text)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
