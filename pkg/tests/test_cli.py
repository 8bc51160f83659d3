"""End-to-end tests for the command line interface.

Commands run in-process through ``cli.main`` so exit codes and payloads can
be asserted directly. JSON payloads must be deterministic for fixed
arguments once the "stats" blocks are removed.
"""

import json

import pytest

from sdmaps import classifier, cli


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys):
    code, out, err = run_cli([*argv, "--format", "json"], capsys)
    assert err == ""
    return code, json.loads(out)


def strip_stats(obj):
    if isinstance(obj, dict):
        return {k: strip_stats(v) for k, v in obj.items() if k != "stats"}
    if isinstance(obj, list):
        return [strip_stats(v) for v in obj]
    return obj


class TestVerifySymbolic:
    def test_passes(self, capsys):
        code, payload = run_json(["verify-symbolic", "--max-n", "50"], capsys)
        assert code == 0
        assert payload["status"] == "pass"
        by_name = {c["name"]: c for c in payload["checks"]}
        table = by_name["symbolic-table"]
        assert len(table["entries"]) == 9
        assert table["entries"][2] == "t"
        assert table["evaluated_at_2"] == [str(n) for n in range(9)]
        constraint = by_name["free-value-constraint"]
        assert constraint["polynomial"] == "t^4 - 3*t^3 + 2*t^2"
        assert constraint["survivor"] == "2"
        assert ["0", 2] in constraint["roots"]
        induction = by_name["integer-induction"]
        assert induction["status"] == "pass"
        assert induction["checked_pairs"] == 48

    def test_max_n_too_small(self, capsys):
        code, out, err = run_cli(["verify-symbolic", "--max-n", "2"], capsys)
        assert code == 1
        assert "at least 3" in err

    def test_text_rendering(self, capsys):
        code, out, err = run_cli(["verify-symbolic", "--max-n", "10"], capsys)
        assert code == 0
        assert "command: verify-symbolic" in out
        assert "status: pass" in out
        assert "check symbolic-table: pass" in out
        assert "survivor: 2" in out


class TestClassify:
    def test_small_primes(self, capsys):
        code, payload = run_json(["classify", "--primes", "3,5"], capsys)
        assert code == 0
        counts = {r["p"]: len(r["maps"]) for r in payload["results"]}
        assert counts == {3: 1, 5: 2}
        five = next(r for r in payload["results"] if r["p"] == 5)
        assert [m.get("k") for m in five["maps"]] == [1, 3]

    def test_requires_primes(self, capsys):
        code, out, err = run_cli(["classify"], capsys)
        assert code == 1
        assert "--primes" in err

    @pytest.mark.parametrize("bad", ["4", "9", "2", "10009"])
    def test_rejects_bad_primes(self, bad, capsys):
        code, out, err = run_cli(["classify", "--primes", bad], capsys)
        assert code == 1

    def test_backend_flag(self, capsys):
        code, payload = run_json(
            ["classify", "--primes", "5", "--backend", "numpy"], capsys
        )
        assert code == 0
        assert payload["config"]["backend"] == "numpy"

    def test_internal_inconsistency_exit_code(self, capsys, monkeypatch):
        def explode(*args, **kwargs):
            raise classifier.InternalInconsistency("tiers disagree")

        monkeypatch.setattr(classifier, "classify_range", explode)
        code, out, err = run_cli(["classify", "--primes", "5"], capsys)
        assert code == 3
        assert "internal inconsistency" in err

    def test_tier_cap_skips_unaffordable_tiers(self, capsys):
        # all-maps is over budget for 11; the cap skips it rather than failing
        code, payload = run_json(
            ["classify", "--primes", "11", "--max-oracle-tier", "all-maps"],
            capsys,
        )
        assert code == 0
        assert payload["results"][0]["method"] == "constrained"

    def test_per_prime_error_is_exit_2(self, capsys, monkeypatch):
        real = classifier.classify

        def flaky(p, **kwargs):
            if p == 7:
                raise classifier.BudgetExceeded("synthetic budget failure")
            return real(p, **kwargs)

        monkeypatch.setattr(classifier, "classify", flaky)
        code, out, err = run_cli(
            ["classify", "--primes", "5,7", "--format", "json"], capsys
        )
        assert code == 2
        by_p = {r["p"]: r for r in json.loads(out)["results"]}
        assert by_p[7]["error"] == "synthetic budget failure"
        assert len(by_p[5]["maps"]) == 2


class TestVerifyQuad:
    def test_passes(self, capsys):
        code, payload = run_json(
            ["verify-quad", "--d", "2", "--grid", "3x3", "--sample-size", "20"],
            capsys,
        )
        assert code == 0
        assert payload["status"] == "pass"
        by_name = {c["name"]: c for c in payload["checks"]}
        assert by_name["lattice:identity"]["certified_points"] == 48
        assert by_name["lattice:conjugation"]["conjugated_device"] is True
        assert by_name["wrong-sign-contradiction:plus"]["confirmed"] is True
        assert by_name["wrong-sign-contradiction:minus"]["confirmed"] is True
        provs = by_name["lattice:identity"]["provenance_counts"]
        assert sum(provs.values()) == 48

    def test_single_map(self, capsys):
        code, payload = run_json(
            ["verify-quad", "--d", "-1", "--map", "conjugation",
             "--grid", "2x2", "--sample-size", "10"],
            capsys,
        )
        assert code == 0
        names = [c["name"] for c in payload["checks"]]
        assert "automorphism-sd:conjugation" in names
        assert "automorphism-sd:identity" not in names

    def test_requires_d(self, capsys):
        code, out, err = run_cli(["verify-quad"], capsys)
        assert code == 1
        assert "--d" in err

    @pytest.mark.parametrize("bad_d", ["4", "9/4", "0", "x"])
    def test_rejects_bad_d(self, bad_d, capsys):
        code, out, err = run_cli(["verify-quad", "--d", bad_d], capsys)
        assert code == 1

    @pytest.mark.parametrize("bad_grid", ["0x5", "5", "axb", "-2x3"])
    def test_rejects_bad_grid(self, bad_grid, capsys):
        code, out, err = run_cli(
            ["verify-quad", "--d", "2", "--grid", bad_grid], capsys
        )
        assert code == 1


class TestVerifyComplex:
    def test_passes(self, capsys):
        code, payload = run_json(
            ["verify-complex", "--sample-size", "50"], capsys
        )
        assert code == 0
        names = {c["name"] for c in payload["checks"]}
        assert names == {
            "automorphism-sd:identity",
            "automorphism-sd:conjugation",
            "half-angle-identities",
        }

    @pytest.mark.parametrize("bad", ["-1", "0", "nope"])
    def test_rejects_bad_tolerance(self, bad, capsys):
        code, out, err = run_cli(["verify-complex", "--tolerance", bad], capsys)
        assert code == 1


class TestApDemo:
    def test_rational_progression(self, capsys):
        code, payload = run_json(
            ["ap-demo", "--a", "1", "--d", "1", "--steps", "3"], capsys
        )
        assert code == 0
        derived = {item["offset"]: item["term"] for item in payload["derived"]}
        # backward walk stops at zero: offsets -2, -3 never emitted
        assert derived == {2: "3", 3: "4", -1: "0"}
        assert payload["count"] == 3

    def test_negative_fraction_step(self, capsys):
        # regression: values like -1/2 must parse as option values
        code, out, err = run_cli(
            ["ap-demo", "--a", "1", "--d", "-1/2", "--steps", "2",
             "--format", "json"], capsys
        )
        assert code == 2
        payload = json.loads(out)
        assert payload["zero_offset"] == 2
        assert payload["derived"] == []

    def test_zero_base(self, capsys):
        code, out, err = run_cli(
            ["ap-demo", "--a", "0", "--d", "3", "--format", "json"], capsys
        )
        assert code == 2
        assert json.loads(out)["zero_offset"] == 0

    def test_quadratic_progression(self, capsys):
        code, payload = run_json(
            ["ap-demo", "--a", "sqrt(2)", "--d", "1", "--quad-d", "2",
             "--steps", "2"], capsys
        )
        assert code == 0
        derived = {item["offset"]: item["term"] for item in payload["derived"]}
        assert derived == {2: "2+sqrt(2)", -1: "-1+sqrt(2)", -2: "-2+sqrt(2)"}

    def test_requires_a_and_d(self, capsys):
        code, out, err = run_cli(["ap-demo", "--a", "1"], capsys)
        assert code == 1
        code, out, err = run_cli(["ap-demo", "--d", "1"], capsys)
        assert code == 1

    def test_rejects_negative_steps(self, capsys):
        code, out, err = run_cli(
            ["ap-demo", "--a", "1", "--d", "1", "--steps", "-1"], capsys
        )
        assert code == 1

    def test_rejects_square_quad_d(self, capsys):
        code, out, err = run_cli(
            ["ap-demo", "--a", "sqrt(4)", "--d", "1", "--quad-d", "4"], capsys
        )
        assert code == 1


class TestCounterexamples:
    def test_passes(self, capsys):
        code, payload = run_json(
            ["counterexamples", "--k", "2", "--samples", "20"], capsys
        )
        assert code == 0
        check = payload["checks"][0]
        assert check["name"] == "substitution:k=2"
        assert check["non_surjective"] is True
        assert check["witness_exponent"] == 1
        assert check["missing_element"] == "x"
        assert check["image_control"]["in_image"] is True

    def test_rejects_small_exponent(self, capsys):
        code, out, err = run_cli(["counterexamples", "--k", "1"], capsys)
        assert code == 1


class TestTopLevel:
    def test_no_command_prints_help(self, capsys):
        code, out, err = run_cli([], capsys)
        assert code == 1
        assert "usage" in err.lower()

    def test_unknown_command(self, capsys):
        code, out, err = run_cli(["frobnicate"], capsys)
        assert code == 1

    def test_unknown_flag(self, capsys):
        code, out, err = run_cli(["verify-symbolic", "--bogus"], capsys)
        assert code == 1

    def test_json_file_written_in_text_mode(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        code, out, err = run_cli(
            ["ap-demo", "--a", "1", "--d", "1", "--steps", "2",
             "--json", str(path)], capsys
        )
        assert code == 0
        assert out.startswith("command: ap-demo")
        payload = json.loads(path.read_text())
        assert payload["command"] == "ap-demo"
        assert payload["status"] == "pass"

    def test_seed_recorded_in_config(self, capsys):
        code, payload = run_json(
            ["verify-complex", "--sample-size", "20", "--seed", "7"], capsys
        )
        assert code == 0
        assert payload["config"]["seed"] == 7


class TestConfigFile:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# settings\nmax-n = 25\nseed = 9\n")
        code, payload = run_json(
            ["verify-symbolic", "--config", str(cfg)], capsys
        )
        assert code == 0
        assert payload["config"]["max_n"] == 25
        assert payload["config"]["seed"] == 9

    def test_cli_beats_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max-n = 25\n")
        code, payload = run_json(
            ["verify-symbolic", "--config", str(cfg), "--max-n", "10"], capsys
        )
        assert code == 0
        assert payload["config"]["max_n"] == 10

    def test_config_format_key(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("format = json\n")
        code, out, err = run_cli(
            ["verify-symbolic", "--max-n", "5", "--config", str(cfg)], capsys
        )
        assert code == 0
        assert json.loads(out)["command"] == "verify-symbolic"

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("tier = 3\n")
        code, out, err = run_cli(
            ["verify-symbolic", "--config", str(cfg)], capsys
        )
        assert code == 1
        assert "unknown key" in err

    def test_malformed_line_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just some words\n")
        code, out, err = run_cli(
            ["verify-symbolic", "--config", str(cfg)], capsys
        )
        assert code == 1
        assert "key=value" in err

    def test_missing_file_rejected(self, capsys, tmp_path):
        code, out, err = run_cli(
            ["verify-symbolic", "--config", str(tmp_path / "nope.cfg")], capsys
        )
        assert code == 1
        assert "cannot read config" in err

    def test_bad_config_value(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max-n = lots\n")
        code, out, err = run_cli(
            ["verify-symbolic", "--config", str(cfg)], capsys
        )
        assert code == 1


DETERMINISM_COMMANDS = [
    ["verify-symbolic", "--max-n", "30"],
    ["classify", "--primes", "3,5,7"],
    ["verify-quad", "--d", "2", "--grid", "3x3", "--sample-size", "20"],
    ["verify-complex", "--sample-size", "40"],
    ["ap-demo", "--a", "3", "--d", "2", "--steps", "5"],
    ["counterexamples", "--k", "2,3", "--samples", "15"],
]


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv", DETERMINISM_COMMANDS, ids=[c[0] for c in DETERMINISM_COMMANDS]
    )
    def test_byte_identical_without_stats(self, argv, capsys, tmp_path):
        blobs = []
        for run in range(2):
            path = tmp_path / f"run{run}.json"
            code, out, err = run_cli(
                [*argv, "--seed", "11", "--json", str(path)], capsys
            )
            assert code == 0
            stripped = strip_stats(json.loads(path.read_text()))
            blobs.append(json.dumps(stripped, indent=2, sort_keys=True))
        assert blobs[0] == blobs[1]

    def test_stats_block_present(self, capsys):
        code, payload = run_json(
            ["ap-demo", "--a", "1", "--d", "1", "--steps", "2"], capsys
        )
        assert code == 0
        assert "elapsed_s" in payload["stats"]
