"""Tests for the quadratic-extension and complex verification flows."""

import random
from fractions import Fraction

import pytest

from sdmaps.core import CertificationFailed, SdCandidate, check_sd, sample_pairs
from sdmaps.fields import ApproxComplexField, QuadraticField
from sdmaps.quadratic import (
    check_case_formulas,
    check_half_angle_identities,
    lattice_fix,
    verify_automorphism_sd,
    verify_complex_automorphisms,
    wrong_sign_contradiction,
)

D_SUITE = (2, 3, 5, -1, -2, -3)


class TestAutomorphismSd:
    @pytest.mark.parametrize("d", D_SUITE)
    @pytest.mark.parametrize("which", ["identity", "conjugation"])
    def test_suite_passes(self, d, which):
        report = verify_automorphism_sd(d, which, sample_size=100, seed=20240814)
        assert report.passed, report.violations[:1]
        assert report.checked_pairs == 100

    def test_conjugation_frozen_pair(self):
        field = QuadraticField(2)
        cand = SdCandidate(field, lambda z: z.conjugate(), "conjugation")
        x, y = field.element(1, 1), field.element(0, 1)
        arg = (x + y) / (x - y)
        lhs = cand(arg)
        fx, fy = cand(x), cand(y)
        rhs = (fx + fy) / (fx - fy)
        assert lhs == rhs == field.element(1, -2)

    def test_rejects_unknown_map(self):
        with pytest.raises(ValueError):
            verify_automorphism_sd(2, "transpose")

    def test_non_automorphism_fails(self):
        field = QuadraticField(2)
        doubler = SdCandidate(field, lambda z: z + z, "2z")
        report = check_sd(doubler, sample_pairs(field, random.Random(0), 50))
        assert not report.passed


class TestCaseFormulas:
    @pytest.mark.parametrize("d", D_SUITE)
    def test_both_cases_pass(self, d):
        for case in ("plus", "minus"):
            report = check_case_formulas(d, case, sample_size=60, seed=1)
            assert report.passed, (d, case)

    def test_gaussian_frozen_example(self):
        # d = -1, z = 1 + i: z/zbar = i, norm 2, z^2 = 2i
        field = QuadraticField(-1)
        z = field.element(1, 1)
        zbar = z.conjugate()
        assert z / zbar == field.element(0, 1)
        assert z * zbar == field.element(2, 0)
        assert z * z == field.element(0, 2)
        # conjugation case: f(z/zbar) = -i and the norm-cleared chain matches
        f_ratio = (z / zbar).conjugate()
        assert f_ratio == field.element(0, -1)
        assert f_ratio * (z * zbar) == (z * z).conjugate()

    def test_explicit_elements(self):
        field = QuadraticField(2)
        zs = [field.element(1, 1), field.element(3, -2), field.element(0, 5)]
        report = check_case_formulas(2, "plus", zs=zs)
        assert report.passed
        assert report.checked_pairs == 4 * len(zs)

    def test_cases_are_distinct(self):
        # the two case targets genuinely differ off the rationals
        field = QuadraticField(2)
        z = field.element(1, 1)
        zbar = z.conjugate()
        assert z / zbar != zbar / z
        assert z * z != zbar * zbar

    def test_rejects_unknown_case(self):
        with pytest.raises(ValueError):
            check_case_formulas(2, "neutral")


class TestWrongSignContradiction:
    def test_frozen_d2(self):
        plus = wrong_sign_contradiction(2, "plus")
        field = QuadraticField(2)
        assert plus.hypothetical == field.element(2, -1)  # d/(2+sqrt(d)) = 2-sqrt(2)
        assert plus.closed_form_ok
        assert plus.cleared_sqrt_coefficients == (Fraction(-4), Fraction(4))
        assert plus.confirmed

        minus = wrong_sign_contradiction(2, "minus")
        assert minus.hypothetical == field.element(2, 1)
        assert minus.closed_form_ok
        assert minus.cleared_sqrt_coefficients == (Fraction(-4), Fraction(4))
        assert minus.confirmed

    @pytest.mark.parametrize("d", D_SUITE)
    def test_suite_confirmed(self, d):
        for branch in ("plus", "minus"):
            report = wrong_sign_contradiction(d, branch)
            assert report.confirmed, (d, branch)
            assert report.closed_form_ok
            for coeff in report.cleared_sqrt_coefficients:
                assert coeff != 0

    def test_sqrt_coefficients_are_universal(self):
        # the cleared difference always carries -+4 as sqrt coefficient
        for d in D_SUITE:
            for branch in ("plus", "minus"):
                report = wrong_sign_contradiction(d, branch)
                assert report.cleared_sqrt_coefficients == (Fraction(-4), Fraction(4))

    def test_json_shape(self):
        payload = wrong_sign_contradiction(3, "plus").to_json()
        assert payload["confirmed"] is True
        assert set(payload) == {
            "d", "branch", "hypothetical", "closed_form_ok",
            "targets", "cleared_sqrt_coefficients", "confirmed",
        }

    def test_rejects_unknown_branch(self):
        with pytest.raises(ValueError):
            wrong_sign_contradiction(2, "sideways")


class TestLatticeFix:
    def test_point_counts(self):
        for (m, n), count in (((20, 20), 1680), ((5, 5), 120), ((3, 3), 48), ((1, 1), 8)):
            lattice = lattice_fix(2, "identity", m, n)
            assert lattice.count == count == (2 * m + 1) * (2 * n + 1) - 1

    def test_identity_direct_conjugation_device(self):
        assert lattice_fix(2, "identity", 3, 3).conjugated_device is False
        assert lattice_fix(2, "conjugation", 3, 3).conjugated_device is True

    def test_orders_agree(self):
        for which in ("identity", "conjugation"):
            row = lattice_fix(3, which, 4, 4, order="row_major")
            col = lattice_fix(3, which, 4, 4, order="column_major")
            assert set(row.points) == set(col.points)
            assert row.count == col.count == 80

    def test_provenance_partition(self):
        lattice = lattice_fix(2, "identity", 5, 5, order="row_major")
        counts = {}
        for prov in lattice.points.values():
            counts[prov] = counts.get(prov, 0) + 1
        assert counts == {
            "axis_rational": 10,
            "axis_sqrt_multiple": 10,
            "sign_resolution": 1,
            "ap_vertical_line": 9,
            "ap_row": 90,
        }

    def test_column_major_provenance(self):
        lattice = lattice_fix(2, "identity", 5, 5, order="column_major")
        counts = {}
        for prov in lattice.points.values():
            counts[prov] = counts.get(prov, 0) + 1
        assert counts == {
            "axis_rational": 10,
            "axis_sqrt_multiple": 10,
            "sign_resolution": 1,
            "ap_horizontal_line": 9,
            "ap_column": 90,
        }

    @pytest.mark.parametrize("d", D_SUITE)
    def test_suite_small_grids(self, d):
        for which in ("identity", "conjugation"):
            lattice = lattice_fix(d, which, 3, 3)
            assert lattice.count == 48

    def test_rejects_sqrt_breaking_candidate(self, monkeypatch):
        # squaring sends sqrt(d) to d, outside the +-sqrt(d) dichotomy
        import sdmaps.quadratic as quadratic_module

        monkeypatch.setattr(
            quadratic_module,
            "_candidate",
            lambda field, which: SdCandidate(field, lambda z: z * z, "square"),
        )
        with pytest.raises(CertificationFailed, match="sends sqrt"):
            lattice_fix(2, "identity", 2, 2)

    def test_rejects_rational_breaking_candidate(self, monkeypatch):
        # z -> -conjugate(z) fixes sqrt(d) but negates the rationals
        import sdmaps.quadratic as quadratic_module

        monkeypatch.setattr(
            quadratic_module,
            "_candidate",
            lambda field, which: SdCandidate(
                field, lambda z: -z.conjugate(), "neg-conj"
            ),
        )
        with pytest.raises(CertificationFailed):
            lattice_fix(2, "identity", 2, 2)

    def test_json_sparse_points(self):
        payload = lattice_fix(2, "identity", 1, 1).to_json()
        assert payload["count"] == 8
        assert len(payload["points"]) == 8
        sample = payload["points"][0]
        assert set(sample) == {"m", "n", "provenance"}

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            lattice_fix(2, "identity", 0, 3)
        with pytest.raises(ValueError):
            lattice_fix(2, "identity", 3, 3, order="diagonal")


class TestComplexFlows:
    def test_automorphisms_pass(self):
        reports = verify_complex_automorphisms(1e-9, 300, seed=4)
        assert set(reports) == {"identity", "conjugation"}
        for report in reports.values():
            assert report.passed
            assert report.checked_pairs == 300

    def test_half_angle_pass(self):
        report = check_half_angle_identities(1e-9, 500, seed=4)
        assert report.passed
        assert report.checked_pairs == 1500  # three identities per angle

    def test_conjugation_residual_tolerance(self):
        field = ApproxComplexField(1e-9)
        cand = SdCandidate(field, lambda z: z.conjugate(), "conjugation")
        x, y = 2.5 + 1.5j, -0.5 + 3j
        arg = (x + y) / (x - y)
        lhs = cand(arg)
        rhs = (cand(x) + cand(y)) / (cand(x) - cand(y))
        assert field.eq(lhs, rhs)

    def test_squaring_fails_on_complex(self):
        field = ApproxComplexField(1e-9)
        cand = SdCandidate(field, lambda z: z * z, "z^2")
        report = check_sd(cand, sample_pairs(field, random.Random(8), 100))
        assert not report.passed
