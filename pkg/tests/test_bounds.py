import math

import pytest

from syslip.bounds import (
    CSV_COLUMNS,
    K_UPPER_ADDITIVE_CONSTANT,
    closed_form_k_lower,
    conditional_rate,
    k_lower_bound_fixed_genus,
    k_lower_bound_ray,
    k_upper_bound,
    nonfilling_certificate,
    reports_to_csv,
    reports_to_json,
    reports_to_plot_data,
    sandwich_table,
    wolpert_distance_lower_bound,
)
from syslip.errors import DomainError
from syslip.surfaces import RationalRay, Surface, family_collar_constant


def test_k_upper_example():
    surface = Surface(6, 10)  # abs_chi = 20
    assert surface.abs_chi == 20
    assert k_upper_bound(surface, 2.0) == pytest.approx(2 / math.log(10), abs=1e-9)
    assert k_upper_bound(surface, 2.0) == pytest.approx(0.86858896, abs=1e-6)


def test_k_upper_unit_ratio():
    surface = Surface(2, 3)  # abs_chi = 5
    assert k_upper_bound(surface, 5 / math.e) == pytest.approx(2.0)


def test_k_upper_vacuous_rejected():
    surface = Surface(2, 3)
    with pytest.raises(DomainError):
        k_upper_bound(surface, 5.0)
    with pytest.raises(DomainError):
        k_upper_bound(surface, 7.0)


def test_k_upper_decreasing_in_chi():
    values = [k_upper_bound(Surface(g, 3), 2.0) for g in range(2, 12)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_wolpert_examples():
    assert wolpert_distance_lower_bound(1.0, math.e) == pytest.approx(1.0)
    assert wolpert_distance_lower_bound(1.5, 1.5) == 0.0
    assert wolpert_distance_lower_bound(2.0, 1.0) == 0.0
    with pytest.raises(DomainError):
        wolpert_distance_lower_bound(0.0, 1.0)


def test_nonfilling_certificate_accepts():
    surface = Surface(8, 12)
    constant = 2.0
    threshold = math.log(surface.abs_chi / constant)
    assert nonfilling_certificate(1.0, 1.0, threshold, surface, constant)


def test_nonfilling_certificate_monotone_in_distance():
    surface = Surface(8, 12)
    constant = 2.0
    threshold = math.log(surface.abs_chi / constant)
    for fraction in (0.0, 0.25, 0.5, 1.0):
        assert nonfilling_certificate(1.0, 1.0, threshold * fraction, surface, constant)


def test_nonfilling_certificate_rejections():
    surface = Surface(8, 12)
    with pytest.raises(DomainError, match="ordering"):
        nonfilling_certificate(2.0, 1.0, 0.1, surface, 2.0)
    with pytest.raises(DomainError, match="distance"):
        nonfilling_certificate(1.0, 1.0, 100.0, surface, 2.0)
    with pytest.raises(DomainError, match="positive"):
        nonfilling_certificate(-1.0, 1.0, 0.1, surface, 2.0)


def test_closed_form_k_lower_example():
    value = closed_form_k_lower(RationalRay(2, 3), 4)
    assert value == pytest.approx(1 / (9 * math.log(73)))
    assert value == pytest.approx(0.02590, abs=1e-5)


def test_closed_form_ratio_between_indices():
    ray = RationalRay(2, 3)
    for i in (2, 4, 8):
        ratio = closed_form_k_lower(ray, i) / closed_form_k_lower(ray, 2 * i)
        assert ratio == pytest.approx(math.log(32 * i + 9) / math.log(16 * i + 9))


def test_k_lower_ray_computed_improves_on_closed_form():
    ray = RationalRay(2, 3)
    value, inputs = k_lower_bound_ray(ray, 4)
    assert inputs.certified
    assert inputs.mixing_number is not None
    assert inputs.mixing_number <= inputs.mixing_cap == 36
    assert value >= closed_form_k_lower(ray, 4) - 1e-15
    closed_value, closed_inputs = k_lower_bound_ray(ray, 4, use_computed_mixing=False)
    assert closed_value == pytest.approx(closed_form_k_lower(ray, 4))
    assert closed_inputs.mixing_number is None


def test_k_lower_ray_uncertified_when_cap_tiny():
    value, inputs = k_lower_bound_ray(RationalRay(2, 3), 4, cap=2)
    assert value is None
    assert not inputs.certified


def test_fixed_genus_bound_examples():
    assert k_lower_bound_fixed_genus(2, 30, 1.0, 1.0) == pytest.approx(1 / math.log(32))
    assert k_lower_bound_fixed_genus(2, 30, 1.0, 1.0) == pytest.approx(0.2885, abs=1e-4)
    assert k_lower_bound_fixed_genus(2, 30, 2.0, 1.0) == pytest.approx(
        k_lower_bound_fixed_genus(2, 30, 1.0, 1.0) / 2
    )
    with pytest.raises(DomainError):
        k_lower_bound_fixed_genus(1, 30, 1.0, 1.0)
    with pytest.raises(DomainError):
        k_lower_bound_fixed_genus(2, 30, 0.0, 1.0)


def test_conditional_rate_unit_case():
    assert conditional_rate(math.e, 1.0, 1.0) == pytest.approx(1.0)


def test_sandwich_table_ray_shape():
    ray = RationalRay(2, 3)
    rows = sandwich_table(ray, range(4, 17), collar_override=2.0)
    assert len(rows) == 13
    for index, row in zip(range(4, 17), rows):
        assert row.abs_chi == 7 * index - 2
        assert row.genus == 2 * index and row.punctures == 3 * index
        assert row.k_lower is not None and row.k_upper is not None
        assert row.k_lower <= row.k_upper
        assert row.k_upper_additive == K_UPPER_ADDITIVE_CONSTANT


def test_sandwich_table_reports_vacuous_upper_rows():
    ray = RationalRay(2, 3)
    rows = sandwich_table(ray, [4, 5])  # family constant ~1e3 dwarfs |chi|
    for row in rows:
        assert row.k_upper is None
        assert "vacuous" in row.note
        assert row.k_lower is not None  # lower path unaffected


def test_sandwich_with_family_constant_at_large_index():
    ray = RationalRay(2, 3)
    constant = family_collar_constant(ray)
    rows = sandwich_table(ray, [150, 200], use_computed_mixing=False)
    for row in rows:
        assert row.abs_chi > constant
        assert row.k_upper is not None
        assert row.k_lower is not None
        assert row.k_lower <= row.k_upper


def test_sandwich_table_fixed_genus():
    rows = sandwich_table(2, range(10, 14), collar_override=2.0)
    assert len(rows) == 4
    for n, row in zip(range(10, 14), rows):
        assert row.abs_chi == 2 * 2 - 2 + n
        assert row.k_lower == pytest.approx(1 / math.log(row.abs_chi))
        assert "conditional" in row.note
        assert row.conditional_constants == (1.0, 1.0)
        assert row.lower_inputs is None


def test_csv_contract():
    rows = sandwich_table(RationalRay(2, 3), [4, 5], collar_override=2.0)
    text = reports_to_csv(rows)
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4 and lines[-1] == ""
    assert "\r" not in text
    # '.' decimal separator, no thousands separators
    assert "," in lines[1]
    for cell in lines[1].split(","):
        assert " " not in cell


def test_csv_deterministic():
    rows1 = sandwich_table(RationalRay(2, 3), [4, 5, 6], collar_override=2.0)
    rows2 = sandwich_table(RationalRay(2, 3), [4, 5, 6], collar_override=2.0)
    assert reports_to_csv(rows1) == reports_to_csv(rows2)
    assert reports_to_json(rows1) == reports_to_json(rows2)


def test_plot_data_two_columns():
    rows = sandwich_table(RationalRay(2, 3), [4, 5], collar_override=2.0)
    lines = reports_to_plot_data(rows).strip().split("\n")
    assert lines[0] == "abs_chi,k_lower_log_abs_chi"
    assert len(lines) == 3
    for line in lines[1:]:
        chi, product = line.split(",")
        assert int(chi) > 0 and float(product) > 0
