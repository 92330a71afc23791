from fractions import Fraction

import pytest

from syslip.errors import DomainError
from syslip.mixing import (
    MixingResult,
    boolean_matmul,
    boolean_power,
    boolean_rows,
    default_mixing_cap,
    mixing_number,
    translation_length_lower_bound,
)
from syslip.surfaces import RationalRay
from syslip.twists import TransitionMatrix, lifted_root_matrix, matrix_power


def cycle_matrix(d: int) -> TransitionMatrix:
    rows = [[0] * d for _ in range(d)]
    for k in range(d):
        rows[(k + 1) % d][k] = 1
    return TransitionMatrix(tuple(tuple(r) for r in rows))


def test_all_positive_matrix_has_mixing_one():
    m = TransitionMatrix(((1, 2), (3, 4)))
    assert mixing_number(m, 5).mixing_number == 1


@pytest.mark.parametrize("d", [2, 3, 5])
def test_permutation_never_mixes(d):
    result = mixing_number(cycle_matrix(d), 4 * d)
    assert result.mixing_number is None
    assert not result.within_cap


def test_zero_row_never_mixes():
    m = TransitionMatrix(((0, 0), (1, 1)))
    assert mixing_number(m, 10).mixing_number is None


def test_default_cap_values():
    assert default_mixing_cap(RationalRay(1, 1), 2) == 10
    assert default_mixing_cap(RationalRay(2, 3), 4) == 36


def test_lifted_root_mixing_small_case():
    m = lifted_root_matrix(RationalRay(1, 1), 2)
    result = mixing_number(m, default_mixing_cap(RationalRay(1, 1), 2))
    assert result.mixing_number is not None
    assert result.mixing_number <= 10
    # literal minimality: the found power is positive, its predecessor is not
    rows = boolean_rows(m)
    full = (1 << m.dimension) - 1
    assert all(v == full for v in boolean_power(rows, result.mixing_number))
    assert not all(v == full for v in boolean_power(rows, result.mixing_number - 1))


def test_boolean_shadow_agrees_with_integer_powers():
    for ray, index in [(RationalRay(1, 1), 2), (RationalRay(1, 2), 2)]:
        m = lifted_root_matrix(ray, index)
        if m.dimension > 8:
            continue
        rows = boolean_rows(m)
        for r in range(1, 12):
            exact = matrix_power(m, r)
            bool_rows = boolean_power(rows, r)
            for x in range(m.dimension):
                for y in range(m.dimension):
                    assert (exact[x, y] > 0) == bool(bool_rows[x] >> y & 1)


def test_positivity_is_monotone_on_samples():
    m = lifted_root_matrix(RationalRay(1, 1), 2)
    r = mixing_number(m, 10).mixing_number
    rows = boolean_rows(m)
    full = (1 << m.dimension) - 1
    for s in (r, r + 1, r + 3, r + 7):
        assert all(v == full for v in boolean_power(rows, s))


def test_mixing_binary_search_is_exact_on_grid():
    # brute-force oracle: first positive power by linear scan
    for ray, index in [(RationalRay(1, 1), 2), (RationalRay(1, 1), 3), (RationalRay(1, 2), 2)]:
        m = lifted_root_matrix(ray, index)
        cap = default_mixing_cap(ray, index)
        rows = boolean_rows(m)
        full = (1 << m.dimension) - 1
        current = rows
        expected = None
        for r in range(1, cap + 1):
            if all(v == full for v in current):
                expected = r
                break
            current = boolean_matmul(current, rows)
        assert mixing_number(m, cap).mixing_number == expected


def test_translation_length_bound():
    assert translation_length_lower_bound(
        MixingResult(mixing_number=1, cap=5, dimension=3)
    ) == Fraction(1)
    assert translation_length_lower_bound(
        MixingResult(mixing_number=36, cap=36, dimension=28)
    ) == Fraction(1, 36)
    computed = mixing_number(
        lifted_root_matrix(RationalRay(1, 1), 2), default_mixing_cap(RationalRay(1, 1), 2)
    )
    assert translation_length_lower_bound(computed) == Fraction(1, computed.mixing_number)


def test_translation_length_needs_mixing():
    with pytest.raises(DomainError):
        translation_length_lower_bound(MixingResult(mixing_number=None, cap=5, dimension=3))


def test_cap_validation():
    with pytest.raises(DomainError):
        mixing_number(TransitionMatrix(((1,),)), 0)
