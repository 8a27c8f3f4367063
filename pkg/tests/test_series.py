from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saddlecoef.series import (
    FactorFamily,
    brute_force_distinct,
    distinct_partition_count,
    expand_product,
)


def subsets_summing_to(n):
    """Independent oracle: enumerate every subset of {1..n}."""
    parts = range(1, n + 1)
    return sum(
        1 for size in range(n + 1) for combo in combinations(parts, size) if sum(combo) == n
    )


def multisets_summing_to(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        return 1
    return sum(multisets_summing_to(n - p, p) for p in range(1, min(n, largest) + 1))


def test_distinct_product_by_hand():
    assert expand_product(FactorFamily.distinct(), 3).coeffs == (1, 1, 1, 2)


def test_distinct_coefficient_matches_subset_enumeration():
    assert subsets_summing_to(10) == 10
    assert expand_product(FactorFamily.distinct(), 10)[10] == 10


def test_geometric_coefficient_matches_multiset_enumeration():
    table = expand_product(FactorFamily.geometric(), 12)
    assert table[5] == 7
    assert list(table.coeffs) == [multisets_summing_to(n) for n in range(13)]


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 3), (10, 10), (40, 1113), (100, 444793)])
def test_distinct_partition_count_golden(n, expected):
    assert distinct_partition_count(n) == expected


@pytest.mark.parametrize("n", [0, 1, 2, 7, 15, 20])
def test_brute_force_matches_subset_oracle(n):
    assert brute_force_distinct(n) == subsets_summing_to(n)


def test_brute_force_at_forty_agrees_with_dp():
    assert brute_force_distinct(40) == distinct_partition_count(40) == 1113


def test_brute_force_guard():
    assert brute_force_distinct(60) == distinct_partition_count(60)
    with pytest.raises(ValueError):
        brute_force_distinct(61)


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        distinct_partition_count(-1)
    with pytest.raises(ValueError):
        expand_product(FactorFamily.distinct(), -1)


@pytest.mark.parametrize("family", [FactorFamily.distinct(), FactorFamily.geometric()])
def test_table_stable_under_larger_cutoff(family):
    small = expand_product(family, 30).coeffs
    large = expand_product(family, 60).coeffs
    assert large[:31] == small
    assert all(a >= 0 for a in large) and large[0] == 1


def test_custom_family_from_json_is_exact(tmp_path):
    path = tmp_path / "fam.json"
    path.write_text('{"factors": [["1", "0.5"], [1, 0, "0.25"], [1, 0, 0, 3]]}')
    family = FactorFamily.from_json(path)
    assert family.custom_factors[0] == (Fraction(1), Fraction(1, 2))
    table = expand_product(family, 6)
    # (1 + z/2)(1 + z^2/4)(1 + 3 z^3)
    expected = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(25, 8),
                Fraction(3, 2), Fraction(3, 4), Fraction(3, 8)]
    assert list(table.coeffs) == expected


def test_custom_json_string_and_float_rejection():
    fam = FactorFamily.from_json('{"factors": [[1, 1], [1, 0, 1]]}')
    assert expand_product(fam, 3).coeffs == (1, 1, 1, 1)
    with pytest.raises(TypeError):
        FactorFamily.custom([[1, 0.5]])


@pytest.mark.parametrize(
    "factors, message",
    [
        ([[1, 1], [1, 1]], "lowest non-constant degree"),
        ([[2, 1]], "constant term"),
        ([[1, -1]], "non-negative"),
    ],
)
def test_custom_invariants_enforced(factors, message):
    with pytest.raises(ValueError, match=message):
        FactorFamily.custom(factors)


def test_custom_truncation_equals_distinct():
    custom = FactorFamily.custom([[1] + [0] * (k - 1) + [1] for k in range(1, 31)])
    assert expand_product(custom, 30).coeffs == expand_product(FactorFamily.distinct(), 30).coeffs


poly = st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(p1=poly, p2=poly)
def test_product_table_is_convolution(p1, p2):
    f1 = [1] + p1  # factor 1: degrees >= 1
    f2 = [1, 0] + p2  # factor 2: degrees >= 2
    family = FactorFamily.custom([f1, f2])
    n_max = len(f1) + len(f2)
    table = expand_product(family, n_max)
    conv = np.convolve(np.array(f1, dtype=object), np.array(f2, dtype=object))
    expected = list(conv) + [0] * (n_max + 1 - len(conv))
    assert [int(c) for c in table.coeffs] == expected[: n_max + 1]


@settings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=0, max_value=80), extra=st.integers(min_value=0, max_value=40))
def test_coefficient_independent_of_cutoff(n, extra):
    fam = FactorFamily.distinct()
    assert expand_product(fam, n + extra)[n] == expand_product(fam, n)[n]
