import math
from fractions import Fraction

import pytest

from redmax import InvalidInput, ResourceCapError
from redmax.config import Caps
from redmax.core import is_reduced, longest_permutation, validate_path
from redmax.search import (
    bound_report,
    check_superadditivity,
    max_multiplicity,
    max_multiplicity_path_dfs,
    max_multiplicity_weak_order_dp,
    series_upper_bound,
    sqrt_bound,
)


@pytest.mark.parametrize("k,n,want", [(1, 5, 4), (2, 5, 5), (3, 7, 8), (3, 4, 3)])
def test_path_dfs_examples(k, n, want):
    r = max_multiplicity_path_dfs(k, n)
    assert r.value == want
    P = r.witness
    assert validate_path(P)
    assert P.sets[0] == tuple(range(1, k + 1))
    assert P.sets[-1] == tuple(range(n - k + 1, n + 1))
    assert P.steps == want


def test_path_dfs_range():
    with pytest.raises(InvalidInput):
        max_multiplicity_path_dfs(0, 5)
    with pytest.raises(InvalidInput):
        max_multiplicity_path_dfs(5, 5)


def test_path_dfs_cap():
    with pytest.raises(ResourceCapError):
        max_multiplicity_path_dfs(2, 9, caps=Caps(dfs_max_n=8))


@pytest.mark.parametrize("k,n,mode,want", [(2, 5, "max", 5), (1, 3, "max-pair", 3), (2, 5, "min", 2)])
def test_dp_examples(k, n, mode, want):
    r = max_multiplicity_weak_order_dp(k, n, mode)
    assert r.value == want
    w = r.witness
    assert is_reduced(w) and w.product() == longest_permutation(n)


def test_dp_cap():
    with pytest.raises(ResourceCapError):
        max_multiplicity_weak_order_dp(2, 10)


def test_dp_bad_mode():
    with pytest.raises(InvalidInput):
        max_multiplicity_weak_order_dp(2, 5, "median")


@pytest.mark.parametrize("n", range(2, 9))
def test_methods_agree(n):
    for k in range(1, n):
        a = max_multiplicity(k, n, "path-dfs").value
        b = max_multiplicity(k, n, "weak-order-dp").value
        assert a == b
        assert max_multiplicity(n - k, n, "weak-order-dp").value == b


@pytest.mark.parametrize("n", range(2, 9))
def test_min_mode_is_min_k(n):
    for k in range(1, n):
        assert max_multiplicity_weak_order_dp(k, n, "min").value == min(k, n - k)


@pytest.mark.parametrize("n", range(3, 9))
def test_max_pair_sandwich(n):
    for k in range(1, n):
        m = max_multiplicity(k, n).value
        mbar = max_multiplicity_weak_order_dp(k, n, "max-pair").value
        assert m <= mbar < math.sqrt(2 * k) * (n + 2 * k * k)


def test_series_bound_examples():
    assert series_upper_bound(1, 7) == 7
    assert series_upper_bound(3, 6) == 12
    assert series_upper_bound(4, 10) == Fraction(70, 3)


@pytest.mark.parametrize("n", range(2, 11))
def test_bounds_hold(n):
    for k in range(1, min(n, 4)):
        v = max_multiplicity(k, n).value
        rep = bound_report(k, n, v)
        assert rep.ok
        assert v <= series_upper_bound(k, n) <= sqrt_bound(k, n) * (1 + 1e-12)


@pytest.mark.parametrize("k,n,m", [(2, 4, 5), (1, 2, 2), (3, 4, 4)])
def test_superadditivity_examples(k, n, m):
    assert check_superadditivity(k, n, m)


def test_superadditivity_values():
    assert max_multiplicity(2, 9).value == 11
    assert max_multiplicity(3, 8).value == 10


def test_symmetry_witness_reflected():
    r = max_multiplicity_path_dfs(5, 7)
    assert r.k == 5 and r.witness.k == 5
    assert r.value == max_multiplicity_path_dfs(2, 7).value
    assert validate_path(r.witness)


def test_json_shape():
    d = max_multiplicity(2, 6).to_json()
    assert set(d) >= {"k", "n", "value", "witness", "method"}
    assert d["value"] == 6


def test_jobs_matches_serial():
    a = max_multiplicity_path_dfs(3, 8)
    b = max_multiplicity_path_dfs(3, 8, jobs=2)
    assert a.value == b.value == 10
