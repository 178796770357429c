import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hassett_lattice.predicates import (
    TriState,
    check_addington,
    check_assoc_k3,
    check_bulles,
    check_double_star,
    check_fano_hilb,
    check_llsvs,
    check_star,
    enumerate_double_star,
    factorize,
    predicate_report,
)

ds = st.integers(1, 3000)


def test_star_examples():
    assert check_star(8)
    assert not check_star(10)
    assert not check_star(6)
    assert check_star(12) and check_star(14)


def test_double_star_examples():
    assert check_double_star(24) == (True, 2)
    assert check_double_star(26) == (True, 2)
    assert check_double_star(30) == (False, None)
    assert check_double_star(6) == (False, None)  # m = 1 excluded
    assert check_double_star(8) == (False, None)
    assert check_double_star(6 * 36 + 2) == (True, 6)


def test_assoc_k3_examples():
    assert check_assoc_k3(14)
    assert not check_assoc_k3(8)
    assert check_assoc_k3(26)
    assert not check_assoc_k3(18)  # 9 | 18
    assert not check_assoc_k3(20)  # 4 | 20
    assert not check_assoc_k3(30)  # 5 | 30


def _assoc_k3_oracle(d):
    f = sympy.factorint(d)
    return d % 4 != 0 and d % 9 != 0 and not any(p % 2 and p % 3 == 2 for p in f)


@given(ds)
def test_assoc_k3_matches_sympy_factorisation(d):
    assert check_assoc_k3(d) == _assoc_k3_oracle(d)
    assert factorize(d) == sympy.factorint(d)


def test_bulles_examples():
    assert check_bulles(14) == TriState("true", {"f": 1, "g": 14, "n": 2})
    assert check_bulles(8).witness == {"f": 2, "g": 2, "n": 0}
    assert check_bulles(1).witness == {"f": 1, "g": 1, "n": 0}


def _bulles_oracle(d):
    for f in range(1, math.isqrt(d) + 1):
        if d % (f * f) == 0:
            g = d // (f * f)
            if any((2 * n * n + 2 * n + 2) % g == 0 for n in range(2 * g + 1)):
                return True
    return False


@given(st.integers(1, 1500))
def test_bulles_is_decided(d):
    r = check_bulles(d)
    assert r.status in ("true", "false")
    assert bool(r) == _bulles_oracle(d)
    if r:
        f, g, n = r.witness["f"], r.witness["g"], r.witness["n"]
        assert d == f * f * g and (2 * n * n + 2 * n + 2) % g == 0


def test_llsvs_examples():
    assert check_llsvs(14, 10).witness == {"n": 1, "a": 1}
    r = check_llsvs(8, 100)
    assert r.status == "false_up_to_bound" and r.bound == 100


def test_llsvs_26_has_no_small_solution():
    # direct search over (n, a): 26 a^2 = 6 n^2 + 6 n + 2
    hits = [(n, a) for a in range(1, 101) for n in range(0, 30 * a)
            if 26 * a * a == 6 * n * n + 6 * n + 2]
    assert hits == []
    assert check_llsvs(26, 100).status == "false_up_to_bound"


@given(st.integers(1, 400))
def test_llsvs_witness_is_smallest_a(d):
    r = check_llsvs(d, 20)
    hits = sorted((a, n) for a in range(1, 21) for n in range(0, 3 * a * math.isqrt(d) + 3)
                  if d * a * a == 6 * n * n + 6 * n + 2)
    if hits:
        assert r.witness == {"n": hits[0][1], "a": hits[0][0]}
    else:
        assert r.status == "false_up_to_bound"


def test_fano_hilb_examples():
    assert check_fano_hilb(14) == (True, 2)
    assert check_fano_hilb(26) == (True, 3)
    assert check_fano_hilb(24) == (False, None)
    assert check_fano_hilb(6) == (False, None)  # n = 1 is excluded


def test_addington_examples():
    assert check_addington(14, 10).witness == {"n": 2, "a": 1}
    assert check_addington(2, 10).witness == {"n": 0, "a": 1}
    # 8 a^2 = 2 n^2 + 2 n + 2 has no solution: the right side is 2 mod 4 or odd
    hits = [(n, a) for a in range(1, 11) for n in range(0, 10 * a) if 8 * a * a == 2 * n * n + 2 * n + 2]
    assert hits == []
    assert check_addington(8, 10).status == "false_up_to_bound"


@given(st.integers(1, 3000))
def test_fano_implies_addington_with_a_1(d):
    ok, n = check_fano_hilb(d)
    if ok:
        assert 2 * (n * n + n + 1) == d
        assert check_addington(d, 1).witness == {"n": n, "a": 1}


@given(st.integers(1, 5000))
def test_double_star_implies_star(d):
    ok, m = check_double_star(d)
    if ok:
        assert check_star(d) and m >= 2 and d in (6 * m * m, 6 * m * m + 2)


def test_enumerate_double_star():
    assert enumerate_double_star(60) == [24, 26, 54, 56]
    assert enumerate_double_star(23) == []
    assert enumerate_double_star(100) == [24, 26, 54, 56, 96, 98]
    assert enumerate_double_star(2000) == [d for d in range(8, 2001) if check_double_star(d)[0]]


def test_report_json_shape():
    rep = predicate_report(14).to_json()
    assert rep["d"] == "14" and rep["star"] is True and rep["assoc_k3"] is True
    assert rep["bulles"]["witness"] == {"f": "1", "g": "14", "n": "2"}
    assert rep["llsvs"]["witness"] == {"n": "1", "a": "1"}
    assert rep["fano_hilb"] == {"value": True, "n": "2"}
    assert rep["double_star"] == {"value": False, "m": None}


def test_invalid_inputs():
    for fn in (check_assoc_k3, check_bulles, check_fano_hilb, predicate_report):
        with pytest.raises(ValueError):
            fn(0)
    with pytest.raises(ValueError):
        check_llsvs(14, 0)
