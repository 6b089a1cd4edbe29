import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from bosetrap.wick import (
    KNOWN_PATTERNS,
    a,
    adag,
    counterterm_prefactors,
    expectation,
    falling_factorial_poly,
    mbody_decompose,
    mbody_reconstruct,
    second_order_prefactors,
    third_order_prefactors,
)


def test_condensate_moment():
    res = expectation([adag("0"), adag("0"), a("0"), a("0")])
    assert len(res.terms) == 1
    t = res.terms[0]
    assert t.deltas == () and t.zeroed == ()
    assert t.poly == (0, -1, 1)  # N(N-1)
    assert res.evaluate(7) == 42


def test_single_contraction():
    res = expectation([a("i"), adag("k")])
    terms = {(t.deltas, t.zeroed): t.poly for t in res.terms}
    # contracted piece: delta_ik; uncontracted piece: both forced to mode 0
    assert terms[((("i", "k"),), ())] == (1,)
    assert terms[((), ("i", "k"))] == (0, 1)
    assert len(terms) == 2


def test_four_operator_expectation():
    # <a_i a_j a_k+ a_l+> in the (N-2)-atom condensate: after forcing
    # uncontracted labels to the ground mode, the result is four
    # single-contraction terms carrying (N-2) and two full contractions
    # carrying 1 (plus the all-ground term excluded by the sum restriction).
    res = expectation([a("i"), a("j"), adag("k"), adag("l")], particle_offset=-2)
    terms = {(t.deltas, t.zeroed): t.poly for t in res.terms}

    singles = {k: v for k, v in terms.items() if len(k[0]) == 1}
    doubles = {k: v for k, v in terms.items() if len(k[0]) == 2}
    empties = {k: v for k, v in terms.items() if len(k[0]) == 0}

    assert len(singles) == 4
    assert all(poly == (-2, 1) for poly in singles.values())  # N - 2
    assert len(doubles) == 2
    assert all(poly == (1,) for poly in doubles.values())
    assert set(doubles) == {
        ((("i", "k"), ("j", "l")), ()),
        ((("i", "l"), ("j", "k")), ()),
    }
    assert empties == {((), ("i", "j", "k", "l")): (6, -5, 1)}  # (N-2)(N-3)


def test_unbalanced_strings_are_zero():
    assert expectation([a("i")]).terms == ()
    assert expectation([adag("x"), adag("y"), a("z")]).terms == ()
    assert expectation([adag("0"), a("0"), a("0")]).terms == ()


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        expectation([a("i"), a("i"), adag("j"), adag("k")])


def test_full_pairing_count():
    # k annihilators followed by k creators: k! full pairings, bounded by
    # the total pairing count (2k-1)!! of a 2k-operator string
    for k in (2, 3, 4):
        anns = [a(f"i{p}") for p in range(k)]
        cres = [adag(f"j{p}") for p in range(k)]
        res = expectation(anns + cres)
        full = [t for t in res.terms if len(t.deltas) == k]
        count = sum(t.poly[0] for t in full)
        assert count == math.factorial(k)
        assert count <= math.prod(range(1, 2 * k, 2))


def test_falling_factorial_poly():
    assert falling_factorial_poly(0) == (1,)
    assert falling_factorial_poly(2) == (0, -1, 1)
    assert falling_factorial_poly(3) == (0, 2, -3, 1)
    assert falling_factorial_poly(2, offset=-2) == (6, -5, 1)
    with pytest.raises(ValueError):
        falling_factorial_poly(-1)


def test_mbody_decompose_basics():
    assert mbody_decompose((0, -1, 1)) == {2: F(2)}
    assert mbody_decompose((0, 2, -3, 1)) == {3: F(6)}
    # N^2(N-1)^2 splits into two-, three- and four-body pieces
    assert mbody_decompose((0, 0, 1, -2, 1)) == {2: F(4), 3: F(24), 4: F(24)}
    assert mbody_decompose(()) == {}


def test_mbody_roundtrip_simple():
    poly = (0, 3, -2, 1)
    assert mbody_reconstruct(mbody_decompose(poly)) == tuple(F(c) for c in poly)


@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=7))
def test_mbody_roundtrip(coeffs):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    back = mbody_reconstruct(mbody_decompose(coeffs))
    assert back == tuple(F(c) for c in coeffs)


def test_known_patterns_are_distinct():
    # each named coefficient sum must classify to its own canonical key
    assert len(set(KNOWN_PATTERNS.values())) == len(KNOWN_PATTERNS)


def test_second_order_table():
    assert second_order_prefactors() == {
        ("beta2_2", 2): F(-1),
        ("alpha3_2", 3): F(-6),
    }


def test_counterterm_table():
    assert counterterm_prefactors() == {
        ("beta2_2", 2): F(-2),
        ("alpha3_2", 3): F(-12),
    }


def test_third_order_direct_table():
    assert third_order_prefactors("direct") == {
        ("beta2_3", 2): F(1),
        ("alpha3_3", 3): F(12),
        ("beta3_3", 3): F(12),
        ("alpha41_3", 4): F(48),
        ("alpha42_3", 4): F(48),
        ("alpha43_3", 4): F(6),
        ("alpha5_3", 5): F(60),
    }


def test_third_order_normalization_table():
    assert third_order_prefactors("normalization") == {
        ("alpha43_3", 2): F(-1),
        ("alpha43_3", 3): F(-6),
        ("alpha43_3", 4): F(-6),
        ("alpha5_3", 3): F(-18),
        ("alpha5_3", 4): F(-72),
        ("alpha5_3", 5): F(-60),
    }


def test_third_order_full_merge():
    full = third_order_prefactors("full")
    # the four-body alpha43 pieces and the five-body pieces cancel exactly
    assert ("alpha43_3", 4) not in full
    assert all(m != 5 for _, m in full)
    assert full[("alpha41_3", 4)] == F(48)
    assert full[("alpha42_3", 4)] == F(48)
    assert full[("alpha5_3", 4)] == F(-72)
    assert full[("beta2_3", 2)] == F(1)
    assert full[("alpha43_3", 2)] == F(-1)


def test_unknown_part_rejected():
    with pytest.raises(ValueError):
        third_order_prefactors("bogus")


@given(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
)
def test_unequal_counts_always_vanish(ga, gc, ea, ec):
    if ga + ea == gc + ec:
        return  # balanced strings are allowed to survive
    ops = [a("0")] * ga + [adag("0")] * gc
    ops += [a(f"x{p}") for p in range(ea)]
    ops += [adag(f"y{p}") for p in range(ec)]
    assert expectation(ops).terms == ()
