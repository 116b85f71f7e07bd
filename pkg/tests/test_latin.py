import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropnet.latin import (
    PAIR_ORDER_3,
    PAIR_ORDER_4,
    LatinSquare,
    MalformedArrayError,
    OLSPair,
    OrderMismatchError,
    UnsupportedOrderError,
    are_orthogonal,
    canonical_form,
    enumerate_ols,
    is_latin,
    raw_ols_pairs,
    transform,
)

FIRST_4 = [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]]


def test_is_latin():
    assert is_latin([[1, 2], [2, 1]])
    assert not is_latin([[1, 2], [1, 2]])
    assert is_latin(FIRST_4)
    with pytest.raises(MalformedArrayError):
        is_latin([[1, 2, 3], [2, 3, 1]])
    with pytest.raises(MalformedArrayError):
        is_latin([[1, 5], [2, 1]])


def test_orthogonality():
    assert are_orthogonal(PAIR_ORDER_4.first, PAIR_ORDER_4.second)
    assert are_orthogonal(PAIR_ORDER_3.first, PAIR_ORDER_3.second)
    for sq in (PAIR_ORDER_3.first, PAIR_ORDER_4.first, LatinSquare([[1, 2], [2, 1]])):
        assert not are_orthogonal(sq, sq)
    with pytest.raises(OrderMismatchError):
        are_orthogonal(PAIR_ORDER_3.first, PAIR_ORDER_4.first)


def test_orthogonality_symmetric():
    a, b = PAIR_ORDER_4.first, PAIR_ORDER_4.second
    assert are_orthogonal(a, b) == are_orthogonal(b, a)


def _brute_canonical(pair):
    """Minimum over the whole group, relabelings included, by direct search."""
    d = pair.order
    best = None
    for swap in (False, True):
        for rp in permutations(range(d)):
            for cp in permutations(range(d)):
                for ra in permutations(range(1, d + 1)):
                    t = transform(pair, rp, cp, ra, None, swap)
                    # the second square's best relabeling is first-appearance order
                    seen = {}
                    for x in t.second.flat():
                        seen.setdefault(x, len(seen) + 1)
                    key = t.first.flat() + tuple(seen[x] for x in t.second.flat())
                    if best is None or key < best:
                        best = key
    return best


def test_canonical_forms_by_brute_force():
    assert canonical_form(PAIR_ORDER_3) == PAIR_ORDER_3
    assert _brute_canonical(PAIR_ORDER_3) == PAIR_ORDER_3.key()


def test_canonical_form_order_4_by_brute_force():
    assert canonical_form(PAIR_ORDER_4) == PAIR_ORDER_4
    assert _brute_canonical(PAIR_ORDER_4) == PAIR_ORDER_4.key()


def _random_element(rng, d):
    rp = rng.sample(range(d), d)
    cp = rng.sample(range(d), d)
    ra = rng.sample(range(1, d + 1), d)
    rb = rng.sample(range(1, d + 1), d)
    return rp, cp, ra, rb, rng.random() < 0.5


def test_canonical_form_orbit_invariance():
    rng = random.Random(20240601)
    for pair in (PAIR_ORDER_3, PAIR_ORDER_4):
        base = canonical_form(pair)
        for _ in range(100):
            rp, cp, ra, rb, swap = _random_element(rng, pair.order)
            image = transform(pair, rp, cp, ra, rb, swap)
            assert canonical_form(image) == base


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(4)), st.permutations(range(4)), st.booleans())
def test_canonical_form_idempotent(rp, cp, swap):
    image = transform(PAIR_ORDER_4, rp, cp, None, None, swap)
    c = canonical_form(image)
    assert canonical_form(c) == c


def test_enumeration():
    assert enumerate_ols(2) == []
    assert enumerate_ols(3) == [canonical_form(PAIR_ORDER_3)]
    assert enumerate_ols(4) == [canonical_form(PAIR_ORDER_4)]
    for bad in (1, 5, 6):
        with pytest.raises(UnsupportedOrderError):
            enumerate_ols(bad)


def test_order_2_by_brute_force():
    squares = [s for s in product(product((1, 2), repeat=2), repeat=2) if is_latin(s)]
    assert len(squares) == 2
    assert not any(are_orthogonal(a, b) for a in squares for b in squares)


def test_raw_pairs_collapse_to_one_class():
    for d, ref in ((3, PAIR_ORDER_3), (4, PAIR_ORDER_4)):
        raw = list(raw_ols_pairs(d))
        assert raw
        assert {canonical_form(p) for p in raw} == {canonical_form(ref)}


def test_json_round_trip():
    assert OLSPair.from_json(PAIR_ORDER_4.to_json()) == PAIR_ORDER_4
    assert PAIR_ORDER_3.to_json()["first"] == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
