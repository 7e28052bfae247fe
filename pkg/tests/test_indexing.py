import itertools

import pytest
from hypothesis import given, strategies as st

from fcmono.indexing import BinaryIndex, all_indices, below, leq, meet, position, weight


def idx(s):
    return BinaryIndex.parse(s)


def test_position_examples():
    assert position(idx("00")) == 0
    assert position(idx("110")) == 3
    for m in range(1, 6):
        assert position(BinaryIndex((1,) * m)) == 2 ** m - 1


def test_enumeration_order_starts_like_the_listing():
    assert [str(I) for I in all_indices(2)] == ["00", "10", "01", "11"]


def test_leq_examples():
    assert leq(idx("01"), idx("11"))
    assert not leq(idx("10"), idx("01"))
    assert leq(idx("101"), idx("101"))


def test_meet_examples():
    assert meet(idx("10"), idx("11")) == idx("10")
    assert meet(idx("000"), idx("101")) == idx("000")
    assert meet(idx("11"), idx("11")) == idx("11")


def test_weight_examples():
    assert weight(idx("000")) == 0
    assert weight(idx("101")) == 2
    assert weight(BinaryIndex((1,) * 4)) == 4


@pytest.mark.parametrize("bad", [(), (0, 2), (1, -1)])
def test_rejects_bad_bits(bad):
    with pytest.raises(ValueError):
        BinaryIndex(bad)


def test_length_mismatch_is_an_error():
    with pytest.raises(ValueError):
        leq(idx("1"), idx("10"))
    with pytest.raises(ValueError):
        meet(idx("1"), idx("10"))


def test_from_position_range():
    with pytest.raises(ValueError):
        BinaryIndex.from_position(4, 2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_position_is_a_bijection(m):
    seen = sorted(position(I) for I in all_indices(m))
    assert seen == list(range(2 ** m))
    for pos in range(2 ** m):
        assert position(BinaryIndex.from_position(pos, m)) == pos


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_leq_is_a_partial_order(m):
    idxs = list(all_indices(m))
    for a in idxs:
        assert leq(a, a)
    for a, b in itertools.product(idxs, repeat=2):
        if leq(a, b) and leq(b, a):
            assert a == b
    for a, b, c in itertools.product(idxs, repeat=3):
        if leq(a, b) and leq(b, c):
            assert leq(a, c)


def test_below_lists_exactly_the_smaller_indices():
    for I in all_indices(3):
        expected = {J for J in all_indices(3) if leq(J, I)}
        assert set(below(I)) == expected
        assert len(list(below(I))) == 2 ** weight(I)


bits = st.integers(min_value=1, max_value=6).flatmap(
    lambda m: st.tuples(st.lists(st.integers(0, 1), min_size=m, max_size=m),
                        st.lists(st.integers(0, 1), min_size=m, max_size=m)))


@given(bits)
def test_meet_is_bitwise_and(pair):
    a, b = BinaryIndex(tuple(pair[0])), BinaryIndex(tuple(pair[1]))
    c = meet(a, b)
    assert position(c) == position(a) & position(b)
    assert weight(c) <= min(weight(a), weight(b))
    assert leq(c, a) and leq(c, b)


@given(bits)
def test_string_round_trip(pair):
    a = BinaryIndex(tuple(pair[0]))
    assert BinaryIndex.parse(str(a)) == a
