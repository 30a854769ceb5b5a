from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import box_partitions
from qtqft import BoxContext, InvalidPartition, complement, enumerate_partitions, size
from qtqft.partitions import parse_partition

boxes = st.builds(BoxContext, st.integers(1, 5), st.integers(1, 5))


def test_enumerate_small():
    assert enumerate_partitions(BoxContext(1, 1)) == ((0,), (1,))
    assert enumerate_partitions(BoxContext(2, 2)) == ((0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2))
    assert len(enumerate_partitions(BoxContext(2, 3))) == 10


@pytest.mark.parametrize("r,s", [(1, 1), (1, 4), (2, 3), (3, 2), (3, 3), (4, 3)])
def test_enumerate_matches_brute_force(r, s):
    ctx = BoxContext(r, s)
    assert list(enumerate_partitions(ctx)) == box_partitions(r, s)
    assert ctx.basis_count == comb(r + s, r) == len(ctx.partitions)


def test_complement_examples():
    assert complement(BoxContext(2, 2), (0, 0)) == (2, 2)
    assert complement(BoxContext(2, 3), (2, 1)) == (2, 1)
    assert complement(BoxContext(1, 1), (1,)) == (0,)


def test_size():
    assert size((0, 0, 0)) == 0
    assert size((2, 1)) == 3
    ctx = BoxContext(2, 2)
    assert all(size(a) + size(complement(ctx, a)) == 4 for a in ctx.partitions)


@given(boxes, st.data())
def test_complement_is_involution(ctx, data):
    a = data.draw(st.sampled_from(ctx.partitions))
    ac = complement(ctx, a)
    assert ac in ctx.index
    assert complement(ctx, ac) == a
    assert size(ac) == ctx.r * ctx.s - size(a)


@pytest.mark.parametrize("bad", [(3, 0), (1, 2), (0, -1), (1,), (1, 1, 1)])
def test_invalid_partitions_rejected(bad):
    with pytest.raises(InvalidPartition):
        complement(BoxContext(2, 2), bad)


def test_context_validation():
    with pytest.raises(ValueError):
        BoxContext(0, 2)
    with pytest.raises(ValueError):
        BoxContext(2, -1)


def test_parse_and_pad():
    ctx = BoxContext(3, 2)
    assert parse_partition(ctx, "2,1") == (2, 1, 0)
    assert parse_partition(ctx, "") == (0, 0, 0)
    assert parse_partition(ctx, "[2, 2, 1]") == (2, 2, 1)
    assert ctx.partition([1, 0, 0, 0]) == (1, 0, 0)
    for text in ["3", "1,2", "a,b", "1,1,1,1"]:
        with pytest.raises(InvalidPartition):
            parse_partition(ctx, text)
