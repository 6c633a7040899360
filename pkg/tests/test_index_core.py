"""Tests for index parsing, slicing and enumeration."""

from math import comb

import pytest
from hypothesis import given

from conftest import indices
from index_core import (
    EMPTY,
    Index,
    InvalidIndexError,
    concat,
    enumerate_indices,
    enumerate_indices_by_depth,
    enumerate_indices_up_to,
    enumerate_triples,
    enumerate_triples_by_depth,
    index_from_json,
    index_to_json,
    index_to_text,
    is_admissible,
    ones,
    parse_index,
    prefix,
    reverse,
    slice_index,
    suffix,
    trailing_ones,
)


class TestParse:
    def test_simple(self):
        assert parse_index("2,1") == Index((2, 1))

    def test_spaces_and_parentheses(self):
        assert parse_index(" (1, 2 ,3) ") == Index((1, 2, 3))

    @pytest.mark.parametrize("text", ["", "  ", "∅", "()"])
    def test_empty(self, text):
        assert parse_index(text) == EMPTY

    @pytest.mark.parametrize("text", ["0", "2,-1", "a,b", "1,,2", "1000001"])
    def test_rejects(self, text):
        with pytest.raises(InvalidIndexError):
            parse_index(text)

    def test_invalid_index_is_value_error(self):
        with pytest.raises(ValueError):
            parse_index("x")

    @given(indices(max_weight=7))
    def test_text_is_inverse(self, k):
        assert parse_index(index_to_text(k)) == k

    def test_json(self):
        assert index_from_json(index_to_json((3, 1))) == Index((3, 1))
        with pytest.raises(InvalidIndexError):
            index_from_json([0])


class TestStructure:
    def test_weight_depth(self):
        k = Index((2, 1, 3))
        assert k.weight == 6
        assert k.depth == 3

    def test_admissible(self):
        assert is_admissible(EMPTY)
        assert is_admissible((1, 2))
        assert not is_admissible((2, 1))

    def test_trailing_ones(self):
        assert trailing_ones((2, 1, 1)) == 2
        assert trailing_ones((1, 2)) == 0
        assert trailing_ones(ones(3)) == 3

    def test_slices(self):
        k = Index((1, 2, 3, 4))
        assert slice_index(k, 1, 3) == Index((2, 3))
        assert prefix(k, 0) == EMPTY
        assert suffix(k, 4) == EMPTY
        assert concat(prefix(k, 2), suffix(k, 2)) == k

    def test_slice_out_of_range(self):
        with pytest.raises(InvalidIndexError):
            slice_index(Index((1, 2)), 2, 1)
        with pytest.raises(InvalidIndexError):
            suffix(Index((1,)), 2)

    def test_reverse(self):
        assert reverse((1, 2, 3)) == Index((3, 2, 1))

    def test_slices_stay_indices(self):
        assert isinstance(Index((1, 2))[1:], Index)

    def test_str(self):
        assert str(EMPTY) == "∅"
        assert str(Index((1, 2))) == "(1,2)"


class TestEnumeration:
    def test_weight_five_has_sixteen(self):
        assert len(enumerate_indices(5)) == 16

    def test_weight_zero(self):
        assert enumerate_indices(0) == [EMPTY]

    @pytest.mark.parametrize("w", range(1, 8))
    def test_counts(self, w):
        assert len(enumerate_indices(w)) == 2 ** (w - 1)

    def test_lexicographic(self):
        assert enumerate_indices(3) == [Index(p) for p in [(1, 1, 1), (1, 2), (2, 1), (3,)]]

    @pytest.mark.parametrize("w,r", [(5, 1), (5, 2), (6, 3), (4, 4), (3, 4)])
    def test_by_depth(self, w, r):
        found = enumerate_indices_by_depth(w, r)
        assert len(found) == (comb(w - 1, r - 1) if w >= r else 0)
        assert all(len(k) == r and sum(k) == w for k in found)

    def test_up_to(self):
        assert len(enumerate_indices_up_to(4)) == 1 + 1 + 2 + 4 + 8

    def test_negative_weight(self):
        with pytest.raises(InvalidIndexError):
            enumerate_indices(-1)


class TestTriples:
    def test_weight_two(self):
        assert enumerate_triples(2) == [(EMPTY, EMPTY, 2)]

    def test_weights_and_corners(self):
        for k, l, a in enumerate_triples(5):
            assert a >= 2
            assert sum(k) + a + sum(l) == 5

    def test_order_is_by_column_depth_first(self):
        depths = [len(k) for k, _, _ in enumerate_triples(5)]
        assert depths == sorted(depths)

    def test_min_corner_one(self):
        assert (EMPTY, EMPTY, 1) in enumerate_triples(1, min_corner=1)
        assert enumerate_triples(1) == []

    def test_by_depth(self):
        triples = enumerate_triples_by_depth(4, 1, 1)
        assert triples == [(Index((1,)), Index((1,)), 2)]
