"""Contains unit tests for the pattern algebra and the taxicab geometry of plots."""

from itertools import combinations
from typing import List, Tuple

import pytest
from pydantic import ValidationError

from prolific_permutations import (
    CutCount,
    DeletesEverythingError,
    IndexOutOfRangeError,
    InvalidPairError,
    MalformedInputError,
    NotAPermutationError,
    Permutation,
    SizeOneError,
    Symmetry,
    apply_symmetry,
    breadth,
    closest_pair,
    contains,
    count_cuts,
    delete,
    distance,
    find_occurrence,
    identity,
    index_set,
    parse,
    plot,
    span,
    symmetries,
    symmetry,
)
from tests.resources.figures import BREADTH_FOUR, PACKED_SIX_PROLIFIC
from tests.utils import all_permutations


@pytest.mark.parametrize(
    "text, values",
    [
        ("2 4 1 3", (2, 4, 1, 3)),
        ("2,4,1,3", (2, 4, 1, 3)),
        ("  2, 4\n1\t3 ", (2, 4, 1, 3)),
        ("1", (1,)),
    ],
)
def test_parse(text: str, values: Tuple[int, ...]) -> None:
    assert parse(text).values == values


def test_parse_rejects_non_integer_tokens() -> None:
    with pytest.raises(MalformedInputError, match="Token 'x' of '2 x 1' is not an integer."):
        parse("2 x 1")


@pytest.mark.parametrize("text", ["1 1 2", "0 1 2", "2 3", ""])
def test_parse_rejects_non_bijections(text: str) -> None:
    with pytest.raises(NotAPermutationError):
        parse(text)


def test_permutation_model_validates_values() -> None:
    with pytest.raises(ValidationError):
        Permutation(values=(1, 3))

    assert Permutation(values=(2, 1)) == Permutation.of([2, 1])


def test_permutation_is_callable_and_hashable() -> None:
    permutation = parse("2 4 1 3")

    assert permutation(1) == 2
    assert len(permutation) == permutation.n == 4
    assert str(permutation) == "2 4 1 3"
    assert len({permutation, parse("2,4,1,3")}) == 1


def test_identity_and_plot() -> None:
    assert identity(3).values == (1, 2, 3)
    assert plot(parse("2 4 1 3")) == [(1, 2), (2, 4), (3, 1), (4, 3)]


def test_index_set_sorts_and_removes_repetitions() -> None:
    assert index_set(BREADTH_FOUR, [5, 2, 5, 9]) == (2, 5, 9)


def test_index_set_rejects_positions_outside() -> None:
    with pytest.raises(IndexOutOfRangeError, match=r"Positions \[0, 10\] lie outside of \[1, 9\]."):
        index_set(BREADTH_FOUR, [0, 3, 10])


@pytest.mark.parametrize(
    "indices, pattern",
    [
        ([], "2 7 4 9 1 5 8 3 6"),
        ([5], "1 6 3 8 4 7 2 5"),
        ([1, 9], "5 3 7 1 4 6 2"),
        ([2, 4, 6, 8], "2 3 1 5 4"),
    ],
)
def test_delete(indices: List[int], pattern: str) -> None:
    assert delete(BREADTH_FOUR, indices) == parse(pattern)


def test_delete_everything_is_rejected() -> None:
    with pytest.raises(DeletesEverythingError):
        delete(parse("2 1"), [1, 2])


@pytest.mark.parametrize("n", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
def test_deletions_compose(n: int) -> None:
    for permutation in all_permutations(n):
        for size in range(2, min(3, n - 1) + 1):
            for indices in combinations(range(1, n + 1), size):
                for first_size in range(1, size):
                    for first in combinations(indices, first_size):
                        second = [b - sum(a < b for a in first) for b in indices if b not in first]
                        assert delete(delete(permutation, first), second) == delete(permutation, indices)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_deletions_are_contained(n: int) -> None:
    for permutation in all_permutations(n):
        for size in range(1, n):
            for indices in combinations(range(1, n + 1), size):
                assert contains(permutation, delete(permutation, indices))


@pytest.mark.parametrize(
    "pattern, occurrence",
    [
        ("1", (1,)),
        ("2 1", (1, 5)),
        ("1 2 3", (1, 2, 4)),
        ("3 2 1", (2, 3, 5)),
        ("2 4 1 3", (1, 2, 5, 6)),
        ("1 2 3 4 5", None),
    ],
)
def test_find_occurrence(pattern: str, occurrence: Tuple[int, ...]) -> None:
    assert find_occurrence(BREADTH_FOUR, parse(pattern)) == occurrence
    assert contains(BREADTH_FOUR, parse(pattern)) is (occurrence is not None)


def test_find_occurrence_of_longer_pattern() -> None:
    assert find_occurrence(parse("1 2"), parse("1 2 3")) is None


@pytest.mark.parametrize("pair, expected", [((1, 2), 6), ((1, 3), 4), ((3, 1), 4), ((4, 5), 9)])
def test_distance(pair: Tuple[int, int], expected: int) -> None:
    assert distance(BREADTH_FOUR, pair) == expected


@pytest.mark.parametrize("pair", [(2, 2), (0, 1), (1, 10)])
def test_distance_rejects_invalid_pairs(pair: Tuple[int, int]) -> None:
    with pytest.raises((InvalidPairError, IndexOutOfRangeError)):
        distance(BREADTH_FOUR, pair)


def test_breadth_and_closest_pair() -> None:
    assert breadth(BREADTH_FOUR) == 4
    assert closest_pair(BREADTH_FOUR) == (1, 3)
    assert breadth(identity(5)) == 2
    assert breadth(PACKED_SIX_PROLIFIC) == 8


def test_breadth_of_size_one_is_undefined() -> None:
    with pytest.raises(SizeOneError):
        breadth(identity(1))
    with pytest.raises(SizeOneError):
        closest_pair(identity(1))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_breadth_matches_all_pairs(n: int) -> None:
    for permutation in all_permutations(n):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        distances = [distance(permutation, pair) for pair in pairs]
        assert breadth(permutation) == min(distances)
        assert closest_pair(permutation) == pairs[distances.index(min(distances))]


def test_breadth_of_large_permutations() -> None:
    assert breadth(identity(100_000)) == 2
    assert breadth(Permutation.of(range(100_000, 0, -1))) == 2


def test_span() -> None:
    assert span(BREADTH_FOUR, (1, 2)) == (3, 6, 8, 9)
    assert span(BREADTH_FOUR, (1, 3)) == (2, 8)
    assert span(BREADTH_FOUR, (2, 9)) == (3, 4, 5, 6, 7, 8)
    assert span(BREADTH_FOUR, (2, 9), central=True) == ()
    assert span(BREADTH_FOUR, (5, 7)) == (1, 2, 3, 6, 8, 9)
    assert span(BREADTH_FOUR, (5, 7), central=True) == (6,)


@pytest.mark.parametrize(
    "pair, cuts",
    [
        ((1, 2), CutCount(left=0, right=4, below=0, above=0, central=0)),
        ((1, 3), CutCount(left=0, right=1, below=0, above=1, central=0)),
        ((2, 9), CutCount(left=0, right=0, below=4, above=2, central=0)),
        ((5, 7), CutCount(left=3, right=2, below=0, above=0, central=1)),
    ],
)
def test_count_cuts(pair: Tuple[int, int], cuts: CutCount) -> None:
    assert count_cuts(BREADTH_FOUR, pair) == cuts
    assert count_cuts(BREADTH_FOUR, pair).total == distance(BREADTH_FOUR, pair) - 2


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cut_total_is_distance_minus_two(n: int) -> None:
    for permutation in all_permutations(n):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                assert count_cuts(permutation, (i, j)).total == distance(permutation, (i, j)) - 2


@pytest.mark.parametrize(
    "which, expected",
    [
        (Symmetry.REVERSE, "3 1 4 2"),
        (Symmetry.COMPLEMENT, "3 1 4 2"),
        (Symmetry.INVERSE, "3 1 4 2"),
    ],
)
def test_symmetry_of_2413(which: Symmetry, expected: str) -> None:
    assert str(symmetry(parse("2 4 1 3"), which)) == expected


def test_apply_symmetry_composes_from_left_to_right() -> None:
    permutation = parse("2 3 1")

    assert str(apply_symmetry(permutation, Symmetry.REVERSE, Symmetry.COMPLEMENT)) == "3 1 2"
    assert str(apply_symmetry(permutation, Symmetry.INVERSE, Symmetry.REVERSE)) == "2 1 3"
    assert apply_symmetry(permutation) == permutation


def test_symmetries() -> None:
    assert symmetries(parse("2 4 1 3")) == [parse("2 4 1 3"), parse("3 1 4 2")]
    assert len(symmetries(parse("1 3 2"))) == 4


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_symmetries_preserve_breadth(n: int) -> None:
    for permutation in all_permutations(n):
        assert {breadth(image) for image in symmetries(permutation)} == {breadth(permutation)}
