"""Contains the pattern algebra and the taxicab geometry of permutation plots."""

import re
from bisect import bisect_left
from enum import Enum
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from prolific_permutations._errors import (
    DeletesEverythingError,
    IndexOutOfRangeError,
    InvalidPairError,
    MalformedInputError,
    SizeOneError,
)
from prolific_permutations._schemas import CutCount, Permutation, Point

_SEPARATOR = re.compile(r"[\s,]+")


class Symmetry(Enum):
    """The generators of the dihedral group acting on permutation plots."""

    REVERSE = "reverse"
    COMPLEMENT = "complement"
    INVERSE = "inverse"


def parse(text: str) -> Permutation:
    """Parses a permutation from whitespace- or comma-separated one-line notation.

    >>> parse("2,7,4,9,1,5,8,3,6").values
    (2, 7, 4, 9, 1, 5, 8, 3, 6)

    Args:
        text: The one-line notation.

    Returns:
        Permutation: The parsed permutation.

    Raises:
        MalformedInputError: If a token is not an integer.
    """
    tokens = [token for token in _SEPARATOR.split(text.strip()) if token]
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError as error:
            raise MalformedInputError(f"Token '{token}' of '{text.strip()}' is not an integer.") from error
    return Permutation.of(values)


def identity(n: int) -> Permutation:
    """Returns the identity permutation 12...n."""
    return Permutation.of(list(range(1, n + 1)))


def plot(permutation: Permutation) -> List[Point]:
    """Returns the lattice points (i, σ(i)) of a permutation."""
    return permutation.points()


def index_set(permutation: Permutation, indices: Iterable[int]) -> Tuple[int, ...]:
    """Normalises positions of a permutation into a sorted tuple without repetitions.

    Args:
        permutation: The permutation the positions refer to.
        indices: The positions.

    Returns:
        Tuple[int, ...]: The sorted positions.

    Raises:
        IndexOutOfRangeError: If a position lies outside of [n].
    """
    normalised = tuple(sorted(set(indices)))
    outside = [index for index in normalised if not 1 <= index <= permutation.n]
    if outside:
        raise IndexOutOfRangeError(f"Positions {outside} lie outside of [1, {permutation.n}].")
    return normalised


def _check_pair(permutation: Permutation, pair: Point) -> Point:
    i, j = pair
    if i == j:
        raise InvalidPairError(f"The pair ({i}, {j}) does not consist of two distinct positions.")
    index_set(permutation, pair)
    return (i, j) if i < j else (j, i)


def reduce_word(values: Sequence[int]) -> Tuple[int, ...]:
    """Replaces distinct integers by their ranks, keeping their order.

    >>> reduce_word([7, 2, 9])
    (2, 1, 3)
    """
    ranks = {value: rank for rank, value in enumerate(sorted(values), start=1)}
    return tuple(ranks[value] for value in values)


def delete_word(values: Sequence[int], positions: Iterable[int]) -> Tuple[int, ...]:
    """Deletes 1-based positions from a permutation word and rank-reduces the remainder."""
    removed = set(positions)
    deleted_values = sorted(values[position - 1] for position in removed)
    return tuple(
        value - bisect_left(deleted_values, value)
        for position, value in enumerate(values, start=1)
        if position not in removed
    )


def delete(permutation: Permutation, indices: Iterable[int]) -> Permutation:
    """Returns the pattern formed by deleting the entries at the given positions.

    >>> str(delete(parse("2 7 4 9 1 5 8 3 6"), [5]))
    '1 6 3 8 4 7 2 5'

    Args:
        permutation: The permutation to delete from.
        indices: The positions to delete.

    Returns:
        Permutation: The rank-reduced remainder.

    Raises:
        DeletesEverythingError: If every position is deleted.
    """
    positions = index_set(permutation, indices)
    if len(positions) == permutation.n:
        raise DeletesEverythingError(f"Deleting all {permutation.n} entries of '{permutation}' leaves no pattern.")
    if not positions:
        return permutation
    return Permutation.model_construct(values=delete_word(permutation.values, positions))


def find_occurrence(permutation: Permutation, pattern: Permutation) -> Optional[Tuple[int, ...]]:
    """Finds the lexicographically smallest occurrence of a pattern.

    Args:
        permutation: The permutation to search in.
        pattern: The pattern to search for.

    Returns:
        Optional[Tuple[int, ...]]: The positions of the occurrence or ``None`` if the pattern is avoided.
    """
    size, length = permutation.n, pattern.n
    if length > size:
        return None

    # For every pattern entry, the earlier pattern entries directly below and above it by value.
    neighbours: List[Tuple[Optional[int], Optional[int]]] = []
    for t in range(length):
        below = [s for s in range(t) if pattern.values[s] < pattern.values[t]]
        above = [s for s in range(t) if pattern.values[s] > pattern.values[t]]
        neighbours.append(
            (
                max(below, key=lambda s: pattern.values[s]) if below else None,
                min(above, key=lambda s: pattern.values[s]) if above else None,
            )
        )

    chosen: List[int] = []

    def _extend(start: int) -> bool:
        t = len(chosen)
        if t == length:
            return True
        below, above = neighbours[t]
        lower = permutation.values[chosen[below]] if below is not None else 0
        upper = permutation.values[chosen[above]] if above is not None else size + 1
        for position in range(start, size - (length - t) + 1):
            if lower < permutation.values[position] < upper:
                chosen.append(position)
                if _extend(position + 1):
                    return True
                chosen.pop()
        return False

    if _extend(0):
        return tuple(position + 1 for position in chosen)
    return None


def contains(permutation: Permutation, pattern: Permutation) -> bool:
    """Checks whether a permutation contains a pattern.

    >>> contains(parse("1 2 3"), parse("2 1"))
    False
    """
    return find_occurrence(permutation, pattern) is not None


def distance(permutation: Permutation, pair: Point) -> int:
    """Returns the taxicab distance between two points of the plot.

    >>> distance(parse("2 7 4 9 1 5 8 3 6"), (1, 2))
    6

    Args:
        permutation: The permutation.
        pair: Two distinct positions.

    Returns:
        int: |i - j| + |σ(i) - σ(j)|.
    """
    i, j = _check_pair(permutation, pair)
    return j - i + abs(permutation(i) - permutation(j))


def closest_pair_of_word(values: Sequence[int]) -> Tuple[int, Point]:
    """Finds the breadth of a word and its lexicographically smallest minimising pair.

    Only pairs whose position gap leaves room for an improvement are scanned, which takes O(n·br) steps.
    """
    size = len(values)
    best = size * 2
    best_pair = (1, 2)
    for i in range(size):
        value = values[i]
        j = i + 1
        while j < size and j - i + 1 < best:
            candidate = j - i + abs(values[j] - value)
            if candidate < best:
                best = candidate
                best_pair = (i + 1, j + 1)
            j += 1
    return best, best_pair


def closest_pair(permutation: Permutation) -> Point:
    """Returns the lexicographically smallest pair of positions at minimum distance.

    Raises:
        SizeOneError: If the permutation has a single entry.
    """
    if permutation.n < 2:
        raise SizeOneError("The breadth of a permutation of size one is undefined.")
    return closest_pair_of_word(permutation.values)[1]


def breadth(permutation: Permutation) -> int:
    """Returns the minimum taxicab distance between two distinct points of the plot.

    >>> breadth(parse("2 7 4 9 1 5 8 3 6"))
    4

    Args:
        permutation: A permutation of size at least two.

    Returns:
        int: The breadth.

    Raises:
        SizeOneError: If the permutation has a single entry.
    """
    if permutation.n < 2:
        raise SizeOneError("The breadth of a permutation of size one is undefined.")
    return closest_pair_of_word(permutation.values)[0]


def span(permutation: Permutation, pair: Point, central: bool = False) -> Tuple[int, ...]:
    """Returns the positions of the points in the span of a pair.

    The span holds the points whose position or value lies strictly between those of the pair. The central
    span holds the points for which both hold.

    Args:
        permutation: The permutation.
        pair: Two distinct positions.
        central: Whether to return the central span.

    Returns:
        Tuple[int, ...]: The positions in ascending order.
    """
    i, j = _check_pair(permutation, pair)
    low, high = sorted((permutation(i), permutation(j)))
    positions = []
    for position, value in enumerate(permutation.values, start=1):
        if position in (i, j):
            continue
        between_positions = i < position < j
        between_values = low < value < high
        if (between_positions and between_values) if central else (between_positions or between_values):
            positions.append(position)
    return tuple(positions)


def count_cuts(permutation: Permutation, pair: Point) -> CutCount:
    """Counts the points that cut a pair, by side.

    A point whose value lies between the pair's values but whose position lies outside cuts from the left
    or right. A point whose position lies between but whose value lies outside cuts from below or above.
    Points of the central span cut once horizontally and once vertically.

    Args:
        permutation: The permutation.
        pair: Two distinct positions.

    Returns:
        CutCount: The cut counts.
    """
    i, j = _check_pair(permutation, pair)
    low, high = sorted((permutation(i), permutation(j)))
    left = right = below = above = central = 0
    for position in span(permutation, pair):
        value = permutation(position)
        between_positions = i < position < j
        between_values = low < value < high
        if between_positions and between_values:
            central += 1
        elif between_values:
            if position < i:
                left += 1
            else:
                right += 1
        elif value < low:
            below += 1
        else:
            above += 1
    return CutCount(left=left, right=right, below=below, above=above, central=central)


def apply_symmetry(permutation: Permutation, *which: Symmetry) -> Permutation:
    """Applies symmetries from left to right.

    >>> str(apply_symmetry(parse("2 4 1 3"), Symmetry.INVERSE))
    '3 1 4 2'
    """
    values = permutation.values
    size = len(values)
    for symmetry in which:
        if symmetry == Symmetry.REVERSE:
            values = values[::-1]
        elif symmetry == Symmetry.COMPLEMENT:
            values = tuple(size + 1 - value for value in values)
        else:
            inverse = [0] * size
            for position, value in enumerate(values, start=1):
                inverse[value - 1] = position
            values = tuple(inverse)
    return Permutation.model_construct(values=values)


def symmetry(permutation: Permutation, which: Symmetry) -> Permutation:
    """Applies one of reverse, complement or inverse."""
    return apply_symmetry(permutation, which)


def symmetries(permutation: Permutation) -> List[Permutation]:
    """Returns the distinct images of a permutation under the eight symmetries of the square, sorted."""
    images = set()
    for reverse, complement, inverse in product((False, True), repeat=3):
        generators = zip((Symmetry.INVERSE, Symmetry.REVERSE, Symmetry.COMPLEMENT), (inverse, reverse, complement))
        chosen = [generator for generator, used in generators if used]
        images.add(apply_symmetry(permutation, *chosen).values)
    return [Permutation.model_construct(values=values) for values in sorted(images)]
