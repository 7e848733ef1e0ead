"""This module contains utility functions for tests."""

from itertools import permutations
from typing import Iterator

from prolific_permutations import Permutation


def all_permutations(n: int) -> Iterator[Permutation]:
    """Yields every permutation of size n in lexicographic order.

    Args:
        n: The size.

    Yields:
        Permutation: The permutations.
    """
    for values in permutations(range(1, n + 1)):
        yield Permutation.of(values)
