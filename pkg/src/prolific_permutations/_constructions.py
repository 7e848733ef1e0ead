"""Contains the explicit minimal k-prolific permutations and their growth by front insertion."""

from math import gcd
from typing import List

from prolific_permutations._errors import InputError, InvariantViolationError, KOutOfRangeError, TooSmallError
from prolific_permutations._schemas import GridSpec, Permutation, Point


def _check_k(k: int) -> None:
    if k < 1:
        raise KOutOfRangeError(f"k = {k} must be at least 1.")


def minprol_size(k: int) -> int:
    """Returns the smallest size of a k-prolific permutation, the ceiling of k²/2 + 2k + 1.

    >>> [minprol_size(k) for k in range(1, 11)]
    [4, 7, 12, 17, 24, 31, 40, 49, 60, 71]
    """
    _check_k(k)
    return -(-(k * k + 4 * k + 2) // 2)


def sigma_k(k: int) -> Permutation:
    """Returns the minimal k-prolific permutation σ_k.

    σ_k(i) is i·(k + 2) modulo m + 1 for odd k and i·(k + 1) modulo m + 1 for even k, where m = minprol_size(k).

    >>> str(sigma_k(3))
    '5 10 2 7 12 4 9 1 6 11 3 8'

    Args:
        k: The number of deletions the permutation withstands.

    Returns:
        Permutation: σ_k of size minprol_size(k).

    Raises:
        InvariantViolationError: If the multiplier shares a factor with the modulus.
    """
    size = minprol_size(k)
    modulus = size + 1
    multiplier = k + 2 if k % 2 else k + 1
    if gcd(multiplier, modulus) != 1:
        raise InvariantViolationError(f"The multiplier {multiplier} of σ_{k} is not coprime to the modulus {modulus}.")
    return Permutation.of([position * multiplier % modulus for position in range(1, size + 1)])


def sigma_k_grid(k: int) -> GridSpec:
    """Returns the two lattice grids whose union is the plot of σ_k."""
    _check_k(k)
    if k % 2:
        return GridSpec(
            k=k,
            p1=(1, k + 2),
            p2=((k + 3) // 2, (k + 1) // 2),
            u=(k + 2, -1),
            v=(1, k + 2),
            gamma1_q_max=(k + 1) // 2,
            gamma1_r_max=(k - 1) // 2,
            gamma2_q_max=(k - 1) // 2,
            gamma2_r_max=(k + 1) // 2,
        )
    return GridSpec(
        k=k,
        p1=(1, k + 1),
        p2=(k // 2 + 2, k // 2),
        u=(k + 3, -1),
        v=(1, k + 1),
        gamma1_q_max=k // 2,
        gamma1_r_max=k // 2,
        gamma2_q_max=k // 2 - 1,
        gamma2_r_max=k // 2 + 1,
    )


def grid_points(grid: GridSpec) -> List[Point]:
    """Returns the points of both grids ordered from left to right."""
    points = []
    for origin, q_max, r_max in (
        (grid.p1, grid.gamma1_q_max, grid.gamma1_r_max),
        (grid.p2, grid.gamma2_q_max, grid.gamma2_r_max),
    ):
        for q in range(q_max + 1):
            for r in range(r_max + 1):
                points.append((origin[0] + q * grid.u[0] + r * grid.v[0], origin[1] + q * grid.u[1] + r * grid.v[1]))
    return sorted(points)


def extension_position(k: int) -> int:
    """Returns the position whose value decides the next front insertion: k + 2 for odd k, k + 3 for even k."""
    _check_k(k)
    return k + 2 if k % 2 else k + 3


def extend(permutation: Permutation, k: int, j: int) -> Permutation:
    """Grows a permutation by j front insertions.

    Each insertion reads the value v at :func:`extension_position` and prepends v + 1, shifting every value
    of at least v + 1 up by one.

    >>> str(extend(sigma_k(3), 3, 1))
    '13 5 10 2 7 12 4 9 1 6 11 3 8'

    Args:
        permutation: The permutation to grow.
        k: The prolificity index the insertion position is chosen for.
        j: The number of insertions.

    Returns:
        Permutation: The grown permutation of size n + j.

    Raises:
        InputError: If j is negative.
        TooSmallError: If the permutation has no entry at the insertion position.
    """
    position = extension_position(k)
    if j < 0:
        raise InputError(f"The number of insertions must not be negative, got {j}.")
    if permutation.n < position:
        raise TooSmallError(
            f"A permutation of size {permutation.n} has no entry at position {position} to insert above for k = {k}."
        )

    values = permutation.values
    for _ in range(j):
        inserted = values[position - 1] + 1
        values = (inserted,) + tuple(value + 1 if value >= inserted else value for value in values)
    return Permutation.model_construct(values=values)
