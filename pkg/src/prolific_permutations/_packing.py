"""Contains permuted diamond packings, their validity, exact densities and the area bound on minimal sizes.

All geometry is exact. Coordinates are :class:`~fractions.Fraction` instances since odd k gives half-integer
semidiagonals.
"""

import logging
from fractions import Fraction
from math import floor, sqrt
from typing import Callable, List, Optional, Sequence, Tuple, Union

from prolific_permutations._constructions import minprol_size
from prolific_permutations._errors import (
    DegenerateBoxError,
    ExtensionParityError,
    IndexOutOfRangeError,
    InvariantViolationError,
    KOutOfRangeError,
)
from prolific_permutations._schemas import (
    Box,
    DensityResult,
    DiamondPacking,
    ExtensionSide,
    PackingValidity,
    Permutation,
    Point,
    ProofBoxLedger,
)

Coordinate = Union[int, Fraction]
Vertex = Tuple[Fraction, Fraction]
Polygon = List[Vertex]

HALF = Fraction(1, 2)

_logger = logging.getLogger("prolific_permutations")


def _taxicab(first: Tuple[Coordinate, Coordinate], second: Tuple[Coordinate, Coordinate]) -> Coordinate:
    return abs(first[0] - second[0]) + abs(first[1] - second[1])


def _extension_center(center: Point, semidiagonal: Fraction, side: ExtensionSide) -> Vertex:
    offset = -HALF if side == ExtensionSide.BELOW else HALF
    return (center[0] + semidiagonal, center[1] + offset)


def _nearby(centers: Sequence[Point], x: Fraction, reach: Fraction) -> range:
    """Returns the indices of the centers whose x-coordinate differs from x by less than reach.

    Centers of a permutation plot have x-coordinates 1, ..., n in order.
    """
    low = max(floor(x - reach) + 1, 1)
    high = min(-floor(-(x + reach)) - 1, len(centers))
    return range(low - 1, high)


def _overlapping_pairs(centers: Sequence[Point], semidiagonal: Fraction) -> List[Point]:
    overlaps = []
    for index, center in enumerate(centers):
        for other in range(index + 1, len(centers)):
            if centers[other][0] - center[0] >= 2 * semidiagonal:
                break
            if _taxicab(center, centers[other]) < 2 * semidiagonal:
                overlaps.append((index + 1, other + 1))
    return overlaps


def _extension_blocker(
    centers: Sequence[Point], index: int, semidiagonal: Fraction, side: ExtensionSide
) -> Optional[int]:
    """Returns the position of the first diamond whose interior meets an extension, if any."""
    extension = _extension_center(centers[index], semidiagonal, side)
    reach = semidiagonal + HALF
    for other in _nearby(centers, extension[0], reach):
        if other != index and _taxicab(extension, centers[other]) < reach:
            return other + 1
    return None


def _place_extensions(centers: Sequence[Point], semidiagonal: Fraction) -> List[Optional[ExtensionSide]]:
    sides: List[Optional[ExtensionSide]] = []
    for index in range(len(centers)):
        chosen = None
        for side in (ExtensionSide.BELOW, ExtensionSide.ABOVE):
            if _extension_blocker(centers, index, semidiagonal, side) is None:
                chosen = side
                break
        sides.append(chosen)
    return sides


def to_packing(permutation: Permutation, k: int, extended: bool = False) -> DiamondPacking:
    """Centres a diamond of semidiagonal k/2 + 1 on every point of the plot.

    Extended tiles, which only exist for odd k, add a diamond of semidiagonal 1/2 below the rightmost corner,
    or above it if the space below is covered by another diamond.

    Args:
        permutation: The permutation.
        k: The number of deleted entries.
        extended: Whether to use extended tiles.

    Returns:
        DiamondPacking: The packing.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
        ExtensionParityError: If extended tiles are requested for even k.
        InvariantViolationError: If an extension of a valid packing is covered on both sides.
    """
    if not 1 <= k < permutation.n:
        raise KOutOfRangeError(f"k = {k} is not in [1, {permutation.n - 1}] for a permutation of size {permutation.n}.")
    if extended and k % 2 == 0:
        raise ExtensionParityError(f"Extended diamonds need an odd k, got k = {k}.")

    centers = permutation.points()
    semidiagonal = Fraction(k, 2) + 1
    extensions: List[Optional[ExtensionSide]] = []
    if extended:
        extensions = _place_extensions(centers, semidiagonal)
        blocked = [index + 1 for index, side in enumerate(extensions) if side is None]
        if blocked:
            if not _overlapping_pairs(centers, semidiagonal):
                raise InvariantViolationError(
                    f"The valid packing of '{permutation}' has no room for the extensions of the tiles {blocked}."
                )
            _logger.warning(f"No room for the extensions of the tiles {blocked} of '{permutation}'.")
    return DiamondPacking(k=k, centers=centers, semidiagonal=semidiagonal, extended=extended, extensions=extensions)


def is_valid_packing(packing: DiamondPacking) -> PackingValidity:
    """Checks that the tiles of a packing have pairwise disjoint interiors.

    Diamonds overlap when their centres are closer than twice the semidiagonal. Extensions must additionally
    stay clear of every other diamond and must have been placed at all.

    Args:
        packing: The packing.

    Returns:
        PackingValidity: The verdict with the overlapping pairs of tile positions, sorted.
    """
    overlaps = _overlapping_pairs(packing.centers, packing.semidiagonal)
    extension_overlaps: List[Point] = []
    blocked: List[int] = []
    if packing.extended:
        for index, side in enumerate(packing.extensions):
            if side is None:
                blocked.append(index + 1)
                continue
            blocker = _extension_blocker(packing.centers, index, packing.semidiagonal, side)
            if blocker is not None:
                extension_overlaps.append((index + 1, blocker))
    return PackingValidity(
        valid=not (overlaps or extension_overlaps or blocked),
        overlaps=overlaps,
        extension_overlaps=extension_overlaps,
        blocked_extensions=blocked,
    )


def diamond(center: Tuple[Fraction, Fraction], semidiagonal: Fraction) -> Polygon:
    """Returns the corners of a diamond counter-clockwise, starting at the top."""
    x, y = Fraction(center[0]), Fraction(center[1])
    return [(x, y + semidiagonal), (x - semidiagonal, y), (x, y - semidiagonal), (x + semidiagonal, y)]


def _check_index(packing: DiamondPacking, index: int) -> None:
    if not 1 <= index <= packing.n:
        raise IndexOutOfRangeError(f"Tile {index} lies outside of [1, {packing.n}].")


def tile_polygons(packing: DiamondPacking, index: int) -> List[Polygon]:
    """Returns the diamond of a tile and, for extended tiles, its extension as convex polygons.

    Args:
        packing: The packing.
        index: The 1-based position of the tile.

    Returns:
        List[Polygon]: The convex parts of the tile, which have disjoint interiors.
    """
    _check_index(packing, index)
    center = packing.centers[index - 1]
    parts = [diamond((Fraction(center[0]), Fraction(center[1])), packing.semidiagonal)]
    side = packing.extensions[index - 1] if packing.extended else None
    if side is not None:
        parts.append(diamond(_extension_center(center, packing.semidiagonal, side), HALF))
    return parts


def tile_outline(packing: DiamondPacking, index: int) -> Polygon:
    """Returns the outline of a tile, a diamond with the extension notched onto its rightmost corner."""
    _check_index(packing, index)
    center = packing.centers[index - 1]
    top, left, bottom, right = diamond((Fraction(center[0]), Fraction(center[1])), packing.semidiagonal)
    side = packing.extensions[index - 1] if packing.extended else None
    if side is None:
        return [top, left, bottom, right]
    x, y = right
    if side == ExtensionSide.BELOW:
        return [top, left, bottom, (x - HALF, y - HALF), (x, y - 1), (x + HALF, y - HALF), right]
    return [top, left, bottom, right, (x + HALF, y + HALF), (x, y + 1), (x - HALF, y + HALF)]


def _clip_against_edge(
    polygon: Polygon, inside: Callable[[Vertex], bool], intersect: Callable[[Vertex, Vertex], Vertex]
) -> Polygon:
    if not polygon:
        return []
    clipped = []
    previous = polygon[-1]
    previous_inside = inside(previous)
    for current in polygon:
        current_inside = inside(current)
        if current_inside:
            if not previous_inside:
                clipped.append(intersect(previous, current))
            clipped.append(current)
        elif previous_inside:
            clipped.append(intersect(previous, current))
        previous, previous_inside = current, current_inside
    return clipped


def _at_x(bound: Fraction) -> Callable[[Vertex, Vertex], Vertex]:
    def _intersect(first: Vertex, second: Vertex) -> Vertex:
        t = (bound - first[0]) / (second[0] - first[0])
        return (bound, first[1] + t * (second[1] - first[1]))

    return _intersect


def _at_y(bound: Fraction) -> Callable[[Vertex, Vertex], Vertex]:
    def _intersect(first: Vertex, second: Vertex) -> Vertex:
        t = (bound - first[1]) / (second[1] - first[1])
        return (first[0] + t * (second[0] - first[0]), bound)

    return _intersect


def clip_to_box(polygon: Polygon, box: Box) -> Polygon:
    """Clips a convex polygon to a box with the Sutherland-Hodgman algorithm.

    Args:
        polygon: The polygon.
        box: The box.

    Returns:
        Polygon: The part of the polygon inside the box, empty if there is none.
    """
    clipped = _clip_against_edge(polygon, lambda vertex: vertex[0] >= box.x_min, _at_x(box.x_min))
    clipped = _clip_against_edge(clipped, lambda vertex: vertex[0] <= box.x_max, _at_x(box.x_max))
    clipped = _clip_against_edge(clipped, lambda vertex: vertex[1] >= box.y_min, _at_y(box.y_min))
    return _clip_against_edge(clipped, lambda vertex: vertex[1] <= box.y_max, _at_y(box.y_max))


def polygon_area(polygon: Polygon) -> Fraction:
    """Returns the area of a simple polygon by the shoelace formula.

    >>> polygon_area(diamond((Fraction(0), Fraction(0)), Fraction(3, 2)))
    Fraction(9, 2)
    """
    twice = Fraction(0)
    for index, (x, y) in enumerate(polygon):
        next_x, next_y = polygon[(index + 1) % len(polygon)]
        twice += x * next_y - next_x * y
    return abs(twice) / 2


def _covered_area(packing: DiamondPacking, box: Box) -> Fraction:
    return sum(
        (
            polygon_area(clip_to_box(part, box))
            for index in range(1, packing.n + 1)
            for part in tile_polygons(packing, index)
        ),
        Fraction(0),
    )


def density(packing: DiamondPacking, box: Box) -> DensityResult:
    """Computes the exact share of a box covered by the tiles of a packing.

    Args:
        packing: The packing.
        box: The domain.

    Returns:
        DensityResult: Covered area, box area and their ratio.

    Raises:
        DegenerateBoxError: If the box has no area.
    """
    if box.x_max <= box.x_min or box.y_max <= box.y_min:
        raise DegenerateBoxError(f"The box [{box.x_min}, {box.x_max}] x [{box.y_min}, {box.y_max}] has no area.")
    covered = _covered_area(packing, box)
    return DensityResult(box=box, covered_area=covered, domain_area=box.area, density=covered / box.area)


def proof_box(packing: DiamondPacking) -> Box:
    """Returns the square box [s - 1, n + 2 - s]² whose margins of width k hold the overflowing tile parts."""
    low = packing.semidiagonal - 1
    high = packing.n + 2 - packing.semidiagonal
    return Box(x_min=low, y_min=low, x_max=high, y_max=high)


def overflow_allowance(k: int, extended: bool = False) -> Fraction:
    """Returns the bound on the tile area outside the proof box: four margins of (k - 1)s² + 1 each.

    Extended tiles add k + 1/4 for the extensions.
    """
    semidiagonal = Fraction(k, 2) + 1
    allowance = 4 * ((k - 1) * semidiagonal**2 + 1)
    return allowance + k + Fraction(1, 4) if extended else allowance


def proof_box_ledger(packing: DiamondPacking) -> ProofBoxLedger:
    """Accounts for the tile area of a packing inside and outside the proof box.

    Args:
        packing: The packing.

    Returns:
        ProofBoxLedger: The areas and whether both area inequalities hold.

    Raises:
        DegenerateBoxError: If the packing is too small for its proof box.
    """
    box = proof_box(packing)
    if box.x_max <= box.x_min:
        raise DegenerateBoxError(f"The proof box of a packing with {packing.n} tiles for k = {packing.k} is empty.")
    total = packing.n * packing.tile_area
    inside = _covered_area(packing, box)
    overflow = total - inside
    allowance = overflow_allowance(packing.k, packing.extended)
    return ProofBoxLedger(
        k=packing.k,
        n=packing.n,
        extended=packing.extended,
        box=box,
        total_tile_area=total,
        inside_area=inside,
        overflow_area=overflow,
        overflow_allowance=allowance,
        holds=inside <= box.area and overflow <= allowance,
    )


def _check_extension_parity(k: int, extended: bool) -> None:
    if k < 1:
        raise KOutOfRangeError(f"k = {k} must be at least 1.")
    if extended and k % 2 == 0:
        raise ExtensionParityError(f"Extended diamonds need an odd k, got k = {k}.")


def area_inequality_holds(k: int, n: int, extended: bool = False) -> bool:
    """Evaluates the area inequality a k-prolific permutation of size n must satisfy.

    For plain diamonds this is 2s²n <= (n + 3 - 2s)² + 4((k - 1)s² + 1). Extended tiles add n/2 on the left
    and k + 1/4 on the right.

    >>> area_inequality_holds(1, 3), area_inequality_holds(1, 4)
    (False, True)
    """
    _check_extension_parity(k, extended)
    semidiagonal = Fraction(k, 2) + 1
    tile_area = 2 * semidiagonal**2 + (HALF if extended else 0)
    return tile_area * n <= (n + 3 - 2 * semidiagonal) ** 2 + overflow_allowance(k, extended)


def lower_bound(k: int, extended: bool = False) -> float:
    """Returns the larger root of the area inequality, below which no k-prolific permutation exists.

    >>> lower_bound(1, extended=True)
    3.5
    """
    _check_extension_parity(k, extended)
    if extended:
        return (k * k + 8 * k + 1 + sqrt(k**4 + 2 * k * k + 32 * k - 19)) / 4
    return (k * k + 8 * k + sqrt(k**4 + 32 * k - 16)) / 4


def bound_threshold(k: int) -> Fraction:
    """Returns the value the lower bound exceeds: k²/2 + 2k for even k and k²/2 + 2k + 1/2 for odd k."""
    threshold = Fraction(k * k, 2) + 2 * k
    return threshold + HALF if k % 2 else threshold


def lower_bound_inequality_check(k: int, n: Optional[int] = None) -> bool:
    """Checks the closed-form bound on minimal sizes against minprol_size and a size n.

    Odd k use the bound of extended tiles. The check passes if the bound exceeds its threshold, the
    smallest integer above the threshold is minprol_size(k), and n satisfies both the bound and the area
    inequality.

    Args:
        k: The number of deleted entries.
        n: The size to check. Defaults to minprol_size(k).

    Returns:
        bool: Whether all parts of the check pass.
    """
    extended = bool(k % 2)
    bound = lower_bound(k, extended)
    threshold = bound_threshold(k)
    size = minprol_size(k) if n is None else n
    consistent = bound > threshold and floor(threshold) + 1 == minprol_size(k)
    return consistent and size >= bound and area_inequality_holds(k, size, extended)
