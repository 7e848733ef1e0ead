"""Certifies k-prolificity, extracts deletion witnesses and checks the structure of chain graphs."""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import combinations
from math import comb
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from prolific_permutations._errors import (
    InvalidWitnessError,
    InvariantViolationError,
    KOutOfRangeError,
    NotDisjointError,
    SizeOneError,
    TooLargeError,
)
from prolific_permutations._permutation import breadth, closest_pair_of_word, delete, delete_word, index_set, span
from prolific_permutations._schemas import (
    Chain,
    ChainGraph,
    ChainGraphReport,
    ChainVertex,
    Color,
    DeletionWitness,
    HorizontalOrientation,
    Method,
    Monotonicity,
    Permutation,
    Point,
    ProlificVerdict,
    VerticalOrientation,
)

MAX_SUBSETS = 10**7

_logger = logging.getLogger("prolific_permutations")


def _check_k(permutation: Permutation, k: int) -> None:
    if not 1 <= k < permutation.n:
        raise KOutOfRangeError(f"k = {k} is not in [1, {permutation.n - 1}] for a permutation of size {permutation.n}.")


def _check_subset_count(permutation: Permutation, k: int, max_subsets: int) -> int:
    subset_count = comb(permutation.n, k)
    if subset_count > max_subsets:
        raise TooLargeError(
            f"Deleting {k} of {permutation.n} entries gives {subset_count} subsets, "
            f"more than the limit of {max_subsets}."
        )
    return subset_count


def max_prolific_index(permutation: Permutation) -> int:
    """Returns the largest k for which the permutation is k-prolific, or 0 if there is none."""
    return max(breadth(permutation) - 2, 0)


def is_k_prolific(permutation: Permutation, k: int) -> ProlificVerdict:
    """Decides k-prolificity by comparing the breadth against k + 2.

    >>> from prolific_permutations._permutation import parse
    >>> is_k_prolific(parse("2 7 4 9 1 5 8 3 6"), 3).describe()
    '3-prolific: no (breadth 4, max k = 2)'

    Args:
        permutation: The permutation.
        k: The number of deleted entries.

    Returns:
        ProlificVerdict: The verdict, with the breadth and a closest pair.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
    """
    _check_k(permutation, k)
    value, pair = closest_pair_of_word(permutation.values)
    return ProlificVerdict(
        k=k,
        is_prolific=value >= k + 2,
        method=Method.BREADTH,
        breadth=value,
        max_prolific_index=max(value - 2, 0),
        closest_pair=pair,
    )


def _patterns_with_first(values: Tuple[int, ...], k: int, first: int) -> FrozenSet[Tuple[int, ...]]:
    rest = range(first + 1, len(values) + 1)
    return frozenset(delete_word(values, (first,) + others) for others in combinations(rest, k - 1))


def _deletion_patterns(permutation: Permutation, k: int, threads: int) -> Set[Tuple[int, ...]]:
    values = permutation.values
    if threads <= 1:
        return {delete_word(values, subset) for subset in combinations(range(1, permutation.n + 1), k)}

    firsts = range(1, permutation.n - k + 2)
    patterns: Set[Tuple[int, ...]] = set()
    with ProcessPoolExecutor(max_workers=threads) as executor:
        for first, partition in zip(firsts, executor.map(partial(_patterns_with_first, values, k), firsts)):
            _logger.debug(f"Subsets starting at {first} gave {len(partition)} distinct patterns.")
            patterns |= partition
    return patterns


def distinct_pattern_count(permutation: Permutation, k: int, threads: int = 1, max_subsets: int = MAX_SUBSETS) -> int:
    """Counts the distinct patterns of size n - k contained in a permutation.

    Args:
        permutation: The permutation.
        k: The number of deleted entries.
        threads: The number of worker processes. Subsets are partitioned by their smallest index.
        max_subsets: Upper limit for the number of k-subsets to enumerate.

    Returns:
        int: The number of distinct deletion patterns.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
    """
    _check_k(permutation, k)
    _check_subset_count(permutation, k, max_subsets)
    return len(_deletion_patterns(permutation, k, threads))


def is_k_prolific_oracle(
    permutation: Permutation, k: int, threads: int = 1, max_subsets: int = MAX_SUBSETS
) -> ProlificVerdict:
    """Decides k-prolificity by collecting the patterns of all k-subset deletions.

    This is independent of any breadth computation and only shares the deletion of entries.

    Args:
        permutation: The permutation.
        k: The number of deleted entries.
        threads: The number of worker processes.
        max_subsets: Upper limit for the number of k-subsets to enumerate.

    Returns:
        ProlificVerdict: The verdict with the number of distinct patterns.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
    """
    _check_k(permutation, k)
    subset_count = _check_subset_count(permutation, k, max_subsets)
    distinct = len(_deletion_patterns(permutation, k, threads))
    return ProlificVerdict(
        k=k,
        is_prolific=distinct == subset_count,
        method=Method.ORACLE,
        distinct_patterns=distinct,
        subset_count=subset_count,
    )


def find_witness(permutation: Permutation, k: int) -> Optional[DeletionWitness]:
    """Builds two index sets with equal deletion patterns from a closest pair.

    With a closest pair (i, j) at distance below k + 2 and its span S, the sets S ∪ {i} ∪ X and S ∪ {j} ∪ X
    delete to the same pattern, where X holds the smallest free indices that bring both sets to size k.

    Args:
        permutation: The permutation.
        k: The number of deleted entries.

    Returns:
        Optional[DeletionWitness]: The witness or ``None`` if the permutation is k-prolific.

    Raises:
        InvariantViolationError: If the constructed sets delete to different patterns.
    """
    _check_k(permutation, k)
    value, (i, j) = closest_pair_of_word(permutation.values)
    if value >= k + 2:
        return None

    spanned = set(span(permutation, (i, j)))
    taken = spanned | {i, j}
    padding = [index for index in range(1, permutation.n + 1) if index not in taken][: k - len(spanned) - 1]
    a = tuple(sorted(spanned | {i} | set(padding)))
    b = tuple(sorted(spanned | {j} | set(padding)))

    pattern_a = delete(permutation, a)
    if pattern_a != delete(permutation, b):
        raise InvariantViolationError(
            f"The sets {list(a)} and {list(b)} built from the pair ({i}, {j}) of '{permutation}' "
            "delete to different patterns."
        )
    return DeletionWitness(a=a, b=b, common_pattern=pattern_a)


def find_disjoint_witness(
    permutation: Permutation, k: int, max_subsets: int = MAX_SUBSETS
) -> Optional[DeletionWitness]:
    """Searches all k-subsets for two disjoint ones with equal deletion patterns.

    The first such pair in lexicographic order of the second set is returned.

    Args:
        permutation: The permutation.
        k: The number of deleted entries.
        max_subsets: Upper limit for the number of k-subsets to enumerate.

    Returns:
        Optional[DeletionWitness]: The witness or ``None`` if no disjoint sets exist.
    """
    _check_k(permutation, k)
    _check_subset_count(permutation, k, max_subsets)
    seen: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for subset in combinations(range(1, permutation.n + 1), k):
        pattern = delete_word(permutation.values, subset)
        earlier = seen.setdefault(pattern, [])
        for other in earlier:
            if not set(other) & set(subset):
                return DeletionWitness(a=other, b=subset, common_pattern=Permutation.model_construct(values=pattern))
        earlier.append(subset)
    return None


def _walk(start: int, adjacency: Dict[int, List[int]], visited: Set[int]) -> List[int]:
    path = [start]
    visited.add(start)
    previous, current = None, start
    while True:
        following = [vertex for vertex in adjacency[current] if vertex != previous and vertex not in visited]
        if not following:
            return path
        previous, current = current, following[0]
        path.append(current)
        visited.add(current)


def _describe_chain(permutation: Permutation, path: List[int], colors: Sequence[Color]) -> Chain:
    red_end = path[0] if colors[path[0] - 1] == Color.RED else None
    blue_end = path[-1] if len(path) > 1 and colors[path[-1] - 1] == Color.BLUE else None

    # A chain visits its points from left to right or from right to left.
    monotonicity = None
    ordered = sorted(path)
    if len(path) > 1 and path in (ordered, ordered[::-1]):
        steps = [permutation(right) - permutation(left) for left, right in zip(ordered, ordered[1:])]
        if all(step > 0 for step in steps):
            monotonicity = Monotonicity.INCREASING
        elif all(step < 0 for step in steps):
            monotonicity = Monotonicity.DECREASING

    horizontal = vertical = None
    if red_end is not None and blue_end is not None:
        horizontal = HorizontalOrientation.RIGHTWARDS if blue_end > red_end else HorizontalOrientation.LEFTWARDS
        rising = permutation(blue_end) > permutation(red_end)
        vertical = VerticalOrientation.UPWARDS if rising else VerticalOrientation.DOWNWARDS
    return Chain(
        path=tuple(path),
        red_end=red_end,
        blue_end=blue_end,
        monotonicity=monotonicity,
        horizontal=horizontal,
        vertical=vertical,
    )


def build_chain_graph(permutation: Permutation, witness: DeletionWitness) -> ChainGraph:
    """Builds the chain graph of a permutation for a witness with disjoint index sets.

    The indices of ``witness.a`` are red and those of ``witness.b`` blue. For every entry of the common pattern,
    an edge joins the point fulfilling it after deleting the red points to the point fulfilling it after
    deleting the blue points. Points fulfilling the same entry both times are fixed points.

    Args:
        permutation: The permutation.
        witness: Two disjoint index sets with equal deletion patterns.

    Returns:
        ChainGraph: The chain graph.

    Raises:
        NotDisjointError: If the index sets overlap.
        InvalidWitnessError: If the index sets delete to different patterns.
    """
    red, blue = set(index_set(permutation, witness.a)), set(index_set(permutation, witness.b))
    if red & blue:
        raise NotDisjointError(f"The index sets {list(witness.a)} and {list(witness.b)} share {sorted(red & blue)}.")
    if delete(permutation, red) != delete(permutation, blue):
        raise InvalidWitnessError(
            f"Deleting {sorted(red)} and {sorted(blue)} from '{permutation}' gives different patterns."
        )

    colors = [
        Color.RED if position in red else Color.BLUE if position in blue else Color.UNCOLORED
        for position in range(1, permutation.n + 1)
    ]
    kept_after_red = [position for position in range(1, permutation.n + 1) if position not in red]
    kept_after_blue = [position for position in range(1, permutation.n + 1) if position not in blue]

    edges: List[Point] = []
    fixed_points: List[int] = []
    adjacency: Dict[int, List[int]] = {position: [] for position in range(1, permutation.n + 1)}
    for p, q in zip(kept_after_red, kept_after_blue):
        if p == q:
            fixed_points.append(p)
            continue
        edges.append((min(p, q), max(p, q)))
        adjacency[p].append(q)
        adjacency[q].append(p)

    discrepancy = []
    running = 0
    for color in colors:
        discrepancy.append(running)
        running += 1 if color == Color.RED else -1 if color == Color.BLUE else 0

    visited: Set[int] = set()
    paths = [_walk(position, adjacency, visited) for position in sorted(red)]
    # Paths without a red end or closed cycles only occur for malformed graphs.
    for position in range(1, permutation.n + 1):
        if position not in visited and len(adjacency[position]) == 1:
            paths.append(_walk(position, adjacency, visited))
    for position in range(1, permutation.n + 1):
        if position not in visited and adjacency[position]:
            paths.append(_walk(position, adjacency, visited))

    return ChainGraph(
        permutation=permutation,
        k=witness.k,
        vertices=[
            ChainVertex(position=position, value=value, color=colors[position - 1])
            for position, value in permutation.points()
        ],
        edges=edges,
        chains=[_describe_chain(permutation, path, colors) for path in paths],
        fixed_points=fixed_points,
        discrepancy=discrepancy,
    )


def _ends(graph: ChainGraph, chain: Chain) -> Tuple[int, int, int, int]:
    """Returns the left, right, lower and upper end-vertices of a chain."""
    left, right = chain.positions[0], chain.positions[-1]
    by_value = sorted(chain.path, key=graph.permutation)
    return left, right, by_value[0], by_value[-1]


def _check_chain_count(graph: ChainGraph) -> List[str]:
    if len(graph.chains) == graph.k:
        return []
    return [f"Found {len(graph.chains)} chains, expected {graph.k}."]


def _check_monotone_chains(graph: ChainGraph) -> List[str]:
    return [f"Chain {list(chain.path)} is not monotone." for chain in graph.chains if chain.monotonicity is None]


def _check_chain_end_colors(graph: ChainGraph) -> List[str]:
    return [
        f"Chain {list(chain.path)} does not run from a red to a blue end-vertex."
        for chain in graph.chains
        if chain.red_end is None or chain.blue_end is None
    ]


def _check_discrepancy_profile(graph: ChainGraph) -> List[str]:
    failures = []
    expected = 0
    for vertex, value in zip(graph.vertices, graph.discrepancy):
        if value != expected:
            failures.append(f"Discrepancy at {vertex.position} is {value}, expected {expected}.")
        expected = value + (1 if vertex.color == Color.RED else -1 if vertex.color == Color.BLUE else 0)
    if expected != 0:
        failures.append(f"Discrepancy ends at {expected} instead of returning to zero.")
    for position in graph.fixed_points:
        if graph.discrepancy[position - 1] != 0:
            failures.append(f"Fixed point {position} has discrepancy {graph.discrepancy[position - 1]}.")
    return failures


def _check_discrepancy_sign(graph: ChainGraph) -> List[str]:
    failures = []
    for chain in graph.chains:
        left, right, _, _ = _ends(graph, chain)
        color = graph.color_of(left)
        if color == Color.UNCOLORED:
            continue
        sign = 1 if color == Color.RED else -1
        if sign * graph.discrepancy[left - 1] < 0:
            failures.append(f"Chain {list(chain.path)} has discrepancy {graph.discrepancy[left - 1]} at its left end.")
        inside = [q for q in range(left + 1, right + 1) if sign * graph.discrepancy[q - 1] <= 0]
        if inside:
            failures.append(f"Chain {list(chain.path)} has discrepancy of the wrong sign at {inside}.")
    return failures


def _check_no_self_cut(graph: ChainGraph) -> List[str]:
    failures = []
    for chain in graph.chains:
        members = set(chain.path)
        for edge in chain.edges:
            cutting = sorted(members & set(span(graph.permutation, edge)))
            if cutting:
                failures.append(f"Edge {edge} is cut by {cutting} of its own chain.")
    return failures


def _check_no_fixed_point_cut(graph: ChainGraph) -> List[str]:
    failures = []
    fixed = set(graph.fixed_points)
    for chain in graph.chains:
        for edge in chain.edges:
            cutting = sorted(fixed & set(span(graph.permutation, edge)))
            if cutting:
                failures.append(f"Edge {edge} is cut by the fixed points {cutting}.")
    return failures


def _check_consistent_orientation(graph: ChainGraph) -> List[str]:
    failures = []
    sigma = graph.permutation
    for first, second in combinations(graph.chains, 2):
        left, right, bottom, top = _ends(graph, first)
        other_left, other_right, other_bottom, other_top = _ends(graph, second)
        if left < other_right and other_left < right and first.horizontal != second.horizontal:
            failures.append(f"Chains {list(first.path)} and {list(second.path)} overlap horizontally.")
        if sigma(bottom) < sigma(other_top) and sigma(other_bottom) < sigma(top) and first.vertical != second.vertical:
            failures.append(f"Chains {list(first.path)} and {list(second.path)} overlap vertically.")
    return failures


def _check_interleaving(graph: ChainGraph) -> List[str]:
    failures = []
    sigma = graph.permutation
    for first, second in combinations(graph.chains, 2):
        for p, p_plus in first.edges:
            for q, q_plus in second.edges:
                if (p < q) != (p_plus < q_plus):
                    failures.append(f"Edges {(p, p_plus)} and {(q, q_plus)} cross horizontally.")
                lower, upper = sorted((sigma(p), sigma(p_plus)))
                other_lower, other_upper = sorted((sigma(q), sigma(q_plus)))
                if (lower < other_lower) != (upper < other_upper):
                    failures.append(f"Edges {(p, p_plus)} and {(q, q_plus)} cross vertically.")
    return failures


def _check_cut_multiplicity(graph: ChainGraph) -> List[str]:
    failures = []
    sigma = graph.permutation
    for chain in graph.chains:
        for p, p_plus in chain.edges:
            lower, upper = sorted((sigma(p), sigma(p_plus)))
            for other in graph.chains:
                if other is chain:
                    continue
                horizontal = [q for q in other.path if lower < sigma(q) < upper]
                vertical = [q for q in other.path if p < q < p_plus]
                if len(horizontal) > 1 or len(vertical) > 1:
                    failures.append(
                        f"Edge {(p, p_plus)} is cut {len(horizontal)} times horizontally and {len(vertical)} times "
                        f"vertically by chain {list(other.path)}."
                    )
    return failures


def _check_breadth_below_threshold(graph: ChainGraph) -> List[str]:
    value = breadth(graph.permutation)
    if value < graph.k + 2:
        return []
    return [f"Breadth {value} is at least k + 2 = {graph.k + 2}, although disjoint witness sets exist."]


_CHECKS: Dict[str, Callable[[ChainGraph], List[str]]] = {
    "chain_count": _check_chain_count,
    "monotone_chains": _check_monotone_chains,
    "chain_end_colors": _check_chain_end_colors,
    "discrepancy_profile": _check_discrepancy_profile,
    "discrepancy_sign": _check_discrepancy_sign,
    "no_self_cut": _check_no_self_cut,
    "no_fixed_point_cut": _check_no_fixed_point_cut,
    "consistent_orientation": _check_consistent_orientation,
    "interleaving": _check_interleaving,
    "cut_multiplicity": _check_cut_multiplicity,
    "breadth_below_threshold": _check_breadth_below_threshold,
}


def validate_chain_graph(graph: ChainGraph) -> ChainGraphReport:
    """Checks a chain graph against the structure laws of chains.

    Failures are collected into the report instead of being raised.

    Args:
        graph: The chain graph.

    Returns:
        ChainGraphReport: Chain statistics and the outcome of every check.
    """
    checks = {}
    failures = {}
    for name, check in _CHECKS.items():
        problems = check(graph)
        checks[name] = not problems
        if problems:
            failures[name] = problems
            _logger.warning(f"Chain graph check '{name}' failed for '{graph.permutation}': {problems[0]}")

    chains = graph.chains
    return ChainGraphReport(
        chain_count=len(chains),
        increasing_count=sum(chain.monotonicity == Monotonicity.INCREASING for chain in chains),
        decreasing_count=sum(chain.monotonicity == Monotonicity.DECREASING for chain in chains),
        fixed_point_count=len(graph.fixed_points),
        leftwards_count=sum(chain.horizontal == HorizontalOrientation.LEFTWARDS for chain in chains),
        rightwards_count=sum(chain.horizontal == HorizontalOrientation.RIGHTWARDS for chain in chains),
        upwards_count=sum(chain.vertical == VerticalOrientation.UPWARDS for chain in chains),
        downwards_count=sum(chain.vertical == VerticalOrientation.DOWNWARDS for chain in chains),
        checks=checks,
        failures=failures,
    )


def breadth_after_deletion_check(permutation: Permutation) -> bool:
    """Checks that deleting any single entry lowers the breadth by at most one.

    Raises:
        SizeOneError: If the permutation has fewer than three entries.
    """
    if permutation.n < 3:
        raise SizeOneError(f"'{permutation}' needs at least three entries to keep a breadth after a deletion.")
    value = breadth(permutation)
    return all(breadth(delete(permutation, [position])) >= value - 1 for position in range(1, permutation.n + 1))
