"""Counts and lists k-prolific permutations and estimates their proportion among all permutations."""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from itertools import permutations
from math import exp, sqrt
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from prolific_permutations._constructions import minprol_size
from prolific_permutations._errors import BudgetExceededError, InputError, KOutOfRangeError
from prolific_permutations._permutation import contains, symmetries
from prolific_permutations._prolific import is_k_prolific_oracle
from prolific_permutations._schemas import DensityEstimate, EnumerationReport, Permutation, SearchBudget

DENSITY_CHUNK_SIZE = 10_000

_logger = logging.getLogger("prolific_permutations")


class _SearchStopped(Exception):
    """Ends a partition search that ran out of budget."""


class _Partition(NamedTuple):
    """The outcome of searching the permutations that start with one value."""

    count: int
    found: List[Tuple[int, ...]]
    nodes: int
    out_of_nodes: bool
    out_of_time: bool


def _is_spread(values: Sequence[int], k: int) -> bool:
    """Checks that all points of a word are at taxicab distance at least k + 2."""
    threshold = k + 2
    size = len(values)
    for i in range(size):
        value = values[i]
        for gap in range(1, min(threshold - 1, size - i)):
            if gap + abs(values[i + gap] - value) < threshold:
                return False
    return True


def _search_partition(
    n: int,
    k: int,
    first: int,
    collect: bool,
    first_only: bool,
    avoiding: Tuple[Permutation, ...],
    max_nodes: int,
    time_limit: float,
) -> _Partition:
    threshold = k + 2
    window = k + 1
    deadline = time.monotonic() + time_limit
    values = [first]
    used = [False] * (n + 1)
    used[first] = True
    nodes = 1
    count = 0
    found: List[Tuple[int, ...]] = []

    out_of_nodes = out_of_time = False

    def _place(length: int) -> bool:
        nonlocal nodes, count, out_of_nodes, out_of_time
        if length == n:
            if avoiding and any(contains(Permutation.model_construct(values=tuple(values)), p) for p in avoiding):
                return False
            count += 1
            if collect:
                found.append(tuple(values))
            return first_only
        reach = min(window, length)
        for value in range(1, n + 1):
            if used[value]:
                continue
            if any(gap + abs(value - values[length - gap]) < threshold for gap in range(1, reach + 1)):
                continue
            nodes += 1
            if nodes > max_nodes:
                out_of_nodes = True
                raise _SearchStopped()
            if not nodes & 0xFFF and time.monotonic() > deadline:
                out_of_time = True
                raise _SearchStopped()
            used[value] = True
            values.append(value)
            stop = _place(length + 1)
            values.pop()
            used[value] = False
            if stop:
                return True
        return False

    if nodes > max_nodes:
        return _Partition(0, [], nodes, True, False)
    try:
        _place(1)
    except _SearchStopped:
        pass
    return _Partition(count, found, nodes, out_of_nodes, out_of_time)


def _run_search(
    n: int,
    k: int,
    collect: bool,
    first_only: bool,
    avoiding: Tuple[Permutation, ...],
    budget: SearchBudget,
    threads: int,
) -> Tuple[int, List[Tuple[int, ...]], int]:
    """Searches all partitions by first value and merges them as a left-to-right search would have.

    Nodes are summed over the partitions in order of their first value. The search exceeds its node budget
    exactly if that sum does, whether the partitions ran in sequence or in parallel.
    """
    start = time.monotonic()
    firsts = range(1, n + 1)
    search = partial(_search_partition, n, k, collect=collect, first_only=first_only, avoiding=avoiding)

    def _remaining_time() -> float:
        return max(budget.time_limit - (time.monotonic() - start), 0.0)

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            futures = [
                executor.submit(search, first, max_nodes=budget.max_nodes, time_limit=budget.time_limit)
                for first in firsts
            ]
            partitions: Iterable[_Partition] = (future.result() for future in futures)
            return _merge(n, k, partitions, first_only, budget)

    def _sequential() -> Iterable[_Partition]:
        nodes = 0
        for first in firsts:
            partition = search(first, max_nodes=budget.max_nodes - nodes, time_limit=_remaining_time())
            nodes += partition.nodes
            yield partition

    return _merge(n, k, _sequential(), first_only, budget)


def _merge(
    n: int, k: int, partitions: Iterable[_Partition], first_only: bool, budget: SearchBudget
) -> Tuple[int, List[Tuple[int, ...]], int]:
    count = 0
    found: List[Tuple[int, ...]] = []
    nodes = 0
    for first, partition in enumerate(partitions, start=1):
        nodes += partition.nodes
        if partition.out_of_nodes or nodes > budget.max_nodes:
            raise BudgetExceededError(f"The search for n = {n}, k = {k} visited more than {budget.max_nodes} nodes.")
        if partition.out_of_time:
            raise BudgetExceededError(
                f"The search for n = {n}, k = {k} exceeded its time limit of {budget.time_limit} s."
            )
        _logger.debug(f"Permutations starting with {first}: {partition.count} found in {partition.nodes} nodes.")
        count += partition.count
        found.extend(partition.found)
        if first_only and count:
            break
    return count, found, nodes


def enumerate_prolific(
    n: int,
    k: int,
    list_permutations: bool = False,
    avoiding: Optional[Sequence[Permutation]] = None,
    budget: Optional[SearchBudget] = None,
    threads: int = 1,
) -> EnumerationReport:
    """Counts the k-prolific permutations of size n by a pruned depth-first search.

    Values are placed from left to right in ascending order. A candidate is rejected as soon as it comes
    closer than k + 2 to one of the k + 1 preceding points, so completions are exactly the permutations
    of breadth at least k + 2, found in lexicographic order.

    Args:
        n: The size of the permutations.
        k: The number of deleted entries.
        list_permutations: Whether to list the permutations in the report.
        avoiding: Patterns the listed permutations must avoid.
        budget: Node and wall-clock guards. Defaults to :class:`SearchBudget`'s defaults.
        threads: The number of worker processes. The search is partitioned by the first value.

    Returns:
        EnumerationReport: The count, the optional listing and search statistics.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
        BudgetExceededError: If the search exceeds its budget.
    """
    if not 1 <= k < n:
        raise KOutOfRangeError(f"k = {k} is not in [1, {n - 1}] for permutations of size {n}.")
    budget = budget or SearchBudget()
    patterns = tuple(avoiding or ())

    start = time.monotonic()
    count, found, nodes = _run_search(n, k, list_permutations, False, patterns, budget, threads)
    elapsed = time.monotonic() - start
    _logger.info(f"Found {count} {k}-prolific permutations of size {n} in {nodes} nodes and {elapsed:.2f} s.")

    return EnumerationReport(
        n=n,
        k=k,
        count=count,
        examples=[Permutation.model_construct(values=values) for values in found] if list_permutations else None,
        avoided=list(patterns),
        nodes_visited=nodes,
        elapsed=elapsed,
    )


def search_minprol(
    k: int, n_max: Optional[int] = None, budget: Optional[SearchBudget] = None, threads: int = 1
) -> Optional[int]:
    """Finds the smallest size of a k-prolific permutation by searching sizes in increasing order.

    Each size is searched with its own budget and the search of a size stops at the first completion.

    Args:
        k: The number of deleted entries.
        n_max: The largest size to try. Defaults to minprol_size(k) + 2.
        budget: Node and wall-clock guards per size.
        threads: The number of worker processes.

    Returns:
        Optional[int]: The smallest size or ``None`` if there is none up to ``n_max``.

    Raises:
        KOutOfRangeError: If k is smaller than 1.
        BudgetExceededError: If the search of a size exceeds its budget.
    """
    if k < 1:
        raise KOutOfRangeError(f"k = {k} must be at least 1.")
    n_max = minprol_size(k) + 2 if n_max is None else n_max
    budget = budget or SearchBudget()

    for n in range(k + 1, n_max + 1):
        count, _, nodes = _run_search(n, k, False, True, (), budget, threads)
        if count:
            _logger.info(f"Found a {k}-prolific permutation of size {n} after {nodes} nodes.")
            return n
        _logger.info(f"No {k}-prolific permutation of size {n} ({nodes} nodes).")
    _logger.info(f"No {k}-prolific permutation up to size {n_max}.")
    return None


def tauraso_reference(n: int) -> float:
    """Returns the asymptotic expansion of the proportion of 1-prolific permutations of size n.

    >>> round(tauraso_reference(10**6), 5)
    0.13534
    """
    return exp(-2) * (1 - 2 / n**2 - 10 / (3 * n**3) - 6 / n**4 - 154 / (15 * n**5))


def density_reference(n: int, k: int) -> float:
    """Returns the reference proportion of k-prolific permutations of size n.

    For k = 1 this is :func:`tauraso_reference`. For larger k it is the limit e^(-k² - k), whose rate of
    convergence is unknown, so it only indicates the order of magnitude for moderate n.
    """
    if k == 1:
        return tauraso_reference(n)
    return exp(-k * k - k)


def _count_hits(n: int, k: int, seed: int, chunk: int, size: int) -> int:
    generator = random.Random(seed * 2**32 + chunk)
    word = list(range(1, n + 1))
    hits = 0
    for _ in range(size):
        generator.shuffle(word)
        hits += _is_spread(word, k)
    return hits


def estimate_density(n: int, k: int, samples: int, seed: int, threads: int = 1) -> DensityEstimate:
    """Estimates the proportion of k-prolific permutations of size n from uniform random samples.

    Samples are drawn in chunks of :data:`DENSITY_CHUNK_SIZE`. Chunk i shuffles with a Mersenne Twister
    seeded with ``seed * 2**32 + i``, so the estimate depends only on the seed and the number of samples and
    not on the number of worker processes.

    Args:
        n: The size of the permutations.
        k: The number of deleted entries.
        samples: The number of random permutations.
        seed: A non-negative seed.
        threads: The number of worker processes.

    Returns:
        DensityEstimate: The estimate with its standard error and the reference value.

    Raises:
        KOutOfRangeError: If k is not in [1, n).
        InputError: If samples is not positive or the seed is negative.
    """
    if not 1 <= k < n:
        raise KOutOfRangeError(f"k = {k} is not in [1, {n - 1}] for permutations of size {n}.")
    if samples < 1:
        raise InputError(f"The number of samples must be positive, got {samples}.")
    if seed < 0:
        raise InputError(f"The seed must not be negative, got {seed}.")

    chunks = [
        (index, min(DENSITY_CHUNK_SIZE, samples - start))
        for index, start in enumerate(range(0, samples, DENSITY_CHUNK_SIZE))
    ]
    sampler = partial(_count_hits, n, k, seed)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            chunk_hits = list(executor.map(sampler, *zip(*chunks)))
    else:
        chunk_hits = [sampler(index, size) for index, size in chunks]
    for (index, size), hits in zip(chunks, chunk_hits):
        _logger.debug(f"Chunk {index}: {hits} of {size} samples are {k}-prolific.")

    hits = sum(chunk_hits)
    proportion = Fraction(hits, samples)
    share = hits / samples
    return DensityEstimate(
        n=n,
        k=k,
        samples=samples,
        hits=hits,
        proportion=proportion,
        std_error=sqrt(share * (1 - share) / samples),
        reference=density_reference(n, k),
        seed=seed,
    )


def count_prolific_oracle(n: int, k: int, threads: int = 1) -> int:
    """Counts the k-prolific permutations of size n by running the pattern-collecting oracle on all of them."""
    return sum(
        is_k_prolific_oracle(Permutation.model_construct(values=values), k, threads=threads).is_prolific
        for values in permutations(range(1, n + 1))
    )


def symmetry_classes(perms: Iterable[Permutation]) -> List[List[Permutation]]:
    """Groups permutations into orbits under the eight symmetries of the square.

    Args:
        perms: The permutations to group.

    Returns:
        List[List[Permutation]]: The orbits, each sorted, ordered by their smallest member.
    """
    classes: Dict[Tuple[int, ...], List[Permutation]] = {}
    for permutation in perms:
        classes.setdefault(symmetries(permutation)[0].values, []).append(permutation)
    return [sorted(set(members), key=lambda member: member.values) for _, members in sorted(classes.items())]
