"""Contains unit tests for prolificity verdicts, deletion witnesses and chain graphs."""

import logging
from itertools import combinations
from typing import Iterator, Tuple

import pytest

from prolific_permutations import (
    Color,
    DeletionWitness,
    InvalidWitnessError,
    KOutOfRangeError,
    Method,
    Monotonicity,
    NotDisjointError,
    Permutation,
    SizeOneError,
    TooLargeError,
    breadth_after_deletion_check,
    build_chain_graph,
    delete,
    distinct_pattern_count,
    find_disjoint_witness,
    find_witness,
    identity,
    is_k_prolific,
    is_k_prolific_oracle,
    max_prolific_index,
    parse,
    validate_chain_graph,
)
from prolific_permutations._schemas import ChainGraph
from tests.resources.figures import (
    ALTERNATIVE_SIX_PROLIFIC,
    BREADTH_FOUR,
    CHAIN_GRAPH_BLUE,
    CHAIN_GRAPH_K,
    CHAIN_GRAPH_PATHS,
    CHAIN_GRAPH_PATTERN,
    CHAIN_GRAPH_PERMUTATION,
    CHAIN_GRAPH_RED,
    PACKED_SIX_PROLIFIC,
)
from tests.utils import all_permutations


def _disjoint_witnesses(permutation: Permutation, k: int) -> Iterator[DeletionWitness]:
    subsets = list(combinations(range(1, permutation.n + 1), k))
    patterns = {subset: delete(permutation, subset) for subset in subsets}
    for a, b in combinations(subsets, 2):
        if not set(a) & set(b) and patterns[a] == patterns[b]:
            yield DeletionWitness(a=a, b=b, common_pattern=patterns[a])


@pytest.fixture(name="chain_graph", scope="module")
def _chain_graph_fixture() -> ChainGraph:
    witness = DeletionWitness(a=CHAIN_GRAPH_RED, b=CHAIN_GRAPH_BLUE, common_pattern=CHAIN_GRAPH_PATTERN)
    return build_chain_graph(CHAIN_GRAPH_PERMUTATION, witness)


def test_is_k_prolific() -> None:
    verdict = is_k_prolific(parse("2 4 1 3"), 1)

    assert verdict.is_prolific
    assert verdict.method == Method.BREADTH
    assert verdict.breadth == 3
    assert verdict.closest_pair == (1, 2)
    assert verdict.describe() == "1-prolific: yes (breadth 3, max k = 1)"


@pytest.mark.parametrize("k, expected", [(1, True), (2, True), (3, False), (8, False)])
def test_is_k_prolific_compares_breadth_with_k_plus_two(k: int, expected: bool) -> None:
    assert is_k_prolific(BREADTH_FOUR, k).is_prolific is expected


@pytest.mark.parametrize("k", [0, 9, -1])
def test_k_out_of_range(k: int) -> None:
    with pytest.raises(KOutOfRangeError):
        is_k_prolific(BREADTH_FOUR, k)
    with pytest.raises(KOutOfRangeError):
        is_k_prolific_oracle(BREADTH_FOUR, k)


def test_max_prolific_index() -> None:
    assert max_prolific_index(identity(3)) == 0
    assert max_prolific_index(BREADTH_FOUR) == 2
    assert max_prolific_index(PACKED_SIX_PROLIFIC) == 6


@pytest.mark.parametrize("permutation", [PACKED_SIX_PROLIFIC, ALTERNATIVE_SIX_PROLIFIC])
def test_six_prolific_permutations_of_figures(permutation: Permutation) -> None:
    assert is_k_prolific(permutation, 6).is_prolific
    assert not is_k_prolific(permutation, 7).is_prolific


def test_oracle_counts_distinct_deletion_patterns() -> None:
    verdict = is_k_prolific_oracle(parse("2 4 1 3"), 1)

    assert verdict.method == Method.ORACLE
    assert verdict.describe() == "1-prolific: yes (4 of 4 deletion patterns distinct)"
    assert distinct_pattern_count(identity(5), 2) == 1
    assert distinct_pattern_count(parse("2 4 1 3"), 2) == 2
    assert distinct_pattern_count(BREADTH_FOUR, 2) == 36


def test_oracle_refuses_too_many_subsets() -> None:
    with pytest.raises(TooLargeError, match="Deleting 1 of 4 entries gives 4 subsets, more than the limit of 3."):
        is_k_prolific_oracle(parse("2 4 1 3"), 1, max_subsets=3)


def test_oracle_with_worker_processes() -> None:
    sequential = is_k_prolific_oracle(BREADTH_FOUR, 3)
    parallel = is_k_prolific_oracle(BREADTH_FOUR, 3, threads=2)

    assert parallel == sequential
    assert not parallel.is_prolific


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_breadth_verdict_equals_oracle(n: int) -> None:
    for permutation in all_permutations(n):
        for k in range(1, n):
            assert is_k_prolific(permutation, k).is_prolific == is_k_prolific_oracle(permutation, k).is_prolific


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_breadth_verdict_equals_oracle_for_larger_sizes(n: int) -> None:
    for permutation in all_permutations(n):
        for k in range(1, n):
            assert is_k_prolific(permutation, k).is_prolific == is_k_prolific_oracle(permutation, k).is_prolific


@pytest.mark.parametrize("k, a, b", [(3, (1, 2, 8), (2, 3, 8)), (4, (1, 2, 4, 8), (2, 3, 4, 8))])
def test_find_witness(k: int, a: Tuple[int, ...], b: Tuple[int, ...]) -> None:
    witness = find_witness(BREADTH_FOUR, k)

    assert witness is not None
    assert (witness.a, witness.b) == (a, b)
    assert witness.k == k
    assert witness.common_pattern == delete(BREADTH_FOUR, a) == delete(BREADTH_FOUR, b)


def test_find_witness_of_prolific_permutation() -> None:
    assert find_witness(BREADTH_FOUR, 2) is None


@pytest.mark.parametrize(
    "n", [2, 3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]
)
def test_witness_exists_exactly_for_non_prolific(n: int) -> None:
    for permutation in all_permutations(n):
        for k in range(1, n):
            witness = find_witness(permutation, k)
            assert (witness is None) == is_k_prolific_oracle(permutation, k).is_prolific
            if witness is not None:
                assert delete(permutation, witness.a) == delete(permutation, witness.b)


def test_find_disjoint_witness() -> None:
    witness = find_disjoint_witness(identity(4), 1)

    assert witness == DeletionWitness(a=(1,), b=(2,), common_pattern=identity(3))
    assert witness.is_disjoint
    assert find_disjoint_witness(BREADTH_FOUR, 2) is None


def test_find_disjoint_witness_refuses_too_many_subsets() -> None:
    with pytest.raises(TooLargeError):
        find_disjoint_witness(CHAIN_GRAPH_PERMUTATION, CHAIN_GRAPH_K)


def test_witness_sets_must_differ() -> None:
    with pytest.raises(ValueError, match="must differ"):
        DeletionWitness(a=(1, 2), b=(2, 1), common_pattern=identity(2))


def test_chain_graph_of_figure(chain_graph: ChainGraph) -> None:
    assert chain_graph.k == CHAIN_GRAPH_K
    assert [chain.path for chain in chain_graph.chains] == CHAIN_GRAPH_PATHS
    assert chain_graph.fixed_points == [1, 2, 25, 31, 32, 33]
    assert chain_graph.color_of(3) == Color.RED
    assert chain_graph.color_of(34) == Color.BLUE
    assert chain_graph.color_of(1) == Color.UNCOLORED
    assert chain_graph.discrepancy[0] == 0
    assert chain_graph.discrepancy[28] == -2
    assert chain_graph.chains[-1].monotonicity == Monotonicity.DECREASING


def test_chain_graph_of_figure_passes_all_checks(chain_graph: ChainGraph, caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING):
        report = validate_chain_graph(chain_graph)

    assert caplog.record_tuples == []
    assert report.passed
    assert (report.chain_count, report.increasing_count, report.decreasing_count) == (8, 7, 1)
    assert report.fixed_point_count == 6
    assert (report.leftwards_count, report.rightwards_count) == (3, 5)
    assert (report.upwards_count, report.downwards_count) == (6, 2)


def test_failed_checks_are_reported_and_logged(chain_graph: ChainGraph, caplog: pytest.LogCaptureFixture) -> None:
    damaged = chain_graph.model_copy(update={"chains": chain_graph.chains[:-1]})

    with caplog.at_level(logging.WARNING):
        report = validate_chain_graph(damaged)

    assert not report.passed
    assert report.failures == {"chain_count": ["Found 7 chains, expected 8."]}
    assert caplog.record_tuples == [
        (
            "prolific_permutations",
            logging.WARNING,
            f"Chain graph check 'chain_count' failed for '{CHAIN_GRAPH_PERMUTATION}': Found 7 chains, expected 8.",
        )
    ]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chain_graphs_of_all_disjoint_witnesses_pass_all_checks(n: int) -> None:
    for permutation in all_permutations(n):
        for k in range(1, n // 2 + 1):
            for witness in _disjoint_witnesses(permutation, k):
                assert validate_chain_graph(build_chain_graph(permutation, witness)).passed


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8, 9])
def test_chain_graphs_of_found_witnesses_pass_all_checks(n: int) -> None:
    for permutation in all_permutations(n):
        for k in range(1, n // 2 + 1):
            witness = find_disjoint_witness(permutation, k)
            if witness is not None:
                assert validate_chain_graph(build_chain_graph(permutation, witness)).passed
        constructed = find_witness(permutation, 1)
        if constructed is not None and constructed.is_disjoint:
            assert validate_chain_graph(build_chain_graph(permutation, constructed)).passed


def test_chain_graph_needs_disjoint_sets() -> None:
    witness = DeletionWitness(a=(1, 2, 8), b=(2, 3, 8), common_pattern=delete(BREADTH_FOUR, (1, 2, 8)))

    with pytest.raises(NotDisjointError, match=r"share \[2, 8\]"):
        build_chain_graph(BREADTH_FOUR, witness)


def test_chain_graph_needs_equal_deletions() -> None:
    witness = DeletionWitness(a=(1,), b=(2,), common_pattern=parse("3 1 2"))

    with pytest.raises(InvalidWitnessError):
        build_chain_graph(parse("2 4 1 3"), witness)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, pytest.param(8, marks=pytest.mark.slow)])
def test_single_deletion_lowers_breadth_by_at_most_one(n: int) -> None:
    assert all(breadth_after_deletion_check(permutation) for permutation in all_permutations(n))


def test_single_deletion_check_needs_three_entries() -> None:
    with pytest.raises(SizeOneError):
        breadth_after_deletion_check(parse("2 1"))


def test_chain_graph_of_smallest_witness() -> None:
    graph = build_chain_graph(identity(4), DeletionWitness(a=(1,), b=(2,), common_pattern=identity(3)))

    assert [chain.path for chain in graph.chains] == [(1, 2)]
    assert graph.fixed_points == [3, 4]
    assert graph.discrepancy[-1] == 0


@pytest.mark.parametrize(
    "n", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)]
)
def test_prolificity_is_hereditary(n: int) -> None:
    for permutation in all_permutations(n):
        verdicts = [is_k_prolific_oracle(permutation, k).is_prolific for k in range(1, n)]
        assert verdicts == sorted(verdicts, reverse=True)
