"""Null blocks, the max-partition solver, bounds and decomposition families."""

import random

import pytest

from _support import (
    brute_max_blocks,
    is_null_all_elements,
    random_integer_sum_group,
)
from latsimplex import (
    ResidueVector,
    cayley_upper_bound_distinct_halves,
    close,
    conjecture_report,
    counterexample_simplex,
    is_null,
    lambda_from_vertices,
    max_cayley_blocks,
    realize_vertices,
    recursive_decomposition,
    simplex_code_group,
    trivial_group,
    validate_partition,
)
from latsimplex.errors import (
    HypothesesNotMet,
    NonIntegralHeights,
    SolverCapExceeded,
)


def test_is_null_examples():
    B2 = simplex_code_group(2)
    assert is_null(B2, {1, 2, 3})
    assert not is_null(B2, {1, 2})
    B3 = simplex_code_group(3)
    assert is_null(B3, {2, 3, 4})
    assert is_null(B3, range(1, 8))


def test_generator_nullity_matches_all_elements():
    rng = random.Random(41)
    checked = 0
    while checked < 60:
        G = random_integer_sum_group(rng, e_max=7, max_order=64)
        for mask in range(1, 1 << G.e):
            block = [i + 1 for i in range(G.e) if mask >> i & 1]
            assert is_null(G, block) == is_null_all_elements(G, block)
        checked += 1


def test_max_blocks_code_groups():
    B2 = simplex_code_group(2)
    assert max_cayley_blocks(B2)[0] == 1
    B3 = simplex_code_group(3)
    count, witness = max_cayley_blocks(B3)
    assert count == 2
    assert len(witness) == 2
    assert validate_partition(B3, witness)
    # the two published blocks are themselves a valid optimal witness
    assert is_null(B3, {2, 3, 4}) and is_null(B3, {1, 5, 6, 7})
    assert max_cayley_blocks(simplex_code_group(4))[0] == 5


def test_max_blocks_trivial_group():
    T = trivial_group(3)
    count, witness = max_cayley_blocks(T)
    assert count == 3
    assert witness.block_lists() == [[1], [2], [3]]


def test_max_blocks_counterexamples():
    assert max_cayley_blocks(counterexample_simplex(3))[0] == 3
    assert max_cayley_blocks(counterexample_simplex(4))[0] == 5


def test_max_blocks_requires_integer_sum():
    G = close([ResidueVector(2, (1, 0, 0))])
    with pytest.raises(NonIntegralHeights):
        max_cayley_blocks(G)


def test_solver_cap_and_branch_and_bound():
    B5 = simplex_code_group(5)
    with pytest.raises(SolverCapExceeded):
        max_cayley_blocks(B5)
    count, witness = max_cayley_blocks(B5, allow_branch_and_bound=True)
    assert validate_partition(B5, witness)
    assert count == 10
    assert sorted(len(b) for b in witness.blocks) == [3] * 9 + [4]


def test_solver_agrees_with_brute_force():
    rng = random.Random(43)
    for _ in range(60):
        G = random_integer_sum_group(rng, e_max=9, max_order=128)
        count, witness = max_cayley_blocks(G)
        assert validate_partition(G, witness)
        assert len(witness) == count
        assert brute_max_blocks(G) == count


def test_solver_is_deterministic():
    rng = random.Random(47)
    for _ in range(20):
        G = random_integer_sum_group(rng, e_max=8)
        first = max_cayley_blocks(G)
        second = max_cayley_blocks(G)
        assert first[0] == second[0]
        assert first[1].block_lists() == second[1].block_lists()


def test_upper_bound_examples():
    assert cayley_upper_bound_distinct_halves(simplex_code_group(4)) == 5
    assert cayley_upper_bound_distinct_halves(simplex_code_group(2)) == 1
    assert cayley_upper_bound_distinct_halves(counterexample_simplex(3)) == 3


def test_upper_bound_hypotheses():
    with pytest.raises(HypothesesNotMet):
        cayley_upper_bound_distinct_halves(close([ResidueVector(4, (1, 1, 2))]))
    with pytest.raises(HypothesesNotMet):
        cayley_upper_bound_distinct_halves(
            close([ResidueVector(2, (1, 1, 0, 0))]))
    duplicated = close([ResidueVector(2, (1, 1, 1, 1))])
    with pytest.raises(HypothesesNotMet):
        cayley_upper_bound_distinct_halves(duplicated)


def test_upper_bound_dominates_solver():
    for r in range(2, 6):
        G = simplex_code_group(r)
        C, _ = max_cayley_blocks(G, allow_branch_and_bound=True)
        assert C <= cayley_upper_bound_distinct_halves(G)


def test_recursive_decomposition_small():
    part1 = recursive_decomposition(1)
    assert sorted(len(b) for b in part1.blocks) == [3, 4]
    assert validate_partition(simplex_code_group(3), part1)
    part0 = recursive_decomposition(0)
    assert part0.block_lists() == [[1, 2, 3]]


def test_recursive_decomposition_counts_and_validity():
    expected_counts = {0: 1, 1: 2, 2: 5, 3: 9, 4: 21}
    for r, count in expected_counts.items():
        part = recursive_decomposition(r)
        assert len(part) == count
        G = simplex_code_group(r + 2)
        assert validate_partition(G, part)
        sizes = sorted(len(b) for b in part.blocks)
        if r % 2 == 0:
            assert sizes == [3] * (((1 << (r + 2)) - 1) // 3)
        else:
            c, d = 1, 1
            for _ in range((r - 1) // 2):
                c, d = 4 * c + 1, 4 * d
            assert sizes == [3] * c + [4] * d


def test_decomposition_within_solver_bounds():
    for r in range(4):
        G = simplex_code_group(r + 2)
        C, _ = max_cayley_blocks(G, allow_branch_and_bound=True)
        lower = len(recursive_decomposition(r))
        upper = cayley_upper_bound_distinct_halves(G)
        assert lower <= C <= upper
        if r % 2 == 0:
            assert lower == C == upper


def test_conjecture_reports():
    rep = conjecture_report(simplex_code_group(3))
    assert (rep.d, rep.s, rep.cayley_number) == (6, 2, 2)
    assert rep.original_gap == 1
    assert rep.original_verdict == "violates the Cayley conjecture"
    rep2 = conjecture_report(simplex_code_group(2))
    assert rep2.original_gap == 0
    assert rep2.original_verdict == "not applicable (d <= 2s)"
    rep3 = conjecture_report(counterexample_simplex(3))
    assert rep3.original_gap == 1
    assert rep3.cayley_number == 3


def test_modified_conjecture_values_on_the_family():
    values = {}
    for r in range(4):
        G = simplex_code_group(r + 2)
        rep = conjecture_report(G, allow_branch_and_bound=True)
        value = rep.cayley_number - (rep.d + 1) + rep.modified_bound
        values[r] = value
        assert value >= 0
        assert not rep.modified_verdict.startswith("violates")
    assert values[1] == 0
    assert values[2] == (2 ** 1 - 2) // 3
    # the exact solver beats the size-3/size-4 construction at r=3, so the
    # margin there is strictly positive
    assert values[3] == 1


def test_realize_then_project_keeps_witness_valid():
    for G in (simplex_code_group(2), simplex_code_group(3),
              counterexample_simplex(3)):
        count, witness = max_cayley_blocks(G)
        recovered = lambda_from_vertices(realize_vertices(G))
        assert validate_partition(recovered, witness)
        assert max_cayley_blocks(recovered)[0] == count


def test_report_json_shape():
    rep = conjecture_report(simplex_code_group(3))
    obj = rep.to_json()
    assert list(obj) == ["d", "s", "C", "originalGap", "modifiedBound",
                         "modifiedGap", "verdicts"]
    assert obj["C"] == 2 and obj["originalGap"] == 1
