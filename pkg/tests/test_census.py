"""Tests for graph enumeration and the validation census."""

from __future__ import annotations

from dataclasses import replace
from typing import TYPE_CHECKING

import pytest

from fanograph.census import (
    all_labeled_graphs,
    cross_validate,
    cross_validate_corpus,
    dedup_graphs,
    fast_path_agreement,
)
from fanograph.schemas.census import CensusReport, MismatchKind
from fanograph.utils.exceptions import GraphParseError, InvalidGraphError

if TYPE_CHECKING:
    from pytest_mock import MockerFixture


def _assert_consistent(report: CensusReport) -> None:
    assert report.fano_count <= report.weak_fano_count <= report.graphs_total
    assert report.weak_fano_count + report.neither_count == report.graphs_total
    assert report.graphs_connected <= report.graphs_total


@pytest.mark.parametrize(
    ("n", "connected_only", "expected"),
    [
        pytest.param(1, False, 1, id="one-node"),
        pytest.param(3, False, 8, id="three-nodes"),
        pytest.param(3, True, 4, id="three-nodes-connected"),
        pytest.param(4, True, 38, id="four-nodes-connected"),
        pytest.param(5, True, 728, id="five-nodes-connected"),
    ],
)
def test_all_labeled_graphs_counts(n: int, connected_only: bool, expected: int) -> None:  # noqa: FBT001
    """Test the number of labeled graphs, all or connected only."""
    assert sum(1 for _ in all_labeled_graphs(n, connected_only=connected_only)) == expected


def test_all_labeled_graphs_order() -> None:
    """Test that graphs come in ascending edge-code order starting from the empty graph."""
    codes = [graph.edge_code for graph in all_labeled_graphs(3)]

    assert codes == list(range(8))


@pytest.mark.parametrize("n", [0, 9])
def test_all_labeled_graphs_rejects_sizes(n: int) -> None:
    """Test the supported node range."""
    with pytest.raises(InvalidGraphError):
        next(all_labeled_graphs(n))


@pytest.mark.parametrize(
    ("n", "connected_only", "expected"),
    [
        pytest.param(3, False, 4, id="three-nodes"),
        pytest.param(4, False, 11, id="four-nodes"),
        pytest.param(4, True, 6, id="four-nodes-connected"),
    ],
)
def test_dedup_graphs_counts_isomorphism_classes(n: int, connected_only: bool, expected: int) -> None:  # noqa: FBT001
    """Test the number of unlabeled graphs."""
    assert sum(1 for _ in dedup_graphs(all_labeled_graphs(n, connected_only=connected_only))) == expected


def test_census_three_nodes_is_all_fano() -> None:
    """Test that every graph on three nodes is Fano."""
    report = cross_validate(3)

    assert report.graphs_total == 8
    assert report.graphs_connected == 4
    assert report.fano_count == report.graphs_total
    assert report.ok
    _assert_consistent(report)


def test_census_four_nodes_connected() -> None:
    """Test that every connected graph on four nodes is weak Fano but not Fano.

    Given the 38 labeled connected graphs on four nodes (trees, ``C_4``, ``K_4``, the diamond, a triangle with a
    pendant),
    When the census runs,
    Then none is Fano, all are weak Fano, and walls and theorems agree everywhere.
    """
    report = cross_validate(4, connected_only=True)

    assert report.graphs_total == 38
    assert report.fano_count == 0
    assert report.weak_fano_count == 38
    assert report.mismatches == ()
    assert report.walls_checked > 0
    _assert_consistent(report)


def test_census_four_nodes() -> None:
    """Test that the 26 disconnected graphs on four nodes are exactly the Fano ones."""
    report = cross_validate(4)

    assert report.graphs_total == 64
    assert report.fano_count == 26
    assert report.neither_count == 0
    assert report.ok


def test_census_five_nodes_has_no_mismatches() -> None:
    """Test every check on every labeled graph with five nodes."""
    report = cross_validate(5)

    assert report.graphs_total == 1024
    assert report.graphs_connected == 728
    assert report.fano_count == 106
    assert report.mismatches == ()
    assert report.budget_exceeded == ()
    assert report.neither_count > 0
    _assert_consistent(report)


@pytest.mark.slow
def test_census_six_nodes_has_no_mismatches() -> None:
    """Test every check on every labeled graph with six nodes."""
    report = cross_validate(6, jobs=4)

    assert report.graphs_total == 32768
    assert report.mismatches == ()
    assert report.budget_exceeded == ()
    _assert_consistent(report)


def test_census_dedup() -> None:
    """Test the census over one graph per isomorphism class."""
    report = cross_validate(4, connected_only=True, dedup=True)

    assert report.graphs_total == 6
    assert report.dedup
    assert report.ok


def test_census_is_independent_of_worker_count() -> None:
    """Test that worker processes do not change the report."""
    serial = cross_validate(4, jobs=1)
    parallel = cross_validate(4, jobs=2)

    assert replace(parallel, runtime_ms=0) == replace(serial, runtime_ms=0)


def test_census_identity_relations_match_solved_relations() -> None:
    """Test that checking relations by the completion identity gives the same census as solving them."""
    checked = cross_validate(4)
    solved = cross_validate(4, solve_relations=True)

    assert replace(solved, runtime_ms=0) == replace(checked, runtime_ms=0)
    assert solved.ok


def test_census_records_graphs_over_budget() -> None:
    """Test that graphs above the search budget are listed and still counted by the theorems."""
    report = cross_validate(4, connected_only=True, budget=5)

    assert len(report.budget_exceeded) == 38
    assert report.walls_checked == 0
    assert report.weak_fano_count == 38
    assert report.ok


def test_census_reports_method_disagreements(mocker: MockerFixture) -> None:
    """Test that a disagreement between walls and theorems is reported, not raised."""
    mocker.patch("fanograph.census.is_fano_theorem", return_value=False)

    report = cross_validate(3)

    assert not report.ok
    assert len(report.mismatches) == 8
    assert {mismatch.kind for mismatch in report.mismatches} == {MismatchKind.METHOD_DISAGREEMENT}
    assert report.mismatches[0].graph6 == "B?"


def test_census_of_a_corpus() -> None:
    """Test a corpus with comments, blank lines, the triangle and the 4-cycle with a pendant."""
    report = cross_validate_corpus(["# small graphs\n", "\n", "Bw\n", "Dl_\n"])

    assert report.n == 5
    assert report.graphs_total == 2
    assert report.fano_count == 1
    assert report.weak_fano_count == 1
    assert report.neither_count == 1
    assert report.ok


def test_census_of_a_corpus_rejects_bad_lines() -> None:
    """Test that an invalid graph6 line stops the corpus census."""
    with pytest.raises(GraphParseError):
        cross_validate_corpus(["Bw", "B"])


def test_census_of_a_corpus_with_fast_path() -> None:
    """Test that the chordal shortcut agrees on the corpus graphs."""
    report = cross_validate_corpus(["Dl_", "Bg", "E~~w"], fast_path=True)

    assert report.fast_path_disagreements == ()
    assert report.ok


@pytest.mark.parametrize("n", [4, 5, pytest.param(6, marks=pytest.mark.slow), pytest.param(7, marks=pytest.mark.slow)])
def test_fast_path_agrees_with_subset_scanning(n: int) -> None:
    """Test the chordal shortcut against subset scanning on every connected labeled graph."""
    assert fast_path_agreement(n, jobs=1 if n < 6 else 4) == []
