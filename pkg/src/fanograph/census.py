"""Exhaustive validation: classify every labeled graph both ways and collect every disagreement."""

from __future__ import annotations

import functools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Callable, Iterable, Iterator, TypeVar

from fanograph.classifier import (
    casagrande_bound_holds,
    classify_via_walls,
    is_fano_theorem,
    is_weak_fano_theorem,
    path_bound_holds,
    weak_fano_fast_path,
)
from fanograph.config import DEFAULT_SEARCH_BUDGET, MAX_ENUMERATION_NODES
from fanograph.graph import Graph, canonical_edge_code, induced_subgraph, parse_graph6
from fanograph.metrics import census_mismatch_counter, record_classification
from fanograph.schemas.census import CensusReport, GraphOutcome, Mismatch, MismatchKind
from fanograph.utils.exceptions import BudgetExceededError, InvalidGraphError

logger = logging.getLogger(__name__)

CHUNK_SIZE = 256  # Graphs handed to a worker process at once

_T = TypeVar("_T")


def all_labeled_graphs(n: int, *, connected_only: bool = False) -> Iterator[Graph]:
    """Yield every labeled graph on ``n`` nodes in ascending edge-code order.

    Raises
    ------
    InvalidGraphError
        If ``n`` is outside ``1..MAX_ENUMERATION_NODES``.

    """
    if not 1 <= n <= MAX_ENUMERATION_NODES:
        msg = f"Enumeration supports 1 to {MAX_ENUMERATION_NODES} nodes, got {n}"
        raise InvalidGraphError(msg)

    for code in range(1 << (n * (n - 1) // 2)):
        graph = Graph.from_edge_code(n, code)
        if connected_only and not graph.is_connected:
            continue
        yield graph


def dedup_graphs(graphs: Iterable[Graph]) -> Iterator[Graph]:
    """Yield the first graph of every isomorphism class."""
    seen: set[tuple[int, int]] = set()
    for graph in graphs:
        key = (graph.node_count, canonical_edge_code(graph))
        if key not in seen:
            seen.add(key)
            yield graph


def _map(job: Callable[[Graph], _T], graphs: Iterable[Graph], jobs: int) -> list[_T]:
    if jobs <= 1:
        return [job(graph) for graph in graphs]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(job, graphs, chunksize=CHUNK_SIZE))


def _census_job(graph: Graph, *, budget: int | None, solve_relations: bool = False) -> GraphOutcome:
    """Classify one graph both ways and run every consistency check on it."""
    fano, weak_fano = is_fano_theorem(graph), is_weak_fano_theorem(graph)[0]
    outcome = GraphOutcome(
        node_count=graph.node_count,
        edge_code=graph.edge_code,
        graph6=graph.graph6,
        connected=graph.is_connected,
        fano=fano,
        weak_fano=weak_fano,
    )
    try:
        by_walls = classify_via_walls(graph, budget=budget, solve_relations=solve_relations)
    except BudgetExceededError:
        return replace(outcome, budget_exceeded=True)

    walls = by_walls.walls
    mismatches = []

    def flag(kind: MismatchKind, detail: str) -> None:
        mismatches.append(Mismatch(graph6=graph.graph6, kind=kind, detail=detail, walls=walls))

    if (by_walls.fano, by_walls.weak_fano) != (fano, weak_fano):
        flag(
            MismatchKind.METHOD_DISAGREEMENT,
            f"walls: fano={by_walls.fano} weak_fano={by_walls.weak_fano}, theorems: fano={fano} weak_fano={weak_fano}",
        )
    disagreeing = [report for report in walls if not report.agree]
    if disagreeing:
        first = disagreeing[0]
        flag(
            MismatchKind.ORACLE,
            f"{len(disagreeing)} walls disagree, first {first.wall}: a={first.a} relation={first.a_oracle}",
        )
    if by_walls.fano and not by_walls.weak_fano:
        flag(MismatchKind.MONOTONE, "Fano but not weak Fano")
    for component in by_walls.components:
        sub = induced_subgraph(graph, component.nodes)
        if component.fano and not casagrande_bound_holds(sub):
            flag(MismatchKind.CASAGRANDE_BOUND, f"Fano component {component.nodes} has too many rays")
        if not path_bound_holds(sub):
            flag(MismatchKind.PATH_BOUND, f"Component {component.nodes} has fewer rays than the path")

    return replace(outcome, walls_checked=len(walls), mismatches=tuple(mismatches))


def _fast_path_disagrees(graph: Graph) -> bool:
    return weak_fano_fast_path(graph) != is_weak_fano_theorem(graph)[0]


def _summarise(
    outcomes: list[GraphOutcome],
    *,
    n: int,
    dedup: bool,
    started: float,
    fast_path_disagreements: tuple[str, ...] = (),
) -> CensusReport:
    outcomes.sort(key=lambda outcome: (outcome.node_count, outcome.edge_code))
    mismatches = tuple(mismatch for outcome in outcomes for mismatch in outcome.mismatches)
    for outcome in outcomes:
        record_classification(fano=outcome.fano, weak_fano=outcome.weak_fano, walls=outcome.walls_checked)
    for mismatch in mismatches:
        census_mismatch_counter.labels(kind=mismatch.kind.value).inc()

    weak_fano_count = sum(outcome.weak_fano for outcome in outcomes)
    report = CensusReport(
        n=n,
        graphs_total=len(outcomes),
        graphs_connected=sum(outcome.connected for outcome in outcomes),
        fano_count=sum(outcome.fano for outcome in outcomes),
        weak_fano_count=weak_fano_count,
        neither_count=len(outcomes) - weak_fano_count,
        mismatches=mismatches,
        runtime_ms=round((time.perf_counter() - started) * 1000),
        budget_exceeded=tuple(outcome.graph6 for outcome in outcomes if outcome.budget_exceeded),
        walls_checked=sum(outcome.walls_checked for outcome in outcomes),
        dedup=dedup,
        fast_path_disagreements=fast_path_disagreements,
    )
    logger.info(
        "Census finished: %d graphs, %d mismatches, %d over budget in %d ms",
        report.graphs_total,
        len(report.mismatches),
        len(report.budget_exceeded),
        report.runtime_ms,
    )
    return report


def fast_path_agreement(n: int, *, jobs: int = 1) -> list[str]:
    """Return the connected labeled graphs on ``n`` nodes where the chordal shortcut and subset scanning disagree."""
    graphs = list(all_labeled_graphs(n, connected_only=True))
    verdicts = _map(_fast_path_disagrees, graphs, jobs)
    return [graph.graph6 for graph, disagrees in zip(graphs, verdicts) if disagrees]


def cross_validate(
    n: int,
    *,
    connected_only: bool = False,
    dedup: bool = False,
    jobs: int = 1,
    budget: int | None = DEFAULT_SEARCH_BUDGET,
    fast_path: bool = False,
    solve_relations: bool = False,
) -> CensusReport:
    """Classify every labeled graph on ``n`` nodes by walls and by the theorems, and check them against each other.

    Parameters
    ----------
    n : int
        Node count, ``1..MAX_ENUMERATION_NODES``.
    connected_only : bool
        Skip disconnected graphs.
    dedup : bool
        Keep only the first graph of each isomorphism class (``n <= DEDUP_NODE_LIMIT``).
    jobs : int
        Worker processes; the report does not depend on it.
    budget : int | None
        Nested-set search budget per component; graphs above it are recorded and classified by the theorems only.
    fast_path : bool
        Also compare the chordal shortcut with subset scanning on every connected graph on ``n`` nodes.
    solve_relations : bool
        Solve every wall relation as a lattice system instead of checking the relation given by the completion
        identity against the rays.

    Returns
    -------
    CensusReport
        Counts, mismatches and coverage information.

    """
    started = time.perf_counter()
    logger.info("Census of labeled graphs on %d nodes (connected only: %s, dedup: %s)", n, connected_only, dedup)
    graphs: Iterable[Graph] = all_labeled_graphs(n, connected_only=connected_only)
    if dedup:
        graphs = dedup_graphs(graphs)
    outcomes = _map(functools.partial(_census_job, budget=budget, solve_relations=solve_relations), graphs, jobs)
    disagreements = tuple(fast_path_agreement(n, jobs=jobs)) if fast_path else ()
    return _summarise(outcomes, n=n, dedup=dedup, started=started, fast_path_disagreements=disagreements)


def cross_validate_corpus(
    lines: Iterable[str],
    *,
    dedup: bool = False,
    jobs: int = 1,
    budget: int | None = DEFAULT_SEARCH_BUDGET,
    fast_path: bool = False,
    solve_relations: bool = False,
) -> CensusReport:
    """Run the census checks over graph6 lines; blank lines and lines starting with ``#`` are skipped.

    Raises
    ------
    GraphParseError
        If a line is not valid graph6.

    """
    started = time.perf_counter()
    stripped = (line.strip() for line in lines)
    graphs = [parse_graph6(line) for line in stripped if line and not line.startswith("#")]
    n = max((graph.node_count for graph in graphs), default=0)
    logger.info("Census of a corpus of %d graphs", len(graphs))
    if dedup:
        graphs = list(dedup_graphs(graphs))
    outcomes = _map(functools.partial(_census_job, budget=budget, solve_relations=solve_relations), graphs, jobs)
    disagreements: tuple[str, ...] = ()
    if fast_path:
        connected = [graph for graph in graphs if graph.is_connected]
        verdicts = _map(_fast_path_disagrees, connected, jobs)
        disagreements = tuple(graph.graph6 for graph, disagrees in zip(connected, verdicts) if disagrees)
    return _summarise(outcomes, n=n, dedup=dedup, started=started, fast_path_disagreements=disagreements)
