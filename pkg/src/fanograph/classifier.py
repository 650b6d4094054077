"""Fano and weak Fano classification of graph toric varieties.

Two independent routes are implemented. The wall route evaluates ``a(τ)`` on every wall of ``Δ(G)``: the variety is
Fano iff every ``a(τ) >= -1`` and weak Fano iff every ``a(τ) >= -2``. The theorem route reads the answer off the
graph: Fano iff every connected component has at most three nodes, weak Fano iff no component has a proper induced
subgraph that is a cycle of length at least four or the diamond.
"""

from __future__ import annotations

import logging
import time
from dataclasses import replace
from typing import Sequence

import networkx as nx

from fanograph.config import BRUTE_FORCE_NODE_LIMIT, DEFAULT_SEARCH_BUDGET
from fanograph.fan import Fan, connected_fan, local_wall_fan, wall_relation
from fanograph.graph import (
    Graph,
    NodeSet,
    connected_components,
    connected_extension_order,
    embed_node_set,
    induced_subgraph,
    is_cycle_graph,
    is_diamond,
    mask_nodes,
    nodes_mask,
    popcount,
    to_networkx,
)
from fanograph.metrics import classify_seconds, record_classification
from fanograph.nested import (
    NestedComplex,
    NestedSet,
    WallCompletion,
    completion_of,
    graphical_building_set,
    is_nested_set,
    nested_complex,
    wall_completions,
)
from fanograph.schemas.classification import (
    Classification,
    ClassificationMode,
    ComponentResult,
    FanoModel,
    WallReport,
    Witness,
    WitnessKind,
)
from fanograph.utils.exceptions import (
    InconsistentFanError,
    InvalidGraphError,
    InvalidWitnessError,
    MethodDisagreementError,
)

logger = logging.getLogger(__name__)

FANO_MIN_A = -1
WEAK_FANO_MIN_A = -2
MIN_HOLE = 4  # Shortest forbidden induced cycle
FANO_MAX_NODES = 3  # Largest connected component of a Fano graph

_KIND_ORDER = {kind: position for position, kind in enumerate(WitnessKind)}


def _closed_form_a(completion: WallCompletion, full_mask: int) -> int:
    if completion.union.mask == full_mask:
        return -completion.m
    return -completion.m - 1


def _report(completion: WallCompletion, full_mask: int, a_oracle: int) -> WallReport:
    return WallReport(
        wall=completion.wall,
        first=completion.first,
        second=completion.second,
        union=completion.union,
        components=completion.components,
        a=_closed_form_a(completion, full_mask),
        a_oracle=a_oracle,
    )


def _wall_key(report: WallReport) -> tuple[int, ...]:
    return tuple(member.mask for member in report.wall.members)


def _relation_sum(
    fan: Fan,
    wall: Sequence[int],
    first: int,
    second: int,
    candidate: Sequence[int] | None = None,
) -> int:
    try:
        cones = (fan.cone_lookup[frozenset((*wall, first))], fan.cone_lookup[frozenset((*wall, second))])
    except KeyError as exc:
        msg = f"Rays {sorted(wall)} with {first} or {second} do not span a maximal cone"
        raise InconsistentFanError(msg) from exc
    return wall_relation(fan, wall, cones, candidate=candidate).a_sum


def _identity_coefficients(fan: Fan, wall: Sequence[int], completion: WallCompletion) -> list[int]:
    """Read the wall coefficients off ``e_J + e_J' = e_{J ∪ J'} + Σ e_{I_k}`` (``e_{V(G)} = 0``)."""
    position = {fan.ray_sets[index].mask: k for k, index in enumerate(sorted(wall))} if fan.ray_sets else {}
    coefficients = [0] * len(position)
    for node_set in (completion.union, *completion.components):
        if node_set.mask in position:
            coefficients[position[node_set.mask]] -= 1
    return coefficients


def a_value(graph: Graph, wall: NestedSet, fan: Fan | None = None) -> WallReport:
    """Compute ``a(τ)`` for the cone of a wall from its completions and check it against the wall relation.

    Parameters
    ----------
    graph : Graph
        A connected graph.
    wall : NestedSet
        A nested set of size ``|V(G)| - 1``.
    fan : Fan | None
        ``Δ(G)`` if already built; otherwise only the two cones around the wall are materialised.

    Returns
    -------
    WallReport
        ``a = -m`` if ``J ∪ J' = V(G)``, else ``-m - 1``, with the fan's value in ``a_oracle``.

    """
    completion = wall_completions(graph, wall)
    members = tuple(member for member in wall.members if member.mask != graph.full_mask)
    if fan is None:
        local = local_wall_fan(graph.node_count - 1, members, completion.first, completion.second)
        a_oracle = wall_relation(local, range(len(members)), (0, 1)).a_sum
    else:
        try:
            indices = [fan.index_of(member) for member in members]
            first, second = fan.index_of(completion.first), fan.index_of(completion.second)
        except KeyError as exc:
            msg = f"{wall} uses node sets that generate no ray of the fan"
            raise InconsistentFanError(msg) from exc
        a_oracle = _relation_sum(fan, indices, first, second)
    return _report(completion, graph.full_mask, a_oracle)


def _component_reports(complex_: NestedComplex, fan: Fan, *, solve_relations: bool = True) -> list[WallReport]:
    bset = complex_.building_set
    full_mask = bset.ambient.full_mask
    reports = []
    for wall in complex_.walls:
        completion = completion_of(complex_, wall)
        first, second = bset.index[completion.first.mask], bset.index[completion.second.mask]
        candidate = None if solve_relations else _identity_coefficients(fan, wall, completion)
        reports.append(_report(completion, full_mask, _relation_sum(fan, wall, first, second, candidate)))
    reports.sort(key=_wall_key)
    return reports


def fano_model(graph: Graph) -> FanoModel | None:
    """Name the Fano variety of a connected graph with at most three nodes, ``None`` for anything else."""
    if not graph.is_connected:
        return None
    if graph.node_count == 1:
        return FanoModel.POINT
    if graph.node_count == 2:  # noqa: PLR2004
        return FanoModel.PROJECTIVE_LINE
    if graph.node_count == FANO_MAX_NODES:
        if graph.edge_count == FANO_MAX_NODES:
            return FanoModel.PLANE_BLOWN_UP_AT_THREE_POINTS
        return FanoModel.PLANE_BLOWN_UP_AT_TWO_POINTS
    return None


def _point(component: NodeSet) -> ComponentResult:
    return ComponentResult(nodes=component, fano=True, weak_fano=True, model=FanoModel.POINT)


def _combine(
    results: Sequence[ComponentResult],
    method: ClassificationMode,
    witness: Witness | None = None,
) -> Classification:
    minima = [result.min_a for result in results if result.min_a is not None]
    return Classification(
        fano=all(result.fano for result in results),
        weak_fano=all(result.weak_fano for result in results),
        min_a=min(minima) if minima else None,
        method=method,
        witness=witness,
        components=tuple(results),
    )


def classify_via_walls(
    graph: Graph,
    *,
    budget: int | None = None,
    solve_relations: bool = True,
) -> Classification:
    """Classify a graph by evaluating ``a(τ)`` on every wall of every component.

    Parameters
    ----------
    graph : Graph
        Any graph; components are classified separately and combined with ``and``.
    budget : int | None
        Nested-set search budget per component.
    solve_relations : bool
        Solve every wall relation as a lattice system. When ``False`` the relation read off the completion
        identity is checked exactly against the rays instead, and the system is solved only if that check fails.

    Returns
    -------
    Classification
        With every wall report and, when not weak Fano, the first wall of minimal ``a`` as witness.

    Raises
    ------
    BudgetExceededError
        If some component needs more than ``budget`` search nodes.

    """
    results: list[ComponentResult] = []
    worst: tuple[NodeSet, WallReport] | None = None
    for component in connected_components(graph):
        if len(component) == 1:
            results.append(_point(component))
            continue

        sub = induced_subgraph(graph, component)
        complex_ = nested_complex(sub, budget=budget)
        reports = _component_reports(complex_, connected_fan(sub, complex_), solve_relations=solve_relations)
        min_a = min(report.a for report in reports)
        fano = min_a >= FANO_MIN_A
        results.append(
            ComponentResult(
                nodes=component,
                fano=fano,
                weak_fano=min_a >= WEAK_FANO_MIN_A,
                min_a=min_a,
                walls=tuple(reports),
                model=fano_model(sub) if fano else None,
            ),
        )
        logger.debug("Component %s: %d walls, min a = %d", component, len(reports), min_a)
        for report in reports:
            if report.a < WEAK_FANO_MIN_A and (worst is None or report.a < worst[1].a):
                worst = (component, report)

    witness = None if worst is None else Witness(kind=WitnessKind.BAD_WALL, component=worst[0], report=worst[1])
    return _combine(results, ClassificationMode.WALLS, witness)


def is_fano_theorem(graph: Graph) -> bool:
    """Return ``True`` if every connected component has at most three nodes."""
    return all(len(component) <= FANO_MAX_NODES for component in connected_components(graph))


def _induced_kind(graph: Graph, mask: int) -> WitnessKind | None:
    """Return the forbidden kind ``G|_I`` has, equivalent to ``is_cycle_graph`` / ``is_diamond`` on the subgraph."""
    size = popcount(mask)
    if size < MIN_HOLE:
        return None
    degrees = [popcount(graph.neighbours(node) & mask) for node in mask_nodes(mask)]
    if all(degree == 2 for degree in degrees) and graph.is_connected_mask(mask):  # noqa: PLR2004
        return WitnessKind.INDUCED_CYCLE
    if size == MIN_HOLE and sorted(degrees) == [2, 2, 3, 3]:
        return WitnessKind.INDUCED_DIAMOND
    return None


def find_induced_witness(graph: Graph) -> Witness | None:
    """Scan every proper subset of a connected graph in ascending mask order for a forbidden induced subgraph.

    Returns
    -------
    Witness | None
        The canonical-first witness (smallest subset mask), or ``None`` if the graph passes.

    """
    for mask in range(1, graph.full_mask):
        kind = _induced_kind(graph, mask)
        if kind is not None:
            return Witness(kind=kind, component=graph.vertices, subset=NodeSet(mask, graph.node_count))
    return None


def _induced_diamond(graph: Graph) -> int | None:
    for u, v in graph.edges():
        common = graph.neighbours(u) & graph.neighbours(v)
        for a in mask_nodes(common):
            # Nodes of the common neighbourhood above ``a`` and not adjacent to it
            others = common & ~graph.neighbours(a) & ~((1 << a) - 1)
            if others:
                return nodes_mask((u, v, a)) | (others & -others)
    return None


def _is_forbidden_itself(graph: Graph) -> bool:
    return (graph.node_count >= MIN_HOLE and is_cycle_graph(graph)) or is_diamond(graph)


def find_induced_witness_fast(graph: Graph) -> Witness | None:
    """Find a forbidden proper induced subgraph of a connected graph without scanning subsets.

    An induced diamond is read off an edge whose common neighbourhood holds two nonadjacent nodes; otherwise a
    chordless cycle of length at least four comes from networkx. The result is not guaranteed to be canonical-first.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected.

    """
    if not graph.is_connected:
        msg = f"Expected a connected graph, got {graph}"
        raise InvalidGraphError(msg)
    if _is_forbidden_itself(graph):
        return None

    diamond = _induced_diamond(graph)
    if diamond is not None:
        subset = NodeSet(diamond, graph.node_count)
        return Witness(kind=WitnessKind.INDUCED_DIAMOND, component=graph.vertices, subset=subset)
    hole = next((cycle for cycle in nx.chordless_cycles(to_networkx(graph)) if len(cycle) >= MIN_HOLE), None)
    if hole is not None:
        subset = graph.node_set(hole)
        return Witness(kind=WitnessKind.INDUCED_CYCLE, component=graph.vertices, subset=subset)
    return None


def weak_fano_fast_path(graph: Graph) -> bool:
    """Decide the weak Fano property in polynomial time.

    A component passes iff it is a cycle of length at least four, or the diamond, or it is chordal with no induced
    diamond.
    """
    for component in connected_components(graph):
        sub = induced_subgraph(graph, component)
        if _is_forbidden_itself(sub):
            continue
        if not nx.is_chordal(to_networkx(sub)) or _induced_diamond(sub) is not None:
            return False
    return True


def _component_witness(graph: Graph, component: NodeSet, *, fast_path: bool) -> Witness | None:
    if len(component) <= MIN_HOLE:
        return None

    sub = induced_subgraph(graph, component)
    if len(component) > BRUTE_FORCE_NODE_LIMIT and not fast_path:
        logger.warning("Component %s has %d nodes, using the chordal fast path", component, len(component))
        fast_path = True
    local = find_induced_witness_fast(sub) if fast_path else find_induced_witness(sub)
    if local is None or local.subset is None:
        return None
    return replace(local, component=component, subset=embed_node_set(local.subset, component))


def _witness_key(witness: Witness) -> tuple[int, int]:
    mask = 0 if witness.subset is None else witness.subset.mask
    return mask, _KIND_ORDER[witness.kind]


def is_weak_fano_theorem(graph: Graph, *, fast_path: bool = False) -> tuple[bool, Witness | None]:
    """Check the forbidden proper induced subgraphs component by component.

    Parameters
    ----------
    graph : Graph
        Any graph.
    fast_path : bool
        Use the chordal shortcut instead of scanning subsets (components above ``BRUTE_FORCE_NODE_LIMIT`` always do).

    Returns
    -------
    tuple[bool, Witness | None]
        ``(True, None)`` if weak Fano, else ``False`` with the witness of smallest subset mask.

    """
    witnesses = [
        witness
        for component in connected_components(graph)
        if (witness := _component_witness(graph, component, fast_path=fast_path)) is not None
    ]
    if not witnesses:
        return True, None
    return False, min(witnesses, key=_witness_key)


def classify_via_theorems(graph: Graph, *, fast_path: bool = False) -> Classification:
    """Classify a graph by component sizes and forbidden induced subgraphs, without computing walls."""
    results = []
    witnesses = []
    for component in connected_components(graph):
        witness = _component_witness(graph, component, fast_path=fast_path)
        if witness is not None:
            witnesses.append(witness)
        fano = len(component) <= FANO_MAX_NODES
        model = fano_model(induced_subgraph(graph, component)) if fano else None
        results.append(ComponentResult(nodes=component, fano=fano, weak_fano=witness is None, model=model))
    witness = min(witnesses, key=_witness_key) if witnesses else None
    return _combine(results, ClassificationMode.THEOREM, witness)


def _cycle_order(graph: Graph, subset: NodeSet) -> list[int]:
    """Walk around an induced cycle from its smallest node, towards the smaller neighbour first."""
    order = [subset.nodes[0]]
    visited = 1 << (order[0] - 1)
    while visited != subset.mask:
        ahead = graph.neighbours(order[-1]) & subset.mask & ~visited
        step = ahead & -ahead
        order.append(step.bit_length())
        visited |= step
    return order


def _diamond_order(graph: Graph, subset: NodeSet) -> list[int]:
    """Order an induced diamond with its two degree-3 nodes first."""
    apexes = [node for node in subset.nodes if popcount(graph.neighbours(node) & subset.mask) == 3]  # noqa: PLR2004
    return apexes + [node for node in subset.nodes if node not in apexes]


def bad_nested_set(graph: Graph, witness: Witness) -> NestedSet:
    """Build a wall with ``a = -3`` from a forbidden proper induced subgraph.

    The graph is walked in a connected extension order seeded with the witness, and positions are translated back
    to node labels. For an induced cycle of length ``l`` the wall is ``{1}, {1,2}, ..., {1..l-3}, {l-1}, {1..l}, ...,
    {1..n+1}``; for the diamond it is ``{3}, {4}, {1..4}, {1..5}, ..., {1..n+1}``.

    Parameters
    ----------
    graph : Graph
        A connected graph.
    witness : Witness
        An ``induced_cycle`` or ``induced_diamond`` witness whose subset is proper.

    Returns
    -------
    NestedSet
        The wall, in the labels of ``graph``.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected.
    InvalidWitnessError
        If the witness is not an induced kind, is not proper, or does not induce what it claims.

    """
    if not graph.is_connected:
        msg = f"Bad nested sets need a connected graph, got {graph}"
        raise InvalidGraphError(msg)
    subset = witness.subset
    if witness.kind is WitnessKind.BAD_WALL or subset is None:
        msg = f"Expected an induced cycle or diamond witness, got {witness.kind.value}"
        raise InvalidWitnessError(msg)
    if subset.node_count != graph.node_count or subset.mask == graph.full_mask:
        msg = f"Witness subset {subset} is not a proper subset of the nodes of {graph}"
        raise InvalidWitnessError(msg)
    if _induced_kind(graph, subset.mask) is not witness.kind:
        msg = f"{subset} does not induce an {witness.kind.value.replace('_', ' ')}"
        raise InvalidWitnessError(msg)

    if witness.kind is WitnessKind.INDUCED_CYCLE:
        order = connected_extension_order(graph, _cycle_order(graph, subset))
        length = len(subset)
        positions = [order[:k] for k in range(1, length - 2)] + [[order[length - 2]]]
        positions += [order[:k] for k in range(length, len(order) + 1)]
    else:
        order = connected_extension_order(graph, _diamond_order(graph, subset))
        positions = [[order[2]], [order[3]]] + [order[:k] for k in range(MIN_HOLE, len(order) + 1)]

    bset = graphical_building_set(graph)
    members = tuple(sorted(graph.node_set(nodes) for nodes in positions))
    if len(members) != graph.node_count - 1 or not is_nested_set(bset, members):
        msg = f"Constructed collection {[str(member) for member in members]} is not a wall"
        raise InconsistentFanError(msg)
    return NestedSet(members, ambient=bset)


def casagrande_bound_holds(graph: Graph) -> bool:
    """Return ``True`` if ``|Δ(G)(1)| <= 3n`` (``n`` even) or ``<= 3n - 1`` (``n`` odd), ``n = |V(G)| - 1``."""
    rays = len(graphical_building_set(graph)) - 1
    dim = graph.node_count - 1
    return rays <= (3 * dim if dim % 2 == 0 else 3 * dim - 1)


def path_bound_holds(graph: Graph) -> bool:
    """Return ``True`` if a connected graph has at least as many rays as the path on the same number of nodes."""
    rays = len(graphical_building_set(graph)) - 1
    dim = graph.node_count - 1
    return rays >= (dim + 1) * (dim + 2) // 2 - 1


def forbidden_graph_walls_bounded(graph: Graph) -> bool:
    """Check that a cycle of length at least four or the diamond has only walls with ``a >= -2``.

    Every wall must have ``m <= 2``, and ``m = 2`` only when ``J ∪ J' = V(G)``.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is neither such a cycle nor the diamond.

    """
    if not _is_forbidden_itself(graph):
        msg = f"Expected a cycle of length at least {MIN_HOLE} or the diamond, got {graph}"
        raise InvalidGraphError(msg)

    complex_ = nested_complex(graph)
    for wall in complex_.walls:
        completion = completion_of(complex_, wall)
        if completion.m > 2 or (completion.m == 2 and completion.union.mask != graph.full_mask):  # noqa: PLR2004
            return False
    return True


def classify(
    graph: Graph,
    mode: ClassificationMode | str = ClassificationMode.BOTH,
    *,
    budget: int | None = DEFAULT_SEARCH_BUDGET,
    fast_path: bool = False,
) -> Classification:
    """Classify a graph by walls, by the theorems, or by both.

    Parameters
    ----------
    graph : Graph
        Any graph.
    mode : ClassificationMode | str
        ``walls``, ``theorem`` or ``both``.
    budget : int | None
        Nested-set search budget per component for the wall route.
    fast_path : bool
        Use the chordal shortcut for the theorem route.

    Returns
    -------
    Classification
        In ``both`` mode the wall result, carrying the induced witness when there is one.

    Raises
    ------
    BudgetExceededError
        If the wall route exceeds ``budget``.
    MethodDisagreementError
        If the two routes disagree in ``both`` mode.

    """
    mode = ClassificationMode(mode)
    start = time.perf_counter()
    if mode is ClassificationMode.THEOREM:
        result = classify_via_theorems(graph, fast_path=fast_path)
    elif mode is ClassificationMode.WALLS:
        result = classify_via_walls(graph, budget=budget)
    else:
        by_walls = classify_via_walls(graph, budget=budget)
        by_theorems = classify_via_theorems(graph, fast_path=fast_path)
        if (by_walls.fano, by_walls.weak_fano) != (by_theorems.fano, by_theorems.weak_fano):
            msg = (
                f"Methods disagree on {graph.graph6}: walls say fano={by_walls.fano} weak_fano={by_walls.weak_fano}, "
                f"theorems say fano={by_theorems.fano} weak_fano={by_theorems.weak_fano}"
            )
            raise MethodDisagreementError(msg)
        result = replace(by_walls, method=ClassificationMode.BOTH, witness=by_theorems.witness or by_walls.witness)

    classify_seconds.labels(mode=mode.value).observe(time.perf_counter() - start)
    record_classification(fano=result.fano, weak_fano=result.weak_fano, walls=len(result.walls))
    return result
