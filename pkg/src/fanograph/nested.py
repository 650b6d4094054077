"""Graphical building sets, nested sets, and the maximal elements and walls of the nested complex.

Members of a building set are indexed in ascending mask order, so ``V(G)`` always has the last index. Each member
carries a compatibility bitset over those indices (bit ``j`` set iff member ``j`` may share a nested set with it),
which turns both the depth-first enumeration and the search for wall completions into bitwise ANDs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from fanograph.graph import Graph, NodeSet, mask_nodes
from fanograph.utils.exceptions import BudgetExceededError, InconsistentFanError, InvalidGraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuildingSet:
    """The graphical building set ``B(G)`` of a connected graph.

    Attributes
    ----------
    ambient : Graph
        The graph ``G``.
    members : tuple[NodeSet, ...]
        All nonempty node sets inducing connected subgraphs, in ascending mask order.

    """

    ambient: Graph
    members: tuple[NodeSet, ...]
    masks: tuple[int, ...] = field(repr=False, compare=False)
    index: dict[int, int] = field(repr=False, compare=False)
    compatibility: tuple[int, ...] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return (
            isinstance(item, NodeSet) and item.node_count == self.ambient.node_count and item.mask in self.index
        )

    @property
    def top(self) -> int:
        """Return the index of ``V(G)``."""
        return len(self.masks) - 1

    def compatible(self, first: int, second: int) -> bool:
        """Return ``True`` if the members at the two indices satisfy nested-set conditions (1) and (2)."""
        return bool(self.compatibility[first] >> second & 1)

    def node_set(self, index: int) -> NodeSet:
        """Return the member at ``index``."""
        return self.members[index]

    def nested(self, indices: Iterable[int]) -> NestedSet:
        """Return the nested set with the given member indices plus ``V(G)``."""
        chosen = sorted({*indices, self.top})
        return NestedSet(tuple(self.members[i] for i in chosen), ambient=self)


@dataclass(frozen=True)
class NestedSet:
    """A nested set of a graphical building set, members in ascending mask order.

    Attributes
    ----------
    members : tuple[NodeSet, ...]
        The members; ``V(G)`` is always the last one.
    ambient : BuildingSet
        The building set the members are drawn from.

    """

    members: tuple[NodeSet, ...]
    ambient: BuildingSet = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __str__(self) -> str:
        return "{" + ",".join(str(member) for member in self.members) + "}"


@dataclass(frozen=True)
class WallCompletion:
    """The pair ``{J, J'}`` completing a wall, with the components of ``G|_{J ∩ J'}``.

    Attributes
    ----------
    wall : NestedSet
        The wall ``N``.
    first : NodeSet
        ``J``, the canonically smaller completion.
    second : NodeSet
        ``J'``.
    union : NodeSet
        ``J ∪ J'``, a member of ``N``.
    components : tuple[NodeSet, ...]
        ``I_1, ..., I_m``, ordered by smallest node; empty when ``J ∩ J' = ∅``.

    """

    wall: NestedSet
    first: NodeSet
    second: NodeSet
    union: NodeSet
    components: tuple[NodeSet, ...]

    @property
    def m(self) -> int:
        """Return the number of connected components of ``G|_{J ∩ J'}``."""
        return len(self.components)


@dataclass(frozen=True)
class NestedComplex:
    """Maximal nested sets and walls of a connected graph, as building-set index tuples.

    Attributes
    ----------
    building_set : BuildingSet
        ``B(G)``.
    maximal : tuple[tuple[int, ...], ...]
        Member indices (without ``V(G)``) of every maximal nested set, in depth-first order.
    walls : tuple[tuple[int, ...], ...]
        Member indices (without ``V(G)``) of every nested set of size ``|V(G)| - 1``.
    search_nodes : int
        Number of nested sets visited by the search.

    """

    building_set: BuildingSet
    maximal: tuple[tuple[int, ...], ...]
    walls: tuple[tuple[int, ...], ...]
    search_nodes: int

    def completion_indices(self, wall: Sequence[int]) -> tuple[int, ...]:
        """Return the indices of every ``X ∈ B(G) \\ N`` such that ``N ∪ {X}`` is nested."""
        return _completion_candidates(self.building_set, wall)


def _completion_candidates(bset: BuildingSet, wall: Sequence[int]) -> tuple[int, ...]:
    candidates = (1 << bset.top) - 1
    for index in wall:
        candidates &= bset.compatibility[index] & ~(1 << index)
    return _bit_indices(candidates)


def _bit_indices(bits: int) -> tuple[int, ...]:
    indices = []
    while bits:
        low = bits & -bits
        indices.append(low.bit_length() - 1)
        bits ^= low
    return tuple(indices)


def _require_connected(graph: Graph) -> None:
    if not graph.is_connected:
        msg = f"Expected a connected graph, got {graph}"
        raise InvalidGraphError(msg)


def graphical_building_set(graph: Graph) -> BuildingSet:
    """Return ``B(G)``: every nonempty node set inducing a connected subgraph.

    Members are grown breadth-wise from the singletons by adding neighbours of the current set.

    Parameters
    ----------
    graph : Graph
        A connected graph.

    Returns
    -------
    BuildingSet
        The building set in ascending mask order.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected.

    """
    _require_connected(graph)

    level = {1 << i for i in range(graph.node_count)}
    found = set(level)
    while level:
        grown = set()
        for mask in level:
            frontier = graph.neighbourhood(mask) & ~mask
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                extended = mask | low
                if extended not in found:
                    grown.add(extended)
        found |= grown
        level = grown

    masks = tuple(sorted(found))
    neighbourhoods = [graph.neighbourhood(mask) for mask in masks]
    compatibility = [1 << i for i in range(len(masks))]
    for i, first in enumerate(masks):
        for j in range(i + 1, len(masks)):
            second = masks[j]
            common = first & second
            if common:
                ok = common in (first, second)
            else:
                ok = not neighbourhoods[i] & second
            if ok:
                compatibility[i] |= 1 << j
                compatibility[j] |= 1 << i

    logger.debug("Building set of %s has %d members", graph, len(masks))
    return BuildingSet(
        ambient=graph,
        members=tuple(NodeSet(mask, graph.node_count) for mask in masks),
        masks=masks,
        index={mask: i for i, mask in enumerate(masks)},
        compatibility=tuple(compatibility),
    )


def is_nested_set(building_set: BuildingSet, members: Iterable[NodeSet]) -> bool:
    """Return ``True`` if ``members`` form a nested set of ``building_set``.

    Checks pairwise nested-or-disjoint, that disjoint pairs have a disconnected union, and that ``V(G)`` is present.

    Raises
    ------
    InvalidGraphError
        If some member does not belong to the building set.

    """
    indices = []
    for member in members:
        if member not in building_set:
            msg = f"{member} is not a member of the building set"
            raise InvalidGraphError(msg)
        indices.append(building_set.index[member.mask])

    if building_set.top not in indices:
        return False
    return all(building_set.compatible(a, b) for position, a in enumerate(indices) for b in indices[position + 1 :])


def nested_complex(graph: Graph, *, budget: int | None = None) -> NestedComplex:
    """Enumerate the maximal nested sets and the walls of a connected graph in one depth-first search.

    Members are added in ascending index order; the candidate bitset of each search node is the AND of the
    compatibility bitsets of everything chosen so far, restricted to larger indices.

    Parameters
    ----------
    graph : Graph
        A connected graph.
    budget : int | None
        Maximum number of nested sets the search may visit (``None`` for no limit).

    Returns
    -------
    NestedComplex
        The enumeration result.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected.
    BudgetExceededError
        If the search visits more than ``budget`` nested sets.

    """
    bset = graphical_building_set(graph)
    target = graph.node_count - 1
    maximal: list[tuple[int, ...]] = []
    walls: list[tuple[int, ...]] = []
    visited = 0

    def extend(chosen: tuple[int, ...], candidates: int) -> None:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceededError(budget)
        if len(chosen) == target:
            maximal.append(chosen)
            return
        if len(chosen) == target - 1:
            walls.append(chosen)
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            index = low.bit_length() - 1
            extend((*chosen, index), candidates & bset.compatibility[index])

    extend((), (1 << bset.top) - 1)
    logger.debug(
        "Nested complex of %s: %d maximal, %d walls, %d search nodes",
        graph,
        len(maximal),
        len(walls),
        visited,
    )
    return NestedComplex(building_set=bset, maximal=tuple(maximal), walls=tuple(walls), search_nodes=visited)


def maximal_nested_sets(graph: Graph, *, budget: int | None = None) -> list[NestedSet]:
    """Return all nested sets of cardinality ``|V(G)|`` of a connected graph, in depth-first order."""
    complex_ = nested_complex(graph, budget=budget)
    return [complex_.building_set.nested(indices) for indices in complex_.maximal]


def walls(graph: Graph, *, budget: int | None = None) -> list[NestedSet]:
    """Return all nested sets of cardinality ``|V(G)| - 1`` of a connected graph with at least two nodes.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected or has a single node.

    """
    if graph.node_count < 2:  # noqa: PLR2004
        msg = "Walls need a graph with at least two nodes"
        raise InvalidGraphError(msg)
    complex_ = nested_complex(graph, budget=budget)
    return [complex_.building_set.nested(indices) for indices in complex_.walls]


def wall_completions(graph: Graph, wall: NestedSet) -> WallCompletion:
    """Return the pair ``{J, J'}`` completing ``wall`` and the components of ``G|_{J ∩ J'}``.

    Parameters
    ----------
    graph : Graph
        A connected graph.
    wall : NestedSet
        A nested set of size ``|V(G)| - 1``.

    Returns
    -------
    WallCompletion
        ``J < J'`` canonically, their union, and ``I_1, ..., I_m``.

    Raises
    ------
    InvalidGraphError
        If ``wall`` is not a wall of ``graph``.
    InconsistentFanError
        If the number of completions is not two, ``J ∪ J'`` is not in the wall, or some ``I_k`` is not in the wall.

    """
    bset = wall.ambient if wall.ambient.ambient == graph else graphical_building_set(graph)
    if len(wall) != graph.node_count - 1 or not is_nested_set(bset, wall.members):
        msg = f"{wall} is not a wall of {graph}"
        raise InvalidGraphError(msg)

    indices = tuple(bset.index[member.mask] for member in wall.members if member.mask != graph.full_mask)
    completions = _completion_candidates(bset, indices)
    return _completion(graph, bset, wall, completions)


def _completion(graph: Graph, bset: BuildingSet, wall: NestedSet, completions: Sequence[int]) -> WallCompletion:
    if len(completions) != 2:  # noqa: PLR2004
        msg = f"Wall {wall} has {len(completions)} completions, expected exactly 2"
        raise InconsistentFanError(msg)

    first, second = (bset.masks[i] for i in completions)
    wall_masks = {member.mask for member in wall.members}
    union = first | second
    if union not in wall_masks:
        msg = f"Union of the completions of {wall} is not a member of the wall"
        raise InconsistentFanError(msg)

    components = []
    remaining = first & second
    while remaining:
        component = graph.reach(remaining & -remaining, first & second)
        if component not in wall_masks:
            msg = f"Component {set(mask_nodes(component))} of the completion intersection is not in {wall}"
            raise InconsistentFanError(msg)
        components.append(NodeSet(component, graph.node_count))
        remaining &= ~component

    return WallCompletion(
        wall=wall,
        first=NodeSet(first, graph.node_count),
        second=NodeSet(second, graph.node_count),
        union=NodeSet(union, graph.node_count),
        components=tuple(components),
    )


def completion_of(complex_: NestedComplex, wall: Sequence[int]) -> WallCompletion:
    """Return the completion of a wall given as building-set indices of ``complex_``."""
    bset = complex_.building_set
    return _completion(bset.ambient, bset, bset.nested(wall), complex_.completion_indices(wall))
