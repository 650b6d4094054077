"""Finite simple graphs on the nodes ``1..n`` and the node-set primitives built on them.

Nodes are labelled from 1 to mirror ``V(G) = {1, ..., n+1}``; membership masks are 0-based internally (node ``i`` is
bit ``i - 1``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence, TextIO, Union

import networkx as nx

from fanograph.config import DEDUP_NODE_LIMIT, MAX_NODES
from fanograph.utils.exceptions import GraphParseError, InvalidGraphError

if TYPE_CHECKING:
    from typing_extensions import Self

GRAPH6_OFFSET = 63
GRAPH6_HEADER = b">>graph6<<"
DIAMOND_EDGES: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))


def popcount(mask: int) -> int:
    """Return the number of set bits of ``mask``."""
    return bin(mask).count("1")


def mask_nodes(mask: int) -> tuple[int, ...]:
    """Return the 1-based node labels present in ``mask`` in ascending order."""
    nodes = []
    while mask:
        low = mask & -mask
        nodes.append(low.bit_length())
        mask ^= low
    return tuple(nodes)


def nodes_mask(nodes: Iterable[int]) -> int:
    """Return the membership mask of 1-based node labels."""
    mask = 0
    for node in nodes:
        mask |= 1 << (node - 1)
    return mask


@dataclass(frozen=True, order=True)
class NodeSet:
    """A subset of ``V(G)`` stored as a membership mask.

    Ordering is by mask value first, which is the canonical order used for building sets, nested sets and
    witnesses.

    Attributes
    ----------
    mask : int
        Membership mask; node ``i`` is bit ``i - 1``.
    node_count : int
        Size of the ambient node set.

    """

    mask: int
    node_count: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.node_count:
            msg = f"Mask {self.mask:#x} is not a subset of the nodes 1..{self.node_count}"
            raise InvalidGraphError(msg)

    @classmethod
    def of(cls, nodes: Iterable[int], node_count: int) -> Self:
        """Build a node set from 1-based labels.

        Raises
        ------
        InvalidGraphError
            If a label lies outside ``1..node_count``.

        """
        labels = list(nodes)
        for node in labels:
            if not 1 <= node <= node_count:
                msg = f"Node {node} is outside 1..{node_count}"
                raise InvalidGraphError(msg)
        return cls(nodes_mask(labels), node_count)

    @property
    def nodes(self) -> tuple[int, ...]:
        """Return the members as ascending 1-based labels."""
        return mask_nodes(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)

    def __contains__(self, node: object) -> bool:
        return isinstance(node, int) and node >= 1 and bool(self.mask >> (node - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(node) for node in self.nodes) + "}"

    def _check_ambient(self, other: NodeSet) -> None:
        if self.node_count != other.node_count:
            msg = f"Node sets over {self.node_count} and {other.node_count} nodes cannot be combined"
            raise InvalidGraphError(msg)

    def union(self, other: NodeSet) -> NodeSet:
        """Return the union with ``other``."""
        self._check_ambient(other)
        return NodeSet(self.mask | other.mask, self.node_count)

    def intersection(self, other: NodeSet) -> NodeSet:
        """Return the intersection with ``other``."""
        self._check_ambient(other)
        return NodeSet(self.mask & other.mask, self.node_count)

    def difference(self, other: NodeSet) -> NodeSet:
        """Return the members not in ``other``."""
        self._check_ambient(other)
        return NodeSet(self.mask & ~other.mask, self.node_count)

    def issubset(self, other: NodeSet) -> bool:
        """Return ``True`` if every member also belongs to ``other``."""
        self._check_ambient(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: NodeSet) -> bool:
        """Return ``True`` if the two sets share no node."""
        self._check_ambient(other)
        return self.mask & other.mask == 0


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on the nodes ``1..node_count``.

    Attributes
    ----------
    node_count : int
        ``|V(G)|``, at least 1.
    adjacency : tuple[int, ...]
        ``adjacency[i - 1]`` is the neighbour mask of node ``i``.

    """

    node_count: int
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.node_count <= MAX_NODES:
            msg = f"Graphs must have between 1 and {MAX_NODES} nodes, got {self.node_count}"
            raise InvalidGraphError(msg)
        if len(self.adjacency) != self.node_count:
            msg = f"Expected {self.node_count} adjacency masks, got {len(self.adjacency)}"
            raise InvalidGraphError(msg)
        for index, neighbours in enumerate(self.adjacency):
            if neighbours < 0 or neighbours >> self.node_count:
                msg = f"Adjacency of node {index + 1} refers to nodes outside 1..{self.node_count}"
                raise InvalidGraphError(msg)
            if neighbours >> index & 1:
                msg = f"Self-loop at node {index + 1}"
                raise InvalidGraphError(msg)
            for other in mask_nodes(neighbours):
                if not self.adjacency[other - 1] >> index & 1:
                    msg = f"Adjacency is not symmetric between nodes {index + 1} and {other}"
                    raise InvalidGraphError(msg)

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> Self:
        """Build a graph from 1-based edge pairs; repeated pairs collapse.

        Raises
        ------
        InvalidGraphError
            If an endpoint lies outside ``1..node_count`` or an edge is a self-loop.

        """
        adjacency = [0] * max(node_count, 0)
        for u, v in edges:
            if not (1 <= u <= node_count and 1 <= v <= node_count):
                msg = f"Edge ({u}, {v}) has an endpoint outside 1..{node_count}"
                raise InvalidGraphError(msg)
            if u == v:
                msg = f"Self-loop at node {u}"
                raise InvalidGraphError(msg)
            adjacency[u - 1] |= 1 << (v - 1)
            adjacency[v - 1] |= 1 << (u - 1)
        return cls(node_count, tuple(adjacency))

    @classmethod
    def from_edge_code(cls, node_count: int, code: int) -> Self:
        """Build a graph from an edge mask in graph6 column order ``(1,2), (1,3), (2,3), (1,4), ...``."""
        return cls.from_edges(node_count, (pair for bit, pair in enumerate(_pairs(node_count)) if code >> bit & 1))

    @property
    def full_mask(self) -> int:
        """Return the mask of ``V(G)``."""
        return (1 << self.node_count) - 1

    @property
    def vertices(self) -> NodeSet:
        """Return ``V(G)`` as a node set."""
        return NodeSet(self.full_mask, self.node_count)

    def node_set(self, nodes: Iterable[int]) -> NodeSet:
        """Return a node set over this graph's nodes."""
        return NodeSet.of(nodes, self.node_count)

    def neighbours(self, node: int) -> int:
        """Return the neighbour mask of ``node``."""
        return self.adjacency[node - 1]

    def neighbourhood(self, mask: int) -> int:
        """Return the union of the neighbour masks of the nodes in ``mask``."""
        result = 0
        while mask:
            low = mask & -mask
            result |= self.adjacency[low.bit_length() - 1]
            mask ^= low
        return result

    def has_edge(self, u: int, v: int) -> bool:
        """Return ``True`` if ``{u, v}`` is an edge."""
        return bool(self.adjacency[u - 1] >> (v - 1) & 1)

    def degree(self, node: int, within: int | None = None) -> int:
        """Return the degree of ``node``, optionally counted inside the node mask ``within``."""
        neighbours = self.adjacency[node - 1]
        return popcount(neighbours if within is None else neighbours & within)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Return all edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return tuple(
            (u, v) for u in range(1, self.node_count + 1) for v in mask_nodes(self.adjacency[u - 1]) if u < v
        )

    @property
    def edge_count(self) -> int:
        """Return ``|E(G)|``."""
        return sum(popcount(neighbours) for neighbours in self.adjacency) // 2

    @property
    def edge_code(self) -> int:
        """Return the edge mask in graph6 column order (see ``from_edge_code``)."""
        code = 0
        for bit, (u, v) in enumerate(_pairs(self.node_count)):
            if self.has_edge(u, v):
                code |= 1 << bit
        return code

    def reach(self, start: int, within: int) -> int:
        """Return the nodes of ``within`` reachable from the mask ``start`` inside ``G|within``."""
        reached = start & within
        frontier = reached
        while frontier:
            frontier = self.neighbourhood(frontier) & within & ~reached
            reached |= frontier
        return reached

    def is_connected_mask(self, mask: int) -> bool:
        """Return ``True`` if ``mask`` is nonempty and induces a connected subgraph."""
        if not mask:
            return False
        return self.reach(mask & -mask, mask) == mask

    @property
    def is_connected(self) -> bool:
        """Return ``True`` if the whole graph is connected."""
        return self.is_connected_mask(self.full_mask)

    @property
    def graph6(self) -> str:
        """Return the graph6 encoding as text."""
        return encode_graph6(self).decode("ascii")

    def __str__(self) -> str:
        edges = " ".join(f"{u}-{v}" for u, v in self.edges())
        return f"Graph(n={self.node_count}, edges=[{edges}])"


GraphSource = Union[str, TextIO, Iterable[str]]


class FamilyKind(str, Enum):
    """Named graph families with a canonical labelling."""

    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    DIAMOND = "diamond"
    STAR = "star"


def _pairs(node_count: int) -> Iterator[tuple[int, int]]:
    """Yield node pairs in graph6 column order ``(1,2), (1,3), (2,3), (1,4), ...``."""
    for j in range(2, node_count + 1):
        for i in range(1, j):
            yield i, j


def parse_edge_list(text: GraphSource) -> Graph:
    """Parse the edge-list format: a header ``n m`` followed by ``m`` lines ``u v``.

    Blank lines are ignored.

    Parameters
    ----------
    text : GraphSource
        The whole document, an open text stream, or an iterable of lines.

    Returns
    -------
    Graph
        The graph with exactly the listed edges.

    Raises
    ------
    GraphParseError
        On a malformed line, an out-of-range endpoint, a self-loop, a duplicate edge, or a wrong edge count.

    """
    if isinstance(text, str):
        raw_lines: Iterable[str] = text.splitlines()
    elif hasattr(text, "read"):
        raw_lines = text.read().splitlines()  # type: ignore[union-attr]
    else:
        raw_lines = text
    lines = [(number, line.strip()) for number, line in enumerate(raw_lines, start=1) if line.strip()]

    if not lines:
        msg = "Empty edge list: expected a header line 'n m'"
        raise GraphParseError(msg)

    header_number, header = lines[0]
    node_count, edge_count = _parse_int_pair(header, header_number)
    if node_count < 1 or edge_count < 0:
        msg = f"Line {header_number}: expected n >= 1 and m >= 0, got '{header}'"
        raise GraphParseError(msg)
    if node_count > MAX_NODES:
        msg = f"Line {header_number}: graphs with more than {MAX_NODES} nodes are not supported"
        raise GraphParseError(msg)
    if len(lines) - 1 != edge_count:
        msg = f"Header announces {edge_count} edges but {len(lines) - 1} edge lines follow"
        raise GraphParseError(msg)

    seen: set[tuple[int, int]] = set()
    for number, line in lines[1:]:
        u, v = _parse_int_pair(line, number)
        if not (1 <= u <= node_count and 1 <= v <= node_count):
            msg = f"Line {number}: endpoint out of range 1..{node_count} in '{line}'"
            raise GraphParseError(msg)
        if u == v:
            msg = f"Line {number}: self-loop at node {u}"
            raise GraphParseError(msg)
        edge = (min(u, v), max(u, v))
        if edge in seen:
            msg = f"Line {number}: duplicate edge {edge[0]}-{edge[1]}"
            raise GraphParseError(msg)
        seen.add(edge)

    return Graph.from_edges(node_count, seen)


def _parse_int_pair(line: str, number: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:  # noqa: PLR2004
        msg = f"Line {number}: expected two integers, got '{line}'"
        raise GraphParseError(msg)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        msg = f"Line {number}: expected two integers, got '{line}'"
        raise GraphParseError(msg) from exc


def parse_graph6(line: bytes | str) -> Graph:
    """Decode a single graph6 line.

    The optional ``>>graph6<<`` header and trailing whitespace are accepted.

    Parameters
    ----------
    line : bytes | str
        The encoded graph.

    Returns
    -------
    Graph
        Node ``i + 1`` is adjacent to ``j + 1`` iff the upper-triangle bit ``x(i, j)`` is set.

    Raises
    ------
    GraphParseError
        If a byte lies outside ``[63, 126]``, the length does not match, padding bits are nonzero,
        or the graph has more than 62 nodes.

    """
    try:
        data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    except UnicodeEncodeError as exc:
        msg = f"graph6 strings are printable ASCII, got {line!r}"
        raise GraphParseError(msg) from exc
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER) :]
    if not data:
        msg = "Empty graph6 string"
        raise GraphParseError(msg)

    for position, byte in enumerate(data):
        if not GRAPH6_OFFSET <= byte <= GRAPH6_OFFSET + 63:
            msg = f"graph6 byte {byte} at position {position} is outside [63, 126]"
            raise GraphParseError(msg)

    node_count = data[0] - GRAPH6_OFFSET
    if node_count > MAX_NODES:
        msg = f"graph6 graphs with more than {MAX_NODES} nodes are not supported"
        raise GraphParseError(msg)
    if node_count == 0:
        msg = "graph6 string describes a graph with no nodes"
        raise GraphParseError(msg)

    bit_count = node_count * (node_count - 1) // 2
    body = data[1:]
    expected_bytes = -(-bit_count // 6)
    if len(body) != expected_bytes:
        msg = f"graph6 body has {len(body)} bytes, expected {expected_bytes} for {node_count} nodes"
        raise GraphParseError(msg)

    bits = 0
    for byte in body:
        bits = bits << 6 | (byte - GRAPH6_OFFSET)
    padding = expected_bytes * 6 - bit_count
    if bits & ((1 << padding) - 1):
        msg = "graph6 string has nonzero padding bits"
        raise GraphParseError(msg)
    bits >>= padding

    edges = [pair for index, pair in enumerate(_pairs(node_count)) if bits >> (bit_count - 1 - index) & 1]
    return Graph.from_edges(node_count, edges)


def encode_graph6(graph: Graph) -> bytes:
    """Encode ``graph`` as graph6 (single size byte, zero padding bits)."""
    bit_count = graph.node_count * (graph.node_count - 1) // 2
    byte_count = -(-bit_count // 6)
    bits = 0
    for u, v in _pairs(graph.node_count):
        bits = bits << 1 | graph.has_edge(u, v)
    bits <<= byte_count * 6 - bit_count

    body = bytearray()
    for shift in range(byte_count - 1, -1, -1):
        body.append((bits >> (6 * shift) & 0x3F) + GRAPH6_OFFSET)
    return bytes([graph.node_count + GRAPH6_OFFSET]) + bytes(body)


def family_graph(kind: FamilyKind | str, size: int) -> Graph:
    """Return a named graph with its canonical labelling.

    Paths and cycles follow label order, stars are centred at node 1, and the diamond has its two degree-3
    apexes at nodes 1 and 2.

    Raises
    ------
    InvalidGraphError
        If ``size`` is invalid for ``kind``.

    """
    try:
        kind = FamilyKind(kind)
    except ValueError as exc:
        msg = f"Unknown graph family '{kind}'"
        raise InvalidGraphError(msg) from exc

    minimum = 3 if kind is FamilyKind.CYCLE else 1
    if size < minimum:
        msg = f"A {kind.value} graph needs at least {minimum} nodes, got {size}"
        raise InvalidGraphError(msg)

    if kind is FamilyKind.PATH:
        edges: Iterable[tuple[int, int]] = ((i, i + 1) for i in range(1, size))
    elif kind is FamilyKind.CYCLE:
        edges = [*((i, i + 1) for i in range(1, size)), (size, 1)]
    elif kind is FamilyKind.COMPLETE:
        edges = itertools.combinations(range(1, size + 1), 2)
    elif kind is FamilyKind.STAR:
        edges = ((1, i) for i in range(2, size + 1))
    else:
        if size != 4:  # noqa: PLR2004
            msg = f"The diamond graph has exactly 4 nodes, got {size}"
            raise InvalidGraphError(msg)
        edges = DIAMOND_EDGES
    return Graph.from_edges(size, edges)


def parse_family(spec: str) -> Graph:
    """Parse ``NAME:SIZE`` (``diamond`` alone is accepted) into a family graph.

    Raises
    ------
    GraphParseError
        If the family string is malformed or names an invalid size.

    """
    name, _, size_text = spec.partition(":")
    if not size_text and name.strip().lower() == FamilyKind.DIAMOND.value:
        size_text = "4"
    try:
        size = int(size_text)
    except ValueError as exc:
        msg = f"Family must look like NAME:SIZE, got '{spec}'"
        raise GraphParseError(msg) from exc
    try:
        return family_graph(name.strip().lower(), size)
    except InvalidGraphError as exc:
        raise GraphParseError(str(exc)) from exc


def induced_subgraph(graph: Graph, subset: NodeSet) -> Graph:
    """Return ``G|_I`` relabelled ``1..|I|`` in ascending order of the labels in ``I``.

    Raises
    ------
    InvalidGraphError
        If ``subset`` is empty or belongs to a different ambient graph.

    """
    if subset.node_count != graph.node_count:
        msg = f"Node set over {subset.node_count} nodes used with a graph on {graph.node_count} nodes"
        raise InvalidGraphError(msg)
    nodes = subset.nodes
    if not nodes:
        msg = "Cannot induce a subgraph on the empty set"
        raise InvalidGraphError(msg)

    position = {node: index for index, node in enumerate(nodes, start=1)}
    edges = [
        (position[u], position[v]) for u in nodes for v in mask_nodes(graph.neighbours(u) & subset.mask) if u < v
    ]
    return Graph.from_edges(len(nodes), edges)


def embed_node_set(local: NodeSet, subset: NodeSet) -> NodeSet:
    """Map a node set of ``induced_subgraph(G, subset)`` back to the labels of ``G``."""
    nodes = subset.nodes
    if local.node_count != len(nodes):
        msg = f"Node set over {local.node_count} nodes does not fit a subset of {len(nodes)} nodes"
        raise InvalidGraphError(msg)
    return NodeSet(nodes_mask(nodes[position - 1] for position in local.nodes), subset.node_count)


def connected_components(graph: Graph) -> list[NodeSet]:
    """Return the connected components ordered by their smallest node."""
    components = []
    remaining = graph.full_mask
    while remaining:
        component = graph.reach(remaining & -remaining, graph.full_mask)
        components.append(NodeSet(component, graph.node_count))
        remaining &= ~component
    return components


def is_cycle_graph(graph: Graph) -> bool:
    """Return ``True`` if ``graph`` is a cycle: connected, at least 3 nodes, every degree 2."""
    return (
        graph.node_count >= 3  # noqa: PLR2004
        and all(popcount(neighbours) == 2 for neighbours in graph.adjacency)  # noqa: PLR2004
        and graph.is_connected
    )


def is_diamond(graph: Graph) -> bool:
    """Return ``True`` if ``graph`` is ``K_4`` minus an edge."""
    if graph.node_count != 4 or graph.edge_count != 5:  # noqa: PLR2004
        return False
    degrees = [popcount(neighbours) for neighbours in graph.adjacency]
    if sorted(degrees) != [2, 2, 3, 3]:
        return False
    u, v = (node for node, degree in enumerate(degrees, start=1) if degree == 2)  # noqa: PLR2004
    return not graph.has_edge(u, v)


def connected_extension_order(graph: Graph, seed: Sequence[int]) -> list[int]:
    """Extend ``seed`` to a permutation of ``V(G)`` whose every prefix induces a connected subgraph.

    Among nodes adjacent to the current prefix, the smallest label is appended first.

    Raises
    ------
    InvalidGraphError
        If the graph is disconnected, the seed repeats or leaves the node range, or a seed prefix is disconnected.

    """
    if not graph.is_connected:
        msg = "Connected extension orders need a connected graph"
        raise InvalidGraphError(msg)

    order: list[int] = []
    prefix = 0
    for node in seed:
        if not 1 <= node <= graph.node_count or prefix >> (node - 1) & 1:
            msg = f"Seed entry {node} is out of range or repeated"
            raise InvalidGraphError(msg)
        if order and not graph.neighbours(node) & prefix:
            msg = f"Seed prefix {order + [node]} does not induce a connected subgraph"
            raise InvalidGraphError(msg)
        order.append(node)
        prefix |= 1 << (node - 1)

    if not order:
        order.append(1)
        prefix = 1

    while prefix != graph.full_mask:
        frontier = graph.neighbourhood(prefix) & ~prefix
        node = (frontier & -frontier).bit_length()
        order.append(node)
        prefix |= 1 << (node - 1)
    return order


def disjoint_union(first: Graph, second: Graph) -> Graph:
    """Return ``first ⊔ second`` with the labels of ``second`` shifted by ``|V(first)|``."""
    shift = first.node_count
    edges = [*first.edges(), *((u + shift, v + shift) for u, v in second.edges())]
    return Graph.from_edges(first.node_count + second.node_count, edges)


def canonical_edge_code(graph: Graph) -> int:
    """Return the smallest edge code over all relabellings of ``graph``.

    Two graphs are isomorphic iff their canonical codes (and node counts) match.

    Raises
    ------
    InvalidGraphError
        If the graph is larger than ``DEDUP_NODE_LIMIT``.

    """
    if graph.node_count > DEDUP_NODE_LIMIT:
        msg = f"Brute-force canonical forms are limited to {DEDUP_NODE_LIMIT} nodes"
        raise InvalidGraphError(msg)

    bit_of = {pair: bit for bit, pair in enumerate(_pairs(graph.node_count))}
    edges = graph.edges()
    best = graph.edge_code
    for permutation in itertools.permutations(range(1, graph.node_count + 1)):
        code = 0
        for u, v in edges:
            a, b = permutation[u - 1], permutation[v - 1]
            code |= 1 << bit_of[(a, b) if a < b else (b, a)]
        best = min(best, code)
    return best


def to_networkx(graph: Graph) -> nx.Graph:
    """Return the graph as a ``networkx.Graph`` on the same 1-based labels."""
    result = nx.Graph()
    result.add_nodes_from(range(1, graph.node_count + 1))
    result.add_edges_from(graph.edges())
    return result
