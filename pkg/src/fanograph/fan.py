"""Integer fans: the fan of a graph, product fans, smoothness, point location and wall relations.

For a connected graph on ``1..n+1`` the node ``n+1`` is eliminated: ``e_i`` is the standard basis vector for
``i <= n``, ``e_{n+1} = -(e_1 + ... + e_n)`` and ``e_I`` is the sum over ``I``. A disconnected graph gives the product
of its component fans, each component eliminating its own largest label.
"""

from __future__ import annotations

import functools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence, Tuple

from fanograph.config import LOCATE_COORD_RANGE, LOCATE_SAMPLES, LOCATE_SEED
from fanograph.graph import Graph, NodeSet, connected_components, embed_node_set, induced_subgraph
from fanograph.nested import NestedComplex, nested_complex
from fanograph.utils.exceptions import InconsistentFanError, InvalidGraphError
from fanograph.utils.linalg import determinant, solve_integral, solve_rational

if TYPE_CHECKING:
    from fanograph.nested import WallCompletion

logger = logging.getLogger(__name__)

RayVector = Tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    """A simplicial fan given by primitive integer rays and its maximal cones.

    Attributes
    ----------
    dim : int
        Ambient dimension ``n``.
    rays : tuple[RayVector, ...]
        Primitive nonzero ray generators.
    max_cones : tuple[frozenset[int], ...]
        Maximal cones as sets of ray indices.
    ray_sets : tuple[NodeSet, ...] | None
        For graph fans, the node set ``I`` generating each ray ``e_I``.
    zero_sets : frozenset[int]
        For graph fans, masks of the component node sets (``e_{V(G')} = 0``).

    """

    dim: int
    rays: tuple[RayVector, ...]
    max_cones: tuple[frozenset[int], ...]
    ray_sets: tuple[NodeSet, ...] | None = None
    zero_sets: frozenset[int] = frozenset()
    cone_lookup: dict[frozenset[int], int] = field(init=False, repr=False, compare=False)
    ray_lookup: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for ray in self.rays:
            if len(ray) != self.dim:
                msg = f"Ray {ray} does not live in dimension {self.dim}"
                raise InvalidGraphError(msg)
            if math.gcd(*ray) != 1:
                msg = f"Ray {ray} is zero or not primitive"
                raise InvalidGraphError(msg)
        if self.ray_sets is not None and len(self.ray_sets) != len(self.rays):
            msg = "Every ray of a graph fan needs its generating node set"
            raise InvalidGraphError(msg)
        object.__setattr__(self, "cone_lookup", {cone: i for i, cone in enumerate(self.max_cones)})
        lookup = {} if self.ray_sets is None else {node_set.mask: i for i, node_set in enumerate(self.ray_sets)}
        object.__setattr__(self, "ray_lookup", lookup)

    def cone_rays(self, cone: int) -> list[RayVector]:
        """Return the rays of a maximal cone in ascending ray-index order."""
        return [self.rays[i] for i in sorted(self.max_cones[cone])]

    def index_of(self, node_set: NodeSet) -> int:
        """Return the index of the ray ``e_I`` generated by ``node_set``.

        Raises
        ------
        KeyError
            If the fan has no ray for ``node_set``.

        """
        return self.ray_lookup[node_set.mask]


@dataclass(frozen=True)
class ConeHit:
    """A maximal cone containing a located point."""

    cone: int
    interior: bool


@dataclass(frozen=True)
class WallRelation:
    """The relation ``v + v' + a_1 v_1 + ... + a_{n-1} v_{n-1} = 0`` of a wall.

    Attributes
    ----------
    wall : tuple[int, ...]
        Ray indices ``v_1, ..., v_{n-1}`` in ascending order.
    v : int
        Ray index of the first adjacent cone outside the wall.
    v_prime : int
        Ray index of the second adjacent cone outside the wall.
    coefficients : tuple[int, ...]
        ``a_1, ..., a_{n-1}`` aligned with ``wall``.

    """

    wall: tuple[int, ...]
    v: int
    v_prime: int
    coefficients: tuple[int, ...]

    @property
    def a_sum(self) -> int:
        """Return ``a(τ) = a_1 + ... + a_{n-1}``."""
        return sum(self.coefficients)


@dataclass(frozen=True)
class FanWall:
    """A codimension-1 face shared by exactly two maximal cones."""

    facet: frozenset[int]
    cones: tuple[int, int]


@dataclass(frozen=True)
class SpotCheck:
    """Outcome of a seeded completeness spot check."""

    samples: int
    contained_all: bool
    max_interior: int


def _basis_vector(node: int, dim: int) -> list[int]:
    if node == dim + 1:
        return [-1] * dim
    vector = [0] * dim
    vector[node - 1] = 1
    return vector


def _ray(node_set: Iterable[int], dim: int) -> RayVector:
    total = [0] * dim
    for node in node_set:
        for k, value in enumerate(_basis_vector(node, dim)):
            total[k] += value
    return tuple(total)


def connected_fan(graph: Graph, complex_: NestedComplex | None = None, *, budget: int | None = None) -> Fan:
    """Return ``Δ(G)`` for a connected graph in the graph's own labels.

    Ray ``i`` is ``e_I`` for the building-set member with index ``i`` (``V(G)`` is dropped); maximal cones come from
    the maximal nested sets.

    Raises
    ------
    InvalidGraphError
        If ``graph`` is disconnected.

    """
    if complex_ is None:
        complex_ = nested_complex(graph, budget=budget)
    dim = graph.node_count - 1
    members = complex_.building_set.members[:-1]
    return Fan(
        dim=dim,
        rays=tuple(_ray(member.nodes, dim) for member in members),
        max_cones=tuple(frozenset(indices) for indices in complex_.maximal),
        ray_sets=members,
        zero_sets=frozenset({graph.full_mask}),
    )


def local_wall_fan(dim: int, wall: Sequence[NodeSet], first: NodeSet, second: NodeSet) -> Fan:
    """Return the two maximal cones of ``Δ(G)`` around one wall of a connected graph on ``dim + 1`` nodes.

    Rays ``0..k-1`` are ``e_I`` for the wall members (``V(G)`` excluded), ray ``k`` is ``e_J`` and ray ``k + 1`` is
    ``e_J'``; cone 0 is the wall plus ``e_J`` and cone 1 the wall plus ``e_J'``.
    """
    sets = (*wall, first, second)
    size = len(wall)
    facet = frozenset(range(size))
    return Fan(
        dim=dim,
        rays=tuple(_ray(node_set.nodes, dim) for node_set in sets),
        max_cones=(facet | {size}, facet | {size + 1}),
        ray_sets=sets,
    )


def _point_fan(zero_mask: int = 0) -> Fan:
    return Fan(dim=0, rays=(), max_cones=(frozenset(),), ray_sets=(), zero_sets=frozenset({zero_mask}))


def lift_to(fan: Fan, component: NodeSet) -> Fan:
    """Rename the node sets of a component fan back to the labels of the graph ``component`` lives in."""
    if fan.ray_sets is None:
        return fan

    size = len(component)
    return Fan(
        dim=fan.dim,
        rays=fan.rays,
        max_cones=fan.max_cones,
        ray_sets=tuple(embed_node_set(node_set, component) for node_set in fan.ray_sets),
        zero_sets=frozenset(embed_node_set(NodeSet(mask, size), component).mask for mask in fan.zero_sets),
    )


def build_fan(graph: Graph, *, budget: int | None = None) -> Fan:
    """Return the fan ``Δ(G)``; a disconnected graph gives the product of its component fans.

    Parameters
    ----------
    graph : Graph
        Any finite simple graph.
    budget : int | None
        Nested-set search budget per component.

    Returns
    -------
    Fan
        The fan, with ray node sets in the labels of ``graph``.

    """
    factors = [
        (
            _point_fan(component.mask)
            if len(component) == 1
            else lift_to(connected_fan(induced_subgraph(graph, component), budget=budget), component)
        )
        for component in connected_components(graph)
    ]
    result = functools.reduce(product_fan, factors)
    logger.debug("Fan of %s: dim %d, %d maximal cones", graph, result.dim, len(result.max_cones))
    return result


def product_fan(first: Fan, second: Fan) -> Fan:
    """Return ``Δ × Δ' = {σ × σ'}``: rays are zero-padded, maximal cones are unions of one cone per factor."""
    dim = first.dim + second.dim
    rays = tuple((*ray, *([0] * second.dim)) for ray in first.rays) + tuple(
        (*([0] * first.dim), *ray) for ray in second.rays
    )
    offset = len(first.rays)
    cones = tuple(
        cone | frozenset(offset + i for i in other) for cone in first.max_cones for other in second.max_cones
    )
    ray_sets = None
    if first.ray_sets is not None and second.ray_sets is not None:
        ray_sets = first.ray_sets + second.ray_sets
    return Fan(dim=dim, rays=rays, max_cones=cones, ray_sets=ray_sets, zero_sets=first.zero_sets | second.zero_sets)


def is_smooth(fan: Fan) -> bool:
    """Return ``True`` if every maximal cone is spanned by ``dim`` rays with determinant ``±1``."""
    return all(
        len(cone) == fan.dim and abs(determinant(fan.cone_rays(index))) == 1
        for index, cone in enumerate(fan.max_cones)
    )


def _columns(vectors: Sequence[RayVector], dim: int) -> list[list[int]]:
    return [[vector[row] for vector in vectors] for row in range(dim)]


def locate(fan: Fan, point: Sequence[int]) -> list[ConeHit]:
    """Return the maximal cones containing ``point``.

    A cone contains the point when its coordinates in the cone's ray basis are all nonnegative, and contains it in
    its interior when they are all positive.

    Raises
    ------
    ValueError
        If ``point`` does not have ``fan.dim`` coordinates.

    """
    if len(point) != fan.dim:
        msg = f"Expected a point with {fan.dim} coordinates, got {len(point)}"
        raise ValueError(msg)

    hits = []
    for index in range(len(fan.max_cones)):
        coordinates = solve_rational(_columns(fan.cone_rays(index), fan.dim), point)
        if all(value >= 0 for value in coordinates):
            hits.append(ConeHit(cone=index, interior=all(value > 0 for value in coordinates)))
    return hits


def _relation_vanishes(fan: Fan, ordered: Sequence[int], v: int, v_prime: int, coefficients: Sequence[int]) -> bool:
    total = [a + b for a, b in zip(fan.rays[v], fan.rays[v_prime])]
    for index, coefficient in zip(ordered, coefficients):
        if coefficient:
            for k, value in enumerate(fan.rays[index]):
                total[k] += coefficient * value
    return not any(total)


def wall_relation(
    fan: Fan,
    wall: Iterable[int],
    adjacent: tuple[int, int],
    *,
    candidate: Sequence[int] | None = None,
) -> WallRelation:
    """Solve the wall relation ``v + v' + Σ a_i v_i = 0`` exactly.

    Parameters
    ----------
    fan : Fan
        A smooth fan.
    wall : Iterable[int]
        Ray indices of the wall, ``dim - 1`` of them.
    adjacent : tuple[int, int]
        Indices of the two maximal cones containing the wall.
    candidate : Sequence[int] | None
        Coefficients aligned with the sorted wall rays. When they satisfy the relation exactly they are returned
        without solving (in a smooth fan the relation is unique); otherwise the system is solved.

    Returns
    -------
    WallRelation
        The integer coefficients aligned with the sorted wall rays.

    Raises
    ------
    InconsistentFanError
        If the wall is not a facet of both cones, or the relation has no integer solution.

    """
    facet = frozenset(wall)
    first, second = (fan.max_cones[i] for i in adjacent)
    if len(facet) != fan.dim - 1 or not (facet <= first and facet <= second) or first == second:
        msg = f"Ray set {sorted(facet)} is not a common facet of cones {adjacent}"
        raise InconsistentFanError(msg)

    (v,) = first - facet
    (v_prime,) = second - facet
    ordered = sorted(facet)
    if (
        candidate is not None
        and len(candidate) == len(ordered)
        and _relation_vanishes(fan, ordered, v, v_prime, candidate)
    ):
        return WallRelation(wall=tuple(ordered), v=v, v_prime=v_prime, coefficients=tuple(candidate))

    basis = [fan.rays[i] for i in ordered] + [fan.rays[v]]
    target = [-value for value in fan.rays[v_prime]]
    try:
        solution = solve_integral(_columns(basis, fan.dim), target)
    except ValueError as exc:
        msg = f"Wall {ordered} has no integral relation: {exc}"
        raise InconsistentFanError(msg) from exc
    if solution[-1] != 1:
        msg = f"Wall {ordered}: the rays outside the wall are not related with unit coefficients"
        raise InconsistentFanError(msg)
    return WallRelation(wall=tuple(ordered), v=v, v_prime=v_prime, coefficients=solution[:-1])


def fan_walls(fan: Fan) -> list[FanWall]:
    """Derive the walls as facets shared by pairs of maximal cones.

    Raises
    ------
    InconsistentFanError
        If some facet lies in a number of maximal cones other than two.

    """
    owners: dict[frozenset[int], list[int]] = {}
    for index, cone in enumerate(fan.max_cones):
        for ray in cone:
            owners.setdefault(cone - {ray}, []).append(index)

    result = []
    for facet, cones in owners.items():
        if len(cones) != 2:  # noqa: PLR2004
            msg = f"Facet {sorted(facet)} lies in {len(cones)} maximal cones, expected 2"
            raise InconsistentFanError(msg)
        result.append(FanWall(facet=facet, cones=(cones[0], cones[1])))
    result.sort(key=lambda wall: sorted(wall.facet))
    return result


def ray_of(fan: Fan, node_set: NodeSet) -> RayVector:
    """Return ``e_I`` for a generating node set, or the zero vector for a component node set.

    Raises
    ------
    KeyError
        If ``node_set`` generates no ray of the fan.

    """
    if node_set.mask in fan.zero_sets:
        return (0,) * fan.dim
    return fan.rays[fan.index_of(node_set)]


def relation_holds(fan: Fan, completion: WallCompletion) -> bool:
    """Return ``True`` if ``e_J + e_J' - Σ e_{I_k} - e_{J ∪ J'} = 0`` holds exactly."""
    total = [0] * fan.dim
    terms = [(completion.first, 1), (completion.second, 1), (completion.union, -1)]
    terms += [(component, -1) for component in completion.components]
    for node_set, sign in terms:
        for k, value in enumerate(ray_of(fan, node_set)):
            total[k] += sign * value
    return not any(total)


def completeness_spot_check(
    fan: Fan,
    samples: int = LOCATE_SAMPLES,
    *,
    coord_range: int = LOCATE_COORD_RANGE,
    seed: int = LOCATE_SEED,
) -> SpotCheck:
    """Locate seeded random integer points and record containment.

    Returns
    -------
    SpotCheck
        ``contained_all`` is ``True`` if every point lies in some maximal cone; ``max_interior`` is the largest number
        of maximal cones found containing one point in their interior (at most 1 for a fan).

    """
    rng = random.Random(seed)  # noqa: S311
    contained_all = True
    max_interior = 0
    for _ in range(samples):
        point = [rng.randint(-coord_range, coord_range) for _ in range(fan.dim)]
        hits = locate(fan, point)
        contained_all = contained_all and bool(hits)
        max_interior = max(max_interior, sum(hit.interior for hit in hits))
    return SpotCheck(samples=samples, contained_all=contained_all, max_interior=max_interior)
