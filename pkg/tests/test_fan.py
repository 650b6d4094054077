"""Tests for graph fans, products, smoothness, point location and wall relations."""

from __future__ import annotations

import pytest

from fanograph.census import all_labeled_graphs
from fanograph.config import LOCATE_SAMPLES
from fanograph.fan import (
    ConeHit,
    Fan,
    build_fan,
    completeness_spot_check,
    connected_fan,
    fan_walls,
    is_smooth,
    locate,
    product_fan,
    ray_of,
    relation_holds,
    wall_relation,
)
from fanograph.graph import Graph, disjoint_union, family_graph
from fanograph.nested import completion_of, graphical_building_set, nested_complex
from fanograph.utils.exceptions import InconsistentFanError, InvalidGraphError


def test_path3_fan(path3: Graph) -> None:
    """Test the fan of the 3-node path, the fan of the plane blown up at two points.

    Given the path 1-2-3,
    When its fan is built,
    Then the rays are ``e_I`` for the five proper members of ``B(G)`` and there are five maximal cones.
    """
    fan = build_fan(path3)

    assert fan.dim == 2
    assert fan.rays == ((1, 0), (0, 1), (1, 1), (-1, -1), (-1, 0))
    assert [str(node_set) for node_set in fan.ray_sets] == ["{1}", "{2}", "{1,2}", "{3}", "{2,3}"]
    assert set(fan.max_cones) == {
        frozenset({0, 2}),
        frozenset({1, 2}),
        frozenset({1, 4}),
        frozenset({3, 4}),
        frozenset({0, 3}),
    }


def test_triangle_fan(triangle: Graph) -> None:
    """Test that ``K_3`` gives the hexagon fan."""
    fan = build_fan(triangle)

    assert set(fan.rays) == {(1, 0), (0, 1), (1, 1), (-1, -1), (0, -1), (-1, 0)}
    assert len(fan.max_cones) == 6


def test_projective_line_fan(path2: Graph) -> None:
    """Test that ``K_2`` gives the fan of the projective line."""
    fan = build_fan(path2)

    assert fan.dim == 1
    assert fan.rays == ((1,), (-1,))
    assert set(fan.max_cones) == {frozenset({0}), frozenset({1})}


def test_single_node_fan() -> None:
    """Test that one node gives the zero-dimensional fan with one empty cone."""
    fan = build_fan(family_graph("path", 1))

    assert fan.dim == 0
    assert fan.rays == ()
    assert fan.max_cones == (frozenset(),)


@pytest.mark.parametrize(
    ("first", "second", "dim", "rays", "cones"),
    [
        pytest.param(family_graph("path", 2), family_graph("path", 2), 2, 4, 4, id="p1-times-p1"),
        pytest.param(family_graph("path", 3), family_graph("path", 2), 3, 7, 10, id="path3-times-p1"),
        pytest.param(family_graph("path", 3), family_graph("path", 1), 2, 5, 5, id="isolated-node"),
    ],
)
def test_disconnected_graphs_give_product_fans(
    first: Graph,
    second: Graph,
    dim: int,
    rays: int,
    cones: int,
) -> None:
    """Test the dimension, ray count and cone count of ``Δ(G ⊔ G')``."""
    fan = build_fan(disjoint_union(first, second))

    assert fan.dim == dim
    assert len(fan.rays) == rays
    assert len(fan.max_cones) == cones
    assert is_smooth(fan)


def test_product_fan_keeps_node_sets_in_graph_labels(path3: Graph, path2: Graph) -> None:
    """Test that the second factor's node sets are shifted into the labels of the union."""
    fan = build_fan(disjoint_union(path3, path2))

    assert [str(node_set) for node_set in fan.ray_sets[5:]] == ["{4}", "{5}"]
    assert fan.rays[5:] == ((0, 0, 1), (0, 0, -1))
    assert ray_of(fan, disjoint_union(path3, path2).node_set([1, 2, 3])) == (0, 0, 0)


def test_product_fan_of_plain_fans() -> None:
    """Test the product of two fans without node sets."""
    line = Fan(dim=1, rays=((1,), (-1,)), max_cones=(frozenset({0}), frozenset({1})))

    square = product_fan(line, line)

    assert square.rays == ((1, 0), (-1, 0), (0, 1), (0, -1))
    assert square.ray_sets is None
    assert set(square.max_cones) == {frozenset({0, 2}), frozenset({0, 3}), frozenset({1, 2}), frozenset({1, 3})}


@pytest.mark.parametrize(
    "graph",
    [
        pytest.param(family_graph("cycle", 4), id="cycle-4"),
        pytest.param(family_graph("diamond", 4), id="diamond"),
        pytest.param(family_graph("complete", 4), id="complete-4"),
        pytest.param(family_graph("star", 5), id="star-5"),
        pytest.param(Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)]), id="c4-pendant"),
    ],
)
def test_graph_fans_are_smooth(graph: Graph) -> None:
    """Test that every maximal cone of a graph fan is unimodular."""
    assert is_smooth(build_fan(graph))


def test_non_unimodular_cone_is_not_smooth() -> None:
    """Test a cone with determinant 2."""
    fan = Fan(dim=2, rays=((1, 0), (1, 2)), max_cones=(frozenset({0, 1}),))

    assert not is_smooth(fan)


@pytest.mark.parametrize(
    "rays",
    [
        pytest.param(((2, 0),), id="not-primitive"),
        pytest.param(((0, 0),), id="zero"),
        pytest.param(((1,),), id="wrong-dimension"),
    ],
)
def test_fan_rejects_bad_rays(rays: tuple[tuple[int, ...], ...]) -> None:
    """Test that rays must be primitive vectors of the ambient dimension."""
    with pytest.raises(InvalidGraphError):
        Fan(dim=2, rays=rays, max_cones=(frozenset({0}),))


def test_locate_interior_point(path3: Graph) -> None:
    """Test that ``(2, 1)`` lies inside the cone spanned by ``e_{1}`` and ``e_{1,2}`` only."""
    fan = build_fan(path3)

    assert locate(fan, (2, 1)) == [ConeHit(cone=fan.cone_lookup[frozenset({0, 2})], interior=True)]


def test_locate_point_on_a_ray(path3: Graph) -> None:
    """Test that a point on the ray ``e_{1,2}`` lies on the boundary of its two cones."""
    fan = build_fan(path3)

    hits = locate(fan, (3, 3))

    assert {hit.cone for hit in hits} == {fan.cone_lookup[frozenset({0, 2})], fan.cone_lookup[frozenset({1, 2})]}
    assert not any(hit.interior for hit in hits)


def test_locate_rejects_wrong_dimension(path3: Graph) -> None:
    """Test that points must have ``dim`` coordinates."""
    with pytest.raises(ValueError, match="2 coordinates"):
        locate(build_fan(path3), (1, 2, 3))


@pytest.mark.parametrize(
    "graph",
    [
        pytest.param(family_graph("path", 3), id="path-3"),
        pytest.param(family_graph("complete", 3), id="triangle"),
        pytest.param(family_graph("cycle", 4), id="cycle-4"),
        pytest.param(family_graph("diamond", 4), id="diamond"),
        pytest.param(family_graph("complete", 4), id="complete-4"),
        pytest.param(
            Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)]),
            id="c4-pendant",
            marks=pytest.mark.slow,
        ),
        pytest.param(family_graph("star", 5), id="star-5", marks=pytest.mark.slow),
    ],
)
def test_completeness_spot_check(graph: Graph) -> None:
    """Test that 1,000 seeded random points each lie in some cone and in at most one interior."""
    result = completeness_spot_check(build_fan(graph))

    assert result.samples == LOCATE_SAMPLES == 1000
    assert result.contained_all
    assert result.max_interior <= 1


def test_completeness_spot_check_flags_incomplete_fans() -> None:
    """Test that a single quadrant misses points."""
    quadrant = Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=(frozenset({0, 1}),))

    assert not completeness_spot_check(quadrant, 50).contained_all


@pytest.mark.parametrize(
    ("facet", "expected"),
    [
        pytest.param(2, -1, id="middle-ray"),
        pytest.param(0, 0, id="end-ray"),
    ],
)
def test_wall_relation_on_path3(path3: Graph, facet: int, expected: int) -> None:
    """Test ``e_{1} + e_{2} - e_{1,2} = 0`` and ``e_{1,2} + e_{3} = 0``."""
    fan = build_fan(path3)
    wall = next(wall for wall in fan_walls(fan) if wall.facet == frozenset({facet}))

    relation = wall_relation(fan, wall.facet, wall.cones)

    assert relation.wall == (facet,)
    assert relation.a_sum == expected


def test_wall_relation_rejects_non_facets(path3: Graph) -> None:
    """Test that a ray set outside both cones is rejected."""
    fan = build_fan(path3)
    cones = (fan.cone_lookup[frozenset({0, 2})], fan.cone_lookup[frozenset({3, 4})])

    with pytest.raises(InconsistentFanError):
        wall_relation(fan, {0}, cones)


def test_fan_walls_of_path3(path3: Graph) -> None:
    """Test that the pentagon fan has one wall per ray."""
    found = fan_walls(build_fan(path3))

    assert [sorted(wall.facet) for wall in found] == [[0], [1], [2], [3], [4]]


def test_fan_walls_rejects_incomplete_fans() -> None:
    """Test that a facet in a single cone is reported."""
    quadrant = Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=(frozenset({0, 1}),))

    with pytest.raises(InconsistentFanError):
        fan_walls(quadrant)


@pytest.mark.parametrize(
    "graph",
    [
        pytest.param(family_graph("path", 4), id="path-4"),
        pytest.param(family_graph("cycle", 4), id="cycle-4"),
        pytest.param(family_graph("complete", 4), id="complete-4"),
        pytest.param(Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (1, 5)]), id="k-pendant"),
    ],
)
def test_completion_relation_holds_on_every_wall(graph: Graph) -> None:
    """Test ``e_J + e_J' = Σ e_{I_k} + e_{J ∪ J'}`` for every wall of the graph."""
    complex_ = nested_complex(graph)
    fan = connected_fan(graph, complex_)

    assert all(relation_holds(fan, completion_of(complex_, wall)) for wall in complex_.walls)


@pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_walls_and_completion_relation_on_every_connected_graph(n: int) -> None:
    """Test every connected labeled graph on ``n`` nodes.

    Given the fan of the graph and its nested complex,
    When the walls are derived from cone adjacency,
    Then they are exactly the walls of the nested complex, and ``e_J + e_J' = Σ e_{I_k} + e_{J ∪ J'}`` holds on
    each of them.
    """
    for graph in all_labeled_graphs(n, connected_only=True):
        complex_ = nested_complex(graph)
        fan = connected_fan(graph, complex_)

        found = sorted(sorted(wall.facet) for wall in fan_walls(fan))
        assert found == sorted(list(wall) for wall in complex_.walls), graph.graph6
        assert all(relation_holds(fan, completion_of(complex_, wall)) for wall in complex_.walls), graph.graph6


def test_origin_lies_in_every_cone(path3: Graph) -> None:
    """Test that the origin lies on the boundary of every maximal cone."""
    fan = build_fan(path3)

    hits = locate(fan, (0, 0))

    assert [hit.cone for hit in hits] == list(range(len(fan.max_cones)))
    assert not any(hit.interior for hit in hits)


def test_product_with_the_point_fan_is_the_identity(path3: Graph) -> None:
    """Test ``F × {0} = F``."""
    fan = build_fan(path3)
    point = build_fan(family_graph("path", 1))

    product = product_fan(fan, point)

    assert product.dim == fan.dim
    assert product.rays == fan.rays
    assert product.max_cones == fan.max_cones


@pytest.mark.parametrize(
    ("first", "second", "wall_count"),
    [
        pytest.param(family_graph("path", 3), family_graph("path", 2), 5 * 2 + 1 * 5, id="path3-times-p1"),
        pytest.param(family_graph("cycle", 4), family_graph("cycle", 4), 2 * 30 * 20, id="c4-times-c4"),
    ],
)
def test_product_walls_keep_their_a_values(first: Graph, second: Graph, wall_count: int) -> None:
    """Test ``a(τ × σ') = a(τ)`` and ``a(σ × τ') = a(τ')``.

    Given the fan of a disjoint union,
    When every wall of the product is solved,
    Then each wall of one factor appears once per maximal cone of the other factor with its value unchanged.
    """
    first_fan, second_fan = build_fan(first), build_fan(second)

    values = _wall_values(build_fan(disjoint_union(first, second)))

    expected = [
        *(_wall_values(first_fan) * len(second_fan.max_cones)),
        *(_wall_values(second_fan) * len(first_fan.max_cones)),
    ]
    assert len(values) == wall_count
    assert values == sorted(expected)


@pytest.mark.parametrize(
    "n",
    [*range(1, 7), *(pytest.param(n, marks=pytest.mark.slow) for n in range(7, 11))],
)
def test_path_ray_count(n: int) -> None:
    """Test that the path on ``n + 1`` nodes has ``(n + 1)(n + 2) / 2 - 1`` rays, one per proper subpath."""
    path = family_graph("path", n + 1)

    fan = build_fan(path)

    assert len(fan.rays) == (n + 1) * (n + 2) // 2 - 1
    assert len(fan.rays) == len(graphical_building_set(path)) - 1


def test_wall_relation_accepts_a_valid_candidate(path3: Graph) -> None:
    """Test that coefficients satisfying the relation are returned as given."""
    fan = build_fan(path3)
    wall = next(wall for wall in fan_walls(fan) if wall.facet == frozenset({2}))

    relation = wall_relation(fan, wall.facet, wall.cones, candidate=[-1])

    assert relation.coefficients == (-1,)
    assert relation == wall_relation(fan, wall.facet, wall.cones)


@pytest.mark.parametrize(
    "candidate",
    [
        pytest.param([0], id="wrong-value"),
        pytest.param([-1, 0], id="wrong-length"),
    ],
)
def test_wall_relation_solves_when_the_candidate_fails(path3: Graph, candidate: list[int]) -> None:
    """Test that a candidate that does not satisfy the relation is replaced by the solved coefficients."""
    fan = build_fan(path3)
    wall = next(wall for wall in fan_walls(fan) if wall.facet == frozenset({2}))

    relation = wall_relation(fan, wall.facet, wall.cones, candidate=candidate)

    assert relation.coefficients == (-1,)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_every_small_graph_fan_is_smooth(n: int) -> None:
    """Test smoothness of ``Δ(G)`` for every labeled graph on ``n`` nodes."""
    assert all(is_smooth(build_fan(graph)) for graph in all_labeled_graphs(n))


def _wall_values(fan: Fan) -> list[int]:
    return sorted(wall_relation(fan, wall.facet, wall.cones).a_sum for wall in fan_walls(fan))
