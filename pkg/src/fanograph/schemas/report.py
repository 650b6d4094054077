"""Pydantic models for the machine-readable report printed by the CLI."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from fanograph.config import SCHEMA_VERSION
from fanograph.graph import embed_node_set

if TYPE_CHECKING:
    from fanograph.fan import Fan
    from fanograph.graph import Graph, NodeSet
    from fanograph.schemas.census import CensusReport, Mismatch
    from fanograph.schemas.classification import Classification, ComponentResult, WallReport, Witness


def _nodes(node_set: NodeSet, component: NodeSet | None = None) -> list[int]:
    return list((node_set if component is None else embed_node_set(node_set, component)).nodes)


class GraphInput(BaseModel):
    """Echo of the classified graph.

    Attributes
    ----------
    n : int
        Number of nodes.
    edges : list[list[int]]
        Edges ``[u, v]`` with ``u < v`` in lexicographic order.
    graph6 : str
        graph6 encoding.
    source_format : str
        ``edge_list``, ``graph6`` or ``family``.

    """

    n: int
    edges: List[List[int]]
    graph6: str
    source_format: str

    @classmethod
    def from_graph(cls, graph: Graph, source_format: str) -> GraphInput:
        """Describe ``graph`` as read from ``source_format``."""
        return cls(
            n=graph.node_count,
            edges=[[u, v] for u, v in graph.edges()],
            graph6=graph.graph6,
            source_format=source_format,
        )


class WallProjection(BaseModel):
    """One wall report, node sets in the labels of the classified graph."""

    wall: List[List[int]]
    j: List[int]
    j_prime: List[int]
    union: List[int]
    components: List[List[int]]
    m: int
    a: int
    a_oracle: int
    agree: bool
    intersection_number: int

    @classmethod
    def from_report(cls, report: WallReport, component: NodeSet | None = None) -> WallProjection:
        """Project ``report``, mapping component-local labels back through ``component`` when given."""
        return cls(
            wall=[_nodes(member, component) for member in report.wall.members],
            j=_nodes(report.first, component),
            j_prime=_nodes(report.second, component),
            union=_nodes(report.union, component),
            components=[_nodes(member, component) for member in report.components],
            m=report.m,
            a=report.a,
            a_oracle=report.a_oracle,
            agree=report.agree,
            intersection_number=report.intersection_number,
        )


class ComponentProjection(BaseModel):
    """Classification of one connected component."""

    nodes: List[int]
    fano: bool
    weak_fano: bool
    min_a: Optional[int] = None
    model: Optional[str] = None

    @classmethod
    def from_result(cls, result: ComponentResult) -> ComponentProjection:
        """Project one component result."""
        return cls(
            nodes=list(result.nodes.nodes),
            fano=result.fano,
            weak_fano=result.weak_fano,
            min_a=result.min_a,
            model=None if result.model is None else result.model.value,
        )


class ClassificationProjection(BaseModel):
    """The Fano and weak Fano decisions."""

    fano: bool
    weak_fano: bool
    min_a: Optional[int] = None
    method: str
    components: List[ComponentProjection]

    @classmethod
    def from_classification(cls, classification: Classification) -> ClassificationProjection:
        """Project ``classification`` without its walls."""
        return cls(
            fano=classification.fano,
            weak_fano=classification.weak_fano,
            min_a=classification.min_a,
            method=classification.method.value,
            components=[ComponentProjection.from_result(result) for result in classification.components],
        )


class WitnessProjection(BaseModel):
    """Evidence that the graph is not weak Fano."""

    kind: str
    component: List[int]
    subset: Optional[List[int]] = None
    nested_set: Optional[List[List[int]]] = None
    wall: Optional[WallProjection] = None

    @classmethod
    def from_witness(cls, witness: Witness, report: WallReport | None = None) -> WitnessProjection:
        """Project ``witness``; ``report`` is the wall built from an induced witness on a connected graph."""
        projection = cls(
            kind=witness.kind.value,
            component=list(witness.component.nodes),
            subset=None if witness.subset is None else list(witness.subset.nodes),
        )
        if witness.report is not None:
            wall = WallProjection.from_report(witness.report, witness.component)
            projection.nested_set = wall.wall
            projection.wall = wall
        elif report is not None:
            projection.nested_set = [list(member.nodes) for member in report.wall.members]
            projection.wall = WallProjection.from_report(report)
        return projection


class FanProjection(BaseModel):
    """Rays and maximal cones of ``Δ(G)``."""

    dim: int
    rays: List[List[int]]
    cones: List[List[int]]
    ray_sets: Optional[List[List[int]]] = None

    @classmethod
    def from_fan(cls, fan: Fan) -> FanProjection:
        """Dump ``fan`` with cones as sorted ray-index lists in cone order."""
        return cls(
            dim=fan.dim,
            rays=[list(ray) for ray in fan.rays],
            cones=[sorted(cone) for cone in fan.max_cones],
            ray_sets=None if fan.ray_sets is None else [list(node_set.nodes) for node_set in fan.ray_sets],
        )


class MismatchProjection(BaseModel):
    """One failed census check."""

    graph6: str
    kind: str
    detail: str
    walls: List[WallProjection] = Field(default_factory=list)

    @classmethod
    def from_mismatch(cls, mismatch: Mismatch) -> MismatchProjection:
        """Project ``mismatch`` with its wall reports in component-local labels."""
        return cls(
            graph6=mismatch.graph6,
            kind=mismatch.kind.value,
            detail=mismatch.detail,
            walls=[WallProjection.from_report(report) for report in mismatch.walls],
        )


class CensusProjection(BaseModel):  # pylint: disable=too-many-instance-attributes
    """Counts of a validation census."""

    n: int
    graphs_total: int
    graphs_connected: int
    fano_count: int
    weak_fano_count: int
    neither_count: int
    mismatches: List[MismatchProjection]
    runtime_ms: Optional[int] = None
    budget_exceeded: List[str]
    walls_checked: int
    dedup: bool
    fast_path_disagreements: List[str]

    @classmethod
    def from_report(cls, report: CensusReport, *, timings: bool = True) -> CensusProjection:
        """Project ``report``; without ``timings`` the wall-clock runtime is left out."""
        return cls(
            n=report.n,
            graphs_total=report.graphs_total,
            graphs_connected=report.graphs_connected,
            fano_count=report.fano_count,
            weak_fano_count=report.weak_fano_count,
            neither_count=report.neither_count,
            mismatches=[MismatchProjection.from_mismatch(mismatch) for mismatch in report.mismatches],
            runtime_ms=report.runtime_ms if timings else None,
            budget_exceeded=list(report.budget_exceeded),
            walls_checked=report.walls_checked,
            dedup=report.dedup,
            fast_path_disagreements=list(report.fast_path_disagreements),
        )


class ReportDocument(BaseModel):
    """Top-level JSON document; absent sections are omitted.

    Attributes
    ----------
    schema_version : str
        Version of this layout; later versions only add fields.
    graph_input : GraphInput | None
        The classified graph, serialised as ``input``.

    """

    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = SCHEMA_VERSION
    graph_input: Optional[GraphInput] = Field(default=None, alias="input")
    classification: Optional[ClassificationProjection] = None
    walls: Optional[List[WallProjection]] = None
    fan: Optional[FanProjection] = None
    witness: Optional[WitnessProjection] = None
    census: Optional[CensusProjection] = None

    def to_json(self) -> str:
        """Serialise with sorted keys and two-space indentation."""
        return json.dumps(self.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=2)


def walls_of(classification: Classification) -> list[WallProjection]:
    """Project every wall report of ``classification`` into the labels of the classified graph."""
    return [
        WallProjection.from_report(report, result.nodes)
        for result in classification.components
        for report in result.walls
    ]
