"""Module containing the dataclasses produced by the Fano classifier."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from fanograph.graph import NodeSet
    from fanograph.nested import NestedSet


class ClassificationMode(str, Enum):
    """How a classification was reached."""

    WALLS = "walls"
    THEOREM = "theorem"
    BOTH = "both"


class WitnessKind(str, Enum):
    """Kinds of evidence that a graph is not weak Fano, in canonical order."""

    INDUCED_CYCLE = "induced_cycle"
    INDUCED_DIAMOND = "induced_diamond"
    BAD_WALL = "bad_wall"


class FanoModel(str, Enum):
    """The Fano varieties attached to connected graphs with at most three nodes."""

    POINT = "point"
    PROJECTIVE_LINE = "projective_line"
    PLANE_BLOWN_UP_AT_TWO_POINTS = "plane_blown_up_at_two_points"
    PLANE_BLOWN_UP_AT_THREE_POINTS = "plane_blown_up_at_three_points"


@dataclass(frozen=True)
class WallReport:  # pylint: disable=too-many-instance-attributes
    """The value ``a(τ)`` of one wall, from the completion formula and from the fan.

    Attributes
    ----------
    wall : NestedSet
        The wall ``N`` (in the labels of the connected graph it was computed on).
    first : NodeSet
        ``J``.
    second : NodeSet
        ``J'``.
    union : NodeSet
        ``J ∪ J'``.
    components : tuple[NodeSet, ...]
        The components ``I_1, ..., I_m`` of ``G|_{J ∩ J'}``.
    a : int
        ``-m`` when ``J ∪ J' = V(G)``, otherwise ``-m - 1``.
    a_oracle : int
        ``a(τ)`` solved from the wall relation of the fan.

    """

    wall: NestedSet
    first: NodeSet
    second: NodeSet
    union: NodeSet
    components: tuple[NodeSet, ...]
    a: int
    a_oracle: int

    @property
    def m(self) -> int:
        """Return the number of components of ``G|_{J ∩ J'}``."""
        return len(self.components)

    @property
    def intersection_number(self) -> int:
        """Return ``(-K . V(τ)) = 2 + a(τ)``."""
        return 2 + self.a

    @property
    def agree(self) -> bool:
        """Return ``True`` if both ways of computing ``a(τ)`` give the same value."""
        return self.a == self.a_oracle


@dataclass(frozen=True)
class Witness:
    """Evidence that a graph is not weak Fano.

    Attributes
    ----------
    kind : WitnessKind
        Induced cycle, induced diamond, or a wall with ``a(τ) <= -3``.
    component : NodeSet
        The connected component the evidence lives in, in the labels of the classified graph.
    subset : NodeSet | None
        For induced kinds, the proper node subset of ``component`` (labels of the classified graph).
    report : WallReport | None
        For ``bad_wall``, the report of the wall (labels of the component relabelled ``1..k``).

    """

    kind: WitnessKind
    component: NodeSet
    subset: NodeSet | None = None
    report: WallReport | None = None

    @property
    def nested_set(self) -> NestedSet | None:
        """Return the bad wall, if any."""
        return None if self.report is None else self.report.wall


@dataclass(frozen=True)
class ComponentResult:
    """Classification of one connected component.

    Wall reports and their nested sets use the component's own labels ``1..k``; ``nodes`` maps them back.
    """

    nodes: NodeSet
    fano: bool
    weak_fano: bool
    min_a: int | None = None
    walls: tuple[WallReport, ...] = ()
    model: FanoModel | None = None


@dataclass(frozen=True)
class Classification:
    """Fano and weak Fano decisions for a graph.

    Attributes
    ----------
    fano : bool
        Whether the toric variety of the graph is Fano.
    weak_fano : bool
        Whether it is weak Fano.
    min_a : int | None
        Minimum of ``a(τ)`` over all walls, ``None`` without walls or when walls were not computed.
    method : ClassificationMode
        The method(s) used.
    witness : Witness | None
        Evidence when the graph is not weak Fano.
    components : tuple[ComponentResult, ...]
        Per-component results ordered by smallest node.

    """

    fano: bool
    weak_fano: bool
    min_a: int | None
    method: ClassificationMode
    witness: Witness | None = None
    components: tuple[ComponentResult, ...] = ()

    @property
    def walls(self) -> tuple[WallReport, ...]:
        """Return every wall report, component by component."""
        return tuple(report for component in self.components for report in component.walls)
