"""Module containing the dataclasses for exhaustive validation runs."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from fanograph.schemas.classification import WallReport


class MismatchKind(str, Enum):
    """What a census check found wrong."""

    METHOD_DISAGREEMENT = "method_disagreement"
    ORACLE = "oracle"
    MONOTONE = "monotone"
    CASAGRANDE_BOUND = "casagrande_bound"
    PATH_BOUND = "path_bound"


@dataclass(frozen=True)
class Mismatch:
    """One failed check on one graph.

    Attributes
    ----------
    graph6 : str
        The graph.
    kind : MismatchKind
        The failed check.
    detail : str
        Human-readable description.
    walls : tuple[WallReport, ...]
        Every wall report of the graph when walls were computed.

    """

    graph6: str
    kind: MismatchKind
    detail: str
    walls: tuple[WallReport, ...] = ()


@dataclass(frozen=True)
class GraphOutcome:  # pylint: disable=too-many-instance-attributes
    """Result of one census job, merged into a ``CensusReport`` in edge-code order."""

    node_count: int
    edge_code: int
    graph6: str
    connected: bool
    fano: bool
    weak_fano: bool
    walls_checked: int = 0
    budget_exceeded: bool = False
    mismatches: tuple[Mismatch, ...] = ()


@dataclass(frozen=True)
class CensusReport:  # pylint: disable=too-many-instance-attributes
    """Aggregated counts of a census.

    Attributes
    ----------
    n : int
        Node count (the largest one seen for a corpus).
    graphs_total : int
        Graphs classified.
    graphs_connected : int
        Connected graphs among them.
    fano_count : int
        Graphs whose variety is Fano.
    weak_fano_count : int
        Graphs whose variety is weak Fano (including the Fano ones).
    neither_count : int
        Graphs that are not weak Fano.
    mismatches : tuple[Mismatch, ...]
        Failed checks; empty unless the implementation is wrong.
    runtime_ms : int
        Wall-clock runtime.
    budget_exceeded : tuple[str, ...]
        graph6 strings of graphs whose walls exceeded the search budget (classified by the theorems only).
    walls_checked : int
        Wall reports evaluated.
    dedup : bool
        Whether isomorphic copies were skipped.
    fast_path_disagreements : tuple[str, ...]
        Connected graphs where the chordal shortcut disagrees with subset scanning, when that check ran.

    """

    n: int
    graphs_total: int
    graphs_connected: int
    fano_count: int
    weak_fano_count: int
    neither_count: int
    mismatches: tuple[Mismatch, ...] = ()
    runtime_ms: int = 0
    budget_exceeded: tuple[str, ...] = ()
    walls_checked: int = 0
    dedup: bool = False
    fast_path_disagreements: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        """Return ``True`` if no check failed."""
        return not self.mismatches and not self.fast_path_disagreements
