"""Render report documents as text or JSON."""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from fanograph.schemas.report import (
        CensusProjection,
        ClassificationProjection,
        FanProjection,
        GraphInput,
        ReportDocument,
        WallProjection,
        WitnessProjection,
    )

_WALL_HEADERS = ("wall", "J", "J'", "m", "a", "a(relation)", "-K.V")


def _yes_no(flag: bool) -> str:  # noqa: FBT001
    return "yes" if flag else "no"


def format_set(nodes: Sequence[int]) -> str:
    """Return ``{1,2,3}``."""
    return "{" + ",".join(str(node) for node in nodes) + "}"


def format_nested(members: Sequence[Sequence[int]]) -> str:
    """Return ``{{1},{3},{1,2,3,4}}``."""
    return "{" + ",".join(format_set(member) for member in members) + "}"


def format_report(document: ReportDocument, *, as_json: bool = False) -> str:
    """Render ``document``.

    Parameters
    ----------
    document : ReportDocument
        The report.
    as_json : bool
        Emit the JSON document instead of text (default: ``False``).

    Returns
    -------
    str
        The rendered report without a trailing newline.

    """
    if as_json:
        return document.to_json()

    sections = []
    if document.graph_input is not None:
        sections.append(_graph_text(document.graph_input))
    if document.classification is not None:
        sections.append(_classification_text(document.classification))
    if document.walls is not None:
        sections.append(_walls_text(document.walls))
    if document.fan is not None:
        sections.append(_fan_text(document.fan))
    if document.witness is not None:
        sections.append(_witness_text(document.witness))
    if document.census is not None:
        sections.append(_census_text(document.census))
    return "\n\n".join(sections)


def _graph_text(graph: GraphInput) -> str:
    edges = " ".join(f"{u}-{v}" for u, v in graph.edges) or "(none)"
    return f"graph: n={graph.n}, graph6 {graph.graph6} ({graph.source_format})\nedges: {edges}"


def _classification_text(classification: ClassificationProjection) -> str:
    lines = [
        f"fano: {_yes_no(classification.fano)}, weak_fano: {_yes_no(classification.weak_fano)}",
        f"method: {classification.method}",
    ]
    if classification.min_a is not None:
        lines.append(f"min_a: {classification.min_a}")
    if len(classification.components) > 1 or any(component.model for component in classification.components):
        for component in classification.components:
            line = (
                f"component {format_set(component.nodes)}: fano {_yes_no(component.fano)}, "
                f"weak_fano {_yes_no(component.weak_fano)}"
            )
            if component.model is not None:
                line += f", {component.model.replace('_', ' ')}"
            lines.append(line)
    return "\n".join(lines)


def _walls_text(walls: Sequence[WallProjection]) -> str:
    rows = [_WALL_HEADERS] + [
        (
            format_nested(wall.wall),
            format_set(wall.j),
            format_set(wall.j_prime),
            str(wall.m),
            str(wall.a),
            str(wall.a_oracle),
            str(wall.intersection_number),
        )
        for wall in walls
    ]
    widths = [max(len(row[column]) for row in rows) for column in range(len(_WALL_HEADERS))]
    lines = [f"walls: {len(walls)}"]
    lines += ["  " + "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines)


def _fan_text(fan: FanProjection) -> str:
    lines = [f"fan: dim {fan.dim}, {len(fan.rays)} rays, {len(fan.cones)} maximal cones"]
    for index, ray in enumerate(fan.rays):
        label = f"  e{format_set(fan.ray_sets[index])}" if fan.ray_sets is not None else f"  ray {index}"
        lines.append(f"{label} = ({', '.join(str(value) for value in ray)})")
    lines += [f"  cone {index}: {format_set(cone)}" for index, cone in enumerate(fan.cones)]
    return "\n".join(lines)


def _witness_text(witness: WitnessProjection) -> str:
    if witness.subset is not None:
        lines = [f"witness: {witness.kind.replace('_', ' ')} {format_set(witness.subset)}"]
    else:
        lines = [f"witness: {witness.kind.replace('_', ' ')} in component {format_set(witness.component)}"]
    if witness.nested_set is not None:
        lines.append(f"nested set: {format_nested(witness.nested_set)}")
    if witness.wall is not None:
        wall = witness.wall
        lines.append(
            f"J={format_set(wall.j)} J'={format_set(wall.j_prime)} union={format_set(wall.union)} "
            f"m={wall.m} a={wall.a} intersection={wall.intersection_number}",
        )
    return "\n".join(lines)


def _census_text(census: CensusProjection) -> str:
    lines = [
        f"n: {census.n}",
        f"graphs_total: {census.graphs_total}",
        f"graphs_connected: {census.graphs_connected}",
        f"fano_count: {census.fano_count}",
        f"weak_fano_count: {census.weak_fano_count}",
        f"neither_count: {census.neither_count}",
        f"walls_checked: {census.walls_checked}",
        f"budget_exceeded: {len(census.budget_exceeded)}",
        f"mismatches: {len(census.mismatches)}",
    ]
    lines += [f"  {mismatch.graph6} {mismatch.kind}: {mismatch.detail}" for mismatch in census.mismatches]
    lines += [f"  over budget: {graph6}" for graph6 in census.budget_exceeded]
    if census.fast_path_disagreements:
        lines.append(f"fast_path_disagreements: {len(census.fast_path_disagreements)}")
        lines += [f"  {graph6}" for graph6 in census.fast_path_disagreements]
    if census.runtime_ms is not None:
        lines.append(f"runtime_ms: {census.runtime_ms}")
    return "\n".join(lines)
