"""Command-line interface (CLI) for fanograph."""

# pylint: disable=no-value-for-parameter
from __future__ import annotations

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TypedDict

import click
from dotenv import load_dotenv
from prometheus_client import REGISTRY, write_to_textfile
from typing_extensions import Unpack

from fanograph.census import cross_validate, cross_validate_corpus
from fanograph.classifier import a_value, bad_nested_set, classify, is_weak_fano_theorem
from fanograph.config import DEFAULT_JOBS, DEFAULT_SEARCH_BUDGET, ENV_PREFIX
from fanograph.fan import build_fan
from fanograph.graph import Graph, parse_edge_list, parse_family, parse_graph6
from fanograph.output_formatter import format_report
from fanograph.schemas.classification import ClassificationMode
from fanograph.schemas.report import (
    CensusProjection,
    ClassificationProjection,
    FanProjection,
    GraphInput,
    ReportDocument,
    WitnessProjection,
    walls_of,
)
from fanograph.utils.exceptions import (
    BudgetExceededError,
    GraphParseError,
    InconsistentFanError,
    InvalidGraphError,
    InvalidWitnessError,
    MethodDisagreementError,
    NoWitnessError,
)

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4
EXIT_NO_WITNESS = 5
BAD_WALL_A = -3

_EXIT_CODES: tuple[tuple[type[Exception], int], ...] = (
    (GraphParseError, EXIT_USAGE),
    (InvalidGraphError, EXIT_USAGE),
    (InvalidWitnessError, EXIT_USAGE),
    (BudgetExceededError, EXIT_BUDGET),
    (InconsistentFanError, EXIT_INTERNAL),
    (MethodDisagreementError, EXIT_INTERNAL),
    (NoWitnessError, EXIT_NO_WITNESS),
)


class _GraphArgs(TypedDict):
    input_path: Path | None
    input_format: str
    graph6: str | None
    family: str | None


class _ClassifyArgs(_GraphArgs):
    mode: str | None
    walls: bool
    fan: bool
    as_json: bool
    budget: int
    fast_path: bool


class _WitnessArgs(_GraphArgs):
    as_json: bool
    fast_path: bool


class _ValidateArgs(TypedDict):
    n: int | None
    corpus: Path | None
    connected_only: bool
    dedup: bool
    fast_path: bool
    jobs: int
    budget: int
    exact_relations: bool
    as_json: bool
    timings: bool
    metrics_file: Path | None


@contextmanager
def _reported_errors() -> Iterator[None]:
    """Print library errors on standard error and exit with their exit code."""
    try:
        yield
    except tuple(error for error, _ in _EXIT_CODES) as exc:
        code = next(code for error, code in _EXIT_CODES if isinstance(exc, error))
        click.echo(f"Error: {exc}", err=True)
        click.get_current_context().exit(code)


def _graph_options(command: click.Command) -> click.Command:
    """Attach the three mutually exclusive ways of naming a graph."""
    options = [
        click.option(
            "--input",
            "input_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            default=None,
            help="Read the graph from a file.",
        ),
        click.option(
            "--input-format",
            type=click.Choice(["edge-list", "graph6"]),
            default="edge-list",
            show_default=True,
            help="Format of the --input file.",
        ),
        click.option("--graph6", default=None, help="Graph given as a graph6 string."),
        click.option("--family", default=None, help="Named graph NAME:SIZE (path, cycle, complete, diamond, star)."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _load_graph(
    input_path: Path | None,
    input_format: str,
    graph6: str | None,
    family: str | None,
) -> tuple[Graph, str]:
    """Return the graph and the name of the format it was read from."""
    given = [value for value in (input_path, graph6, family) if value is not None]
    if len(given) != 1:
        msg = "Give exactly one of --input, --graph6 or --family"
        raise click.UsageError(msg)

    with _reported_errors():
        if input_path is not None:
            return _read_graph_file(input_path, input_format)
        if graph6 is not None:
            return parse_graph6(graph6), "graph6"
        return parse_family(family or ""), "family"


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        msg = f"Cannot read {path}: {exc}"
        raise GraphParseError(msg) from exc


def _read_graph_file(path: Path, input_format: str) -> tuple[Graph, str]:
    text = _read_text(path)
    if input_format == "edge-list":
        return parse_edge_list(text), "edge_list"
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 1:
        msg = f"Expected one graph6 line in {path}, found {len(lines)}"
        raise GraphParseError(msg)
    return parse_graph6(lines[0]), "graph6"


@click.group()
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log debug records on standard error.")
def main(*, verbose: bool) -> None:
    """Classify toric varieties of graph associahedra as Fano or weak Fano.

    Examples
    --------
    Classify a named graph:
        $ fanograph classify --family cycle:5

    Show the wall table of the 3-node path:
        $ fanograph classify --graph6 Bg --mode walls --walls

    Build the wall with a = -3 for the 4-cycle with a pendant node:
        $ fanograph witness --graph6 Dl_

    Run the census on every labeled graph with four nodes:
        $ fanograph validate --n 4

    """
    load_dotenv()
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command("classify")
@_graph_options
@click.option(
    "--mode",
    type=click.Choice([mode.value for mode in ClassificationMode]),
    default=None,
    help="Classification route (default: both when the walls fit the budget, else theorem).",
)
@click.option("--walls", is_flag=True, default=False, help="Include the wall table.")
@click.option("--fan", is_flag=True, default=False, help="Include the rays and maximal cones.")
@click.option("--json/--text", "as_json", default=False, help="Output format.")
@click.option(
    "--budget",
    type=click.IntRange(min=1),
    envvar=f"{ENV_PREFIX}SEARCH_BUDGET",
    default=DEFAULT_SEARCH_BUDGET,
    show_default=True,
    help="Nested-set search nodes allowed per connected component.",
)
@click.option("--fast-path", is_flag=True, default=False, help="Use the chordal shortcut for the weak Fano theorem.")
def classify_command(**cli_kwargs: Unpack[_ClassifyArgs]) -> None:
    """Classify one graph and print the report."""
    _run_classify(**cli_kwargs)


def _run_classify(  # pylint: disable=too-many-arguments
    input_path: Path | None,
    input_format: str,
    graph6: str | None,
    family: str | None,
    *,
    mode: str | None,
    walls: bool,
    fan: bool,
    as_json: bool,
    budget: int,
    fast_path: bool,
) -> None:
    graph, source_format = _load_graph(input_path, input_format, graph6, family)
    with _reported_errors():
        if mode is None:
            try:
                classification = classify(graph, ClassificationMode.BOTH, budget=budget, fast_path=fast_path)
            except BudgetExceededError as exc:
                click.echo(f"Notice: {exc}; classifying by the theorems only", err=True)
                classification = classify(graph, ClassificationMode.THEOREM, fast_path=fast_path)
        else:
            classification = classify(graph, mode, budget=budget, fast_path=fast_path)

        document = ReportDocument(
            graph_input=GraphInput.from_graph(graph, source_format),
            classification=ClassificationProjection.from_classification(classification),
            walls=walls_of(classification) if walls else None,
            fan=FanProjection.from_fan(build_fan(graph, budget=budget)) if fan else None,
            witness=None if classification.witness is None else WitnessProjection.from_witness(classification.witness),
        )
    click.echo(format_report(document, as_json=as_json))


@main.command("witness")
@_graph_options
@click.option("--json/--text", "as_json", default=False, help="Output format.")
@click.option("--fast-path", is_flag=True, default=False, help="Search with the chordal shortcut.")
def witness_command(**cli_kwargs: Unpack[_WitnessArgs]) -> None:
    """Print a forbidden induced subgraph of a connected graph and the wall with a = -3 built from it."""
    _run_witness(**cli_kwargs)


def _run_witness(
    input_path: Path | None,
    input_format: str,
    graph6: str | None,
    family: str | None,
    *,
    as_json: bool,
    fast_path: bool,
) -> None:
    graph, source_format = _load_graph(input_path, input_format, graph6, family)
    with _reported_errors():
        if not graph.is_connected:
            msg = f"Witnesses need a connected graph, got {graph}"
            raise InvalidGraphError(msg)
        weak_fano, witness = is_weak_fano_theorem(graph, fast_path=fast_path)
        if weak_fano or witness is None:
            msg = f"{graph.graph6} is weak Fano, no witness exists"
            raise NoWitnessError(msg)

        report = a_value(graph, bad_nested_set(graph, witness))
        if report.a != BAD_WALL_A:
            msg = f"The wall built from {witness.subset} has a = {report.a}, expected {BAD_WALL_A}"
            raise InconsistentFanError(msg)

    document = ReportDocument(
        graph_input=GraphInput.from_graph(graph, source_format),
        witness=WitnessProjection.from_witness(witness, report),
    )
    click.echo(format_report(document, as_json=as_json))


@main.command("validate")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Enumerate every labeled graph on N nodes.")
@click.option(
    "--corpus",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="File of graph6 lines ('#' comments allowed).",
)
@click.option("--connected-only", is_flag=True, default=False, help="Skip disconnected graphs.")
@click.option("--dedup", is_flag=True, default=False, help="Keep one graph per isomorphism class.")
@click.option("--fast-path", is_flag=True, default=False, help="Also cross-check the chordal shortcut.")
@click.option(
    "--jobs",
    type=click.IntRange(min=1),
    envvar=f"{ENV_PREFIX}JOBS",
    default=DEFAULT_JOBS,
    show_default="CPU count",
    help="Worker processes.",
)
@click.option(
    "--budget",
    type=click.IntRange(min=1),
    envvar=f"{ENV_PREFIX}SEARCH_BUDGET",
    default=DEFAULT_SEARCH_BUDGET,
    show_default=True,
    help="Nested-set search nodes allowed per connected component.",
)
@click.option(
    "--exact-relations",
    is_flag=True,
    default=False,
    help="Solve every wall relation as a lattice system instead of checking the completion identity.",
)
@click.option("--json/--text", "as_json", default=False, help="Output format.")
@click.option("--timings", is_flag=True, default=False, help="Include the runtime in the JSON report.")
@click.option(
    "--metrics-file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write Prometheus metrics to this textfile.",
)
def validate_command(**cli_kwargs: Unpack[_ValidateArgs]) -> None:
    """Classify many graphs both ways; exit 4 on any mismatch."""
    _run_validate(**cli_kwargs)


def _run_validate(  # pylint: disable=too-many-arguments
    n: int | None,
    corpus: Path | None,
    *,
    connected_only: bool,
    dedup: bool,
    fast_path: bool,
    jobs: int,
    budget: int,
    exact_relations: bool,
    as_json: bool,
    timings: bool,
    metrics_file: Path | None,
) -> None:
    if (n is None) == (corpus is None):
        msg = "Give exactly one of --n or --corpus"
        raise click.UsageError(msg)

    with _reported_errors():
        if corpus is not None:
            report = cross_validate_corpus(
                _read_text(corpus).splitlines(),
                dedup=dedup,
                jobs=jobs,
                budget=budget,
                fast_path=fast_path,
                solve_relations=exact_relations,
            )
        elif n is not None:
            report = cross_validate(
                n,
                connected_only=connected_only,
                dedup=dedup,
                jobs=jobs,
                budget=budget,
                fast_path=fast_path,
                solve_relations=exact_relations,
            )

    census = CensusProjection.from_report(report, timings=timings or not as_json)
    click.echo(format_report(ReportDocument(census=census), as_json=as_json))
    if metrics_file is not None:
        write_to_textfile(str(metrics_file), REGISTRY)
    if not report.ok:
        click.get_current_context().exit(EXIT_INTERNAL)


if __name__ == "__main__":
    main()
