"""Prometheus metrics for classifications and censuses."""

from prometheus_client import Counter, Histogram

graphs_classified_counter = Counter(
    "fanograph_graphs_classified_total",
    "Number of classified graphs",
    ["fano", "weak_fano"],
)
walls_evaluated_counter = Counter("fanograph_walls_evaluated_total", "Number of wall reports computed")
census_mismatch_counter = Counter("fanograph_census_mismatches_total", "Number of census mismatches", ["kind"])
classify_seconds = Histogram("fanograph_classify_seconds", "Time spent classifying one graph", ["mode"])


def record_classification(*, fano: bool, weak_fano: bool, walls: int) -> None:
    """Count one classified graph and the wall reports it produced."""
    graphs_classified_counter.labels(fano=str(fano).lower(), weak_fano=str(weak_fano).lower()).inc()
    if walls:
        walls_evaluated_counter.inc(walls)
