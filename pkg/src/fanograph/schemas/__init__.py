"""Module containing the schemas for the fanograph package."""

from fanograph.schemas.census import CensusReport, GraphOutcome, Mismatch, MismatchKind
from fanograph.schemas.classification import (
    Classification,
    ClassificationMode,
    ComponentResult,
    FanoModel,
    WallReport,
    Witness,
    WitnessKind,
)
from fanograph.schemas.report import ReportDocument

__all__ = [
    "CensusReport",
    "Classification",
    "ClassificationMode",
    "ComponentResult",
    "FanoModel",
    "GraphOutcome",
    "Mismatch",
    "MismatchKind",
    "ReportDocument",
    "WallReport",
    "Witness",
    "WitnessKind",
]
