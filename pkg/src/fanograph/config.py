"""Configuration file for the project."""

import os

MAX_NODES = 62  # One machine-word membership mask, single graph6 size byte
MAX_ENUMERATION_NODES = 8  # Largest n accepted by ``all_labeled_graphs``
DEFAULT_SEARCH_BUDGET = 2**20  # Nested-set search nodes allowed per connected component
BRUTE_FORCE_NODE_LIMIT = 16  # Larger components use the chordal fast path in theorem mode
DEDUP_NODE_LIMIT = 7  # Permutation canonical forms are offered up to this size
DEFAULT_JOBS = os.cpu_count() or 1  # Census worker processes

LOCATE_SAMPLES = 1000  # Random vectors per completeness spot check
LOCATE_COORD_RANGE = 100  # Coordinates are drawn from [-range, range]
LOCATE_SEED = 20160101

SCHEMA_VERSION = "1"
ENV_PREFIX = "FANOGRAPH_"
