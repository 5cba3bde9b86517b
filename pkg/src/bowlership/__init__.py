"""Bowler-pair synergy detection, bowlership networks and squad selection
from ball-by-ball cricket data."""

from .errors import BowlershipError
from .estimators import BowlerSelector, BowlershipDetector
from .ingest import Corpus, Delivery, MatchMeta, ingest_corpus, parse_match, read_corpus, write_corpus
from .network import (
    WeightedGraph,
    average_weighted_degree,
    build_directed_graph,
    classify_pair,
    create_weighted_graph,
)
from .overmodel import OverRecord, bowler_series, build_over_records, over_histograms, summarize
from .pairing import PairingConfig, accumulate_pairs, filter_pairs, find_alternation_runs
from .selection import bowler_select, exhaustive_select

__version__ = "0.1.0"

__all__ = [
    "BowlershipError",
    "BowlerSelector",
    "BowlershipDetector",
    "Corpus",
    "Delivery",
    "MatchMeta",
    "ingest_corpus",
    "parse_match",
    "read_corpus",
    "write_corpus",
    "WeightedGraph",
    "average_weighted_degree",
    "build_directed_graph",
    "classify_pair",
    "create_weighted_graph",
    "OverRecord",
    "bowler_series",
    "build_over_records",
    "over_histograms",
    "summarize",
    "PairingConfig",
    "accumulate_pairs",
    "filter_pairs",
    "find_alternation_runs",
    "bowler_select",
    "exhaustive_select",
]
