"""Input validation helpers for the estimators."""

import numbers

from .errors import BowlershipError
from .network import INDIVIDUAL_SETS, METRICS, WeightedGraph
from .overmodel import BALLS_PER_OVER, OverRecord

OVER_COLUMNS = [
    "match_id", "innings", "over_idx", "bowler", "legal_balls",
    "runs_charged", "wickets_credited", "team",
]


def check_over_records(X):
    """Return ``X`` as a list of :class:`OverRecord`.

    Accepts a sequence of records or a pandas DataFrame with the
    :data:`OVER_COLUMNS` (``team`` optional).
    """
    if hasattr(X, "to_dict") and hasattr(X, "columns"):
        missing = [c for c in OVER_COLUMNS if c != "team" and c not in X.columns]
        if missing:
            raise BowlershipError("BAD_INPUT", f"missing columns {missing}")
        rows = X.to_dict("records")
        X = [
            OverRecord(
                str(r["match_id"]), int(r["innings"]), int(r["over_idx"]), str(r["bowler"]),
                int(r["legal_balls"]), int(r["runs_charged"]), int(r["wickets_credited"]),
                str(r.get("team", "") or ""),
            )
            for r in rows
        ]
    records = list(X)
    for r in records:
        if not isinstance(r, OverRecord):
            raise BowlershipError("BAD_INPUT", f"expected OverRecord, got {type(r).__name__}")
        if not 0 < r.legal_balls <= BALLS_PER_OVER:
            raise BowlershipError("BAD_INPUT", f"legal_balls out of range in {r.key}")
        if r.runs_charged < 0 or not 0 <= r.wickets_credited <= BALLS_PER_OVER:
            raise BowlershipError("BAD_INPUT", f"negative or impossible tallies in {r.key}")
    return records


def check_alpha(alpha):
    if not isinstance(alpha, numbers.Real) or not 0 < alpha < 1:
        raise BowlershipError("BAD_CONFIG", f"alpha must lie in (0, 1), got {alpha!r}")
    return float(alpha)


def check_positive_int(value, name, minimum=1):
    if not isinstance(value, numbers.Integral) or value < minimum:
        raise BowlershipError("BAD_CONFIG", f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_choice(value, choices, name):
    if value not in choices:
        raise BowlershipError("BAD_CONFIG", f"{name} must be one of {choices}, got {value!r}")
    return value


def check_metrics(metrics):
    metrics = (metrics,) if isinstance(metrics, str) else tuple(metrics)
    for m in metrics:
        check_choice(m, METRICS, "metric")
    return metrics


def check_individual_set(value):
    return check_choice(value, INDIVIDUAL_SETS, "individual_set")


def check_weighted_graph(g):
    if not isinstance(g, WeightedGraph):
        raise BowlershipError("BAD_INPUT", f"expected WeightedGraph, got {type(g).__name__}")
    return g
