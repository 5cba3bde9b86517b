"""Estimator-style entry points.

``BowlershipDetector`` learns bowling pairs and signed bowlership networks
from over records; ``BowlerSelector`` picks a squad from a weighted network.
Both follow the scikit-learn conventions: hyperparameters in ``__init__``,
learned state in trailing-underscore attributes, ``fit`` returns ``self``.
"""

import logging

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import BowlershipError
from .network import (
    ALL_OVERS,
    ECONOMY,
    HITRATE,
    NEGATIVE,
    POSITIVE,
    build_directed_graph,
    compare_direction,
    create_weighted_graph,
)
from .overmodel import all_series, summarize
from .pairing import PairingConfig, accumulate_pairs, filter_pairs, qualifying_bowlers
from .selection import bowler_select, exhaustive_select
from .validation import (
    check_alpha,
    check_individual_set,
    check_metrics,
    check_over_records,
    check_positive_int,
    check_weighted_graph,
)

logger = logging.getLogger(__name__)


class BowlershipDetector(BaseEstimator):
    """Detect positive and negative bowlerships from over records.

    Parameters
    ----------
    t_i : int
        Minimum career overs for each bowler of a pair.
    t_p : int
        Minimum overs a pair must have bowled together in alternation.
    alpha : float
        Significance level for every Mann-Whitney test.
    exact_cutoff : int
        Largest combined sample size tested with the exact null.
    individual_set : {"all_overs", "exclude_pair"}
        Reference sample: all of the bowler's overs, or all except those
        bowled with the partner under test.
    metrics : tuple of {"ECONOMY", "HITRATE"}

    Attributes
    ----------
    series_ : dict
        Bowler name to :class:`~bowlership.overmodel.BowlerSeries`.
    summaries_ : dict
        Bowler name to :class:`~bowlership.overmodel.MetricSummary`.
    qualifying_bowlers_ : list
    pairs_ : list
        Every accumulated :class:`~bowlership.pairing.BowlingPair`.
    qualifying_pairs_ : list
    comparisons_ : list
        One :class:`~bowlership.network.Comparison` per direction, metric
        and qualifying pair with enough overs to test.
    skipped_ : list
        ``(team, bowler, partner, metric, reason)`` for untestable directions.
    directed_graphs_ : dict
        Team name to :class:`~bowlership.network.DirectedSignedGraph`.
    """

    def __init__(self, t_i=300, t_p=60, alpha=0.05, exact_cutoff=20,
                 individual_set=ALL_OVERS, metrics=(ECONOMY, HITRATE)):
        self.t_i = t_i
        self.t_p = t_p
        self.alpha = alpha
        self.exact_cutoff = exact_cutoff
        self.individual_set = individual_set
        self.metrics = metrics

    def _validate_params(self):
        cfg = PairingConfig(check_positive_int(self.t_i, "t_i"), check_positive_int(self.t_p, "t_p", 2))
        check_alpha(self.alpha)
        check_positive_int(self.exact_cutoff, "exact_cutoff", 0)
        check_individual_set(self.individual_set)
        return cfg, check_metrics(self.metrics)

    def fit(self, X, y=None):
        cfg, metrics = self._validate_params()
        records = check_over_records(X)

        self.series_ = all_series(records)
        self.summaries_ = {b: summarize(s) for b, s in sorted(self.series_.items())}
        self.qualifying_bowlers_ = qualifying_bowlers(self.summaries_, cfg)
        self.pairs_ = accumulate_pairs(records)
        self.qualifying_pairs_ = filter_pairs(self.pairs_, self.summaries_, cfg)

        comparisons, skipped = [], []
        for pair in self.qualifying_pairs_:
            for metric in metrics:
                for bowler in (pair.a, pair.b):
                    try:
                        c = compare_direction(
                            pair, bowler, self.series_[bowler], metric, self.alpha,
                            self.individual_set, self.exact_cutoff,
                        )
                    except BowlershipError as exc:
                        logger.info("skipping %s -> %s (%s): %s", bowler, pair.partner(bowler), metric, exc)
                        skipped.append((pair.team, bowler, pair.partner(bowler), metric, exc.code))
                        continue
                    comparisons.append(c)
        self.comparisons_ = comparisons
        self.skipped_ = skipped

        self.directed_graphs_ = {}
        for team in sorted({p.team for p in self.qualifying_pairs_}):
            self.directed_graphs_[team] = build_directed_graph(
                [p for p in self.qualifying_pairs_ if p.team == team],
                [c for c in comparisons if c.team == team],
            )
        return self

    @property
    def teams_(self):
        check_is_fitted(self, "directed_graphs_")
        return list(self.directed_graphs_)

    def weighted_graph(self, team, metric=ECONOMY):
        check_is_fitted(self, "directed_graphs_")
        if team not in self.directed_graphs_:
            raise BowlershipError("UNKNOWN_TEAM", team)
        return create_weighted_graph(self.directed_graphs_[team], metric)

    def edge_counts(self):
        """``{metric: {"POSITIVE": n, "NEGATIVE": n}}`` over all teams."""
        check_is_fitted(self, "comparisons_")
        out = {m: {POSITIVE: 0, NEGATIVE: 0} for m in (ECONOMY, HITRATE)}
        for c in self.comparisons_:
            if c.sign is not None:
                out[c.metric][c.sign] += 1
        return out


class BowlerSelector(BaseEstimator):
    """Select ``k`` bowlers from a weighted bowlership network.

    ``method="greedy"`` runs bowler-select; ``method="exhaustive"`` returns
    the k-subset of largest induced weight (graphs of at most 20 vertices).
    """

    def __init__(self, k=5, method="greedy"):
        self.k = k
        self.method = method

    def fit(self, X, y=None):
        g = check_weighted_graph(X)
        if self.method == "greedy":
            self.result_ = bowler_select(g, self.k)
            self.selected_ = sorted(self.result_.vertices)
        elif self.method == "exhaustive":
            self.result_ = None
            self.selected_ = sorted(exhaustive_select(g, self.k))
        else:
            raise BowlershipError("BAD_CONFIG", f"unknown method {self.method!r}")
        self.induced_weight_ = g.induced_weight(self.selected_)
        return self

    def predict(self, X=None):
        check_is_fitted(self, "selected_")
        return list(self.selected_)

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()
