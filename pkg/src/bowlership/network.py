"""Bowlership classification and bowlership networks.

A bowler A has a positive bowlership towards partner B when his overs
bowled in alternation with B are significantly better than his reference
overs under both the one-sided and the two-sided Mann-Whitney test, and a
negative one when they are significantly worse under both. Every test puts
the reference sample first, so for economy ``p_greater`` small means the
reference overs concede more runs than the overs bowled with B.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BowlershipError, GraphError
from .stats import mann_whitney

ECONOMY, HITRATE = "ECONOMY", "HITRATE"
METRICS = (ECONOMY, HITRATE)
POSITIVE, NEGATIVE = "POSITIVE", "NEGATIVE"
ALL_OVERS, EXCLUDE_PAIR = "all_overs", "exclude_pair"
INDIVIDUAL_SETS = (ALL_OVERS, EXCLUDE_PAIR)


def _over_value(record, metric):
    return record.runs_charged if metric == ECONOMY else record.wickets_credited


@dataclass(frozen=True)
class Comparison:
    """Outcome of testing one bowler's overs with one partner."""

    bowler: str
    partner: str
    metric: str
    mw: object
    pair_overs: int
    individual_value: float
    bowlership_value: float
    sign: str = None
    team: str = ""


@dataclass(frozen=True)
class BowlershipEdge:
    source: str
    target: str
    metric: str
    sign: str
    mw: object
    pair_overs: int

    @classmethod
    def from_comparison(cls, c):
        return cls(c.bowler, c.partner, c.metric, c.sign, c.mw, c.pair_overs)


def decide_sign(mw, metric, alpha):
    greater = mw.p_greater < alpha
    less = mw.p_less < alpha
    two = mw.p_two_sided < alpha
    if metric == ECONOMY:
        improved, worsened = greater, less
    else:
        # more wickets per over is better
        improved, worsened = less, greater
    if improved and two:
        return POSITIVE
    if worsened and two:
        return NEGATIVE
    return None


def compare_direction(pair, bowler, series, metric=ECONOMY, alpha=0.05,
                      individual_set=ALL_OVERS, exact_cutoff=20):
    """Test ``bowler``'s overs with his partner in ``pair`` against his reference overs.

    ``series`` is the bowler's :class:`BowlerSeries` over his whole career in
    the format. Only complete overs enter either sample.
    """
    if metric not in METRICS:
        raise BowlershipError("BAD_METRIC", metric)
    if individual_set not in INDIVIDUAL_SETS:
        raise BowlershipError("BAD_CONFIG", f"individual_set={individual_set!r}")
    together = [r for r in pair.overs_of(bowler) if r.complete]
    if individual_set == ALL_OVERS:
        reference = series.complete_overs()
    else:
        shared = {r.key for r in pair.overs_of(bowler)}
        reference = [r for r in series.complete_overs() if r.key not in shared]
    if len(together) < 2 or len(reference) < 2:
        raise BowlershipError(
            "INSUFFICIENT_SAMPLE",
            f"{bowler} with {pair.partner(bowler)}: {len(together)} vs {len(reference)} overs",
        )
    x = np.array([_over_value(r, metric) for r in reference], dtype=float)
    y = np.array([_over_value(r, metric) for r in together], dtype=float)
    mw = mann_whitney(x, y, exact_cutoff=exact_cutoff)
    return Comparison(
        bowler, pair.partner(bowler), metric, mw, pair.pair_overs,
        float(x.mean()), float(y.mean()), decide_sign(mw, metric, alpha), pair.team,
    )


def classify_pair(pair, series_by_bowler, metric=ECONOMY, alpha=0.05,
                  individual_set=ALL_OVERS, exact_cutoff=20):
    """Both directed comparisons for a pair, A towards B first."""
    return [
        compare_direction(pair, bowler, series_by_bowler[bowler], metric, alpha,
                          individual_set, exact_cutoff)
        for bowler in (pair.a, pair.b)
    ]


@dataclass
class DirectedSignedGraph:
    vertices: set = field(default_factory=set)
    edges: dict = field(default_factory=dict)

    def add_edge(self, edge):
        if edge.source == edge.target:
            raise GraphError("SELF_LOOP", edge.source)
        key = (edge.source, edge.target, edge.metric)
        if key in self.edges:
            raise GraphError("DUPLICATE_EDGE", str(key))
        self.vertices.update((edge.source, edge.target))
        self.edges[key] = edge

    def sorted_edges(self):
        return [self.edges[k] for k in sorted(self.edges)]


def build_directed_graph(pairs, comparisons):
    """Vertices are all bowlers of ``pairs``; edges are the signed comparisons."""
    g = DirectedSignedGraph()
    for p in pairs:
        g.vertices.update((p.a, p.b))
    for c in comparisons:
        if c.sign is not None:
            g.add_edge(BowlershipEdge.from_comparison(c))
    return g


class WeightedGraph:
    """Undirected graph with integer edge weights and no zero-weight edges."""

    def __init__(self, vertices=(), weights=None):
        self.vertices = set(vertices)
        self.weights = {}
        self._adj = {v: {} for v in self.vertices}
        for (u, v), w in (weights or {}).items():
            self.add_edge(u, v, w)

    def add_edge(self, u, v, w):
        if u == v:
            raise GraphError("SELF_LOOP", u)
        self.vertices.update((u, v))
        self._adj.setdefault(u, {})
        self._adj.setdefault(v, {})
        key = frozenset((u, v))
        if w == 0:
            self.weights.pop(key, None)
            self._adj[u].pop(v, None)
            self._adj[v].pop(u, None)
            return
        self.weights[key] = int(w)
        self._adj[u][v] = int(w)
        self._adj[v][u] = int(w)

    def weight(self, u, v):
        return self._adj.get(u, {}).get(v, 0)

    def neighbors(self, v):
        return self._adj.get(v, {})

    def induced_weight(self, subset):
        subset = set(subset)
        return sum(w for v in subset for u, w in self._adj.get(v, {}).items() if u in subset) // 2

    def cross_weight(self, left, right):
        right = set(right)
        return sum(w for v in left for u, w in self._adj.get(v, {}).items() if u in right)

    def components(self):
        seen, out = set(), []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp, stack = set(), [start]
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(u for u in self._adj[v] if u not in comp)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def sorted_edges(self):
        return sorted((tuple(sorted(k)) + (w,) for k, w in self.weights.items()))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_weighted_edges_from(self.sorted_edges())
        return g


def create_weighted_graph(g, metric=ECONOMY):
    """Collapse directed signed edges of ``metric`` into undirected weights.

    Each positive directed edge contributes +1 and each negative one -1 to
    the weight of its unordered pair, so mutual positives give 2, a positive
    against a negative cancels to no edge, and a lone positive gives 1.
    """
    totals = {}
    for e in g.edges.values():
        if e.metric != metric:
            continue
        key = tuple(sorted((e.source, e.target)))
        totals[key] = totals.get(key, 0) + (1 if e.sign == POSITIVE else -1)
    return WeightedGraph(g.vertices, {k: w for k, w in totals.items() if w != 0})


def average_weighted_degree(subset, g):
    """Induced edge weight of ``subset`` divided by its size."""
    subset = set(subset)
    if not subset:
        raise GraphError("EMPTY_SET")
    missing = subset - g.vertices
    if missing:
        raise GraphError("UNKNOWN_VERTEX", ", ".join(sorted(missing)))
    return g.induced_weight(subset) / len(subset)
