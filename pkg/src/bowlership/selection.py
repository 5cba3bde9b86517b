"""Greedy squad selection on a weighted bowlership network, and an
exhaustive oracle for small graphs.

Ties are broken towards the larger subgraph, then towards the
lexicographically smallest sorted tuple of names.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import GraphError

EXHAUSTIVE_MAX_VERTICES = 20


@dataclass
class SelectionResult:
    selected: list
    trace: list = field(default_factory=list)

    @property
    def vertices(self):
        out = set()
        for s in self.selected:
            out |= s
        return out

    def to_dict(self):
        return {
            "k": len(self.vertices),
            "selected": sorted(self.vertices),
            "steps": self.trace,
        }


def connected_subgraphs(g, max_size, exclude=()):
    """All vertex sets of size 1..``max_size`` that induce a connected subgraph.

    Vertices in ``exclude`` are never used. Sets are grown one neighbour at a
    time; duplicates reached along different orders are dropped.
    """
    exclude = set(exclude)
    level = {frozenset([v]) for v in g.vertices if v not in exclude}
    found = set(level)
    for _ in range(max_size - 1):
        grown = set()
        for s in level:
            for v in s:
                for u in g.neighbors(v):
                    if u not in s and u not in exclude:
                        grown.add(s | {u})
        grown -= found
        if not grown:
            break
        found |= grown
        level = grown
    return found


def _avg(g, s):
    return Fraction(g.induced_weight(s), len(s))


def _check_k(g, k):
    if k < 1:
        raise GraphError("K_NONPOSITIVE", f"k={k}")
    if k > len(g.vertices):
        raise GraphError("K_TOO_LARGE", f"k={k} but only {len(g.vertices)} vertices")


def bowler_select(g, k):
    """Pick ``k`` bowlers greedily by average weighted degree.

    First the connected subgraph of at most ``k`` vertices with the highest
    average weighted degree is taken. While fewer than ``k`` vertices are
    chosen, the disjoint connected subgraph of the current size bound with
    the highest average weighted degree plus cross weight to everything
    already chosen is added; when no subgraph of that size is left, the
    bound shrinks by one.
    """
    _check_k(g, k)
    candidates = connected_subgraphs(g, k)
    best = min(candidates, key=lambda s: (-_avg(g, s), -len(s), tuple(sorted(s))))
    selected = [best]
    chosen = set(best)
    trace = [{
        "step": "max",
        "set": sorted(best),
        "W": float(_avg(g, best)),
        "cross_weight": 0,
        "WT": float(_avg(g, best)),
    }]

    remain = k - len(best)
    size = remain
    while remain:
        size = min(size, remain)
        pool = [s for s in connected_subgraphs(g, size, exclude=chosen) if len(s) == size]
        if not pool:
            size -= 1
            continue
        scored = [(_avg(g, s) + g.cross_weight(s, chosen), s) for s in pool]
        wt, pick = min(scored, key=lambda t: (-t[0], tuple(sorted(t[1]))))
        cross = g.cross_weight(pick, chosen)
        selected.append(pick)
        chosen |= pick
        remain -= len(pick)
        trace.append({
            "step": "fill",
            "set": sorted(pick),
            "W": float(_avg(g, pick)),
            "cross_weight": cross,
            "WT": float(wt),
        })
    return SelectionResult(selected, trace)


def exhaustive_select(g, k):
    """The ``k``-subset with the largest induced weight (lexicographic ties)."""
    _check_k(g, k)
    if len(g.vertices) > EXHAUSTIVE_MAX_VERTICES:
        raise GraphError("TOO_MANY_VERTICES", f"{len(g.vertices)} > {EXHAUSTIVE_MAX_VERTICES}")
    best, best_w = None, None
    for combo in combinations(sorted(g.vertices), k):
        w = g.induced_weight(combo)
        if best_w is None or w > best_w:
            best, best_w = combo, w
    return frozenset(best)
