import itertools
import random
from fractions import Fraction

import pytest

from bowlership.errors import BowlershipError, GraphError
from bowlership.network import (
    ECONOMY,
    EXCLUDE_PAIR,
    HITRATE,
    NEGATIVE,
    POSITIVE,
    BowlershipEdge,
    DirectedSignedGraph,
    WeightedGraph,
    average_weighted_degree,
    build_directed_graph,
    classify_pair,
    compare_direction,
    create_weighted_graph,
    decide_sign,
)
from bowlership.overmodel import all_series
from bowlership.pairing import BowlingPair, accumulate_pairs
from bowlership.stats import MWResult
from conftest import rec


def mw(p_greater, p_less):
    return MWResult(0.0, p_greater, min(1.0, 2 * min(p_greater, p_less)), p_less, "EXACT", 5, 5)


def edge(a, b, sign, metric=ECONOMY):
    return BowlershipEdge(a, b, metric, sign, mw(0.01, 0.99), 10)


def test_decide_sign_economy_and_hitrate_are_mirrored():
    better_runs = mw(0.001, 0.999)
    assert decide_sign(better_runs, ECONOMY, 0.05) == POSITIVE
    assert decide_sign(better_runs, HITRATE, 0.05) == NEGATIVE
    worse_runs = mw(0.999, 0.001)
    assert decide_sign(worse_runs, ECONOMY, 0.05) == NEGATIVE
    assert decide_sign(worse_runs, HITRATE, 0.05) == POSITIVE


def test_decide_sign_needs_two_sided_too():
    # one-sided 0.04 passes but two-sided 0.08 does not
    assert decide_sign(mw(0.04, 0.97), ECONOMY, 0.05) is None


def _pair_setup(together_runs, solo_runs):
    """A bowls ``together_runs`` alternating with B, then ``solo_runs`` with C."""
    records, over = [], 0
    for r in together_runs:
        records += [rec("A", over, r, match_id="p"), rec("B", over + 1, 3, match_id="p")]
        over += 2
    over = 0
    for r in solo_runs:
        records.append(rec("A", over, r, match_id="s"))
        records.append(rec("C", over + 1, 3, match_id="s", team="U"))
        over += 2
    pair = next(p for p in accumulate_pairs(records) if {p.a, p.b} == {"A", "B"})
    return pair, all_series(records)


def test_identical_samples_give_no_edge():
    pair = BowlingPair("A", "B", "T", [rec("A", i, i % 5) for i in range(0, 20, 2)], [])
    series = all_series(pair.overs_of_a)
    c = compare_direction(pair, "A", series["A"], ECONOMY)
    assert c.sign is None
    assert c.mw.p_two_sided == 1.0


def test_clear_improvement_is_positive():
    pair, series = _pair_setup([0] * 60, [6] * 300)
    c = compare_direction(pair, "A", series["A"], ECONOMY, 0.05)
    assert c.sign == POSITIVE
    assert c.mw.p_greater < 1e-6
    # the partner's overs are constant, so his direction has no evidence
    both = classify_pair(pair, series, ECONOMY, 0.05)
    assert [x.bowler for x in both] == ["A", "B"]
    assert both[1].sign is None


def test_exclude_pair_reference():
    pair, series = _pair_setup([0] * 10, [6] * 30)
    c = compare_direction(pair, "A", series["A"], ECONOMY, individual_set=EXCLUDE_PAIR)
    assert c.individual_value == 6.0
    assert c.bowlership_value == 0.0


def test_insufficient_sample():
    pair, series = _pair_setup([0], [6] * 5)
    with pytest.raises(BowlershipError) as e:
        compare_direction(pair, "A", series["A"], ECONOMY)
    assert e.value.code == "INSUFFICIENT_SAMPLE"


def test_alpha_monotonicity():
    random.seed(0)
    for _ in range(30):
        together = [random.randint(0, 8) for _ in range(random.randint(3, 25))]
        solo = [random.randint(1, 10) for _ in range(random.randint(3, 60))]
        pair, series = _pair_setup(together, solo)
        for metric in (ECONOMY, HITRATE):
            strict = compare_direction(pair, "A", series["A"], metric, 0.01).sign
            loose = compare_direction(pair, "A", series["A"], metric, 0.05).sign
            if strict is not None:
                assert loose == strict


def test_directed_graph_build():
    pairs = [BowlingPair("A", "B"), BowlingPair("C", "D")]
    g = build_directed_graph(pairs, [])
    assert g.vertices == {"A", "B", "C", "D"} and not g.edges
    g.add_edge(edge("A", "B", POSITIVE))
    assert len(g.edges) == 1
    with pytest.raises(GraphError):
        g.add_edge(edge("A", "B", NEGATIVE))
    with pytest.raises(GraphError):
        g.add_edge(edge("A", "A", POSITIVE))


SUM_RULE = {None: 0, POSITIVE: 1, NEGATIVE: -1}


@pytest.mark.parametrize("ab,ba", list(itertools.product([None, POSITIVE, NEGATIVE], repeat=2)))
def test_motif_conversion(ab, ba):
    g = DirectedSignedGraph({"A", "B"})
    if ab:
        g.add_edge(edge("A", "B", ab))
    if ba:
        g.add_edge(edge("B", "A", ba))
    w = create_weighted_graph(g)
    expected = SUM_RULE[ab] + SUM_RULE[ba]
    assert w.weight("A", "B") == expected
    assert (frozenset("AB") in w.weights) == (expected != 0)
    assert w.vertices == {"A", "B"}


def test_conversion_ignores_other_metric():
    g = DirectedSignedGraph()
    g.add_edge(edge("A", "B", POSITIVE, HITRATE))
    assert create_weighted_graph(g, ECONOMY).weights == {}
    assert create_weighted_graph(g, HITRATE).weight("A", "B") == 1


def test_no_negatives_means_weights_one_or_two():
    random.seed(1)
    g = DirectedSignedGraph(set("ABCDE"))
    for a, b in itertools.permutations("ABCDE", 2):
        if random.random() < 0.5:
            g.add_edge(edge(a, b, POSITIVE))
    assert set(create_weighted_graph(g).weights.values()) <= {1, 2}


def test_conversion_commutes_with_relabeling():
    random.seed(2)
    names = list("ABCDEF")
    g = DirectedSignedGraph(set(names))
    for a, b in itertools.permutations(names, 2):
        if random.random() < 0.4:
            g.add_edge(edge(a, b, random.choice([POSITIVE, NEGATIVE])))
    relabel = dict(zip(names, "UVWXYZ"))
    h = DirectedSignedGraph({relabel[v] for v in g.vertices})
    for e in g.edges.values():
        h.add_edge(edge(relabel[e.source], relabel[e.target], e.sign))
    wg, wh = create_weighted_graph(g), create_weighted_graph(h)
    assert {frozenset(relabel[v] for v in k): w for k, w in wg.weights.items()} == wh.weights


def test_average_weighted_degree():
    tri = WeightedGraph("ABC", {("A", "B"): 1, ("B", "C"): 1, ("A", "C"): 2})
    assert average_weighted_degree({"A", "B", "C"}, tri) == pytest.approx(4 / 3)
    assert average_weighted_degree({"A"}, tri) == 0
    with pytest.raises(GraphError) as e:
        average_weighted_degree(set(), tri)
    assert e.value.code == "EMPTY_SET"
    with pytest.raises(GraphError) as e:
        average_weighted_degree({"Z"}, tri)
    assert e.value.code == "UNKNOWN_VERTEX"


def test_average_weighted_degree_scan_oracle_and_isolated_vertices():
    rng = random.Random(3)
    for _ in range(50):
        vs = [f"v{i}" for i in range(rng.randint(2, 9))]
        edges = {(a, b): rng.choice([-2, -1, 1, 2]) for a, b in itertools.combinations(vs, 2) if rng.random() < 0.4}
        g = WeightedGraph(vs, edges)
        s = set(rng.sample(vs, rng.randint(1, len(vs))))
        scan = sum(w for (a, b), w in edges.items() if a in s and b in s)
        assert average_weighted_degree(s, g) == pytest.approx(scan / len(s))
        g.vertices.update({"iso1", "iso2"})
        assert average_weighted_degree(s, g) == pytest.approx(scan / len(s))


def test_zero_weight_removes_edge():
    g = WeightedGraph("AB", {("A", "B"): 2})
    g.add_edge("A", "B", 0)
    assert g.weights == {} and g.weight("A", "B") == 0
    assert g.components() == [frozenset("A"), frozenset("B")]
    assert Fraction(g.induced_weight("AB")) == 0
