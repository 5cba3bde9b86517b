"""CSV, DOT and JSON emitters.

All writers produce UTF-8 text with LF line endings and fixed float
formatting so identical inputs give byte-identical files.
"""

import csv
import json

from .network import NEGATIVE, POSITIVE
from .stats import TESTS


def fmt_float(x):
    return "" if x is None else format(float(x), ".10g")


def write_csv(path, header, rows):
    n = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)
            n += 1
    return n


def write_pairs(path, pairs):
    return write_csv(
        path,
        ["bowler_a", "bowler_b", "pair_overs", "runs_count", "team"],
        ([p.a, p.b, p.pair_overs, len(p.runs), p.team] for p in pairs),
    )


EDGE_COLUMNS = ["from", "to", "metric", "sign", "p_greater", "p_two", "p_less", "weight"]


def edge_rows(directed, weighted_by_metric):
    """Rows of the flat edge table; ``weight`` is the undirected pair weight."""
    for e in directed.sorted_edges():
        weighted = weighted_by_metric[e.metric]
        yield [
            e.source, e.target, e.metric, e.sign,
            fmt_float(e.mw.p_greater), fmt_float(e.mw.p_two_sided), fmt_float(e.mw.p_less),
            weighted.weight(e.source, e.target),
        ]


def write_edges(path, rows):
    return write_csv(path, EDGE_COLUMNS, rows)


def write_comparisons(path, comparisons):
    header = [
        "team", "bowler", "partner", "metric", "pair_overs", "individual_value",
        "bowlership_value", "improvement", "p_greater", "p_two", "p_less", "method", "sign",
    ]
    rows = []
    for c in comparisons:
        # positive improvement means better with the partner on this metric
        delta = c.individual_value - c.bowlership_value
        if c.metric != "ECONOMY":
            delta = -delta
        rows.append([
            c.team, c.bowler, c.partner, c.metric, c.pair_overs,
            fmt_float(c.individual_value), fmt_float(c.bowlership_value), fmt_float(delta),
            fmt_float(c.mw.p_greater), fmt_float(c.mw.p_two_sided), fmt_float(c.mw.p_less),
            c.mw.method, c.sign or "NONE",
        ])
    return write_csv(path, header, rows)


def write_table1(path, fmt, table):
    return write_csv(
        path,
        ["format", "test", "fail_count", "pass_count"],
        ([fmt, t, table[t]["fail"], table[t]["pass"]] for t in TESTS),
    )


def write_histogram(path, hist):
    return write_csv(path, ["value", "count"], sorted(hist.items()))


def write_scatter(path, summaries):
    return write_csv(
        path,
        ["bowler", "n_overs", "economy", "hitrate"],
        (
            [b, fmt_float(s.n_overs), fmt_float(s.economy), fmt_float(s.hitrate)]
            for b, s in sorted(summaries.items())
        ),
    )


def _quote(name):
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def directed_dot(g, metric=None, name="bowlerships"):
    """DOT text for a directed signed graph, edges labelled ``+`` or ``-``."""
    lines = [f"digraph {_quote(name)} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {_quote(v)};")
    for e in g.sorted_edges():
        if metric is not None and e.metric != metric:
            continue
        label = "+" if e.sign == POSITIVE else "-"
        color = "darkgreen" if e.sign == POSITIVE else "red"
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} [label=\"{label}\", color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def weighted_dot(g, name="bowlerships"):
    """DOT text for an undirected weighted graph, edges labelled with weights."""
    lines = [f"graph {_quote(name)} {{"]
    for v in sorted(g.vertices):
        lines.append(f"  {_quote(v)};")
    for u, v, w in g.sorted_edges():
        lines.append(f"  {_quote(u)} -- {_quote(v)} [label=\"{w}\", weight={abs(w)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def network_to_dict(directed_graphs):
    teams = {}
    for team, g in sorted(directed_graphs.items()):
        teams[team] = {
            "vertices": sorted(g.vertices),
            "edges": [
                {
                    "from": e.source, "to": e.target, "metric": e.metric, "sign": e.sign,
                    "pair_overs": e.pair_overs, "u": e.mw.u_statistic,
                    "p_greater": e.mw.p_greater, "p_two": e.mw.p_two_sided,
                    "p_less": e.mw.p_less, "method": e.mw.method,
                    "n1": e.mw.n1, "n2": e.mw.n2,
                }
                for e in g.sorted_edges()
            ],
        }
    return teams


def network_from_dict(data):
    """Rebuild ``{team: DirectedSignedGraph}`` from :func:`network_to_dict` output."""
    from .network import BowlershipEdge, DirectedSignedGraph
    from .stats import MWResult

    out = {}
    for team, body in data.items():
        g = DirectedSignedGraph(set(body["vertices"]), {})
        for e in body["edges"]:
            mw = MWResult(e["u"], e["p_greater"], e["p_two"], e["p_less"], e["method"], e["n1"], e["n2"])
            g.add_edge(BowlershipEdge(e["from"], e["to"], e["metric"], e["sign"], mw, e["pair_overs"]))
        out[team] = g
    return out


def count_signs(directed_graphs):
    counts = {}
    for g in directed_graphs.values():
        for e in g.edges.values():
            counts.setdefault(e.metric, {POSITIVE: 0, NEGATIVE: 0})[e.sign] += 1
    return counts
