"""End-to-end analysis of an ingested corpus and the files it produces."""

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import BowlershipError
from .estimators import BowlershipDetector
from .network import ECONOMY, HITRATE, create_weighted_graph
from .overmodel import build_over_records, over_histograms
from .reports import (
    count_signs,
    dump_json,
    edge_rows,
    network_from_dict,
    network_to_dict,
    write_comparisons,
    write_edges,
    write_histogram,
    write_pairs,
    write_scatter,
    write_table1,
)
from .stats import normality_battery

NETWORK_FILE = "network.json"
SUMMARY_FILE = "summary.json"

# Counts from the original study, used by the report command as reference
# points (the snapshot of the data differs, so these are approximate).
REFERENCE_COUNTS = {
    "ODI": {"matches": 2034, "bowlers": 1148, "qualifying_bowlers": 80, "qualifying_pairs": 41},
    "TEST": {"matches": 634, "bowlers": 495, "qualifying_bowlers": 64, "qualifying_pairs": 81},
    "T20I": {"matches": 1432, "bowlers": 1518, "qualifying_bowlers": 45, "qualifying_pairs": 18},
}


@dataclass
class Analysis:
    config: object
    corpus: object
    records: list
    detector: object
    runs_histogram: dict
    wickets_histogram: dict
    normality: dict

    def summary(self):
        d = self.detector
        return {
            "format": self.config.format,
            "matches": self.corpus.n_matches,
            "deliveries": len(self.corpus.deliveries),
            "overs": len(self.records),
            "bowlers": len(d.summaries_),
            "qualifying_bowlers": len(d.qualifying_bowlers_),
            "pairs": len(d.pairs_),
            "qualifying_pairs": len(d.qualifying_pairs_),
            "comparisons": len(d.comparisons_),
            "skipped_comparisons": len(d.skipped_),
            "edges": count_signs(d.directed_graphs_),
            "normality": self.normality,
            "teams": d.teams_,
            # paths excluded so relocated runs stay byte-identical
            "config": {
                k: v for k, v in asdict(self.config).items()
                if k not in ("corpus_dir", "output_dir")
            },
        }


def normality_samples(detector, floor):
    """Runs per complete over for every bowler with at least ``floor`` overs."""
    return {
        b: [o.runs_charged for o in s.complete_overs()]
        for b, s in detector.series_.items()
        if detector.summaries_[b].n_overs >= floor
    }


def analyze(corpus, cfg):
    cfg = cfg.resolved()
    records = build_over_records(corpus, charge_extras=cfg.charge_extras)
    detector = BowlershipDetector(
        t_i=cfg.t_i, t_p=cfg.t_p, alpha=cfg.alpha, exact_cutoff=cfg.exact_cutoff,
        individual_set=cfg.individual_set, metrics=(ECONOMY, HITRATE),
    ).fit(records)
    runs_hist, wkts_hist = over_histograms(records)
    table = normality_battery(normality_samples(detector, cfg.normality_floor), cfg.alpha, seed=cfg.seed)
    return Analysis(cfg, corpus, records, detector, runs_hist, wkts_hist, table)


def write_analysis(analysis, out_dir):
    """Write every analysis artifact into ``out_dir``; return {file: row count}."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    d = analysis.detector
    counts = {}
    counts["pairs.csv"] = write_pairs(out / "pairs.csv", d.qualifying_pairs_)

    rows = []
    for team, g in d.directed_graphs_.items():
        weighted = {m: create_weighted_graph(g, m) for m in (ECONOMY, HITRATE)}
        rows.extend(edge_rows(g, weighted))
    counts["edges.csv"] = write_edges(out / "edges.csv", rows)
    counts["comparisons.csv"] = write_comparisons(out / "comparisons.csv", d.comparisons_)
    counts["table1.csv"] = write_table1(out / "table1.csv", analysis.config.format, analysis.normality)
    counts["hist_runs.csv"] = write_histogram(out / "hist_runs.csv", analysis.runs_histogram)
    counts["hist_wickets.csv"] = write_histogram(out / "hist_wickets.csv", analysis.wickets_histogram)
    counts["scatter.csv"] = write_scatter(out / "scatter.csv", d.summaries_)

    (out / NETWORK_FILE).write_text(
        dump_json({"format": analysis.config.format, "teams": network_to_dict(d.directed_graphs_)}),
        encoding="utf-8",
    )
    (out / SUMMARY_FILE).write_text(dump_json(analysis.summary()), encoding="utf-8")
    return counts


def load_network(out_dir):
    path = Path(out_dir) / NETWORK_FILE
    if not path.exists():
        raise BowlershipError("NO_ANALYSIS", f"{path} not found; run analyze first")
    data = json.loads(path.read_text(encoding="utf-8"))
    return data["format"], network_from_dict(data["teams"])


def load_summary(out_dir):
    path = Path(out_dir) / SUMMARY_FILE
    if not path.exists():
        raise BowlershipError("NO_ANALYSIS", f"{path} not found; run analyze first")
    return json.loads(path.read_text(encoding="utf-8"))
