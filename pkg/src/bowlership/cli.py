"""Command-line driver.

Commands::

    bowlership ingest CORPUS_DIR --format ODI --out OUT
    bowlership analyze --out OUT [--ti N --tp N --alpha A ...]
    bowlership select --out OUT --team TEAM --k K
    bowlership export-graph --out OUT --team TEAM [--metric ECONOMY] [--layout dot|csv]
    bowlership report --out OUT

Exit codes: 0 success, 1 domain error, 2 I/O error.
"""

import argparse
import logging
import sys
from pathlib import Path

from .config import build_config
from .errors import BowlershipError
from .ingest import ingest_corpus, read_corpus
from .network import ECONOMY, HITRATE, create_weighted_graph
from .pipeline import REFERENCE_COUNTS, analyze, load_network, load_summary, write_analysis
from .reports import (
    EDGE_COLUMNS,
    directed_dot,
    dump_json,
    edge_rows,
    weighted_dot,
    write_csv,
)
from .selection import bowler_select
from .stats import TESTS

logger = logging.getLogger("bowlership")

IO_CODES = {"UNREADABLE_DIRECTORY", "UNREADABLE_FILE", "NO_CORPUS", "NO_ANALYSIS"}


def _config(args, resolve=True):
    overrides = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "config", "func", "verbose") and v is not None
    }
    cfg = build_config(args.config, overrides)
    return cfg.resolved() if resolve else cfg


def cmd_ingest(args):
    cfg = _config(args)
    if not cfg.corpus_dir:
        raise BowlershipError("BAD_CONFIG", "no corpus directory given")
    corpus = ingest_corpus(cfg.corpus_dir, cfg.format, out_dir=cfg.output_dir)
    for name, code, message in corpus.errors:
        print(f"skipped {name}: {message}", file=sys.stderr)
    print(f"matches={corpus.n_matches} deliveries={len(corpus.deliveries)}")
    return 0


def cmd_analyze(args):
    cfg = _config(args, resolve=False)
    corpus = read_corpus(cfg.output_dir or "out")
    if cfg.format is None:
        cfg.format = corpus.format_filter
    cfg = cfg.resolved()
    analysis = analyze(corpus, cfg)
    if not analysis.detector.qualifying_pairs_:
        print(
            f"no qualifying pairs at t_i={cfg.t_i}, t_p={cfg.t_p} "
            f"({len(analysis.detector.qualifying_bowlers_)} qualifying bowlers)",
            file=sys.stderr,
        )
        return 1
    counts = write_analysis(analysis, cfg.output_dir)
    s = analysis.summary()
    print(
        f"qualifying_bowlers={s['qualifying_bowlers']} qualifying_pairs={s['qualifying_pairs']} "
        f"files={len(counts) + 2}"
    )
    return 0


def _team_graph(cfg):
    _, graphs = load_network(cfg.output_dir)
    if cfg.team not in graphs:
        known = ", ".join(sorted(graphs)) or "none"
        raise BowlershipError("UNKNOWN_TEAM", f"{cfg.team!r} (known: {known})")
    return graphs[cfg.team]


def cmd_select(args):
    cfg = _config(args)
    directed = _team_graph(cfg)
    result = bowler_select(create_weighted_graph(directed, cfg.metric), cfg.k)
    payload = result.to_dict()
    payload.update({"team": cfg.team, "metric": cfg.metric})
    sys.stdout.write(dump_json(payload))
    return 0


def _safe_name(text):
    return "".join(ch if ch.isalnum() else "_" for ch in text)


def cmd_export_graph(args):
    cfg = _config(args)
    directed = _team_graph(cfg)
    weighted = create_weighted_graph(directed, cfg.metric)
    out = Path(cfg.output_dir)
    stem = f"graph_{_safe_name(cfg.team)}_{cfg.metric.lower()}"
    if cfg.layout == "dot":
        written = [out / f"{stem}_directed.dot", out / f"{stem}_weighted.dot"]
        written[0].write_text(directed_dot(directed, cfg.metric, cfg.team), encoding="utf-8")
        written[1].write_text(weighted_dot(weighted, cfg.team), encoding="utf-8")
    elif cfg.layout == "csv":
        weighted_by_metric = {m: create_weighted_graph(directed, m) for m in (ECONOMY, HITRATE)}
        rows = [r for r in edge_rows(directed, weighted_by_metric) if r[2] == cfg.metric]
        written = [out / f"{stem}.csv"]
        write_csv(written[0], EDGE_COLUMNS, rows)
    else:
        raise BowlershipError("BAD_CONFIG", f"unknown layout {cfg.layout!r}")
    for path in written:
        print(path)
    return 0


def cmd_report(args):
    cfg = _config(args)
    s = load_summary(cfg.output_dir)
    ref = REFERENCE_COUNTS[s["format"]]
    print(f"format={s['format']} matches={s['matches']} deliveries={s['deliveries']} overs={s['overs']}")
    print(f"bowlers={s['bowlers']} qualifying_bowlers={s['qualifying_bowlers']} "
          f"pairs={s['pairs']} qualifying_pairs={s['qualifying_pairs']}")
    for metric in (ECONOMY, HITRATE):
        e = s["edges"].get(metric, {"POSITIVE": 0, "NEGATIVE": 0})
        print(f"edges {metric}: positive={e['POSITIVE']} negative={e['NEGATIVE']}")
    for test in TESTS:
        row = s["normality"][test]
        print(f"normality {test}: fail={row['fail']} pass={row['pass']}")
    for key in ("matches", "bowlers", "qualifying_bowlers", "qualifying_pairs"):
        dev = (s[key] - ref[key]) / ref[key]
        print(f"reference {key}: observed={s[key]} reference={ref[key]} deviation={dev:+.1%}")
    return 0


def _common(p, *names):
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--out", dest="output_dir", help="corpus and output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["ODI", "TEST", "Test", "T20I", "T20"])
    p.add_argument("-v", "--verbose", action="store_true")
    for name in names:
        if name == "thresholds":
            p.add_argument("--ti", dest="t_i", type=int, help="minimum career overs per bowler")
            p.add_argument("--tp", dest="t_p", type=int, help="minimum alternating overs per pair")
            p.add_argument("--alpha", type=float)
            p.add_argument("--exact-cutoff", dest="exact_cutoff", type=int)
            p.add_argument("--individual-set", dest="individual_set",
                           choices=["all_overs", "exclude_pair"])
            p.add_argument("--charge-extras", dest="charge_extras",
                           action=argparse.BooleanOptionalAction, default=None)
            p.add_argument("--normality-floor", dest="normality_floor", type=float)
        elif name == "team":
            p.add_argument("--team")
            p.add_argument("--metric", choices=[ECONOMY, HITRATE])


def build_parser():
    parser = argparse.ArgumentParser(prog="bowlership", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a directory of YAML match files")
    p.add_argument("corpus_dir", nargs="?")
    _common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("analyze", help="detect pairs and bowlerships")
    _common(p, "thresholds")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("select", help="select k bowlers for a team")
    _common(p, "team")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("export-graph", help="write a team's network as DOT or CSV")
    _common(p, "team")
    p.add_argument("--layout", choices=["dot", "csv"])
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("report", help="summarize an analysis")
    _common(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BowlershipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if exc.code in IO_CODES else 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
