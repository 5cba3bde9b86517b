"""Parse cricsheet YAML match files into a validated delivery stream.

Two layouts of the cricsheet YAML schema are understood:

* the legacy layout, where ``innings`` is a list of single-key mappings
  (``"1st innings": {team, deliveries: [{0.1: {...}}, ...]}``) and
  deliveries carry ``batsman`` / ``runs.batsman`` / ``wicket``;
* the overs layout, where each innings has ``team`` and
  ``overs: [{over, deliveries: [...]}]`` and deliveries carry ``batter`` /
  ``runs.batter`` / ``wickets``.

A parsed corpus is persisted as three CSV files in one directory:
``deliveries.csv`` (one row per ball), ``matches.csv`` and ``innings.csv``
(which team bowled each innings, and whether it was a super over).
"""

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import IngestError

try:
    _Loader = yaml.CSafeLoader
except AttributeError:  # pragma: no cover - libyaml missing
    _Loader = yaml.SafeLoader

logger = logging.getLogger(__name__)

TEST, ODI, T20I = "TEST", "ODI", "T20I"
FORMATS = (TEST, ODI, T20I)
_MATCH_TYPES = {"test": TEST, "odi": ODI, "t20": T20I, "it20": T20I, "t20i": T20I}

DELIVERY_COLUMNS = [
    "match_id", "format", "innings", "over_idx", "ball_seq", "bowler", "striker",
    "batter_runs", "wides", "noballs", "byes", "legbyes", "penalty",
    "wicket_kind", "player_out",
]
MATCH_COLUMNS = ["match_id", "format", "date", "venue", "team_1", "team_2"]
INNINGS_COLUMNS = ["match_id", "innings", "batting_team", "bowling_team", "super_over"]

DELIVERIES_FILE = "deliveries.csv"
MATCHES_FILE = "matches.csv"
INNINGS_FILE = "innings.csv"
ERRORS_FILE = "ingest_errors.csv"

# several dismissals on one ball are joined with this separator in the CSV
_MULTI_SEP = ";"
_EXTRA_KEYS = ("wides", "noballs", "byes", "legbyes", "penalty")


@dataclass(frozen=True)
class MatchMeta:
    match_id: str
    format: str
    teams: tuple
    date: str
    venue: str = ""


@dataclass(frozen=True)
class InningsMeta:
    match_id: str
    innings: int
    batting_team: str
    bowling_team: str
    super_over: bool = False


@dataclass(frozen=True)
class Wicket:
    player_out: str
    kind: str


@dataclass(frozen=True)
class Delivery:
    match_id: str
    innings: int
    over_idx: int
    ball_seq: int
    bowler: str
    striker: str
    batter_runs: int
    wides: int = 0
    noballs: int = 0
    byes: int = 0
    legbyes: int = 0
    penalty: int = 0
    wickets: tuple = ()

    @property
    def extras(self):
        return self.wides + self.noballs + self.byes + self.legbyes + self.penalty

    @property
    def total_runs(self):
        return self.batter_runs + self.extras

    @property
    def is_legal(self):
        return self.wides == 0 and self.noballs == 0


@dataclass
class Corpus:
    matches: dict
    deliveries: list
    innings: dict
    format_filter: str = None
    errors: list = field(default_factory=list)

    @property
    def n_matches(self):
        return len(self.matches)

    def bowling_team(self, match_id, innings):
        meta = self.innings.get((match_id, innings))
        return meta.bowling_team if meta else ""

    def is_super_over(self, match_id, innings):
        meta = self.innings.get((match_id, innings))
        return bool(meta and meta.super_over)


def normalize_format(value):
    key = str(value).strip().lower()
    if key in _MATCH_TYPES:
        return _MATCH_TYPES[key]
    if value in FORMATS:
        return value
    raise IngestError("UNKNOWN_FORMAT", f"unsupported match type {value!r}")


def _nonneg_int(value, what, match_id):
    try:
        n = int(value)
    except (TypeError, ValueError):
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: {what} is not an integer: {value!r}")
    if n < 0 or n != value:
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: {what} must be a non-negative integer")
    return n


def _iter_innings(innings_list, match_id):
    """Yield (name, body, over_entries) where over_entries are (over_idx, delivery dict)."""
    if not isinstance(innings_list, list) or not innings_list:
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: missing innings")
    for entry in innings_list:
        if not isinstance(entry, dict):
            raise IngestError("SCHEMA_VIOLATION", f"{match_id}: innings entry is not a mapping")
        if "overs" in entry or "team" in entry:
            body = entry
            name = "super over" if entry.get("super_over") else "innings"
            balls = []
            for over in entry.get("overs") or []:
                idx = over.get("over")
                if idx is None:
                    raise IngestError("SCHEMA_VIOLATION", f"{match_id}: over without index")
                for d in over.get("deliveries") or []:
                    balls.append((int(idx), d))
        else:
            if len(entry) != 1:
                raise IngestError("SCHEMA_VIOLATION", f"{match_id}: malformed innings entry")
            (name, body), = entry.items()
            body = body or {}
            balls = []
            for d in body.get("deliveries") or []:
                if not isinstance(d, dict) or len(d) != 1:
                    raise IngestError("SCHEMA_VIOLATION", f"{match_id}: malformed delivery entry")
                (key, ball), = d.items()
                # keys such as 0.1 or "12.7": the integer part is the over
                balls.append((int(float(key)), ball))
        yield str(name), body, balls


def _parse_wickets(ball, match_id):
    raw = ball.get("wickets")
    if raw is None:
        raw = [ball["wicket"]] if ball.get("wicket") else []
    if isinstance(raw, dict):
        raw = [raw]
    if len(raw) > 2:
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: more than two wickets on one ball")
    out = []
    for w in raw:
        if "kind" not in w:
            raise IngestError("SCHEMA_VIOLATION", f"{match_id}: wicket without kind")
        out.append(Wicket(str(w.get("player_out", "")), str(w["kind"])))
    return tuple(out)


def parse_match(file_bytes, match_id):
    """Parse one cricsheet YAML document into ``(MatchMeta, innings, deliveries)``.

    ``innings`` is a list of :class:`InningsMeta`. Raises
    :class:`IngestError` with code ``MALFORMED_FILE``, ``SCHEMA_VIOLATION``
    or ``UNKNOWN_FORMAT``.
    """
    try:
        doc = yaml.load(file_bytes, Loader=_Loader)
    except yaml.YAMLError as exc:
        raise IngestError("MALFORMED_FILE", f"{match_id}: {exc}")
    if not isinstance(doc, dict) or "info" not in doc or "innings" not in doc:
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: missing info or innings section")

    info = doc["info"] or {}
    fmt = normalize_format(info.get("match_type", ""))
    teams = tuple(str(t) for t in info.get("teams") or ())
    if len(teams) != 2:
        raise IngestError("SCHEMA_VIOLATION", f"{match_id}: expected two teams")
    dates = info.get("dates") or [""]
    meta = MatchMeta(match_id, fmt, teams, str(dates[0]), str(info.get("venue", "") or ""))

    innings_meta, deliveries = [], []
    for number, (name, body, balls) in enumerate(_iter_innings(doc["innings"], match_id), start=1):
        batting = str(body.get("team", ""))
        bowling = next((t for t in teams if t != batting), "")
        innings_meta.append(
            InningsMeta(match_id, number, batting, bowling, "super over" in name.lower())
        )
        prev_over, seq = None, 0
        for over_idx, ball in balls:
            if not isinstance(ball, dict) or "bowler" not in ball or "runs" not in ball:
                raise IngestError("SCHEMA_VIOLATION", f"{match_id}: delivery without bowler or runs")
            if prev_over is not None and over_idx < prev_over:
                raise IngestError("SCHEMA_VIOLATION", f"{match_id}: over numbers go backwards")
            seq = seq + 1 if over_idx == prev_over else 1
            prev_over = over_idx

            runs = ball["runs"] or {}
            batter_runs = runs.get("batter", runs.get("batsman"))
            if batter_runs is None:
                raise IngestError("SCHEMA_VIOLATION", f"{match_id}: runs without batter component")
            extras = ball.get("extras") or {}
            parts = {k: _nonneg_int(extras.get(k, 0), k, match_id) for k in _EXTRA_KEYS}
            if "extras" in runs and int(runs["extras"]) != sum(parts.values()):
                raise IngestError("SCHEMA_VIOLATION", f"{match_id}: extras breakdown does not sum")
            striker = ball.get("batter", ball.get("batsman", ""))
            deliveries.append(
                Delivery(
                    match_id=match_id,
                    innings=number,
                    over_idx=over_idx,
                    ball_seq=seq,
                    bowler=str(ball["bowler"]),
                    striker=str(striker),
                    batter_runs=_nonneg_int(batter_runs, "batter runs", match_id),
                    wickets=_parse_wickets(ball, match_id),
                    **parts,
                )
            )
    return meta, innings_meta, deliveries


def _match_sort_key(path):
    stem = path.stem
    return (0, int(stem), stem) if stem.isdigit() else (1, 0, stem)


def _parse_path(path):
    try:
        return parse_match(path.read_bytes(), path.stem)
    except IngestError as exc:
        return exc
    except OSError as exc:
        return IngestError("UNREADABLE_FILE", f"{path.name}: {exc}")


def ingest_corpus(directory, fmt=None, out_dir=None, n_jobs=1):
    """Parse every YAML file in ``directory`` and keep matches of format ``fmt``.

    ``fmt=None`` keeps all formats. Files that fail to parse are recorded in
    ``Corpus.errors`` as ``(file name, code, message)`` and skipped. When
    ``out_dir`` is given the corpus is written there, replacing any previous
    ingestion.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise IngestError("UNREADABLE_DIRECTORY", str(directory))
    fmt = normalize_format(fmt) if fmt is not None else None
    paths = sorted(
        (p for p in directory.iterdir() if p.suffix.lower() in (".yaml", ".yml")),
        key=_match_sort_key,
    )

    if n_jobs == 1:
        results = [_parse_path(p) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_parse_path, paths, chunksize=16))

    matches, innings, deliveries, errors = {}, {}, [], []
    for path, result in zip(paths, results):
        if isinstance(result, IngestError):
            logger.warning("skipping %s: %s", path.name, result)
            errors.append((path.name, result.code, str(result)))
            continue
        meta, inn, dels = result
        if fmt is not None and meta.format != fmt:
            continue
        if meta.match_id in matches:
            errors.append((path.name, "DUPLICATE_MATCH", meta.match_id))
            continue
        matches[meta.match_id] = meta
        innings.update({(i.match_id, i.innings): i for i in inn})
        deliveries.extend(dels)

    if not matches:
        raise IngestError("EMPTY_CORPUS", f"no valid {fmt or 'matches'} in {directory}")
    corpus = Corpus(matches, deliveries, innings, fmt, errors)
    if out_dir is not None:
        write_corpus(corpus, out_dir)
    return corpus


def _writer(path):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_corpus(corpus, out_dir):
    """Write the corpus CSVs into ``out_dir`` (overwriting)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    fh, w = _writer(out_dir / DELIVERIES_FILE)
    with fh:
        w.writerow(DELIVERY_COLUMNS)
        for d in corpus.deliveries:
            w.writerow([
                d.match_id, corpus.matches[d.match_id].format, d.innings, d.over_idx,
                d.ball_seq, d.bowler, d.striker, d.batter_runs, d.wides, d.noballs,
                d.byes, d.legbyes, d.penalty,
                _MULTI_SEP.join(wk.kind for wk in d.wickets),
                _MULTI_SEP.join(wk.player_out for wk in d.wickets),
            ])

    fh, w = _writer(out_dir / MATCHES_FILE)
    with fh:
        w.writerow(MATCH_COLUMNS)
        for m in corpus.matches.values():
            w.writerow([m.match_id, m.format, m.date, m.venue, m.teams[0], m.teams[1]])

    fh, w = _writer(out_dir / INNINGS_FILE)
    with fh:
        w.writerow(INNINGS_COLUMNS)
        order = {mid: i for i, mid in enumerate(corpus.matches)}
        for key in sorted(corpus.innings, key=lambda k: (order.get(k[0], len(order)), k[1])):
            i = corpus.innings[key]
            w.writerow([i.match_id, i.innings, i.batting_team, i.bowling_team, int(i.super_over)])

    fh, w = _writer(out_dir / ERRORS_FILE)
    with fh:
        w.writerow(["file", "code", "message"])
        w.writerows(corpus.errors)


def _read_rows(path, columns):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != columns:
            raise IngestError("SCHEMA_VIOLATION", f"{path.name}: unexpected header {header}")
        yield from reader


def read_corpus(out_dir):
    """Load a corpus previously written by :func:`write_corpus`."""
    out_dir = Path(out_dir)
    if not (out_dir / DELIVERIES_FILE).exists():
        raise IngestError("NO_CORPUS", f"no {DELIVERIES_FILE} in {out_dir}")

    matches = {}
    for mid, fmt, date, venue, t1, t2 in _read_rows(out_dir / MATCHES_FILE, MATCH_COLUMNS):
        matches[mid] = MatchMeta(mid, fmt, (t1, t2), date, venue)
    innings = {}
    for mid, num, bat, bowl, sup in _read_rows(out_dir / INNINGS_FILE, INNINGS_COLUMNS):
        innings[(mid, int(num))] = InningsMeta(mid, int(num), bat, bowl, sup == "1")

    deliveries = []
    formats = set()
    for row in _read_rows(out_dir / DELIVERIES_FILE, DELIVERY_COLUMNS):
        (mid, fmt, inn, over, seq, bowler, striker, br, wd, nb, by, lb, pen, kinds, outs) = row
        formats.add(fmt)
        wickets = ()
        if kinds:
            wickets = tuple(
                Wicket(p, k) for k, p in zip(kinds.split(_MULTI_SEP), outs.split(_MULTI_SEP))
            )
        deliveries.append(
            Delivery(mid, int(inn), int(over), int(seq), bowler, striker, int(br),
                     int(wd), int(nb), int(by), int(lb), int(pen), wickets)
        )
    fmt_filter = formats.pop() if len(formats) == 1 else None
    return Corpus(matches, deliveries, innings, fmt_filter)


def corpus_exists(out_dir):
    return os.path.exists(Path(out_dir) / DELIVERIES_FILE)
