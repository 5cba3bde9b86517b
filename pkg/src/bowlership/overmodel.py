"""Per-bowler over records, economy and hitrate.

Attribution follows the usual scoring conventions: wides and no-balls
(including the batter's runs off a no-ball) are charged to the bowler,
byes, leg-byes and penalty runs are not, and only dismissals the bowler
effects are credited to him.
"""

from collections import Counter
from dataclasses import dataclass

from .errors import BowlershipError

CREDITED_DISMISSALS = frozenset(
    {"bowled", "caught", "lbw", "stumped", "hit wicket", "caught and bowled"}
)
BALLS_PER_OVER = 6


@dataclass(frozen=True)
class OverRecord:
    match_id: str
    innings: int
    over_idx: int
    bowler: str
    legal_balls: int
    runs_charged: int
    wickets_credited: int
    team: str = ""

    @property
    def complete(self):
        return self.legal_balls == BALLS_PER_OVER

    @property
    def key(self):
        return (self.match_id, self.innings, self.over_idx, self.bowler)


@dataclass(frozen=True)
class MetricSummary:
    economy: float
    hitrate: float
    n_overs: float
    bowling_index: float = None


@dataclass
class BowlerSeries:
    bowler: str
    overs: list

    @property
    def total_overs(self):
        return sum(o.legal_balls for o in self.overs) / BALLS_PER_OVER

    @property
    def total_runs(self):
        return sum(o.runs_charged for o in self.overs)

    @property
    def total_wickets(self):
        return sum(o.wickets_credited for o in self.overs)

    def complete_overs(self):
        return [o for o in self.overs if o.complete]


def _chronological_matches(corpus):
    order = list(corpus.matches)
    position = {mid: i for i, mid in enumerate(order)}
    return sorted(order, key=lambda mid: (corpus.matches[mid].date, position[mid]))


def build_over_records(corpus, charge_extras=True):
    """One :class:`OverRecord` per (match, innings, over, bowler).

    Records come out in match chronology (date, then corpus order), then by
    innings and over. Super-over innings and overs without a legal ball are
    skipped. With ``charge_extras=False`` only the batter's runs are charged.
    """
    grouped = {}
    for d in corpus.deliveries:
        if corpus.is_super_over(d.match_id, d.innings):
            continue
        key = (d.match_id, d.innings, d.over_idx, d.bowler)
        acc = grouped.get(key)
        if acc is None:
            acc = grouped[key] = [0, 0, 0]
        acc[0] += d.is_legal
        acc[1] += d.batter_runs + (d.wides + d.noballs if charge_extras else 0)
        acc[2] += sum(w.kind in CREDITED_DISMISSALS for w in d.wickets)

    by_match = {}
    for key, (legal, runs, wkts) in grouped.items():
        if legal == 0:
            continue
        match_id, innings, over_idx, bowler = key
        record = OverRecord(
            match_id, innings, over_idx, bowler,
            # an umpire's miscount can give a seventh legal ball
            min(legal, BALLS_PER_OVER), runs, wkts,
            corpus.bowling_team(match_id, innings),
        )
        by_match.setdefault(match_id, []).append(record)

    records = []
    for match_id in _chronological_matches(corpus):
        # stable sort keeps delivery order for two bowlers sharing an over
        records.extend(sorted(by_match.get(match_id, []), key=lambda r: (r.innings, r.over_idx)))
    return records


def all_series(records):
    """Map every bowler to his :class:`BowlerSeries`, preserving record order."""
    series = {}
    for r in records:
        series.setdefault(r.bowler, BowlerSeries(r.bowler, [])).overs.append(r)
    return series


def bowler_series(records, bowler):
    overs = [r for r in records if r.bowler == bowler]
    if not overs:
        raise BowlershipError("UNKNOWN_BOWLER", bowler)
    return BowlerSeries(bowler, overs)


def summarize(series):
    """Economy, hitrate and (when wickets exist) the bowling index of a series."""
    n_overs = series.total_overs
    if n_overs == 0:
        raise BowlershipError("NO_OVERS", series.bowler)
    runs, wickets = series.total_runs, series.total_wickets
    index = None
    if wickets > 0:
        # bowling average times strike rate (balls per wicket)
        index = (runs / wickets) * (BALLS_PER_OVER * n_overs / wickets)
    return MetricSummary(runs / n_overs, wickets / n_overs, n_overs, index)


def over_histograms(records):
    """Counts of runs-in-over and wickets-in-over over complete overs."""
    runs, wickets = Counter(), Counter()
    for r in records:
        if r.complete:
            runs[r.runs_charged] += 1
            wickets[r.wickets_credited] += 1
    return dict(sorted(runs.items())), dict(sorted(wickets.items()))
