"""Bowling pairs: bowlers who bowl consecutive overs alternately.

Within one innings, a run for the pair {A, B} is a maximal stretch of
consecutively numbered overs bowled A, B, A, B, ... (or starting with B) of
length at least two. Runs never cross innings, a gap in over numbering ends
a run, and each pair is scanned independently, so an over can sit in runs of
two different pairs (the middle A in A, B, A, C, A).
"""

from dataclasses import dataclass, field

from .errors import BowlershipError
from .ingest import ODI, T20I, TEST

MIN_RUN_LENGTH = 2


@dataclass(frozen=True)
class PairingConfig:
    t_i: int
    t_p: int

    def __post_init__(self):
        if self.t_i <= 0:
            raise BowlershipError("BAD_CONFIG", f"t_i must be positive, got {self.t_i}")
        if self.t_p < MIN_RUN_LENGTH:
            raise BowlershipError("BAD_CONFIG", f"t_p must be at least 2, got {self.t_p}")

    @classmethod
    def for_format(cls, fmt, t_i=None, t_p=None):
        d_i, d_p = FORMAT_DEFAULTS[fmt]
        return cls(d_i if t_i is None else t_i, d_p if t_p is None else t_p)


FORMAT_DEFAULTS = {TEST: (300, 60), ODI: (300, 60), T20I: (80, 16)}


@dataclass(frozen=True)
class AlternationRun:
    match_id: str
    innings: int
    start_over: int
    length: int
    bowlers: frozenset


@dataclass
class BowlingPair:
    a: str
    b: str
    team: str = ""
    overs_of_a: list = field(default_factory=list)
    overs_of_b: list = field(default_factory=list)
    runs: list = field(default_factory=list)

    @property
    def pair_overs(self):
        return len(self.overs_of_a) + len(self.overs_of_b)

    def overs_of(self, bowler):
        if bowler == self.a:
            return self.overs_of_a
        if bowler == self.b:
            return self.overs_of_b
        raise KeyError(bowler)

    def partner(self, bowler):
        return self.b if bowler == self.a else self.a


def _run_spans(sequence, pair):
    """(start, end) index spans of maximal alternation runs of ``pair``."""
    spans = []
    n, i = len(sequence), 0
    while i < n:
        if sequence[i][1] not in pair:
            i += 1
            continue
        j = i
        while (
            j + 1 < n
            and sequence[j + 1][1] in pair
            and sequence[j + 1][1] != sequence[j][1]
            and sequence[j + 1][0] == sequence[j][0] + 1
        ):
            j += 1
        if j - i + 1 >= MIN_RUN_LENGTH:
            spans.append((i, j))
        i = j + 1
    return spans


def find_alternation_runs(sequence, pair, match_id="", innings=0):
    """Maximal alternation runs of ``pair`` in an innings' ``(over_idx, bowler)`` list."""
    pair = frozenset(pair)
    if len(pair) != 2:
        raise BowlershipError("BAD_PAIR", f"need two distinct bowlers, got {sorted(pair)}")
    return [
        AlternationRun(match_id, innings, sequence[s][0], e - s + 1, pair)
        for s, e in _run_spans(sequence, pair)
    ]


def innings_sequences(records):
    """Group over records into per-innings over sequences.

    Returns ``{(match_id, innings): [OverRecord, ...]}`` with one record per
    over number. When an over was shared (a bowler leaving mid-over), the
    bowler who delivered more legal balls represents it, the earlier one on
    a tie.
    """
    seqs = {}
    for r in records:
        overs = seqs.setdefault((r.match_id, r.innings), {})
        held = overs.get(r.over_idx)
        if held is None or r.legal_balls > held.legal_balls:
            overs[r.over_idx] = r
    return {k: [v[i] for i in sorted(v)] for k, v in seqs.items()}


def accumulate_pairs(records):
    """Accumulate alternation runs of every bowler pair over all innings.

    Pairs are keyed by bowling team as well as names, so the result holds one
    :class:`BowlingPair` per (team, unordered pair) that has at least one run.
    Output is sorted by (team, a, b).
    """
    pairs = {}
    for (match_id, innings), overs in innings_sequences(records).items():
        seq = [(r.over_idx, r.bowler) for r in overs]
        candidates = {
            frozenset((seq[k][1], seq[k + 1][1]))
            for k in range(len(seq) - 1)
            if seq[k][1] != seq[k + 1][1] and seq[k + 1][0] == seq[k][0] + 1
        }
        for pair in sorted(candidates, key=sorted):
            a, b = sorted(pair)
            team = overs[0].team
            bp = pairs.get((team, a, b))
            if bp is None:
                bp = pairs[(team, a, b)] = BowlingPair(a, b, team)
            for s, e in _run_spans(seq, pair):
                bp.runs.append(AlternationRun(match_id, innings, seq[s][0], e - s + 1, pair))
                for r in overs[s : e + 1]:
                    (bp.overs_of_a if r.bowler == a else bp.overs_of_b).append(r)
    return [pairs[k] for k in sorted(pairs)]


def qualifying_bowlers(summaries, cfg):
    """Bowlers whose career overs reach ``cfg.t_i``."""
    return sorted(b for b, s in summaries.items() if s.n_overs >= cfg.t_i)


def filter_pairs(pairs, summaries, cfg):
    """Pairs whose bowlers each bowled at least ``t_i`` overs and who
    bowled at least ``t_p`` overs together in alternation runs."""
    keep = set(qualifying_bowlers(summaries, cfg))
    return [p for p in pairs if p.a in keep and p.b in keep and p.pair_overs >= cfg.t_p]
