"""Seeded generator of cricsheet-style YAML matches with planted synergies.

Each team has a roster of bowlers with a base scoring rate (expected batter
runs per legal ball). Overs alternate between two ends; before each over the
bowler at that end is replaced with probability ``p_change``. A synergy
``(bowler, partner): factor`` multiplies the bowler's scoring rate whenever
the partner holds the other end, so the planted edge is bowler -> partner.

The generator keeps an exact ledger of what it wrote, which tests use as an
independent bookkeeping oracle.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .ingest import ODI, T20I, TEST

_Dumper = getattr(yaml, "CSafeDumper", yaml.SafeDumper)

_MATCH_TYPE = {TEST: "Test", ODI: "ODI", T20I: "T20"}
_OVERS = {TEST: 90, ODI: 50, T20I: 20}
_INNINGS = {TEST: 4, ODI: 2, T20I: 2}
_ORDINAL = ["1st", "2nd", "3rd", "4th"]
_KINDS = ["bowled", "caught", "lbw", "run out", "stumped", "caught and bowled"]
_KIND_P = [0.2, 0.45, 0.15, 0.1, 0.05, 0.05]
_CREDITED = {"bowled", "caught", "lbw", "stumped", "hit wicket", "caught and bowled"}


@dataclass
class Ledger:
    """What the generator planted, tallied independently of the parser."""

    legal_balls: dict = field(default_factory=lambda: defaultdict(int))
    runs_charged: dict = field(default_factory=lambda: defaultdict(int))
    wickets: dict = field(default_factory=lambda: defaultdict(int))
    match_runs: dict = field(default_factory=dict)
    ball_entries: dict = field(default_factory=dict)
    # (match_id, innings) -> [(over_idx, bowler)] one entry per over
    schedules: dict = field(default_factory=dict)


def default_rosters(n_teams=2, per_team=5):
    teams = {}
    for t in range(n_teams):
        name = f"Team {chr(ord('A') + t)}"
        teams[name] = {f"{name[-1]}.B{i}": 0.8 + 0.1 * i for i in range(per_team)}
    return teams


def _ball(rng, rate, extras_p):
    """One delivery: (batter_runs, extras dict)."""
    u = rng.random()
    extras = {}
    wides_p, noball_p, bye_p, legbye_p, penalty_p = extras_p
    if u < wides_p:
        return 0, {"wides": 1}
    if u < wides_p + noball_p:
        return int(min(rng.poisson(rate), 6)), {"noballs": 1}
    runs = int(min(rng.poisson(rate), 6))
    if runs == 5:
        runs = 4
    v = rng.random()
    if v < bye_p:
        return 0, {"byes": 1}
    if v < bye_p + legbye_p:
        return 0, {"legbyes": 1}
    if v < bye_p + legbye_p + penalty_p:
        extras["penalty"] = 5
    return runs, extras


def make_match(rng, match_id, fmt, team_names, rosters, synergies, ledger,
               p_change=0.25, wicket_p=0.03, extras_p=(0.03, 0.01, 0.01, 0.02, 0.001),
               p_short_last_over=0.3, layout="legacy", date="2020-01-01"):
    """Build one match document and record it in ``ledger``."""
    n_overs, n_innings = _OVERS[fmt], _INNINGS[fmt]
    innings_docs = []
    match_runs = 0
    n_entries = 0
    for inn in range(n_innings):
        batting = team_names[inn % 2]
        bowling = team_names[(inn + 1) % 2]
        roster = sorted(rosters[bowling])
        ends = [roster[0], roster[1]]
        schedule = []
        overs_out = []
        for over in range(n_overs):
            end = over % 2
            if over >= 2 and rng.random() < p_change:
                options = [b for b in roster if b not in ends]
                ends[end] = options[int(rng.integers(len(options)))]
            bowler = ends[end]
            partner = ends[1 - end] if over >= 1 else None
            rate = rosters[bowling][bowler] * synergies.get((bowler, partner), 1.0)
            schedule.append((over, bowler))

            legal_target = 6
            if inn == n_innings - 1 and over == n_overs - 1 and rng.random() < p_short_last_over:
                legal_target = int(rng.integers(1, 6))
            deliveries, legal = [], 0
            while legal < legal_target:
                batter_runs, extras = _ball(rng, rate, extras_p)
                is_legal = "wides" not in extras and "noballs" not in extras
                legal += is_legal
                striker = f"{batting[-1]}.Bat{int(rng.integers(1, 12))}"
                entry = {
                    "batsman": striker,
                    "bowler": bowler,
                    "non_striker": f"{batting[-1]}.Bat0",
                    "runs": {
                        "batsman": batter_runs,
                        "extras": sum(extras.values()),
                        "total": batter_runs + sum(extras.values()),
                    },
                }
                if extras:
                    entry["extras"] = extras
                if is_legal and rng.random() < wicket_p:
                    kind = _KINDS[int(rng.choice(len(_KINDS), p=_KIND_P))]
                    entry["wicket"] = {"kind": kind, "player_out": striker}
                    if kind in _CREDITED:
                        ledger.wickets[bowler] += 1
                deliveries.append(entry)
                ledger.runs_charged[bowler] += batter_runs + extras.get("wides", 0) + extras.get("noballs", 0)
                match_runs += entry["runs"]["total"]
            ledger.legal_balls[bowler] += legal
            n_entries += len(deliveries)
            overs_out.append(deliveries)

        ledger.schedules[(match_id, inn + 1)] = schedule
        if layout == "legacy":
            flat = []
            for over, deliveries in enumerate(overs_out):
                for b, entry in enumerate(deliveries, start=1):
                    flat.append({float(f"{over}.{b}"): entry})
            innings_docs.append({f"{_ORDINAL[inn]} innings": {"team": batting, "deliveries": flat}})
        else:
            innings_docs.append({
                "team": batting,
                "overs": [
                    {"over": over, "deliveries": [_to_overs_layout(e) for e in deliveries]}
                    for over, deliveries in enumerate(overs_out)
                ],
            })

    ledger.match_runs[match_id] = match_runs
    ledger.ball_entries[match_id] = n_entries
    return {
        "meta": {"data_version": 0.9, "revision": 1},
        "info": {
            "dates": [date],
            "match_type": _MATCH_TYPE[fmt],
            "teams": list(team_names),
            "venue": "Synthetic Ground",
        },
        "innings": innings_docs,
    }


def _to_overs_layout(entry):
    out = {
        "batter": entry["batsman"],
        "bowler": entry["bowler"],
        "non_striker": entry["non_striker"],
        "runs": {
            "batter": entry["runs"]["batsman"],
            "extras": entry["runs"]["extras"],
            "total": entry["runs"]["total"],
        },
    }
    if "extras" in entry:
        out["extras"] = entry["extras"]
    if "wicket" in entry:
        out["wickets"] = [entry["wicket"]]
    return out


def generate_corpus(out_dir, n_matches, fmt=ODI, seed=0, rosters=None, synergies=None,
                    first_id=1000, layout="legacy", **match_kwargs):
    """Write ``n_matches`` YAML files to ``out_dir``; return the :class:`Ledger`."""
    rng = np.random.default_rng(seed)
    rosters = rosters or default_rosters()
    synergies = synergies or {}
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = sorted(rosters)
    ledger = Ledger()
    for m in range(n_matches):
        t1, t2 = rng.choice(len(names), 2, replace=False)
        match_id = str(first_id + m)
        date = f"20{10 + m // 300:02d}-{1 + (m // 28) % 12:02d}-{1 + m % 28:02d}"
        doc = make_match(rng, match_id, fmt, (names[t1], names[t2]), rosters, synergies,
                         ledger, layout=layout, date=date, **match_kwargs)
        with open(out_dir / f"{match_id}.yaml", "w", encoding="utf-8") as fh:
            yaml.dump(doc, fh, Dumper=_Dumper, sort_keys=False, default_flow_style=False)
    return ledger
