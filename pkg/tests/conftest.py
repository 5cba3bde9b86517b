import itertools
from fractions import Fraction

import numpy as np
import pytest
import yaml

from bowlership.overmodel import OverRecord


def enumerate_mw(x, y):
    """Full-enumeration oracle: (U, P(U >= u), P(U <= u)) as exact fractions.

    Counts U over every way of choosing which len(x) of the pooled values
    carry the first label, with ties scored one half.
    """
    pooled = list(x) + list(y)
    n1 = len(x)

    def u_of(idx):
        chosen = set(idx)
        a = [pooled[i] for i in chosen]
        b = [pooled[i] for i in range(len(pooled)) if i not in chosen]
        return sum(Fraction(1) if p > q else Fraction(1, 2) if p == q else 0 for p in a for q in b)

    observed = u_of(range(n1))
    us = [u_of(c) for c in itertools.combinations(range(len(pooled)), n1)]
    total = len(us)
    ge = Fraction(sum(u >= observed for u in us), total)
    le = Fraction(sum(u <= observed for u in us), total)
    return observed, ge, le


def rec(bowler, over_idx, runs=0, wickets=0, match_id="m1", innings=1, legal=6, team="T"):
    return OverRecord(match_id, innings, over_idx, bowler, legal, runs, wickets, team)


def schedule_records(names, match_id="m1", innings=1, start=0, team="T", runs=None):
    """Consecutively numbered over records for a sequence of bowler names."""
    return [
        rec(b, start + i, 0 if runs is None else runs[i], 0, match_id, innings, team=team)
        for i, b in enumerate(names)
    ]


def legacy_ball(bowler, batter_runs=0, extras=None, wicket=None, batter="X"):
    extras = extras or {}
    entry = {
        "batsman": batter,
        "bowler": bowler,
        "non_striker": "Y",
        "runs": {"batsman": batter_runs, "extras": sum(extras.values()),
                 "total": batter_runs + sum(extras.values())},
    }
    if extras:
        entry["extras"] = dict(extras)
    if wicket:
        entry["wicket"] = wicket
    return entry


def legacy_match(overs, match_type="ODI", teams=("Home", "Away"), date="2019-01-01",
                 innings_name="1st innings", extra_innings=()):
    """YAML bytes for a one-innings legacy-layout file; ``overs`` is a list of ball lists."""
    deliveries = []
    for o, balls in enumerate(overs):
        for b, ball in enumerate(balls, start=1):
            deliveries.append({float(f"{o}.{b}"): ball})
    innings = [{innings_name: {"team": teams[0], "deliveries": deliveries}}]
    innings.extend(extra_innings)
    doc = {
        "meta": {"data_version": 0.9},
        "info": {"dates": [date], "match_type": match_type, "teams": list(teams), "venue": "V"},
        "innings": innings,
    }
    return yaml.safe_dump(doc, sort_keys=False).encode("utf-8")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
