"""Normality tests used to check per-bowler runs-per-over distributions.

Three tests are provided: a binned chi-square goodness-of-fit test, the
Shapiro-Wilk W test with Royston's coefficient and p-value approximations,
and the Anderson-Darling test for a normal with estimated mean and variance.
"""

from dataclasses import dataclass
from math import asin, ceil, pi, sqrt

import numpy as np
from scipy.stats import chi2, norm

from ..errors import StatsError

CHI_SQUARE = "CHI_SQUARE"
SHAPIRO_WILK = "SHAPIRO_WILK"
ANDERSON_DARLING = "ANDERSON_DARLING"
TESTS = (CHI_SQUARE, SHAPIRO_WILK, ANDERSON_DARLING)

SW_MAX_N = 5000

# Upper-tail critical values of the modified statistic
# A2 * (1 + 0.75/n + 2.25/n**2), normal with estimated mean and variance.
AD_CRITICAL_VALUES = {0.15: 0.561, 0.10: 0.631, 0.05: 0.752, 0.025: 0.873, 0.01: 1.035}


@dataclass(frozen=True)
class NormalityVerdict:
    test: str
    statistic: float
    p_value: float
    passed: bool
    n: int
    critical_value: float = None
    subsampled: bool = False


def _as_sample(sample, min_n):
    x = np.asarray(sample, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise StatsError("NONFINITE_SAMPLE", "sample contains NaN or inf")
    if len(x) < min_n:
        raise StatsError("TOO_SMALL", f"need at least {min_n} observations, got {len(x)}")
    if np.ptp(x) == 0:
        raise StatsError("DEGENERATE_SAMPLE", "sample has zero variance")
    return x


def _merge_bins(observed, expected, min_expected=5.0):
    obs_out, exp_out = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp_out:
            obs_out[-1] += acc_o
            exp_out[-1] += acc_e
        else:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
    return np.array(obs_out), np.array(exp_out)


def chi_square_normality(sample, alpha=0.05):
    """Pearson chi-square goodness of fit against a fitted normal.

    Integer-valued samples (runs per over) get one cell per integer with the
    normal probability mass of ``[v - 0.5, v + 0.5)``; other samples get
    ``ceil(2 * n**0.4)`` equal-width cells. The outermost cells extend to
    infinity, adjacent cells are merged until each expected count is at
    least 5, and the reference distribution has ``cells - 3`` degrees of
    freedom.
    """
    x = _as_sample(sample, 20)
    n = len(x)
    mu, sd = x.mean(), x.std(ddof=1)

    if np.all(x == np.round(x)):
        lo, hi = int(x.min()), int(x.max())
        inner = np.arange(lo, hi) + 0.5
        observed = np.bincount((x - lo).astype(int), minlength=hi - lo + 1).astype(float)
    else:
        k = max(4, ceil(2 * n**0.4))
        inner = np.linspace(x.min(), x.max(), k + 1)[1:-1]
        observed = np.bincount(np.searchsorted(inner, x, side="right"), minlength=k).astype(float)

    cdf = np.concatenate([[0.0], norm.cdf(inner, mu, sd), [1.0]])
    expected = n * np.diff(cdf)
    observed, expected = _merge_bins(observed, expected)

    df = len(observed) - 3
    if df < 1:
        raise StatsError("TOO_FEW_BINS", f"{len(observed)} cells after merging")
    stat = float(np.sum((observed - expected) ** 2 / expected))
    p = float(chi2.sf(stat, df))
    return NormalityVerdict(CHI_SQUARE, stat, p, p > alpha, n)


def _royston_coefficients(n):
    m = norm.ppf((np.arange(1, n + 1) - 0.375) / (n + 0.25))
    msq = float(np.sum(m**2))
    if n == 3:
        return np.array([-sqrt(0.5), 0.0, sqrt(0.5)])
    u = 1.0 / sqrt(n)
    a = np.empty(n)
    an = np.polyval([-2.706056, 4.434685, -2.071190, -0.147981, 0.221157, 0.0], u) + m[-1] / sqrt(msq)
    if n > 5:
        an1 = np.polyval([-3.582633, 5.682633, -1.752461, -0.293762, 0.042981, 0.0], u) + m[-2] / sqrt(msq)
        eps = (msq - 2 * m[-1] ** 2 - 2 * m[-2] ** 2) / (1 - 2 * an**2 - 2 * an1**2)
        a[:] = m / sqrt(eps)
        a[-2], a[1] = an1, -an1
    else:
        eps = (msq - 2 * m[-1] ** 2) / (1 - 2 * an**2)
        a[:] = m / sqrt(eps)
    a[-1], a[0] = an, -an
    return a


def _royston_pvalue(w, n):
    if n == 3:
        # exact null distribution
        p = 6.0 / pi * (asin(sqrt(min(w, 1.0))) - asin(sqrt(0.75)))
        return min(max(p, 0.0), 1.0)
    y = np.log1p(-w) if w < 1 else -np.inf
    if n <= 11:
        gamma = 0.459 * n - 2.273
        if y >= gamma:
            return 1e-19
        y = -np.log(gamma - y)
        mean = np.polyval([-0.0006714, 0.025054, -0.39978, 0.5440], n)
        sd = np.exp(np.polyval([-0.0020322, 0.062767, -0.77857, 1.3822], n))
    else:
        ln = np.log(n)
        mean = np.polyval([0.0038915, -0.083751, -0.31082, -1.5861], ln)
        sd = np.exp(np.polyval([0.0030302, -0.082676, -0.4803], ln))
    return float(norm.sf((y - mean) / sd))


def shapiro_wilk(sample, alpha=0.05, seed=0):
    """Shapiro-Wilk W test using Royston's approximations.

    Samples larger than 5000 are reduced to a subsample of 5000 drawn with
    ``seed``; the verdict then has ``subsampled=True``.
    """
    x = _as_sample(sample, 3)
    subsampled = False
    if len(x) > SW_MAX_N:
        x = np.random.default_rng(seed).choice(x, SW_MAX_N, replace=False)
        subsampled = True
    x = np.sort(x)
    n = len(x)
    a = _royston_coefficients(n)
    centred = x - x.mean()
    w = float(np.dot(a, x) ** 2 / np.dot(centred, centred))
    w = min(w, 1.0)
    p = _royston_pvalue(w, n)
    return NormalityVerdict(SHAPIRO_WILK, w, p, p > alpha, n, subsampled=subsampled)


def _ad_pvalue(a_star):
    # piecewise fit for the modified statistic (normal, both parameters estimated)
    if a_star < 0.2:
        p = 1 - np.exp(-13.436 + 101.14 * a_star - 223.73 * a_star**2)
    elif a_star < 0.34:
        p = 1 - np.exp(-8.318 + 42.796 * a_star - 59.938 * a_star**2)
    elif a_star < 0.6:
        p = np.exp(0.9177 - 4.279 * a_star - 1.38 * a_star**2)
    elif a_star <= 13:
        p = np.exp(1.2937 - 5.709 * a_star + 0.0186 * a_star**2)
    else:
        p = 0.0
    return float(min(max(p, 0.0), 1.0))


def anderson_darling(sample, alpha=0.05):
    """Anderson-Darling test of normality with estimated mean and variance.

    ``statistic`` is the small-sample modified value
    ``A2 * (1 + 0.75/n + 2.25/n**2)``. When ``alpha`` is one of the tabulated
    levels the verdict compares it against the critical value; otherwise it
    falls back to the approximate p-value.
    """
    x = np.sort(_as_sample(sample, 8))
    n = len(x)
    z = (x - x.mean()) / x.std(ddof=1)
    log_cdf = norm.logcdf(z)
    log_sf = norm.logsf(z)
    i = np.arange(1, n + 1)
    a2 = -n - np.sum((2 * i - 1) * (log_cdf + log_sf[::-1])) / n
    a_star = float(a2 * (1 + 0.75 / n + 2.25 / n**2))
    p = _ad_pvalue(a_star)

    crit = None
    for level, value in AD_CRITICAL_VALUES.items():
        if abs(level - alpha) < 1e-12:
            crit = value
    passed = a_star < crit if crit is not None else p > alpha
    return NormalityVerdict(ANDERSON_DARLING, a_star, p, passed, n, critical_value=crit)


_RUNNERS = {
    CHI_SQUARE: chi_square_normality,
    SHAPIRO_WILK: shapiro_wilk,
    ANDERSON_DARLING: anderson_darling,
}


def normality_battery(samples, alpha=0.05, seed=0):
    """Pass/fail counts of all three tests over a collection of samples.

    ``samples`` maps a key (bowler name) to a sequence of values. A sample
    the test cannot evaluate (zero variance, too few cells) counts as a
    failure, since it is not evidence of normality.
    """
    table = {test: {"fail": 0, "pass": 0} for test in TESTS}
    for key in sorted(samples):
        values = samples[key]
        for test, run in _RUNNERS.items():
            try:
                if test == SHAPIRO_WILK:
                    verdict = run(values, alpha, seed=seed)
                else:
                    verdict = run(values, alpha)
            except StatsError:
                table[test]["fail"] += 1
                continue
            table[test]["pass" if verdict.passed else "fail"] += 1
    return table
