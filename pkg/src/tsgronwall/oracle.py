"""Brute-force certification of the bounds.

The pointwise-largest function satisfying each premise is the one that
satisfies it with equality, and because every right-hand side reads the
unknown only at strictly smaller indices in both axes, that function
falls out of a single sweep over the grid. A bound that dominates the
equality case dominates every admissible function, which turns a
universally quantified claim into one comparison per grid point.

Campaigns draw reproducible random scenarios (rationals with numerators
0..9 and denominators 1..9; nondecreasing grids built as running sums of
nonnegative increments) and count domination failures across seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import (
    BoundReport,
    BoundScenario,
    best_linear_bound,
    cor31_bound,
    kernel_value,
    thm1_bound_in2,
    thm1_bound_in6,
    thm2_bound,
    thm3_bound,
    thm4_bound,
)
from .errors import GridMismatch, ModeRequired, NonPositiveA, NotDiscrete
from .grid2 import GridFunction2
from .numeric import Mode, Scalar, format_scalar, scalar_pow, zero
from .timescale import TimeScale

REL_TOL = 1e-9

CAMPAIGN_THEOREMS = ("thm1", "thm2", "thm3", "thm4", "cor31")

THM3_PAIRS = ((2, 1), (3, 2), (1, 1))
THM4_PAIRS = ((1, 1), (2, 1), (2, 2), (3, 2))


@dataclass
class OracleResult:
    """Outcome of comparing one premise solution against one bound."""

    u_star: GridFunction2
    dominated: bool
    worst_margin: Scalar
    attained_points: list[tuple[Scalar, Scalar]]


def _require_discrete(sc: BoundScenario) -> None:
    if not (sc.ts1.is_discrete and sc.ts2.is_discrete):
        raise NotDiscrete("equality-case recursions need discrete windows")


def equality_case_linear(sc: BoundScenario) -> GridFunction2:
    """Largest solution of u = a + (double integral of f*u), computed by
    one lexicographic sweep: the integral reads u only at indices smaller
    in both axes. Exact in exact mode."""
    _require_discrete(sc)
    n1, n2 = sc.a.shape
    mu1 = sc.ts1.graininesses()
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    u = [[None] * n2 for _ in range(n1)]
    s = [[zero(sc.mode)] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            if i and j:
                s[i][j] = (
                    s[i - 1][j]
                    + s[i][j - 1]
                    - s[i - 1][j - 1]
                    + mu1[i - 1] * mu2[j - 1] * f[i - 1][j - 1] * u[i - 1][j - 1]
                )
            u[i][j] = a[i][j] + s[i][j]
    return GridFunction2.from_rows(sc.ts1, sc.ts2, u)


def equality_case_power(sc: BoundScenario) -> GridFunction2:
    """Largest solution of u**p = a + (double integral of f * u**q).

    Float mode runs the recursion directly. Exact mode needs p = q, and
    then the returned grid holds the p-th powers u**p, which satisfy a
    linear recursion; this matches the powered values exact power bounds
    report, so domination checks compare like with like.
    """
    _require_discrete(sc)
    for row in sc.a.values:
        for v in row:
            if v <= 0:
                raise NonPositiveA("power recursion needs a positive offset grid")
    if sc.mode is Mode.EXACT:
        if sc.p != sc.q:
            raise ModeRequired("exact power recursion needs p = q; use float mode")
        return equality_case_linear(sc)
    n1, n2 = sc.a.shape
    mu1 = sc.ts1.graininesses()
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    inv_p = 1.0 / sc.p
    u = [[None] * n2 for _ in range(n1)]
    s = [[0.0] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            if i and j:
                s[i][j] = (
                    s[i - 1][j]
                    + s[i][j - 1]
                    - s[i - 1][j - 1]
                    + mu1[i - 1] * mu2[j - 1] * f[i - 1][j - 1]
                    * scalar_pow(u[i - 1][j - 1], sc.q, Mode.FLOAT)
                )
            u[i][j] = scalar_pow(a[i][j] + s[i][j], inv_p, Mode.FLOAT)
    return GridFunction2.from_rows(sc.ts1, sc.ts2, u)


def equality_case_kernel(sc: BoundScenario) -> GridFunction2:
    """Largest solution of u**p = a + f(t1, t2) * (double kernel integral
    of g(t1, t2, ., .) * u**q).

    The kernel is pinned at the target indices while the summed values
    sit strictly below them, so the recursion stays closed; each target
    pays for its own double sum. Exact mode follows the same p = q
    powered convention as equality_case_power.
    """
    if sc.kernel is None:
        raise ValueError("kernel recursion needs a kernel")
    _require_discrete(sc)
    for row in sc.a.values:
        for v in row:
            if v < 0:
                raise NonPositiveA("kernel recursion needs a nonnegative offset grid")
    exact = sc.mode is Mode.EXACT
    if exact and sc.p != sc.q:
        raise ModeRequired("exact kernel recursion needs p = q; use float mode")
    n1, n2 = sc.a.shape
    pts1, pts2 = sc.ts1.points, sc.ts2.points
    mu1 = sc.ts1.graininesses()
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    u = [[None] * n2 for _ in range(n1)]
    u_q = [[None] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            t1, t2 = pts1[i], pts2[j]
            s = zero(sc.mode)
            for ii in range(i):
                for jj in range(j):
                    s += (
                        mu1[ii] * mu2[jj]
                        * kernel_value(sc, t1, t2, pts1[ii], pts2[jj])
                        * u_q[ii][jj]
                    )
            rhs = a[i][j] + f[i][j] * s
            if exact:
                u[i][j] = rhs
                u_q[i][j] = rhs
            else:
                u[i][j] = scalar_pow(rhs, 1.0 / sc.p, Mode.FLOAT)
                u_q[i][j] = scalar_pow(u[i][j], sc.q, Mode.FLOAT)
    return GridFunction2.from_rows(sc.ts1, sc.ts2, u)


def domination_summary(u_values, bound_values, mode: Mode, exclude=frozenset()):
    """Pointwise comparison of a solution against bound values.

    Exact mode compares rationals outright and margins are absolute;
    float mode uses margins relative to max(|bound|, |solution|, 1) at
    tolerance REL_TOL. Returns (dominated, worst_margin, attained index
    pairs)."""
    worst = None
    attained = []
    dominated = True
    for i, (u_row, b_row) in enumerate(zip(u_values, bound_values)):
        for j, (uv, bv) in enumerate(zip(u_row, b_row)):
            if (i, j) in exclude:
                continue
            if mode is Mode.EXACT:
                margin = bv - uv
                if margin < 0:
                    dominated = False
                if margin == 0:
                    attained.append((i, j))
            else:
                scale = max(abs(bv), abs(uv), 1.0)
                margin = (bv - uv) / scale
                if margin < -REL_TOL:
                    dominated = False
                if abs(margin) <= REL_TOL:
                    attained.append((i, j))
            worst = margin if worst is None else min(worst, margin)
    return dominated, worst, attained


def check_domination(u: GridFunction2, report: BoundReport) -> OracleResult:
    """Compare a premise solution against one bound report.

    Powered reports (exact power bounds with p > 1) must be paired with
    the powered solution grid the exact recursions return; both sides
    then carry p-th powers and the comparison is equivalent because
    x -> x**p is increasing on the nonnegative axis.
    """
    if u.ts1 != report.ts1 or u.ts2 != report.ts2:
        raise GridMismatch("solution and report do not share the same windows")
    dominated, worst, attained_idx = domination_summary(
        u.values, report.values, report.mode
    )
    points = [(u.ts1.points[i], u.ts2.points[j]) for i, j in attained_idx]
    return OracleResult(u, dominated, worst, points)


# -- reproducible random scenarios ------------------------------------


def _rand_fraction(rng: random.Random, lowest_num: int = 0) -> Fraction:
    return Fraction(rng.randint(lowest_num, 9), rng.randint(1, 9))


def _rand_rows(rng, n1, n2, lowest_num=0):
    return [[_rand_fraction(rng, lowest_num) for _ in range(n2)] for _ in range(n1)]


def _running_sum_rows(rows):
    """2-D running sums: nondecreasing along both axes when entries are
    nonnegative, and everywhere >= the top-left entry."""
    n1, n2 = len(rows), len(rows[0])
    out = [[Fraction(0)] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            acc = rows[i][j]
            if i:
                acc += out[i - 1][j]
            if j:
                acc += out[i][j - 1]
            if i and j:
                acc -= out[i - 1][j - 1]
            out[i][j] = acc
    return out


def _float_rows(rows):
    return [[float(v) for v in row] for row in rows]


def _polynomial_kernel(coefficients, mode: Mode):
    c0, c1, c2, c3, c4, c5 = [
        float(c) if mode is Mode.FLOAT else Fraction(c) for c in coefficients
    ]

    def kernel(t1, t2, s1, s2):
        return c0 + c1 * t1 + c2 * t2 + c3 * s1 + c4 * s2 + c5 * s1 * s2

    return kernel


def _window_sizes(rng, max_window):
    if max_window < 2:
        raise ValueError("max_window must be at least 2")
    return rng.randint(2, max_window), rng.randint(2, max_window)


def _scales(rng, n1, n2, mode, sequence_scales):
    if sequence_scales:
        incs1 = [_rand_fraction(rng, 1) for _ in range(n1 - 1)]
        incs2 = [_rand_fraction(rng, 1) for _ in range(n2 - 1)]
        if mode is Mode.FLOAT:
            incs1 = [float(v) for v in incs1]
            incs2 = [float(v) for v in incs2]
        ts1 = TimeScale.sequence(0, incs1, mode=mode)
        ts2 = TimeScale.sequence(0, incs2, mode=mode)
    else:
        ts1 = TimeScale.integers(0, n1 - 1, mode=mode)
        ts2 = TimeScale.integers(0, n2 - 1, mode=mode)
    return ts1, ts2


def random_linear_scenario(rng: random.Random, max_window: int = 12) -> BoundScenario:
    """f nonnegative, a nonnegative and nondecreasing, on an integer grid."""
    n1, n2 = _window_sizes(rng, max_window)
    ts1, ts2 = _scales(rng, n1, n2, Mode.EXACT, False)
    f_rows = _rand_rows(rng, n1, n2)
    a_rows = _running_sum_rows(_rand_rows(rng, n1, n2))
    return BoundScenario(
        a=GridFunction2.from_rows(ts1, ts2, a_rows),
        f=GridFunction2.from_rows(ts1, ts2, f_rows),
    )


def random_power_scenario(
    rng: random.Random, max_window: int = 12, p=1, q=1, mode: Mode = Mode.EXACT
) -> BoundScenario:
    """a positive and nondecreasing, f nonnegative, with powers p >= q."""
    n1, n2 = _window_sizes(rng, max_window)
    ts1, ts2 = _scales(rng, n1, n2, mode, False)
    f_rows = _rand_rows(rng, n1, n2)
    seed_rows = _rand_rows(rng, n1, n2)
    seed_rows[0][0] = _rand_fraction(rng, 1)
    a_rows = _running_sum_rows(seed_rows)
    if mode is Mode.FLOAT:
        f_rows, a_rows = _float_rows(f_rows), _float_rows(a_rows)
    return BoundScenario(
        a=GridFunction2.from_rows(ts1, ts2, a_rows),
        f=GridFunction2.from_rows(ts1, ts2, f_rows),
        p=p, q=q,
    )


def random_kernel_scenario(
    rng: random.Random,
    max_window: int = 12,
    p=1,
    q=1,
    mode: Mode = Mode.EXACT,
    sequence_scales: bool = False,
) -> BoundScenario:
    """a positive, a and f nondecreasing, plus a nonnegative polynomial
    kernel in all four arguments."""
    n1, n2 = _window_sizes(rng, max_window)
    ts1, ts2 = _scales(rng, n1, n2, mode, sequence_scales)
    f_rows = _running_sum_rows(_rand_rows(rng, n1, n2))
    seed_rows = _rand_rows(rng, n1, n2)
    seed_rows[0][0] = _rand_fraction(rng, 1)
    a_rows = _running_sum_rows(seed_rows)
    if mode is Mode.FLOAT:
        f_rows, a_rows = _float_rows(f_rows), _float_rows(a_rows)
    coefficients = [_rand_fraction(rng) for _ in range(6)]
    return BoundScenario(
        a=GridFunction2.from_rows(ts1, ts2, a_rows),
        f=GridFunction2.from_rows(ts1, ts2, f_rows),
        kernel=_polynomial_kernel(coefficients, mode),
        p=p, q=q,
    )


# -- campaigns ---------------------------------------------------------


@dataclass
class CampaignSummary:
    theorem: str
    cases: int
    failures: int
    worst_margin: Optional[Scalar]
    attained_count: int
    seed: int

    def to_jsonable(self) -> dict:
        worst = self.worst_margin
        if isinstance(worst, Fraction):
            worst = format_scalar(worst)
        return {
            "theorem": self.theorem,
            "cases": self.cases,
            "failures": self.failures,
            "worst_margin": worst,
            "attained_count": self.attained_count,
            "seed": self.seed,
        }


def _mode_for_pair(p: int, q: int) -> Mode:
    return Mode.EXACT if Fraction(q, p) - 1 in (0, -1) else Mode.FLOAT


def _values_agree(first: BoundReport, second: BoundReport) -> bool:
    if first.mode is Mode.EXACT:
        return first.values == second.values
    for row_a, row_b in zip(first.values, second.values):
        for va, vb in zip(row_a, row_b):
            if abs(va - vb) > REL_TOL * max(abs(va), abs(vb), 1.0):
                return False
    return True


def _run_case(theorem: str, rng: random.Random, case_index: int, max_window: int):
    """One campaign case: returns (ok, oracle results). The last result in
    the list belongs to the tightest bound and feeds the attained count."""
    if theorem == "thm1":
        sc = random_linear_scenario(rng, max_window)
        u = equality_case_linear(sc)
        reports = [thm1_bound_in2(sc), thm1_bound_in6(sc), best_linear_bound(sc)]
        results = [check_domination(u, rep) for rep in reports]
        return all(r.dominated for r in results), results
    if theorem == "thm2":
        sc = random_kernel_scenario(rng, max_window)
        u = equality_case_kernel(sc)
        result = check_domination(u, thm2_bound(sc))
        return result.dominated, [result]
    if theorem == "thm3":
        p, q = THM3_PAIRS[case_index % len(THM3_PAIRS)]
        sc = random_power_scenario(rng, max_window, p=p, q=q, mode=_mode_for_pair(p, q))
        u = equality_case_power(sc)
        result = check_domination(u, thm3_bound(sc))
        return result.dominated, [result]
    if theorem == "thm4":
        p, q = THM4_PAIRS[case_index % len(THM4_PAIRS)]
        sc = random_kernel_scenario(rng, max_window, p=p, q=q, mode=_mode_for_pair(p, q))
        u = equality_case_kernel(sc)
        result = check_domination(u, thm4_bound(sc))
        return result.dominated, [result]
    if theorem == "cor31":
        p, q = THM4_PAIRS[case_index % len(THM4_PAIRS)]
        sc = random_kernel_scenario(
            rng, max_window, p=p, q=q, mode=_mode_for_pair(p, q), sequence_scales=True
        )
        u = equality_case_kernel(sc)
        report = cor31_bound(sc)
        result = check_domination(u, report)
        paths_agree = _values_agree(report, thm4_bound(sc))
        return result.dominated and paths_agree, [result]
    raise ValueError(f"unknown campaign theorem {theorem!r}")


def run_campaign(theorem: str, cases: int, seed: int, max_window: int = 12) -> CampaignSummary:
    """Run `cases` seeded scenarios and count the ones where any checked
    bound failed to dominate its equality-case solution."""
    if theorem not in CAMPAIGN_THEOREMS:
        raise ValueError(f"unknown campaign theorem {theorem!r}")
    if cases < 0:
        raise ValueError("cases must be nonnegative")
    rng = random.Random(seed)
    failures = 0
    worst = None
    attained_total = 0
    for case_index in range(cases):
        ok, results = _run_case(theorem, rng, case_index, max_window)
        for res in results:
            worst = res.worst_margin if worst is None else min(worst, res.worst_margin)
        if results:
            attained_total += len(results[-1].attained_points)
        if not ok:
            failures += 1
    return CampaignSummary(theorem, cases, failures, worst, attained_total, seed)
