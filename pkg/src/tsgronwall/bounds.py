"""Explicit pointwise majorants for the double-integral inequalities.

Each bound function takes a BoundScenario and returns a BoundReport with
the majorant at every grid point plus the scanned hypothesis flags.
Hypothesis failures never abort a computation; they downgrade the report
to uncertified so the values can still be explored.

Names follow the CLI selector strings. thm1-in2 and thm1-in6 are the two
linear bounds, with the exponential accumulated along the first and the
second axis respectively; best-linear takes their pointwise minimum.
thm2 adds a four-argument kernel frozen at each target point, thm3 the
power pair p >= q > 0, thm4 both, and cor31 is the sequence-scale route
to thm4 through the literal increment product.

Exact mode and powers: the generator weight a**(q/p - 1) is exact only
when the exponent is 0 or -1, anything else raises ModeRequired. When
p = q > 1 the bound itself, a**(1/p) * e**(1/p), is irrational, so exact
reports carry (a * e), the p-th power of the bound, flagged ``powered``;
comparisons against the matching powered oracle stay exact because
x -> x**p is increasing on the nonnegative axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import GridMismatch, KernelDomain, ModeRequired, NonPositiveA, WrongScaleKind
from .grid2 import GridFunction2
from .numeric import Mode, Scalar, one, require_mode, scalar_pow, to_mode, zero
from .timescale import SEQUENCE, TimeScale, exp_prefix_from_increments

THEOREMS = ("thm1-in2", "thm1-in6", "best-linear", "thm2", "thm3", "thm4", "cor31")

Kernel4 = Callable[[Scalar, Scalar, Scalar, Scalar], Scalar]


@dataclass(frozen=True)
class BoundScenario:
    """Shared bound inputs: offset grid a, weight grid f, an optional
    kernel g(t1, t2, s1, s2), and the power pair p >= q > 0."""

    a: GridFunction2
    f: GridFunction2
    kernel: Optional[Kernel4] = None
    p: Scalar = 1
    q: Scalar = 1

    def __post_init__(self):
        if self.a.ts1 != self.f.ts1 or self.a.ts2 != self.f.ts2:
            raise GridMismatch("a and f must live on the same pair of windows")
        object.__setattr__(self, "p", to_mode(self.p, self.mode))
        object.__setattr__(self, "q", to_mode(self.q, self.mode))
        if not self.q > 0:
            raise ValueError("q must be positive")
        if not self.p >= self.q:
            raise ValueError("p must be at least q")

    @property
    def ts1(self) -> TimeScale:
        return self.a.ts1

    @property
    def ts2(self) -> TimeScale:
        return self.a.ts2

    @property
    def mode(self) -> Mode:
        return self.a.mode

    @property
    def approximate(self) -> bool:
        return self.ts1.approximate or self.ts2.approximate

    def power_exponent(self) -> Scalar:
        """q/p - 1, the exponent the power bounds apply to a inside the
        generator."""
        return self.q / self.p - 1


def kernel_value(sc: BoundScenario, t1, t2, s1, s2) -> Scalar:
    """Evaluate the scenario kernel, guarding its triangular domain
    start1 <= s1 <= t1, start2 <= s2 <= t2."""
    if sc.kernel is None:
        raise ValueError("scenario has no kernel")
    if not (sc.ts1.start <= s1 <= t1 and sc.ts2.start <= s2 <= t2):
        raise KernelDomain(
            f"kernel evaluated outside its domain: ({t1}, {t2}, {s1}, {s2})"
        )
    return require_mode(sc.kernel(t1, t2, s1, s2), sc.mode, "kernel value")


@dataclass
class BoundReport:
    """One bound on one scenario: the per-point majorant plus the scanned
    hypothesis flags. ``certified`` means every flag came back true;
    ``approximate`` marks sampled windows; ``powered`` marks exact power
    bounds stored as p-th powers."""

    theorem: str
    mode: Mode
    ts1: TimeScale
    ts2: TimeScale
    values: tuple[tuple[Scalar, ...], ...]
    hypotheses: dict[str, bool]
    approximate: bool
    powered: bool = False
    power: Scalar = 1
    sharpness: Optional[tuple[tuple[str, ...], ...]] = None

    @property
    def certified(self) -> bool:
        return all(self.hypotheses.values())

    def value(self, t1, t2) -> Scalar:
        return self.values[self.ts1.index(t1)][self.ts2.index(t2)]


def _hypotheses(sc: BoundScenario, *, f_monotone=False, a_positive=False) -> dict:
    a_flags = sc.a.monotone_flags()
    f_flags = sc.f.monotone_flags()
    hyp = {
        "a_nonnegative": a_flags.nonnegative,
        "a_nondecreasing": a_flags.nondecreasing,
        "f_nonnegative": f_flags.nonnegative,
    }
    if f_monotone:
        hyp["f_nondecreasing"] = f_flags.nondecreasing
    if a_positive:
        hyp["a_positive"] = all(v > 0 for row in sc.a.values for v in row)
    return hyp


def _require_a_not_negative(sc: BoundScenario) -> None:
    # a < 0 is unrecoverable for the power bounds (roots leave the reals);
    # a == 0 only clears the positivity flag and is handled pointwise.
    for row in sc.a.values:
        for v in row:
            if v < 0:
                raise NonPositiveA("offset grid has negative entries")


def _check_exact_exponent(sc: BoundScenario) -> Scalar:
    expo = sc.power_exponent()
    if sc.mode is Mode.EXACT and expo not in (0, -1):
        raise ModeRequired(
            f"generator exponent {expo} has no exact value; use float mode"
        )
    return expo


def _weighted_a_power(sc: BoundScenario, weight, a_value, expo) -> Scalar:
    """weight * a**expo, with a zero weight killing the term before the
    power is taken. The only admissible zero of a sits where the weight
    vanishes, so a negative power never meets a zero base on valid data."""
    if weight == 0:
        return zero(sc.mode)
    if expo == 0:
        return weight
    if a_value <= 0:
        raise NonPositiveA(
            "offset grid must be positive where the generator needs a negative power"
        )
    return weight * scalar_pow(a_value, expo, sc.mode)


def _outer_value(sc: BoundScenario, a_value, exp_value) -> Scalar:
    """a**(1/p) * e**(1/p), or the p-th power (a * e) in exact mode."""
    if sc.mode is Mode.EXACT:
        return a_value * exp_value
    inv_p = 1.0 / sc.p
    return scalar_pow(a_value, inv_p, Mode.FLOAT) * scalar_pow(exp_value, inv_p, Mode.FLOAT)


def thm1_bound_in2(sc: BoundScenario) -> BoundReport:
    """Linear bound accumulated along the first axis: a(t1, t2) times the
    product over s1 < t1 of 1 + mu1(s1) * (delta integral of f(s1, .) up
    to t2)."""
    hyp = _hypotheses(sc)
    n1, n2 = sc.a.shape
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    inner = [zero(sc.mode)] * n1
    out = [[None] * n2 for _ in range(n1)]
    for j in range(n2):
        if j > 0:
            w = mu2[j - 1]
            inner = [inner[i] + w * f[i][j - 1] for i in range(n1)]
        prefix = sc.ts1.exp_prefix(inner[: n1 - 1])
        for i in range(n1):
            out[i][j] = a[i][j] * prefix[i]
    return BoundReport(
        "thm1-in2", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
    )


def thm1_bound_in6(sc: BoundScenario) -> BoundReport:
    """Mirror linear bound accumulated along the second axis, with the
    inner delta integral of f(., s2) taken up to t1."""
    hyp = _hypotheses(sc)
    n1, n2 = sc.a.shape
    mu1 = sc.ts1.graininesses()
    a, f = sc.a.values, sc.f.values
    inner = [zero(sc.mode)] * n2
    out = [[None] * n2 for _ in range(n1)]
    for i in range(n1):
        if i > 0:
            w = mu1[i - 1]
            inner = [inner[j] + w * f[i - 1][j] for j in range(n2)]
        prefix = sc.ts2.exp_prefix(inner[: n2 - 1])
        for j in range(n2):
            out[i][j] = a[i][j] * prefix[j]
    return BoundReport(
        "thm1-in6", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
    )


def best_linear_bound(sc: BoundScenario) -> BoundReport:
    """Pointwise minimum of the two linear bounds. The sharpness table
    records which side won at each point: "in2", "in6" or "tie"."""
    r2 = thm1_bound_in2(sc)
    r6 = thm1_bound_in6(sc)
    n1, n2 = sc.a.shape
    values = []
    sharpness = []
    for i in range(n1):
        vrow, srow = [], []
        for j in range(n2):
            b2, b6 = r2.values[i][j], r6.values[i][j]
            if b2 < b6:
                vrow.append(b2)
                srow.append("in2")
            elif b6 < b2:
                vrow.append(b6)
                srow.append("in6")
            else:
                vrow.append(b2)
                srow.append("tie")
        values.append(tuple(vrow))
        sharpness.append(tuple(srow))
    return BoundReport(
        "best-linear", sc.mode, sc.ts1, sc.ts2,
        tuple(values), r2.hypotheses, sc.approximate,
        sharpness=tuple(sharpness),
    )


def thm2_bound(sc: BoundScenario) -> BoundReport:
    """Kernel bound. For each target point the kernel's leading arguments
    are pinned there, so no inner sums can be shared between targets and
    the grid costs O(n1^2 * n2^2) kernel evaluations in total; correctness
    over speed, the windows are desk-scale."""
    if sc.kernel is None:
        raise ValueError("thm2 needs a kernel")
    hyp = _hypotheses(sc, f_monotone=True)
    n1, n2 = sc.a.shape
    pts1, pts2 = sc.ts1.points, sc.ts2.points
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    kernel_nonneg = True
    out = [[None] * n2 for _ in range(n1)]
    for i_star in range(n1):
        t1s = pts1[i_star]
        for j_star in range(n2):
            t2s = pts2[j_star]
            f_star = f[i_star][j_star]
            gen = []
            for i in range(i_star):
                s = zero(sc.mode)
                for jj in range(j_star):
                    g_val = kernel_value(sc, t1s, t2s, pts1[i], pts2[jj])
                    if g_val < 0:
                        kernel_nonneg = False
                    s += mu2[jj] * g_val
                gen.append(f_star * s)
            e = sc.ts1.exp_prefix(gen)[-1]
            out[i_star][j_star] = a[i_star][j_star] * e
    hyp["kernel_nonnegative"] = kernel_nonneg
    return BoundReport(
        "thm2", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
    )


def thm3_bound(sc: BoundScenario) -> BoundReport:
    """Power bound: offset and exponential both raised to 1/p, with the
    generator weighting f by a**(q/p - 1)."""
    expo = _check_exact_exponent(sc)
    _require_a_not_negative(sc)
    hyp = _hypotheses(sc, a_positive=True)
    n1, n2 = sc.a.shape
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    inner = [zero(sc.mode)] * n1
    out = [[None] * n2 for _ in range(n1)]
    for j in range(n2):
        if j > 0:
            w = mu2[j - 1]
            inner = [
                inner[i] + w * _weighted_a_power(sc, f[i][j - 1], a[i][j - 1], expo)
                for i in range(n1)
            ]
        prefix = sc.ts1.exp_prefix(inner[: n1 - 1])
        for i in range(n1):
            out[i][j] = _outer_value(sc, a[i][j], prefix[i])
    powered = sc.mode is Mode.EXACT and sc.p != 1
    return BoundReport(
        "thm3", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
        powered=powered, power=sc.p,
    )


def thm4_bound(sc: BoundScenario) -> BoundReport:
    """Kernel and power combined: the per-target kernel integral weighted
    by a**(q/p - 1) along the way, everything raised to 1/p."""
    if sc.kernel is None:
        raise ValueError("thm4 needs a kernel")
    expo = _check_exact_exponent(sc)
    _require_a_not_negative(sc)
    hyp = _hypotheses(sc, f_monotone=True, a_positive=True)
    n1, n2 = sc.a.shape
    pts1, pts2 = sc.ts1.points, sc.ts2.points
    mu2 = sc.ts2.graininesses()
    a, f = sc.a.values, sc.f.values
    kernel_nonneg = True
    out = [[None] * n2 for _ in range(n1)]
    for i_star in range(n1):
        t1s = pts1[i_star]
        for j_star in range(n2):
            t2s = pts2[j_star]
            f_star = f[i_star][j_star]
            gen = []
            if f_star == 0:
                gen = [zero(sc.mode)] * i_star
            else:
                for i in range(i_star):
                    s = zero(sc.mode)
                    for jj in range(j_star):
                        g_val = kernel_value(sc, t1s, t2s, pts1[i], pts2[jj])
                        if g_val < 0:
                            kernel_nonneg = False
                        s += mu2[jj] * _weighted_a_power(sc, g_val, a[i][jj], expo)
                    gen.append(f_star * s)
            e = sc.ts1.exp_prefix(gen)[-1]
            out[i_star][j_star] = _outer_value(sc, a[i_star][j_star], e)
    hyp["kernel_nonnegative"] = kernel_nonneg
    powered = sc.mode is Mode.EXACT and sc.p != 1
    return BoundReport(
        "thm4", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
        powered=powered, power=sc.p,
    )


def cor31_bound(sc: BoundScenario) -> BoundReport:
    """Sequence-scale route to thm4: the same bound, but graininesses are
    read off the increment sequences and the exponential is the literal
    increment product. Must agree with thm4_bound exactly in exact mode."""
    if sc.ts1.kind != SEQUENCE or sc.ts2.kind != SEQUENCE:
        raise WrongScaleKind("cor31 needs sequence scales on both axes")
    if sc.kernel is None:
        raise ValueError("cor31 needs a kernel")
    expo = _check_exact_exponent(sc)
    _require_a_not_negative(sc)
    hyp = _hypotheses(sc, f_monotone=True, a_positive=True)
    n1, n2 = sc.a.shape
    pts1, pts2 = sc.ts1.points, sc.ts2.points
    alphas = sc.ts1.increments
    betas = sc.ts2.increments
    a, f = sc.a.values, sc.f.values
    kernel_nonneg = True
    out = [[None] * n2 for _ in range(n1)]
    for i_star in range(n1):
        t1s = pts1[i_star]
        for j_star in range(n2):
            t2s = pts2[j_star]
            f_star = f[i_star][j_star]
            gen = []
            if f_star == 0:
                gen = [zero(sc.mode)] * i_star
            else:
                for i in range(i_star):
                    s = zero(sc.mode)
                    for jj in range(j_star):
                        g_val = kernel_value(sc, t1s, t2s, pts1[i], pts2[jj])
                        if g_val < 0:
                            kernel_nonneg = False
                        s += betas[jj] * _weighted_a_power(sc, g_val, a[i][jj], expo)
                    gen.append(f_star * s)
            e = exp_prefix_from_increments(alphas[:i_star], gen, sc.mode)[-1]
            out[i_star][j_star] = _outer_value(sc, a[i_star][j_star], e)
    hyp["kernel_nonnegative"] = kernel_nonneg
    powered = sc.mode is Mode.EXACT and sc.p != 1
    return BoundReport(
        "cor31", sc.mode, sc.ts1, sc.ts2,
        tuple(tuple(r) for r in out), hyp, sc.approximate,
        powered=powered, power=sc.p,
    )


_BOUND_FUNCTIONS = {
    "thm1-in2": thm1_bound_in2,
    "thm1-in6": thm1_bound_in6,
    "best-linear": best_linear_bound,
    "thm2": thm2_bound,
    "thm3": thm3_bound,
    "thm4": thm4_bound,
    "cor31": cor31_bound,
}


def compute_bound(theorem: str, sc: BoundScenario) -> BoundReport:
    """Dispatch on a selector string from THEOREMS."""
    try:
        fn = _BOUND_FUNCTIONS[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem selector {theorem!r}") from None
    return fn(sc)
