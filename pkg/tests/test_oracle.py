import math
import random
from fractions import Fraction

import pytest

from conftest import integer_windows, nondecreasing_grid, rand_fraction, rand_grid
from tsgronwall.bounds import (
    BoundScenario,
    best_linear_bound,
    thm1_bound_in2,
    thm2_bound,
    thm3_bound,
)
from tsgronwall.cli import example31_scenario
from tsgronwall.errors import GridMismatch, ModeRequired, NonPositiveA, NotDiscrete
from tsgronwall.grid2 import GridFunction2
from tsgronwall.numeric import Mode
from tsgronwall.oracle import (
    check_domination,
    equality_case_kernel,
    equality_case_linear,
    equality_case_power,
    run_campaign,
)
from tsgronwall.timescale import TimeScale


def test_linear_equality_case_with_zero_weight_is_the_offset():
    ts1, ts2 = integer_windows(4, 4)
    a = GridFunction2.constant(ts1, ts2, Fraction(1))
    f = GridFunction2.constant(ts1, ts2, Fraction(0))
    u = equality_case_linear(BoundScenario(a=a, f=f))
    assert all(v == 1 for row in u.values for v in row)


def test_linear_equality_case_hand_recursion():
    # u*(2,1) = 1 + f(0,0)*u*(0,0) + f(1,0)*u*(1,0) = 1 + 1/4 + 1/5
    sc = example31_scenario()
    u = equality_case_linear(sc)
    assert u.value(2, 1) == Fraction(29, 20)


def test_linear_equality_case_boundary_rows_equal_the_offset():
    rng = random.Random(7)
    ts1, ts2 = integer_windows(6, 5)
    a = nondecreasing_grid(rng, ts1, ts2)
    f = rand_grid(rng, ts1, ts2)
    u = equality_case_linear(BoundScenario(a=a, f=f))
    for t1 in ts1.points:
        assert u.value(t1, 0) == a.value(t1, 0)
    for t2 in ts2.points:
        assert u.value(0, t2) == a.value(0, t2)


def test_equality_cases_require_discrete_windows():
    ts1 = TimeScale.sample(0.0, 0.5, 3)
    ts2 = TimeScale.sample(0.0, 0.5, 3)
    a = GridFunction2.constant(ts1, ts2, 1.0)
    sc = BoundScenario(a=a, f=a)
    with pytest.raises(NotDiscrete):
        equality_case_linear(sc)


def test_power_equality_case_with_zero_weight():
    ts1, ts2 = integer_windows(3, 3, mode=Mode.FLOAT)
    a = GridFunction2.constant(ts1, ts2, 16.0)
    f = GridFunction2.constant(ts1, ts2, 0.0)
    u = equality_case_power(BoundScenario(a=a, f=f, p=2.0, q=1.0))
    assert all(v == 4.0 for row in u.values for v in row)


def test_power_equality_case_collapses_to_linear_for_unit_powers():
    rng = random.Random(13)
    ts1, ts2 = integer_windows(5, 5)
    a = nondecreasing_grid(rng, ts1, ts2, positive=True)
    f = rand_grid(rng, ts1, ts2)
    sc = BoundScenario(a=a, f=f, p=1, q=1)
    assert equality_case_power(sc).values == equality_case_linear(sc).values


def test_power_equality_case_one_step_hand_value():
    # u*(1,1) = (1 + 1*1)^(1/2) = sqrt(2)
    ts1, ts2 = integer_windows(3, 3, mode=Mode.FLOAT)
    a = GridFunction2.constant(ts1, ts2, 1.0)
    f = GridFunction2.constant(ts1, ts2, 1.0)
    u = equality_case_power(BoundScenario(a=a, f=f, p=2.0, q=1.0))
    assert u.value(1.0, 1.0) == math.sqrt(2)


def test_power_equality_case_guards():
    ts1, ts2 = integer_windows(3, 3)
    a = GridFunction2.constant(ts1, ts2, Fraction(1))
    with pytest.raises(ModeRequired):
        equality_case_power(BoundScenario(a=a, f=a, p=2, q=1))
    zero_a = GridFunction2.constant(ts1, ts2, Fraction(0))
    with pytest.raises(NonPositiveA):
        equality_case_power(BoundScenario(a=zero_a, f=a, p=1, q=1))


def test_kernel_equality_case_with_zero_kernel_is_the_offset():
    rng = random.Random(17)
    ts1, ts2 = integer_windows(4, 4)
    a = nondecreasing_grid(rng, ts1, ts2)
    f = nondecreasing_grid(rng, ts1, ts2)
    sc = BoundScenario(a=a, f=f, kernel=lambda *args: Fraction(0))
    assert equality_case_kernel(sc).values == a.values


def test_kernel_equality_case_reduces_to_linear():
    rng = random.Random(19)
    ts1, ts2 = integer_windows(5, 4)
    a = nondecreasing_grid(rng, ts1, ts2)
    w = rand_grid(rng, ts1, ts2)
    one = GridFunction2.constant(ts1, ts2, Fraction(1))
    kernel_sc = BoundScenario(
        a=a, f=one, kernel=lambda t1, t2, s1, s2, w=w: w.value(s1, s2)
    )
    linear_sc = BoundScenario(a=a, f=w)
    assert equality_case_kernel(kernel_sc).values == equality_case_linear(linear_sc).values


def test_kernel_equality_case_stays_below_the_kernel_bound():
    rng = random.Random(23)
    ts1, ts2 = integer_windows(5, 5)
    a = nondecreasing_grid(rng, ts1, ts2, positive=True)
    f = nondecreasing_grid(rng, ts1, ts2)
    coeffs = [rand_fraction(rng) for _ in range(3)]
    kernel = lambda t1, t2, s1, s2, c=coeffs: c[0] + c[1] * t2 + c[2] * s1 * s2
    sc = BoundScenario(a=a, f=f, kernel=kernel)
    u = equality_case_kernel(sc)
    result = check_domination(u, thm2_bound(sc))
    assert result.dominated
    assert result.worst_margin >= 0


def test_check_domination_zero_weight_attains_everywhere():
    rng = random.Random(29)
    ts1, ts2 = integer_windows(4, 3)
    a = nondecreasing_grid(rng, ts1, ts2)
    f = GridFunction2.constant(ts1, ts2, Fraction(0))
    sc = BoundScenario(a=a, f=f)
    u = equality_case_linear(sc)
    result = check_domination(u, thm1_bound_in2(sc))
    assert result.dominated
    assert result.worst_margin == 0
    assert len(result.attained_points) == 12


def test_check_domination_margin_zero_at_the_sharp_point():
    sc = example31_scenario()
    u = equality_case_linear(sc)
    result = check_domination(u, best_linear_bound(sc))
    assert result.dominated
    assert (2, 1) in result.attained_points  # 29/20 on both sides


def test_check_domination_negative_control():
    sc = example31_scenario()
    u = equality_case_linear(sc)
    report = best_linear_bound(sc)
    bumped_rows = [list(row) for row in u.values]
    bumped_rows[3][2] = report.values[3][2] + 1
    bumped = GridFunction2.from_rows(sc.ts1, sc.ts2, bumped_rows)
    result = check_domination(bumped, report)
    assert not result.dominated
    assert result.worst_margin == -1


def test_check_domination_rejects_mismatched_grids():
    sc = example31_scenario()
    other1, other2 = integer_windows(2, 2)
    u = GridFunction2.constant(other1, other2, Fraction(1))
    with pytest.raises(GridMismatch):
        check_domination(u, thm1_bound_in2(sc))


def test_two_point_second_window_degenerates_to_the_classic_product_bound():
    rng = random.Random(31)
    ts1, ts2 = integer_windows(8, 2)
    a = nondecreasing_grid(rng, ts1, ts2)
    f = rand_grid(rng, ts1, ts2)
    sc = BoundScenario(a=a, f=f)
    report = thm1_bound_in2(sc)
    # directly coded one-variable product bound with weights f(s, 0)
    for i in range(len(ts1.points)):
        product = Fraction(1)
        for s in range(i):
            product *= 1 + f.values[s][0]
        assert report.values[i][1] == a.values[i][1] * product
    result = check_domination(equality_case_linear(sc), report)
    assert result.dominated


def test_linear_equality_case_inherits_monotonicity():
    rng = random.Random(37)
    for _ in range(10):
        ts1, ts2 = integer_windows(rng.randint(2, 7), rng.randint(2, 7))
        a = nondecreasing_grid(rng, ts1, ts2)
        f = rand_grid(rng, ts1, ts2)
        u = equality_case_linear(BoundScenario(a=a, f=f))
        flags = u.monotone_flags()
        assert flags.nonnegative and flags.nondecreasing


def test_power_domination_small_float_scenario():
    ts1, ts2 = integer_windows(5, 5, mode=Mode.FLOAT)
    a = GridFunction2.constant(ts1, ts2, 1.0)
    f = GridFunction2.constant(ts1, ts2, 1.0)
    sc = BoundScenario(a=a, f=f, p=2.0, q=1.0)
    result = check_domination(equality_case_power(sc), thm3_bound(sc))
    assert result.dominated
    assert result.worst_margin >= -1e-9


def test_campaigns_smoke():
    for theorem in ("thm1", "thm2", "thm3", "thm4", "cor31"):
        summary = run_campaign(theorem, 6, seed=1, max_window=6)
        assert summary.failures == 0
        assert summary.cases == 6


def test_campaign_zero_cases_is_empty():
    summary = run_campaign("thm1", 0, seed=1)
    assert summary.cases == 0
    assert summary.failures == 0
    assert summary.worst_margin is None
    assert summary.attained_count == 0


def test_campaign_rejects_unknown_theorem():
    with pytest.raises(ValueError):
        run_campaign("thm9", 1, seed=0)


def test_campaign_is_reproducible():
    first = run_campaign("thm1", 5, seed=42, max_window=6)
    second = run_campaign("thm1", 5, seed=42, max_window=6)
    assert first.to_jsonable() == second.to_jsonable()
