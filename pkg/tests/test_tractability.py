import math

import numpy as np
import pytest

from korobov.errors import InvalidParameterError
from korobov.params import (
    ConstantFamily,
    ExplicitFamily,
    ExponentialFamily,
    GeometricFamily,
    Interval,
    PowerFamily,
)
from korobov.tractability import (
    analyze,
    derive_report,
    fit_exponential_rate,
    fit_exponential_rate_log,
    staircase_corners,
)


def test_geometric_geometric_full_verdict():
    # b_j = 2^j, a_j = 3^j: reciprocal sum 1, growth log 3, bracket [1, 2]
    report = analyze(GeometricFamily(1, 3), GeometricFamily(1, 2), 4)
    assert report.b_sum == Interval(1.0, 1.0)
    assert report.a_growth == pytest.approx(math.log(3.0))
    assert report.uexp is True and report.wt is True and report.pt_spt is True
    assert report.uexp_rate == Interval(1.0, 1.0)
    assert (report.tau_lower, report.tau_upper) == (1.0, 2.0)


def test_constant_b_kills_uniformity():
    report = analyze(GeometricFamily(1, 3), ConstantFamily(1), 5)
    assert report.b_sum.is_infinite
    assert report.uexp is False and report.pt_spt is False
    assert report.exp_rate_s == pytest.approx(1.0 / 5.0)
    assert report.uexp_rate is None and report.tau_lower is None


def test_constant_a_kills_weak_tractability():
    report = analyze(ConstantFamily(1), GeometricFamily(1, 2), 3)
    assert report.wt is False
    assert report.a_limit == 1.0


def test_polynomial_a_growth_is_too_slow():
    report = analyze(PowerFamily(1, 2), GeometricFamily(1, 2), 3)
    assert report.wt is True
    assert report.a_growth == 0.0
    assert report.pt_spt is False
    assert report.tau_lower is None  # no bracket without the verdict


def test_infinite_growth_pins_the_exponent():
    report = derive_report(2, 1.0, Interval(1.0, 1.0), math.inf, math.inf)
    assert report.pt_spt is True
    assert report.tau_lower == report.tau_upper == 1.0


def test_power_b_gives_certified_interval():
    report = analyze(GeometricFamily(1, 3), PowerFamily(1, 2), 3)
    b = report.b_sum
    assert not b.is_infinite
    assert b.lo <= math.pi**2 / 6 <= b.hi
    assert b.hi - b.lo < 1e-8
    # bracket endpoints propagate the interval
    assert report.tau_lower == pytest.approx(max(b.lo, math.log(3) / math.log(3)))
    assert report.tau_upper == pytest.approx(b.hi + math.log(3) / math.log(3))


def test_undecidable_tail_reports_unknown():
    report = analyze(ExplicitFamily((1, 2, 3)), GeometricFamily(1, 2), 3)
    assert report.a_limit is None and report.wt is None and report.pt_spt is None
    assert report.has_unknowns

    report_b = analyze(GeometricFamily(1, 2), ExplicitFamily((1, 2)), 2)
    assert report_b.b_sum is None and report_b.uexp is None


def test_tail_rules_decide():
    rep = analyze(ExplicitFamily((1, 4), ExponentialFamily(1, 1)), GeometricFamily(1, 2), 2)
    assert rep.a_limit == math.inf and rep.a_growth == pytest.approx(1.0)
    assert rep.pt_spt is True

    rep2 = analyze(ExplicitFamily((1, 4), "repeat"), GeometricFamily(1, 2), 2)
    assert rep2.a_limit == 4.0 and rep2.wt is False


def test_tail_below_one_rejected():
    with pytest.raises(InvalidParameterError):
        analyze(GeometricFamily(1, 2), PowerFamily(1, -1), 1)


def test_verdicts_are_tail_properties():
    for s in (1, 2, 5, 9):
        r = analyze(GeometricFamily(1, 3), GeometricFamily(1, 2), s)
        assert r.b_sum == Interval(1.0, 1.0)
        assert r.a_growth == pytest.approx(math.log(3.0))
        assert (r.wt, r.pt_spt, r.uexp) == (True, True, True)
        assert r.exp_rate_s == pytest.approx(1.0 / sum(2.0**-j for j in range(1, s + 1)))


@pytest.mark.parametrize(
    "a,b",
    [
        (GeometricFamily(1, 3), GeometricFamily(1, 2)),
        (ConstantFamily(1), ConstantFamily(1)),
        (PowerFamily(1, 2), PowerFamily(1, 2)),
        (ExponentialFamily(1, 0.5), GeometricFamily(1, 1.5)),
        (ExplicitFamily((1, 2), "repeat"), ExplicitFamily((1, 3), GeometricFamily(1, 2))),
    ],
)
def test_report_internal_consistency(a, b):
    report = analyze(a, b, 4)
    assert report.exp_rate_s == pytest.approx(1.0 / report.b_sum_s)
    if report.uexp:
        assert report.uexp_rate == report.b_sum.reciprocal()
    if report.pt_spt:
        # the strong verdict implies the weaker ones and carries a bracket
        assert report.uexp is True and report.wt is True
        assert report.tau_lower <= report.tau_upper
        assert report.tau_lower == pytest.approx(
            max(report.b_sum.lo, math.log(3.0) / report.a_growth)
        )
    else:
        assert report.tau_lower is None and report.tau_upper is None


def test_fit_recovers_synthetic_rates():
    ns = np.arange(10, 400, 7)
    for p_true in (0.5, 1.0):
        es = 0.5 ** (ns**p_true)
        keep = [(int(n), float(e)) for n, e in zip(ns, es) if e > 0.0]
        fit = fit_exponential_rate(keep)
        assert fit.slope == pytest.approx(p_true, abs=0.02)
        assert fit.residual < 1e-9


def test_fit_validates_input():
    with pytest.raises(InvalidParameterError):
        fit_exponential_rate([(1, 0.5)] * 4)
    rising = [(n, 0.5 + 0.01 * n) for n in range(1, 12)]
    with pytest.raises(InvalidParameterError):
        fit_exponential_rate(rising)
    flat = [(n, 0.5) for n in range(1, 12)]
    with pytest.raises(InvalidParameterError):
        fit_exponential_rate(flat)
    too_big = [(n, 1.5 - 0.01 * n) for n in range(1, 12)]
    with pytest.raises(InvalidParameterError):
        fit_exponential_rate(too_big)


def test_fit_log_domain_matches_linear_domain():
    ns = np.arange(20, 200, 9)
    es = 0.5 ** (ns**0.6)
    linear = fit_exponential_rate([(int(n), float(e)) for n, e in zip(ns, es)])
    logged = fit_exponential_rate_log(
        [(int(n), float(np.log(1.0 / e))) for n, e in zip(ns, es)]
    )
    assert linear.slope == pytest.approx(logged.slope, rel=1e-12)


def test_staircase_corners():
    stairs = [(1, 0.5), (2, 0.5), (3, 0.25), (4, 0.25), (5, 0.125)]
    assert staircase_corners(stairs) == [(2, 0.5), (4, 0.25), (5, 0.125)]
