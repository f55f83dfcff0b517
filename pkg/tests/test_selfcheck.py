import pytest

from awn.config import Config
from awn.services.algebra import NCPoly, gen, interval, make_label
from awn.services.errors import AwError
from awn.services.report import CheckReport
from awn.services.selfcheck import (
    check_conventions, check_hole_independence_rep, check_presentation, make_comparator, render,
    rules_provider, run_selfcheck,
)


def test_report_render():
    report = CheckReport("demo")
    report.add("a", 'syntactic')
    report.add("b", 'nonzero', "q0 = 3/2")
    assert not report.passed
    assert report.count('syntactic') == 1
    assert [line.name for line in report.failures] == ["b"]
    assert report.render().splitlines() == [
        "== demo: FAIL (2 checks) ==",
        "[  ok] a: syntactic",
        "[FAIL] b: nonzero (q0 = 3/2)",
    ]


def test_render_footer():
    ok = CheckReport("x")
    ok.add("a", 'proved')
    bad = CheckReport("y")
    bad.add("b", 'error')
    assert render([ok]).endswith("== selfcheck: PASS (1 suites, 1 checks) ==")
    assert render([ok, bad]).endswith("== selfcheck: FAIL (2 suites, 2 checks) ==")


def test_unknown_level():
    with pytest.raises(AwError):
        run_selfcheck('medium', Config())


def test_conventions_report():
    assert check_conventions().passed


def test_presentation(comparator3):
    report = check_presentation(comparator3)
    assert report.passed
    assert len(report.lines) == 3


def test_hole_independence_in_representation():
    label = make_label([interval(1), interval(3), interval(5)], True)
    report = check_hole_independence_rep(label, 5, seed=2, points=1)
    assert report.passed
    assert report.lines[0].status == 'rep-consistent'


def test_rules_provider_skips_large_rank():
    assert rules_provider(Config(degree_bound=4))(5) is None


def test_make_comparator_equal_inputs():
    comparator = make_comparator(Config(n=2))
    assert comparator.compare(NCPoly.letter(gen(1, 2), 2), NCPoly.letter(gen(1, 2), 2)).status == 'syntactic'


@pytest.mark.slow
def test_fast_selfcheck_passes():
    reports = run_selfcheck('fast', Config(degree_bound=4))
    assert all(report.passed for report in reports), render(reports)
