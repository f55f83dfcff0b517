"""
Selbstprüfung
fast: alle Suiten bei n=3; full: zusätzlich das Rewriting bei n=4 und die
Darstellungs-Suiten bis n=5
"""
import logging
import random
from itertools import combinations
from typing import Callable, List, Optional

from awn.config import Config
from awn.services.algebra import Label, hole_choice_expansions, interval, labels, make_label
from awn.services.cache import cached_completion, rank_path
from awn.services.casimir import (
    check_casimir_identities, check_centrality, check_gamma_action, check_kernel,
    check_partition_independence, check_r0_matrix, gamma_basis,
)
from awn.services.errors import AwError
from awn.services.morphisms import (
    Comparator, check_braid_relations, check_coproduct_identities, check_formulas,
    check_morphism_property, check_requirements, check_rho_compatibility,
    check_up_compatibility, r, rb, weakest,
)
from awn.services.racah import check_racah
from awn.services.relations import RelationFamily, build_instance, relation_instances
from awn.services.report import CheckReport, log_report
from awn.services.rewriter import RuleSet, sample_q0

checks_logger = logging.getLogger('checks')

LEVELS = ('fast', 'full')
MAX_REWRITE_N = 4


def rules_provider(config: Config) -> Callable[[int], Optional[RuleSet]]:
    """Regeln pro Rang: aus dem Cache oder neu vervollständigt; n=5 ohne Regeln"""
    def provide(n: int) -> Optional[RuleSet]:
        if n > MAX_REWRITE_N:
            return None
        return cached_completion(n, config.degree_bound, config.max_iter,
                                 rank_path(config.cache, n), config.seed)
    return provide


def make_comparator(config: Config) -> Comparator:
    from awn.services.uq import RepSpec
    falsifier = [RepSpec(config.spins)] if config.spins is not None else None
    return Comparator(provider=rules_provider(config), falsifier=falsifier, seed=config.seed)


# ---------------------------------------------------------------------------
# Suiten, die nur hier zusammengesetzt werden
# ---------------------------------------------------------------------------

def check_presentation(comparator: Comparator) -> CheckReport:
    """aw(3): die drei Relationen der üblichen Präsentation folgen aus der Definition"""
    report = CheckReport("presentation n=3")
    subsets = (interval(1), interval(2), interval(3))
    for tag in ('relaw33', 'relaw31v', 'relaw32'):
        instance = build_instance(tag, subsets, 3)
        result = comparator.is_zero(instance.letter_form())
        report.add(instance.describe(), result.status, result.detail)
    log_report(report, checks_logger)
    return report


def check_catalogue(n: int, comparator: Comparator, generalized: bool = False) -> CheckReport:
    """Jede Instanz jeder Familie ist null in aw(n)"""
    report = CheckReport(f"relations n={n}")
    for family in RelationFamily:
        instances = relation_instances(n, family, generalized)
        if not instances:
            continue
        statuses = []
        for instance in instances:
            result = comparator.is_zero(instance.letter_form())
            if result.failed:
                report.add(instance.describe(), result.status, result.detail)
            statuses.append(result.status)
        report.add(f"{family.value} ({len(instances)} Instanzen)", weakest(statuses))
    log_report(report, checks_logger)
    return report


def check_hole_independence(n: int, comparator: Comparator, max_parts: int = 3) -> CheckReport:
    """Alle Lochwahlen eines mehrteiligen Labels liefern dasselbe Element"""
    report = CheckReport(f"holes n={n}")
    for label in labels(n, max_parts):
        if len(label.parts) < 3:
            continue
        expansions = hole_choice_expansions(label, n)
        statuses = [comparator.compare(a, b).status for a, b in combinations(expansions, 2)]
        report.add(f"Lochwahlen {label}", weakest(statuses))
    log_report(report, checks_logger)
    return report


def check_hole_independence_rep(label: Label, n: int, seed: int = 1, points: int = 2) -> CheckReport:
    """Lochwahlen im Spin-1/2-Bild an zufälligen Punkten q0"""
    from awn.services.uq import RepSpec, equal, phi
    spec = RepSpec.half(n)
    rng = random.Random(seed)
    q_points = [sample_q0(rng) for _ in range(points)]
    report = CheckReport(f"holes {label} n={n}")
    expansions = hole_choice_expansions(label, n)
    ok = all(equal(phi(a, spec, q0), phi(b, spec, q0))
             for q0 in q_points for a, b in combinations(expansions, 2))
    report.add(f"Lochwahlen {label} im Bild", 'rep-consistent' if ok else 'failed',
               "q0 = " + ", ".join(str(p) for p in q_points))
    log_report(report, checks_logger)
    return report


def check_conventions() -> CheckReport:
    from awn.services.uq import conventions
    report = CheckReport("conventions")
    try:
        chosen = conventions()
        report.add("U_q(sl2)-Konventionen", 'syntactic', str(chosen))
    except AwError as e:
        report.add("U_q(sl2)-Konventionen", 'error', str(e))
    log_report(report, checks_logger)
    return report


# ---------------------------------------------------------------------------
# Stufen
# ---------------------------------------------------------------------------

def _morphism_suites(n: int, comparator: Comparator, seed: int) -> List[CheckReport]:
    reports = [
        check_braid_relations(n, comparator),
        check_coproduct_identities(n, comparator),
        check_formulas(n, comparator, seed),
        check_up_compatibility(n, comparator, seed),
    ]
    for a in range(n):
        reports.append(check_morphism_property(r(a), n, comparator))
        reports.append(check_morphism_property(rb(a), n, comparator))
    return reports


def fast_suites(config: Config, comparator: Comparator) -> List[CheckReport]:
    n = 3
    reports = [
        check_conventions(),
        check_presentation(comparator),
        check_catalogue(n, comparator, config.generalized),
        check_requirements(comparator),
    ]
    reports += _morphism_suites(n, comparator, config.seed)
    reports += [
        check_casimir_identities(n, comparator),
        check_centrality({1, 2, 3}, n, comparator),
        check_gamma_action(n, comparator, config.seed),
        check_rho_compatibility(n),
        check_kernel(n),
        check_racah(),
    ]
    return reports


def full_suites(config: Config, comparator: Comparator) -> List[CheckReport]:
    reports = fast_suites(config, comparator)
    n = 4
    reports += [
        check_catalogue(n, comparator, config.generalized),
        check_hole_independence(n, comparator),
    ]
    reports += _morphism_suites(n, comparator, config.seed)
    reports += [check_casimir_identities(n, comparator)]
    for S in gamma_basis(n):
        reports.append(check_centrality(S, n, comparator))
        reports.append(check_partition_independence(S, n, comparator))
    reports += [
        check_gamma_action(n, comparator, config.seed),
        check_r0_matrix(comparator),
        check_rho_compatibility(n),
        check_kernel(n),
    ]

    rng = random.Random(config.seed)
    q_points = [sample_q0(rng), sample_q0(rng)]
    reports += [
        check_braid_relations(5, comparator),
        check_kernel(5, q_points),
        check_hole_independence_rep(make_label([interval(1), interval(3), interval(5)], True), 5, config.seed),
    ]
    return reports


def run_selfcheck(level: str, config: Config, comparator: Optional[Comparator] = None) -> List[CheckReport]:
    if level not in LEVELS:
        raise AwError(f"Unbekannte Stufe {level!r}, erlaubt: {', '.join(LEVELS)}")
    comparator = comparator or make_comparator(config)
    checks_logger.info(f"🔄 Selbstprüfung {level} (seed={config.seed})")
    if level == 'fast':
        return fast_suites(config, comparator)
    return full_suites(config, comparator)


def render(reports: List[CheckReport]) -> str:
    passed = all(report.passed for report in reports)
    lines = [report.render() for report in reports]
    total = sum(len(report.lines) for report in reports)
    lines.append(f"== selfcheck: {'PASS' if passed else 'FAIL'} ({len(reports)} suites, {total} checks) ==")
    return "\n".join(lines)
