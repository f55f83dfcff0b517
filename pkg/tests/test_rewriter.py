from fractions import Fraction
import random

import pytest

from awn.services.algebra import NCPoly, comm, expand, gen, interval, label_from_set
from awn.services.casimir import omega
from awn.services.errors import AwError
from awn.services.relations import DEFINING_FAMILIES, RelationFamily, build_instance, relation_instances
from awn.services.rewriter import (
    LetterOrder, VerdictStatus, complete, default_order, sample_q0, seed_relations, seed_rules,
    to_alphabet, verify_zero,
)
from awn.services.uq import RepSpec, phi


def L(label, n):
    return NCPoly.letter(label, n)


def test_alphabet_rank_three():
    order = default_order(3)
    assert order.letters == (label_from_set({1, 3}), gen(2, 3), gen(1, 2))


def test_alphabet_rank_four_has_ten_letters():
    assert len(default_order(4)) == 10


def test_letter_order_rejects_central_letters():
    with pytest.raises(AwError):
        LetterOrder(3, [gen(1, 3)])


def test_to_alphabet_absorbs_and_eliminates():
    n = 3
    x = L(gen(1), n) * L(label_from_set({1, 3}, increasing=False), n)
    out = to_alphabet(x, default_order(n))
    assert out.central
    assert all(letter.increasing for letter in out.letters())


def test_seed_rank_three_orders_c12_c23(rules3):
    n = 3
    reduced = rules3.reduce(L(gen(1, 2), n) * L(gen(2, 3), n))
    letters = [word for word, _ in reduced.items()]
    assert (gen(1, 2), gen(2, 3)) not in letters
    assert (gen(2, 3), gen(1, 2)) in letters


def test_seed_rule_agrees_with_representation(rules3):
    n = 3
    x = L(gen(1, 2), n) * L(gen(2, 3), n)
    spec = RepSpec.half(n)
    assert phi(rules3.reduce(x), spec, Fraction(3, 2)) == phi(x, spec, Fraction(3, 2))


def test_seed_has_no_gaps_at_rank_three():
    rules = seed_rules(3)
    assert rules.gaps == []
    assert rules.rejected == []


def test_reduce_cancels(rules3):
    x = expand(label_from_set({1, 3}), 3)
    assert rules3.reduce(x - x).is_zero()


def test_casimir_centrality_reduces_to_zero(rules3):
    n = 3
    w = omega({1, 2, 3}, n)
    for g in (gen(1, 2), gen(2, 3)):
        assert rules3.reduce(comm(w, L(g, n))).is_zero()


def test_completion_is_idempotent(rules3):
    again = complete(rules3, degree_bound=4, max_iter=10)
    assert set(again.rules) == set(rules3.rules)
    assert not again.incomplete


def test_incomplete_flag_when_capped():
    rules = complete(seed_rules(3), degree_bound=4, max_iter=0)
    assert rules.incomplete


def test_degree_bound_minimum():
    with pytest.raises(AwError):
        complete(seed_rules(3), degree_bound=2)


def test_rank_six_unsupported():
    with pytest.raises(AwError):
        seed_rules(6)


def test_verify_zero_nonzero_with_witness(rules3):
    verdict = verify_zero(L(gen(1, 2), 3) - L(label_from_set({1, 3}), 3), rules3)
    assert verdict.status == VerdictStatus.PROVED_NONZERO
    spec, q0 = verdict.witness
    assert spec == RepSpec.half(3)
    assert 1 < q0 < 2


def test_verify_zero_defining_relations(rules3):
    for inst in relation_instances(3, RelationFamily.THREE_ADJACENT):
        assert verify_zero(inst.letter_form(), rules3).is_zero


def test_verify_zero_without_rules_is_inconclusive():
    # ω_123 verschwindet im Bild, ohne Regeln kein Beweis
    verdict = verify_zero(omega({1, 2, 3}, 3), None)
    assert verdict.status == VerdictStatus.INCONCLUSIVE


def test_sample_q0_range():
    rng = random.Random(7)
    for _ in range(20):
        value = sample_q0(rng)
        assert 1 < value < 2
        assert value.denominator <= 100


@pytest.mark.slow
def test_rank_four_seed_covers_all_pairs():
    rules = seed_rules(4)
    assert rules.gaps == []


@pytest.mark.slow
def test_rank_four_commutator_identity():
    rules = complete(seed_rules(4), degree_bound=4, max_iter=10)
    inst = build_instance('comut1', (interval(1), interval(2), interval(3), interval(4)), 4)
    assert rules.reduce(inst.letter_form()).is_zero()


@pytest.mark.slow
def test_rank_four_casimir_is_not_proved_zero():
    rules = complete(seed_rules(4), degree_bound=4, max_iter=10)
    verdict = verify_zero(omega({1, 2, 3}, 4), rules)
    assert verdict.status == VerdictStatus.INCONCLUSIVE


def _derived_instances(n):
    derived = [family for family in RelationFamily if family not in DEFINING_FAMILIES]
    return [inst for family in derived for inst in relation_instances(n, family)]


def test_seed_marks_derived_relations():
    sources = [source for source, _ in seed_relations(3, default_order(3))]
    assert any(source.startswith('abgeleitet ') for source in sources)
    only_defining = [source for source, _ in seed_relations(3, default_order(3), DEFINING_FAMILIES)]
    assert not any(source.startswith('abgeleitet ') for source in only_defining)


def test_derived_families_follow_from_defining_seed():
    rules = complete(seed_rules(3, families=DEFINING_FAMILIES), degree_bound=4, max_iter=10)
    assert not rules.incomplete
    instances = _derived_instances(3)
    assert instances
    for inst in instances:
        assert rules.reduce(inst.letter_form()).is_zero(), inst.describe()


@pytest.mark.slow
def test_derived_families_follow_from_defining_seed_rank_four():
    rules = complete(seed_rules(4, families=DEFINING_FAMILIES), degree_bound=6, max_iter=10)
    for inst in _derived_instances(4):
        verdict = verify_zero(inst.letter_form(), rules)
        assert verdict.status != VerdictStatus.PROVED_NONZERO, inst.describe()
