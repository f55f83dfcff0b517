from fractions import Fraction

import pytest

from awn.services.algebra import NCPoly, gen, interval, label_from_set
from awn.services.errors import AwError
from awn.services.morphisms import UP, apply
from awn.services.relations import (
    RelationFamily, build_instance, decreasing_elimination, defining_instances,
    increasing_tuples, relation_instances, relation_polys,
)
from awn.services.uq import RepSpec, phi_is_zero


def test_three_adjacent_at_rank_three():
    instances = relation_instances(3, RelationFamily.THREE_ADJACENT)
    assert len(instances) == 2
    assert {inst.subsets for inst in instances} == {
        (interval(1), interval(2), interval(3)),
        (interval(3), interval(2), interval(1)),
    }
    assert all(inst.equation == 'relaw31v' for inst in instances)


def test_commutation_contains_nested_and_disjoint_pairs():
    pairs = {inst.subsets for inst in relation_instances(4, RelationFamily.COMMUTATION)}
    assert (interval(1, 2), interval(1, 4)) in pairs
    assert (interval(1, 2), interval(3, 4)) in pairs
    assert (interval(1, 2), interval(2, 3)) not in pairs


def test_generalized_commutation_adds_multi_part_labels():
    plain = relation_instances(4, RelationFamily.COMMUTATION)
    general = relation_instances(4, RelationFamily.COMMUTATION, generalized=True)
    assert len(general) > len(plain)
    assert any(inst.equation == 'commg2' for inst in general)


def test_family_undefined_at_rank_is_empty():
    assert relation_instances(3, RelationFamily.FOUR_ADJACENT) == []


def test_rank_below_two_rejected():
    with pytest.raises(AwError):
        relation_instances(1, RelationFamily.COMMUTATION)


def test_adjacent_tuples_have_no_gaps():
    tuples = list(increasing_tuples(4, 3))
    assert tuples
    assert not any(gapped for _, gapped in tuples)
    gapped = [t for t, g in increasing_tuples(4, 3, adjacent=False) if g]
    assert (interval(1), interval(2), interval(4)) in gapped


def test_describe_and_text():
    inst = build_instance('relaw33', (interval(1), interval(2), interval(3)), 3)
    assert inst.describe() == 'relaw33({1},{2},{3})'
    assert str(inst).startswith('C[1;3] = ')


def test_build_instance_errors():
    with pytest.raises(AwError):
        build_instance('relaw33', (interval(1), interval(2)), 3)
    with pytest.raises(AwError):
        build_instance('nope', (interval(1),), 3)


def test_relaw33_is_definition_of_c13():
    inst = build_instance('relaw33', (interval(1), interval(2), interval(3)), 3)
    assert inst.expanded().is_zero()


@pytest.mark.parametrize('n', [3, 4])
def test_defining_relations_vanish_in_spin_half(n):
    spec = RepSpec.half(n)
    for inst in defining_instances(n):
        assert phi_is_zero(inst.letter_form(), spec), inst.describe()


@pytest.mark.parametrize('generalized', [False, True])
@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_every_family_enumerates(n, generalized):
    for family in RelationFamily:
        instances = relation_instances(n, family, generalized)
        assert all(inst.family == family for inst in instances)


def test_ff_commutators_mix_arities():
    tags = {inst.equation for inst in relation_instances(4, RelationFamily.FF_COMMUTATORS)}
    assert tags == {'com13', 'com1324'}
    four = [inst for inst in relation_instances(4, RelationFamily.FF_COMMUTATORS) if inst.equation == 'com1324']
    assert all(len(inst.subsets) == 4 for inst in four)


@pytest.mark.parametrize('family', list(RelationFamily))
@pytest.mark.parametrize('n', [3, 4])
def test_every_family_vanishes_in_spin_half(n, family):
    spec = RepSpec.half(n)
    for inst in relation_instances(n, family):
        assert phi_is_zero(inst.letter_form(), spec, Fraction(3, 2)), inst.describe()


@pytest.mark.slow
@pytest.mark.parametrize('family', list(RelationFamily))
def test_generalized_instances_vanish_at_rank_four(family):
    spec = RepSpec.half(4)
    for inst in relation_instances(4, family, generalized=True):
        assert phi_is_zero(inst.letter_form(), spec, Fraction(3, 2)), inst.describe()


def test_relation_polys_are_expanded():
    spec = RepSpec.half(3)
    for poly in relation_polys(3, RelationFamily.THREE_CLUSTER):
        assert phi_is_zero(poly, spec)


def test_decreasing_adjacent_is_increasing():
    label = label_from_set({1, 2}, increasing=False)
    assert decreasing_elimination(label, 3) == NCPoly.letter(gen(1, 2), 3)


def test_decreasing_elimination_in_representation():
    n = 3
    label = label_from_set({1, 3}, increasing=False)
    diff = NCPoly.letter(label, n) - decreasing_elimination(label, n)
    assert phi_is_zero(diff, RepSpec.half(n))


def test_decreasing_elimination_only_increasing_letters():
    x = decreasing_elimination(label_from_set({1, 3, 5}, increasing=False), 5)
    assert all(letter.increasing for letter in x.letters())


def test_elimination_agrees_with_up():
    n = 3
    up_of_rising = apply(UP, NCPoly.letter(label_from_set({1, 3}), n))
    assert up_of_rising == NCPoly.letter(label_from_set({1, 3}, increasing=False), n)
