import pytest

from awn.services.algebra import (
    EMPTY, NCPoly, canonicalize, comm, expand, gen, hole_choice_expansions, interval,
    label_from_set, labels, make_label, ncpoly_arith, qcomm, qcomm_bar,
)
from awn.services.errors import LabelError, ModeMismatchError
from awn.services.morphisms import UP, apply
from awn.services.scalar import central_ring, q


def L(label, n):
    return NCPoly.letter(label, n)


def test_adjacent_parts_merge():
    label = canonicalize(make_label([interval(1), interval(2, 3)], True), 3)
    assert label == gen(1, 3)


def test_non_adjacent_decreasing_stays():
    label = make_label([interval(5), interval(3), interval(1)], None, 5)
    assert len(label.parts) == 3
    assert not label.increasing


def test_decreasing_adjacent_merges_to_increasing():
    label = make_label([interval(2, 3), interval(1)], False, 3)
    assert label == gen(1, 3)
    assert label.increasing


def test_overlapping_parts_rejected():
    with pytest.raises(LabelError):
        make_label([interval(1, 2), interval(2, 3)], None, 3)


def test_out_of_range_rejected():
    with pytest.raises(LabelError):
        make_label([interval(1), interval(4)], None, 3)


def test_non_monotone_rejected():
    with pytest.raises(LabelError):
        make_label([interval(3), interval(1), interval(5)], None, 5)


def test_holes():
    label = label_from_set({2, 3, 6})
    assert label.holes() == [interval(4, 5)]
    assert str(label) == 'C[2..3;6]'


def test_expand_c13():
    n = 3
    expected = -qcomm(L(gen(1, 2), n), L(gen(2, 3), n)) + L(gen(1), n) * L(gen(3), n) \
        + L(gen(2), n) * L(gen(1, 3), n)
    assert expand(label_from_set({1, 3}), n) == expected


def test_expand_c236():
    n = 6
    expected = -qcomm(L(gen(2, 5), n), L(gen(4, 6), n)) + L(gen(2, 3), n) * L(gen(6), n) \
        + L(gen(4, 5), n) * L(gen(2, 6), n)
    assert expand(label_from_set({2, 3, 6}), n) == expected


def test_expand_empty_is_one():
    assert expand(EMPTY, 3) == NCPoly.one(3)
    assert NCPoly.letter(EMPTY, 3) == NCPoly.one(3)


def test_expand_only_generators():
    x = expand(label_from_set({1, 3, 5}), 5)
    assert all(letter.is_generator for letter in x.letters())


def test_hole_choices_count():
    assert len(hole_choice_expansions(label_from_set({1, 3, 5}), 5)) == 2
    assert len(hole_choice_expansions(gen(1, 2), 5)) == 1


def test_qcomm_of_commuting_central_letters():
    x = qcomm(L(gen(1), 3), L(gen(2), 3)).absorb_central()
    ring = central_ring(3)
    z1, z2 = ring.gens[0], ring.gens[1]
    assert x == NCPoly(3, {(): z1 * z2}, central=True)


def test_qcomm_with_itself_is_square():
    x = L(gen(1, 2), 3)
    assert qcomm(x, x) == x * x


def test_qcomm_bar_swaps():
    a, b = L(gen(1, 2), 3), L(gen(2, 3), 3)
    assert qcomm_bar(a, b) == qcomm(b, a)


def test_comm_plain_and_central():
    a, c = L(gen(1, 2), 3), L(gen(3), 3)
    plain = comm(a, c)
    assert len(plain) == 2
    assert comm(a.absorb_central(), c.absorb_central()).is_zero()


def test_ncpoly_arith_dispatch():
    a, b = L(gen(1, 2), 3), L(gen(2, 3), 3)
    assert ncpoly_arith(a, b, 'add') == a + b
    assert ncpoly_arith(a, b, 'mul') == a * b
    assert ncpoly_arith(a, q, 'scale') == a * q
    assert ncpoly_arith(a, b, 'qcomm_minus') == qcomm(b, a)
    assert ncpoly_arith(a, b, 'comm') == a * b - b * a


def test_mode_mismatch():
    a = L(gen(1, 2), 3)
    with pytest.raises(ModeMismatchError):
        a + a.absorb_central()
    with pytest.raises(ModeMismatchError):
        a + L(gen(1, 2), 4)


def test_absorb_deabsorb_roundtrip():
    x = L(gen(1), 3) * L(gen(1, 2), 3) * L(gen(1, 3), 3) + q
    central = x.absorb_central()
    assert central.letters() == {gen(1, 2)}
    assert central.deabsorb().absorb_central() == central


def test_up_reverses_words():
    a, b = L(gen(1, 2), 3), L(gen(2, 3), 3)
    assert apply(UP, a * b) == b * a


def test_up_of_expansion_is_decreasing_label():
    n = 3
    up = apply(UP, expand(label_from_set({1, 3}), n))
    # C_2 C_123 kommt umgekehrt heraus, zentral absorbiert stimmt es
    assert up.absorb_central() == expand(label_from_set({1, 3}, increasing=False), n).absorb_central()


def test_up_is_involution():
    x = L(gen(1, 2), 3) * L(gen(2, 3), 3) * q + L(gen(1, 3), 3)
    assert apply(UP, apply(UP, x)) == x


def test_labels_enumeration():
    all3 = labels(3)
    assert gen(1, 3) in all3
    assert label_from_set({1, 3}, increasing=False) in all3
    assert all(len(label.parts) <= 2 for label in labels(5, max_parts=2))


def test_negative_power_rejected():
    from awn.services.errors import AwError
    with pytest.raises(AwError):
        L(gen(1, 2), 3) ** -1


def test_str_uses_expression_grammar():
    x = L(gen(1, 2), 3) * L(gen(2, 3), 3) * 2 - L(label_from_set({1, 3}), 3)
    assert str(x) == '-C[1;3] + 2*C[1..2]*C[2..3]'
