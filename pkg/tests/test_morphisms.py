import random

import pytest

from awn.services.algebra import NCPoly, gen, label_from_set, random_element
from awn.services.errors import AwError
from awn.services.morphisms import (
    R0P, UP, Comparator, apply, apply_generator_map, check_braid_relations, check_central_action,
    check_formulas, check_morphism_property, check_requirements, check_rho_compatibility,
    check_up_compatibility, d, delta_word, parse_word, r, r0p_label, rb, weakest, word_rank, word_str,
)


def letter(n, *elements, increasing=True):
    return NCPoly.letter(label_from_set(set(elements), increasing), n)


def test_r2_examples():
    n = 4
    assert apply_generator_map(r(2), gen(3, 4), n) == letter(n, 2, 4)
    assert apply_generator_map(r(2), gen(1, 2), n) == letter(n, 1, 3, increasing=False)


def test_rb2_on_one_hole_label():
    assert apply_generator_map(rb(2), label_from_set({2, 5}), 5) == letter(5, 3, 5)


def test_r0_at_rank_three():
    n = 3
    assert apply_generator_map(r(0), gen(1, 2), n) == letter(n, 1, 3, increasing=False)
    assert apply_generator_map(rb(0), gen(1, 2), n) == letter(n, 1, 3)
    assert apply_generator_map(r(0), gen(2, 3), n) == letter(n, 2, 3)


def test_delta_two():
    n = 3
    assert apply(d(2), letter(n, 1)) == letter(4, 1)
    assert apply(d(2), letter(n, 1, 2)) == letter(4, 1, 2, 3)
    assert apply(d(2), letter(n, 3)) == letter(4, 4)


def test_delta_word_reverses_intervals():
    n = 4
    word = delta_word(1, n - 1)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            image = apply(word, NCPoly.letter(gen(i, j), n))
            assert image == NCPoly.letter(gen(n - j + 1, n - i + 1), n)


def test_r_rb_inverse_on_random_elements():
    rng = random.Random(3)
    n = 4
    for a in range(n):
        for _ in range(2):
            x = random_element(n, rng)
            assert apply((r(a), rb(a)), x) == x


def test_word_order_right_to_left():
    n = 3
    x = NCPoly.letter(gen(1, 2), n)
    assert apply((r(1), r(2)), x) == apply(r(1), apply(r(2), x))


def test_word_rank_and_validation():
    assert word_rank(parse_word('d0 r1'), 3) == 4
    with pytest.raises(AwError):
        word_rank(parse_word('r3'), 3)
    assert word_rank(parse_word('r3 d0'), 3) == 4


def test_parse_word():
    assert parse_word('r0 rb2 d1 up r0p') == (r(0), rb(2), d(1), UP, parse_word('r0p')[0])
    assert word_str(parse_word('rb1 r2')) == 'rb1 r2'
    with pytest.raises(AwError):
        parse_word('x1')
    with pytest.raises(AwError):
        parse_word('   ')


def test_weakest():
    assert weakest([]) == 'syntactic'
    assert weakest(['syntactic', 'proved']) == 'proved'
    assert weakest(['proved', 'nonzero', 'inconclusive']) == 'nonzero'


def test_comparator_without_rules_is_rep_consistent():
    comparator = Comparator()
    x = NCPoly.letter(label_from_set({1, 3}), 3)
    assert comparator.compare(x, x).status == 'syntactic'
    result = comparator.compare(x, NCPoly.letter(label_from_set({1, 3}, False), 3))
    assert result.status == 'nonzero'
    assert 'q=' in result.detail


def test_comparator_rank_mismatch():
    assert Comparator().compare(letter(3, 1, 2), letter(4, 1, 2)).status == 'nonzero'


def test_central_action_is_transposition():
    assert check_central_action(4).passed


def test_requirements(comparator3):
    assert check_requirements(comparator3).passed


def test_rho_compatibility():
    report = check_rho_compatibility(3)
    assert report.passed
    assert report.count('syntactic') == 2


def test_braid_relations_rank_three(comparator3):
    report = check_braid_relations(3, comparator3)
    assert report.passed, report.render()


def test_braid_needs_rank_three(comparator3):
    with pytest.raises(AwError):
        check_braid_relations(2, comparator3)


def test_formulas_rank_three(comparator3):
    assert check_formulas(3, comparator3).passed


def test_up_compatibility_rank_three(comparator3):
    assert check_up_compatibility(3, comparator3).passed


@pytest.mark.parametrize('tag', [r(1), rb(0), d(1)])
def test_morphism_property_rank_three(tag, comparator3):
    report = check_morphism_property(tag, 3, comparator3)
    assert report.passed, report.render()


@pytest.mark.slow
def test_braid_relations_rank_four():
    from awn.config import Config
    from awn.services.selfcheck import make_comparator
    report = check_braid_relations(4, make_comparator(Config(n=4)))
    assert report.passed, report.render()


def test_r0p_closed_form():
    n = 3
    assert r0p_label(gen(1, 2), n) == NCPoly.letter(gen(1, 2), n)
    assert r0p_label(gen(2, 3), n) == NCPoly.letter(label_from_set({1, 3}), n)
    assert r0p_label(gen(3), n) == NCPoly.letter(gen(1, 3), n)
    assert r0p_label(gen(1, 3), n) == NCPoly.letter(gen(3), n)
    assert parse_word('r0p up') == (R0P, UP)
