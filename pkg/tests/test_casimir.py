import random

import pytest

from awn.services.algebra import NCPoly, gen
from awn.services.casimir import (
    GammaVector, PartitionedSet, check_casimir_identities, check_centrality, check_gamma_action,
    check_kernel, default_partition, express_in_gamma, gamma_action, gamma_basis, omega, omega3,
    _permutation, _sorting_word, partitions, set_str,
)
from awn.services.errors import AwError, LabelError, UnsupportedError
from awn.services.morphisms import UP, apply, d, r, rb


def test_omega3_with_empty_part_vanishes():
    assert omega3([], [2], [3], 3).is_zero()


def test_omega3_order_enforced():
    with pytest.raises(AwError):
        omega3([2], [1], [3], 3)
    with pytest.raises(LabelError):
        omega3([1], [2], [5], 3)


def test_omega_of_singletons_is_omega3():
    assert omega({1, 2, 3}, 3) == omega3([1], [2], [3], 3)
    assert omega({1, 3, 4}, 4) == omega3([1], [3], [4], 4)


def test_omega_1234_inclusion_exclusion():
    n = 4
    expected = omega3([1, 2], [3], [4], n) - omega3([1], [3], [4], n) - omega3([2], [3], [4], n)
    assert omega({1, 2, 3, 4}, n, PartitionedSet.of([1, 2], [3], [4])) == expected


def test_omega_needs_three_elements():
    with pytest.raises(AwError):
        omega({1, 2}, 3)


def test_partitions():
    assert default_partition({1, 2, 3, 4}) == PartitionedSet.of([1], [2, 3], [4])
    assert len(partitions({1, 2, 3, 4})) == 3
    with pytest.raises(AwError):
        PartitionedSet.of([2], [1], [3])


def test_gamma_basis():
    assert gamma_basis(3) == [frozenset({1, 2, 3})]
    assert [set_str(S) for S in gamma_basis(4)] == ['{1,2,3}', '{1,2,4}', '{1,3,4}', '{2,3,4}', '{1,2,3,4}']


def test_omega3_up_invariant_in_representation():
    from awn.services.uq import RepSpec, phi
    w = omega3([1], [2], [3], 3)
    spec = RepSpec.half(3)
    assert phi(apply(UP, w), spec) == phi(w, spec)


def test_delta_of_omega3():
    assert apply(d(1), omega3([1], [2], [3], 3)) == omega3([1, 2], [3], [4], 4)


def test_gamma_action_transposition():
    v = gamma_action(r(1), GammaVector.unit({1, 3, 4}), 4)
    assert v == GammaVector.unit({2, 3, 4})
    assert gamma_action(rb(1), GammaVector.unit({1, 3, 4}), 4) == v


def test_gamma_action_delta():
    v = gamma_action(d(2), GammaVector.unit({1, 2, 3}), 3)
    expected = GammaVector.unit({1, 2, 3, 4}) + GammaVector.unit({1, 3, 4}) + GammaVector.unit({1, 2, 4})
    assert v == expected
    assert gamma_action(d(3), GammaVector.unit({1, 2}), 3) == GammaVector.unit({1, 2})


def test_r0_matrix_columns():
    act = lambda S: gamma_action(r(0), GammaVector.unit(S), 4)
    assert act({2, 3, 4}) == GammaVector.unit({2, 3, 4})
    assert act({1, 2, 3, 4}) == GammaVector.unit({2, 3, 4}).scale(-2) - GammaVector.unit({1, 2, 3, 4})
    assert act({1, 2, 3}) == GammaVector.unit({1, 2, 3}) + GammaVector.unit({2, 3, 4}) \
        + GammaVector.unit({1, 2, 3, 4})


def test_r0_squared_is_identity_on_gamma4():
    report = check_gamma_action(4)
    assert report.passed, report.render()
    assert report.lines[0].status == 'reported'
    assert report.lines[-1].status == 'syntactic'


@pytest.mark.parametrize('seed', range(5))
def test_sorting_word_reproduces_permutation(seed):
    rng = random.Random(seed)
    n = 4
    for _ in range(20):
        word = [rng.choice([r, rb])(rng.randrange(n)) for _ in range(rng.randrange(1, 9))]
        perm = _permutation(word, n)
        assert _permutation(_sorting_word(perm), n) == perm


def test_r0_squared_derived_at_rank_three(comparator3):
    report = check_gamma_action(3, comparator3)
    assert report.passed, report.render()
    assert report.lines[0].status == 'proved'


def test_r0_on_gamma5_needs_rules():
    with pytest.raises(UnsupportedError):
        gamma_action(r(0), GammaVector.unit({1, 2, 3}), 5)


def test_gamma_vector_text():
    v = GammaVector.unit({1, 2, 3}) + GammaVector.unit({2, 3, 4}).scale(-2)
    assert str(v) == 'w{1,2,3} + (-2)*w{2,3,4}'
    assert v.to_dict() == {'{1,2,3}': '1', '{2,3,4}': '-2'}


def test_centrality_rank_three(comparator3):
    report = check_centrality({1, 2, 3}, 3, comparator3)
    assert report.passed
    assert report.count('nonzero') == 0


def test_casimir_identities_rank_three(comparator3):
    report = check_casimir_identities(3, comparator3)
    assert report.passed, report.render()


def test_express_unit(comparator3):
    result = express_in_gamma(omega({1, 2, 3}, 3), 3, comparator3)
    assert result.status == 'expressed'
    assert result.vector == GammaVector.unit({1, 2, 3})


def test_express_rejects_non_central(comparator3):
    x = NCPoly.letter(gen(1, 2), 3)
    assert express_in_gamma(x, 3, comparator3).status == 'not-central'


@pytest.mark.parametrize('n', [3, 4])
def test_kernel(n):
    report = check_kernel(n)
    assert report.passed
    assert report.count('syntactic') == len(gamma_basis(n))


@pytest.mark.slow
def test_kernel_rank_five_at_points():
    from fractions import Fraction
    report = check_kernel(5, [Fraction(3, 2), Fraction(7, 5)])
    assert report.passed
    assert report.count('rep-consistent') == len(gamma_basis(5))
