from fractions import Fraction

import pytest

from awn.services.errors import AwError, PoleError
from awn.services.scalar import (
    HSeries, QFIELD, central_ring, evaluate, laurent_parts, q, q_int, qrat_arith,
    qrat_eval, qrat_hseries, qrat_invert, qrat_str, to_qrat,
)


def test_division_normalizes():
    ok, value, err = qrat_arith(q ** 2 - 1, q - 1, 'div')
    assert ok and err is None
    assert value == q + 1
    assert qrat_str(value) == 'q+1'


def test_square_clears_negative_powers():
    x = q - q ** -1
    ok, value, _ = qrat_arith(x, x, 'mul')
    assert ok
    assert qrat_str(value) == '(q^4-2*q^2+1)/(q^2)'


def test_difference_of_squares():
    ok, value, _ = qrat_arith((q + q ** -1) * (q - q ** -1), q ** 2 - q ** -2, 'eq')
    assert ok and value is True


def test_division_by_zero_is_error_value():
    ok, value, err = qrat_arith(q, 0, 'div')
    assert not ok
    assert value is None
    assert 'Null' in err


def test_unknown_operation():
    ok, _, err = qrat_arith(q, q, 'pow')
    assert not ok and 'pow' in err


def test_neg_needs_one_argument():
    ok, value, _ = qrat_arith(q, None, 'neg')
    assert ok and value == -q


def test_field_laws_on_samples():
    samples = [q + 2, (q ** 2 - 3) / (q + 1), (5 * q ** -3) / 7, 1 / (q ** 2 + q + 1)]
    for a in samples:
        for b in samples:
            for c in samples:
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


def test_canonical_form_is_idempotent():
    f = (2 * q ** 3 - 2 * q) / (4 * q ** 2 + 4)
    assert laurent_parts(f) == laurent_parts(to_qrat(f))
    assert qrat_str(f) == "(q^3-q)/(2*q^2+2)"


def test_denominator_sign_positive():
    _, _, den = laurent_parts(1 / (-q - 1))
    assert den[max(den)] > 0


def test_evaluate():
    assert evaluate((q - q ** -1) ** 2, Fraction(2)) == Fraction(9, 4)
    assert evaluate((q ** 2 - 1) / (q - 1), Fraction(3)) == 4


@pytest.mark.parametrize('q0', [0, 1, -1])
def test_evaluate_rejects_excluded_points(q0):
    with pytest.raises(PoleError):
        evaluate(1 / (q + q ** -1), Fraction(q0))
    ok, _, err = qrat_eval(1 / (q + q ** -1), q0)
    assert not ok and err


def test_evaluate_pole():
    with pytest.raises(PoleError):
        evaluate(1 / (q - 2), Fraction(2))


def test_q_int():
    assert q_int(2) == q + q ** -1
    assert q_int(-3) == -q_int(3)
    assert q_int(0) == 0


def test_invert_is_involution():
    f = (q ** 3 + 2) / (q - 5)
    assert qrat_invert(qrat_invert(f)) == f
    assert qrat_invert(q) == q ** -1


def test_to_qrat_rejects_bool_and_strings():
    with pytest.raises(AwError):
        to_qrat(True)
    with pytest.raises(AwError):
        to_qrat('q')


def test_hseries_epsilon():
    s = qrat_hseries((q - q ** -1) ** 2 / (q + q ** -1))
    assert s.valuation == 2
    assert s.leading() == 2


def test_hseries_pole():
    s = qrat_hseries(1 / (q - q ** -1))
    assert s.valuation == -1
    assert s.leading() == Fraction(1, 2)


def test_hseries_constant():
    s = qrat_hseries(q + q ** -1)
    assert s.valuation == 0
    assert s.leading() == 2


def test_hseries_zero_is_flagged():
    s = qrat_hseries(QFIELD.zero)
    assert s.identically_zero
    assert s.end is None


def test_hseries_max_order_window():
    s = qrat_hseries(q ** 3, max_order=2)
    assert s.terms() == {0: 1, 1: 3, 2: 3}
    assert s.end == 3


def test_hseries_polynomial_agrees_with_evaluation():
    # Polynom vom Grad 3: Reihe mit 4 Termen ist exakt
    f = 2 * q ** 3 - q + 5
    s = qrat_hseries(f, precision=4)
    for h in (Fraction(1, 3), Fraction(1, 7), Fraction(-1, 5)):
        ok, value, _ = qrat_eval(f, 1 + h)
        assert ok
        assert s.value_at(h) == value


def test_hseries_truncation_error_is_small():
    f = 1 / (q + 1)
    s = qrat_hseries(f, precision=3)
    h = Fraction(1, 100)
    assert abs(s.value_at(h) - evaluate(f, 1 + h)) < h ** 3


def test_hseries_arithmetic_truncates_to_common_window():
    a = HSeries.from_terms({0: Fraction(1), 1: Fraction(2)}, 3)
    b = HSeries.from_terms({1: Fraction(1)}, 2)
    assert (a + b).end == 2
    assert (a * b).terms() == {1: Fraction(1)}
    assert (a * b).end == 2


def test_hseries_coefficient_outside_window():
    s = qrat_hseries(q, precision=2)
    with pytest.raises(AwError):
        s.coefficient(5)


def test_central_ring_variables():
    R = central_ring(3)
    assert [str(g) for g in R.gens] == ['z1', 'z2', 'z3', 'zf']
