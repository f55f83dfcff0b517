import pytest

from awn.services.algebra import NCPoly, expand, gen, label_from_set, qcomm
from awn.services.errors import ParseError
from awn.services.parser import (
    Binary, Call, Gen, Num, Pow, QVar, parse, parse_expression, parse_label, read, to_text,
)
from awn.services.scalar import central_ring, q


def test_parse_tree():
    expr = parse('2*C[1..2] - q^-1')
    assert isinstance(expr, Binary) and expr.op == '-'
    assert expr.left == Binary('*', Num(2), Gen((gen(1, 2).parts[0],)))
    assert expr.right == Pow(QVar(), -1)


def test_qcomm_lowers_to_definition():
    n = 3
    x = read('qcomm(C[1..2], C[2..3])', n)
    assert x == qcomm(NCPoly.letter(gen(1, 2), n), NCPoly.letter(gen(2, 3), n))


def test_multi_part_label_expands():
    assert read('C[1;3]', 3) == expand(label_from_set({1, 3}), 3)
    assert read('C[1;3]', 3, expand=False) == NCPoly.letter(label_from_set({1, 3}), 3)


def test_scalar_normalization_and_absorption():
    x = read('(q^2-1)/(q-1) * C[1]', 3).absorb_central()
    ring = central_ring(3)
    assert x == NCPoly(3, {(): ring.ground_new(q + 1) * ring.gens[0]}, central=True)


def test_decreasing_label():
    x = read('C[3;1]', 3, expand=False)
    (word, _), = x.items()
    assert not word[0].increasing


def test_commbar_and_comm():
    n = 3
    a, b = NCPoly.letter(gen(1, 2), n), NCPoly.letter(gen(2, 3), n)
    assert read('qcommbar(C[1..2], C[2..3])', n) == qcomm(b, a)
    assert read('comm(C[1..2], C[2..3])', n) == a * b - b * a


def test_to_text_roundtrip():
    for text in ['C[1..2]*(C[2..3] + 3)', '-(q + 1)^2', 'qcomm(C[1], -C[2;4])', '2 - (3 - C[1])']:
        expr = parse(text)
        assert parse(to_text(expr)) == expr


def test_output_of_ncpoly_reparses():
    n = 3
    x = read('q^2*C[1..2]*C[2..3] - (q+1)/(q-1)*C[1;3] + 5', n, expand=False)
    assert read(str(x), n, expand=False) == x


@pytest.mark.parametrize('text, position', [
    ('C[1..2] C[2..3]', 8),
    ('C[1..2', 6),
    ('2 $ 3', 2),
    ('foo(C[1])', 0),
    ('C[3..1]', 6),
])
def test_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    assert '^' in str(info.value)


def test_out_of_range_index():
    with pytest.raises(ParseError) as info:
        read('C[1;5]', 3)
    assert info.value.position == 0


def test_overlap_rejected():
    with pytest.raises(ParseError):
        read('C[1..2;2..3]', 3)


def test_division_only_by_scalars():
    from awn.services.errors import AwError
    with pytest.raises(AwError):
        read('C[1]/C[2]', 3)
    with pytest.raises(AwError):
        read('C[1]^-1', 3)
    with pytest.raises(AwError):
        read('C[1]/0', 3)


def test_parse_expression_returns_error_value():
    ok, expr, err = parse_expression('C[1] +')
    assert not ok and expr is None and 'Position' in err
    ok, expr, err = parse_expression('C[1] + 1')
    assert ok and err is None and isinstance(expr, Binary)


def test_parse_label():
    assert parse_label('C[1;3]', 3) == label_from_set({1, 3})
    with pytest.raises(ParseError):
        parse_label('C[1] + C[2]', 3)


def test_call_node():
    expr = parse('qcomm(C[1], C[2])')
    assert isinstance(expr, Call) and expr.name == 'qcomm'
