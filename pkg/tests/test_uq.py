from fractions import Fraction

import pytest
from sympy.polys.matrices import DomainMatrix

from awn.services.algebra import NCPoly, gen, interval, label_from_set
from awn.services.errors import ModeMismatchError, PoleError, UnsupportedError
from awn.services.relations import build_instance
from awn.services.scalar import QDOMAIN, q
from awn.services.uq import (
    HALF, RepSpec, _flip, casimir_matrix, conventions, equal, intermediate_casimir, kron, matrix_str,
    phi, phi_is_zero, rep, rho, rmatrix_half,
)


def test_spin_half_generators():
    E, F, K, Ki = rep(HALF)
    qv = QDOMAIN.convert(q)
    assert equal(K, DomainMatrix.from_dod({0: {0: qv}, 1: {1: 1 / qv}}, (2, 2), QDOMAIN))
    assert equal(K.matmul(E), E.matmul(K).scalarmul(qv ** 2))
    assert equal(K.matmul(Ki), DomainMatrix.eye(2, QDOMAIN))


def test_spin_zero_is_trivial():
    E, F, K, _ = rep(Fraction(0))
    assert E.is_zero_matrix and F.is_zero_matrix
    assert equal(K, DomainMatrix.eye(1, QDOMAIN))


def test_casimir_scalar_on_spin_half():
    lam = QDOMAIN.convert((q ** 2 + q ** -2) / (q + q ** -1))
    assert equal(casimir_matrix(HALF), DomainMatrix.eye(2, QDOMAIN).scalarmul(lam))


def test_casimir_scalar_on_spin_one():
    lam = QDOMAIN.convert((q ** 3 + q ** -3) / (q + q ** -1))
    assert equal(casimir_matrix(Fraction(1)), DomainMatrix.eye(3, QDOMAIN).scalarmul(lam))


def test_invalid_spin():
    with pytest.raises(UnsupportedError):
        rep(Fraction(1, 3))


def test_repspec():
    spec = RepSpec.parse('1/2,1,0')
    assert spec.dims == (2, 3, 1)
    assert spec.dim == 6
    assert str(spec) == '1/2,1,0'


def test_intermediate_casimirs_commute():
    spec = RepSpec.half(3)
    Q12 = intermediate_casimir(spec, interval(1, 2))
    for I in (interval(1), interval(2), interval(1, 3)):
        Q = intermediate_casimir(spec, I)
        assert equal(Q.matmul(Q12), Q12.matmul(Q))


def test_empty_casimir_is_identity():
    spec = RepSpec.half(2)
    assert equal(intermediate_casimir(spec, None), DomainMatrix.eye(4, QDOMAIN))
    assert equal(phi(NCPoly.one(2), spec), DomainMatrix.eye(4, QDOMAIN))


def test_casimir_block_outside_factors():
    with pytest.raises(ModeMismatchError):
        intermediate_casimir(RepSpec.half(2), interval(2, 3))


def test_phi_rank_mismatch():
    with pytest.raises(ModeMismatchError):
        phi(NCPoly.letter(gen(1, 2), 3), RepSpec.half(2))


def test_phi_specialized_matches_symbolic():
    n = 3
    x = NCPoly.letter(gen(1, 2), n) * NCPoly.letter(gen(2, 3), n)
    q0 = Fraction(5, 3)
    special = phi(x, RepSpec.half(n), q0)
    assert special.domain.is_QQ
    assert matrix_str(special).count('[') == 8


def test_phi_rejects_excluded_point():
    with pytest.raises(PoleError):
        phi(NCPoly.letter(gen(1, 2), 2), RepSpec.half(2), Fraction(1))


def test_mixed_spins_satisfy_defining_relation():
    inst = build_instance('relaw31v', (interval(1), interval(2), interval(3)), 3)
    assert phi_is_zero(inst.letter_form(), RepSpec.parse('1/2,1,1/2'), Fraction(7, 4))


def test_conventions_selected():
    chosen = conventions()
    assert chosen.coproduct in ('standard', 'opposite')
    assert 0 <= chosen.braiding < 4


def test_rmatrix_braid_relation():
    R = rmatrix_half()
    eye = DomainMatrix.eye(2, QDOMAIN)
    P = _flip((2, 2), 0, QDOMAIN)
    PR = P.matmul(R)
    A = kron(PR, eye)
    B = kron(eye, PR)
    assert equal(A.matmul(B).matmul(A), B.matmul(A).matmul(B))


def test_rho_fixes_pair_casimir():
    spec = RepSpec.half(3)
    X = phi(NCPoly.letter(gen(1, 2), 3), spec)
    assert equal(rho(1, X, spec), X)


def test_rho_is_multiplicative():
    spec = RepSpec.half(3)
    X = phi(NCPoly.letter(gen(2, 3), 3), spec)
    Y = phi(NCPoly.letter(label_from_set({1, 3}), 3), spec)
    assert equal(rho(2, X.matmul(Y), spec), rho(2, X, spec).matmul(rho(2, Y, spec)))


def test_rho_needs_spin_half():
    spec = RepSpec.parse('1,1/2,1/2')
    X = DomainMatrix.eye(spec.dim, QDOMAIN)
    with pytest.raises(UnsupportedError):
        rho(1, X, spec)
    with pytest.raises(UnsupportedError):
        rho(3, X, spec)
