"""
U_q(sl2)-Darstellungen
Spin-Darstellungen über Q(q), intermediäre Casimir-Elemente Q_I, der
Morphismus phi, die Spin-1/2-R-Matrix und die Konjugationen rho_i
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from awn.config import parse_spins
from awn.services.algebra import ConnectedSubset, Label, NCPoly, interval, make_label
from awn.services.errors import ConventionError, ModeMismatchError, UnsupportedError
from awn.services.scalar import QDOMAIN, evaluate, q, qrat_str

uq_logger = logging.getLogger('uq')

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RepSpec:
    """Spins der Tensorfaktoren"""
    spins: Tuple[Fraction, ...]

    @classmethod
    def half(cls, n: int) -> 'RepSpec':
        return cls(tuple(HALF for _ in range(n)))

    @classmethod
    def parse(cls, text: str) -> 'RepSpec':
        return cls(parse_spins(text))

    @property
    def n(self) -> int:
        return len(self.spins)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(int(2 * j + 1) for j in self.spins)

    @property
    def dim(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def __str__(self) -> str:
        return ",".join(str(j) for j in self.spins)


@dataclass(frozen=True)
class UqConventions:
    """
    KE = q^2 EK, KF = q^-2 FK, [E,F] = (K - K^-1)/(q - q^-1)

    coproduct 'standard': Delta(E) = E⊗K + 1⊗E, Delta(F) = F⊗1 + K^-1⊗F;
    'opposite' vertauscht die Faktoren. Q ist durch q + q^-1 geteilt.
    """
    coproduct: str = 'standard'
    braiding: int = 0


COPRODUCTS = ('standard', 'opposite')


# ---------------------------------------------------------------------------
# Skalare und Matrizen
# ---------------------------------------------------------------------------

def _domain(q0: Optional[Fraction]):
    """(Domäne, q als Domänenelement, Umwandlung Q(q) -> Domäne)"""
    if q0 is None:
        return QDOMAIN, QDOMAIN.convert(q), QDOMAIN.convert
    q0 = Fraction(q0)

    def convert(value):
        v = evaluate(value, q0)
        return QQ(v.numerator, v.denominator)

    return QQ, QQ(q0.numerator, q0.denominator), convert


def _qint(qv, k: int):
    """[k] = q^(k-1) + q^(k-3) + ... + q^(1-k)"""
    total = qv * 0
    for i in range(k):
        total += qv ** (k - 1 - 2 * i)
    return total


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    (ra, ca), (rb, cb) = a.shape, b.shape
    dod: Dict[int, Dict[int, object]] = {}
    bdod = b.to_dod()
    for i, row in a.to_dod().items():
        for j, x in row.items():
            for k, brow in bdod.items():
                for l, y in brow.items():
                    dod.setdefault(i * rb + k, {})[j * cb + l] = x * y
    return DomainMatrix.from_dod(dod, (ra * rb, ca * cb), a.domain)


def kron_all(mats: Sequence[DomainMatrix]) -> DomainMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def inverse(m: DomainMatrix) -> DomainMatrix:
    return m.to_dense().inv().to_sparse()


def is_zero(m: DomainMatrix) -> bool:
    return m.is_zero_matrix


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.sub(b).is_zero_matrix


def matrix_str(m: DomainMatrix) -> str:
    rows = []
    for row in m.to_dense().to_list():
        cells = []
        for x in row:
            if m.domain == QQ:
                cells.append(str(Fraction(int(x.numerator), int(x.denominator))))
            else:
                cells.append(qrat_str(x))
        rows.append("[" + ", ".join(cells) + "]")
    return "\n".join(rows)


# ---------------------------------------------------------------------------
# Spin-Darstellungen
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def rep(spin: Fraction, q0: Optional[Fraction] = None) -> Tuple[DomainMatrix, DomainMatrix, DomainMatrix, DomainMatrix]:
    """
    (E, F, K, K^-1) auf Spin j, Basis v_0..v_2j

    K v_k = q^(2j-2k) v_k, F v_k = v_(k+1), E v_k = [k][2j-k+1] v_(k-1)
    """
    spin = Fraction(spin)
    if spin < 0 or (2 * spin).denominator != 1:
        raise UnsupportedError(f"Spin muss ein nichtnegatives Halb-Ganzes sein: {spin}")
    domain, qv, _ = _domain(q0)
    twoj = int(2 * spin)
    dim = twoj + 1
    e = {k - 1: {k: _qint(qv, k) * _qint(qv, twoj - k + 1)} for k in range(1, dim)}
    f = {k + 1: {k: domain.one} for k in range(dim - 1)}
    kd = {k: {k: qv ** (twoj - 2 * k)} for k in range(dim)}
    ki = {k: {k: qv ** (2 * k - twoj)} for k in range(dim)}
    return tuple(DomainMatrix.from_dod(d, (dim, dim), domain) for d in (e, f, kd, ki))


def casimir_matrix(spin: Fraction, q0: Optional[Fraction] = None) -> DomainMatrix:
    """Q = ((q-q^-1)^2 FE + qK + q^-1 K^-1)/(q+q^-1)"""
    domain, qv, _ = _domain(q0)
    E, F, K, Ki = rep(Fraction(spin), q0)
    Q = F.matmul(E).scalarmul((qv - 1 / qv) ** 2).add(K.scalarmul(qv)).add(Ki.scalarmul(1 / qv))
    return Q.scalarmul(1 / (qv + 1 / qv))


def _factor_ops(spec: RepSpec, q0: Optional[Fraction]):
    ops = [rep(j, q0) for j in spec.spins]
    domain = _domain(q0)[0]
    eyes = [DomainMatrix.eye(d, domain) for d in spec.dims]
    return ops, eyes


def coproduct_generators(spec: RepSpec, subset: ConnectedSubset, q0: Optional[Fraction] = None,
                         coproduct: str = 'standard') -> Tuple[DomainMatrix, DomainMatrix, DomainMatrix, DomainMatrix]:
    """Iteriertes Koprodukt (E_I, F_I, K_I, K_I^-1) auf den Faktoren in subset"""
    ops, eyes = _factor_ops(spec, q0)
    positions = list(range(subset.lo - 1, subset.hi))
    standard = coproduct == 'standard'

    def tensor(choose) -> DomainMatrix:
        return kron_all([choose(f) for f in range(spec.n)])

    E_I = F_I = None
    for p in positions:
        e_term = tensor(lambda f: ops[f][0] if f == p else
                        ops[f][2] if f in positions and ((f > p) if standard else (f < p)) else eyes[f])
        f_term = tensor(lambda f: ops[f][1] if f == p else
                        ops[f][3] if f in positions and ((f < p) if standard else (f > p)) else eyes[f])
        E_I = e_term if E_I is None else E_I.add(e_term)
        F_I = f_term if F_I is None else F_I.add(f_term)
    K_I = tensor(lambda f: ops[f][2] if f in positions else eyes[f])
    Ki_I = tensor(lambda f: ops[f][3] if f in positions else eyes[f])
    return E_I, F_I, K_I, Ki_I


@lru_cache(maxsize=1024)
def _casimir_cached(spins: Tuple[Fraction, ...], lo: int, hi: int, q0: Optional[Fraction],
                    coproduct: str) -> DomainMatrix:
    spec = RepSpec(spins)
    domain, qv, _ = _domain(q0)
    E, F, K, Ki = coproduct_generators(spec, ConnectedSubset(lo, hi), q0, coproduct)
    Q = F.matmul(E).scalarmul((qv - 1 / qv) ** 2).add(K.scalarmul(qv)).add(Ki.scalarmul(1 / qv))
    return Q.scalarmul(1 / (qv + 1 / qv))


def intermediate_casimir(spec: RepSpec, subset: Optional[ConnectedSubset], q0: Optional[Fraction] = None,
                         coproduct: Optional[str] = None) -> DomainMatrix:
    """Q_I auf den Faktoren in I, Identität sonst; Q_∅ = Id"""
    if subset is None:
        return DomainMatrix.eye(spec.dim, _domain(q0)[0])
    if subset.lo < 1 or subset.hi > spec.n:
        raise ModeMismatchError(f"Block {subset} liegt nicht in 1..{spec.n}")
    coproduct = coproduct or conventions().coproduct
    return _casimir_cached(spec.spins, subset.lo, subset.hi, None if q0 is None else Fraction(q0), coproduct)


# ---------------------------------------------------------------------------
# phi
# ---------------------------------------------------------------------------

def phi(x: NCPoly, spec: RepSpec, q0: Optional[Fraction] = None, coproduct: Optional[str] = None) -> DomainMatrix:
    """C_I -> Q_I, Wörter als Matrixprodukte; q0 spezialisiert exakt"""
    if spec.n != x.n:
        raise ModeMismatchError(f"Element hat Rang {x.n}, Darstellung {spec.n} Faktoren")
    domain, _, convert = _domain(q0)
    plain = x.deabsorb().expand_letters()
    memo: Dict[Tuple[Label, ...], DomainMatrix] = {(): DomainMatrix.eye(spec.dim, domain)}

    def product(word: Tuple[Label, ...]) -> DomainMatrix:
        if word not in memo:
            letter = word[-1]
            memo[word] = product(word[:-1]).matmul(
                intermediate_casimir(spec, letter.parts[0], q0, coproduct))
        return memo[word]

    result = DomainMatrix.zeros((spec.dim, spec.dim), domain)
    for word, coeff in plain.sorted_terms():
        result = result.add(product(word).scalarmul(convert(coeff)))
    return result


def phi_is_zero(x: NCPoly, spec: RepSpec, q0: Optional[Fraction] = None) -> bool:
    return phi(x, spec, q0).is_zero_matrix


# ---------------------------------------------------------------------------
# R-Matrix und rho_i
# ---------------------------------------------------------------------------

def _flip(dims: Sequence[int], i: int, domain) -> DomainMatrix:
    """Vertauschung der Faktoren i, i+1 (0-basiert)"""
    total = 1
    for d in dims:
        total *= d
    swapped = list(dims)
    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
    dod: Dict[int, Dict[int, object]] = {}
    for index in range(total):
        digits = []
        rest = index
        for d in reversed(dims):
            digits.append(rest % d)
            rest //= d
        digits.reverse()
        digits[i], digits[i + 1] = digits[i + 1], digits[i]
        target = 0
        for d, x in zip(swapped, digits):
            target = target * d + x
        dod.setdefault(target, {})[index] = domain.one
    return DomainMatrix.from_dod(dod, (total, total), domain)


def _rmatrix_candidates(q0: Optional[Fraction] = None) -> List[DomainMatrix]:
    domain, qv, _ = _domain(q0)
    base = DomainMatrix.from_dod(
        {0: {0: qv}, 1: {1: domain.one, 2: qv - 1 / qv}, 2: {2: domain.one}, 3: {3: qv}}, (4, 4), domain)
    P = _flip((2, 2), 0, domain)
    flipped = P.matmul(base).matmul(P)
    return [base, inverse(flipped), flipped, inverse(base)]


def _intertwines(R: DomainMatrix, coproduct: str) -> bool:
    spec = RepSpec.half(2)
    P = _flip((2, 2), 0, QDOMAIN)
    E, F, K, _ = coproduct_generators(spec, ConnectedSubset(1, 2), None, coproduct)
    return all(equal(R.matmul(x), P.matmul(x).matmul(P).matmul(R)) for x in (E, F, K))


def rmatrix_half(q0: Optional[Fraction] = None) -> DomainMatrix:
    """Spin-1/2-R-Matrix der gewählten Konvention (bis auf Skalar)"""
    return _rmatrix_candidates(q0)[conventions().braiding]


def rho(i: int, X: DomainMatrix, spec: RepSpec, q0: Optional[Fraction] = None,
        braiding: Optional[int] = None) -> DomainMatrix:
    """X -> tau_(i,i+1)(R_(i,i+1) X R_(i,i+1)^-1), nur für Spin 1/2 in i, i+1"""
    if not 1 <= i < spec.n:
        raise UnsupportedError(f"rho_{i} existiert nicht bei {spec.n} Faktoren")
    if spec.spins[i - 1] != HALF or spec.spins[i] != HALF:
        raise UnsupportedError(f"rho_{i} nur für Spin 1/2 in den Faktoren {i}, {i + 1}")
    domain = _domain(q0)[0]
    index = conventions().braiding if braiding is None else braiding
    R = _rmatrix_candidates(q0)[index]
    mats_r = []
    mats_ri = []
    skip = False
    for f, d in enumerate(spec.dims):
        if skip:
            skip = False
            continue
        if f == i - 1:
            mats_r.append(R)
            mats_ri.append(inverse(R))
            skip = True
        else:
            mats_r.append(DomainMatrix.eye(d, domain))
            mats_ri.append(DomainMatrix.eye(d, domain))
    R_full, Ri_full = kron_all(mats_r), kron_all(mats_ri)
    P = _flip(spec.dims, i - 1, domain)
    return P.matmul(R_full).matmul(X).matmul(Ri_full).matmul(P)


# ---------------------------------------------------------------------------
# Selbstprüfung der Konventionen
# ---------------------------------------------------------------------------

_CONVENTIONS: Optional[UqConventions] = None


def _check_rep(spin: Fraction) -> bool:
    E, F, K, Ki = rep(spin)
    qv = QDOMAIN.convert(q)
    ok = equal(K.matmul(E), E.matmul(K).scalarmul(qv ** 2))
    ok = ok and equal(K.matmul(F), F.matmul(K).scalarmul(qv ** -2))
    commutator = E.matmul(F).sub(F.matmul(E))
    ok = ok and equal(commutator, K.sub(Ki).scalarmul(1 / (qv - 1 / qv)))
    Q = casimir_matrix(spin)
    return ok and all(equal(Q.matmul(x), x.matmul(Q)) for x in (E, F, K))


def _check_coassociative(coproduct: str) -> bool:
    spec = RepSpec.half(3)
    E3, _, _, _ = coproduct_generators(spec, ConnectedSubset(1, 3), None, coproduct)
    E12, _, K12, _ = coproduct_generators(RepSpec.half(2), ConnectedSubset(1, 2), None, coproduct)
    E, _, K, _ = rep(HALF)
    eye2, eye4 = DomainMatrix.eye(2, QDOMAIN), DomainMatrix.eye(4, QDOMAIN)
    if coproduct == 'standard':
        left = kron(E12, K).add(kron(eye4, E))
        right = kron(E, K12).add(kron(eye2, E12))
    else:
        left = kron(E12, eye2).add(kron(K12, E))
        right = kron(E, eye4).add(kron(K, E12))
    return equal(E3, left) and equal(E3, right)


def _check_relations(coproduct: str) -> bool:
    from awn.services.relations import defining_instances
    spec = RepSpec.half(3)
    return all(phi(inst.letter_form(), spec, None, coproduct).is_zero_matrix for inst in defining_instances(3))


def validate_conventions() -> UqConventions:
    """
    Wählt Koprodukt und R-Matrix, für die alle Prüfungen exakt gelten

    Darstellungsrelationen, Zentralität von Q, Koassoziativität, die
    definierenden Relationen von aw(3) im Bild und
    rho_1(Q_23) = phi(C_{1;3}).
    """
    for spin in (Fraction(0), HALF, Fraction(1)):
        if not _check_rep(spin):
            raise ConventionError(f"Darstellungsrelationen verletzt für Spin {spin}")
    for coproduct in COPRODUCTS:
        if not _check_coassociative(coproduct) or not _check_relations(coproduct):
            uq_logger.info(f"🔍 Koprodukt {coproduct} verworfen")
            continue
        spec = RepSpec.half(3)
        target = phi(NCPoly.letter(make_label([interval(1), interval(3)], True), 3), spec, None, coproduct)
        Q23 = _casimir_cached(spec.spins, 2, 3, None, coproduct)
        for index, R in enumerate(_rmatrix_candidates()):
            if not _intertwines(R, coproduct):
                continue
            P = _flip(spec.dims, 0, QDOMAIN)
            R_full = kron(R, DomainMatrix.eye(2, QDOMAIN))
            image = P.matmul(R_full).matmul(Q23).matmul(inverse(R_full)).matmul(P)
            if equal(image, target):
                uq_logger.info(f"✅ Konventionen: Koprodukt {coproduct}, R-Kandidat {index}")
                return UqConventions(coproduct, index)
    raise ConventionError("Keine Konvention erfüllt die Selbstprüfung")


def conventions() -> UqConventions:
    global _CONVENTIONS
    if _CONVENTIONS is None:
        _CONVENTIONS = validate_conventions()
    return _CONVENTIONS
