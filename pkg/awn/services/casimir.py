"""
Casimir-Elemente
Ω_{I1,I2,I3}, ω_S, Zentralität und die Wirkung von r_a und δ_a auf
Γ_n = Span{ω_S}
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from awn.services.algebra import NCPoly, comm, connected_subsets, label_from_set, Label
from awn.services.errors import AwError, LabelError, UnsupportedError
from awn.services.morphisms import (
    Comparator, MorphismKind, MorphismTag, UP, apply, d, r, rb, weakest,
)
from awn.services.report import CheckReport, log_report
from awn.services.scalar import QDOMAIN, QFIELD, q, qrat_str, to_qrat

checks_logger = logging.getLogger('checks')

Subset = FrozenSet[int]


def _subset(elements: Iterable[int]) -> Subset:
    return frozenset(int(x) for x in elements)


def set_str(S: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(S)) + "}"


@dataclass(frozen=True)
class PartitionedSet:
    """S = I1 ∪ I2 ∪ I3 mit nichtleeren Teilen und I1 < I2 < I3"""
    parts: Tuple[Subset, Subset, Subset]

    def __post_init__(self):
        if any(not part for part in self.parts):
            raise AwError("Teile einer Zerlegung dürfen nicht leer sein")
        for a, b in zip(self.parts, self.parts[1:]):
            if max(a) >= min(b):
                raise AwError(f"Zerlegung nicht geordnet: {set_str(a)} vor {set_str(b)}")

    @classmethod
    def of(cls, *parts: Iterable[int]) -> 'PartitionedSet':
        if len(parts) != 3:
            raise AwError("Eine Zerlegung hat genau drei Teile")
        return cls(tuple(_subset(p) for p in parts))

    @property
    def support(self) -> Subset:
        return frozenset().union(*self.parts)

    def __str__(self) -> str:
        return ",".join(set_str(p) for p in self.parts)


def default_partition(S: Iterable[int]) -> PartitionedSet:
    """({min S}, S ohne min und max, {max S})"""
    s = sorted(_subset(S))
    if len(s) < 3:
        raise AwError(f"ω_S braucht |S| >= 3, nicht {set_str(s)}")
    return PartitionedSet.of(s[:1], s[1:-1], s[-1:])


def partitions(S: Iterable[int]) -> List[PartitionedSet]:
    s = sorted(_subset(S))
    m = len(s)
    return [PartitionedSet.of(s[:i], s[i:j], s[j:]) for i in range(1, m - 1) for j in range(i + 1, m)]


def gamma_basis(n: int) -> List[Subset]:
    """Alle S ⊆ {1..n} mit |S| >= 3, nach Größe und dann lexikographisch"""
    out = []
    for size in range(3, n + 1):
        out.extend(frozenset(c) for c in combinations(range(1, n + 1), size))
    return out


# ---------------------------------------------------------------------------
# Ω und ω
# ---------------------------------------------------------------------------

def omega3(I1: Iterable[int], I2: Iterable[int], I3: Iterable[int], n: int) -> NCPoly:
    """Ω_{I1,I2,I3}; verschwindet, sobald ein Teil leer ist"""
    sets = [_subset(I1), _subset(I2), _subset(I3)]
    for part in sets:
        if part and (min(part) < 1 or max(part) > n):
            raise LabelError(f"{set_str(part)} liegt nicht in 1..{n}")
    filled = [part for part in sets if part]
    for a, b in zip(filled, filled[1:]):
        if max(a) >= min(b):
            raise AwError(f"Teilmengen nicht geordnet: {set_str(a)}, {set_str(b)}")
    if len(filled) < 3:
        return NCPoly.zero(n)
    return _omega3(tuple(sets), n)


@lru_cache(maxsize=512)
def _omega3(sets: Tuple[Subset, Subset, Subset], n: int) -> NCPoly:
    A, B, D = sets
    C = lambda *parts: NCPoly.letter(label_from_set(frozenset().union(*parts)), n)
    c12, c23, c13, c123 = C(A, B), C(B, D), C(A, D), C(A, B, D)
    c1, c2, c3 = C(A), C(B), C(D)
    s = q + q ** -1
    squares = c12 * c12 * q ** 2 + c23 * c23 * q ** -2 + c13 * c13 * q ** 2 + c123 * c123 + c1 * c1 + c2 * c2 + c3 * c3
    return (
        c12 * c23 * c13 * q
        + squares * (1 / s)
        - c12 * (c1 * c2 + c3 * c123) * q
        - c23 * (c2 * c3 + c1 * c123) * q ** -1
        - c13 * (c1 * c3 + c2 * c123) * q
        + c1 * c2 * c3 * c123 * s
        - 1 / s
    )


def _subsets(part: Subset) -> Iterable[Subset]:
    items = sorted(part)
    for size in range(len(items) + 1):
        for c in combinations(items, size):
            yield frozenset(c)


def omega(S: Iterable[int], n: int, partition: Optional[PartitionedSet] = None) -> NCPoly:
    """ω_S als Inklusion-Exklusion über Ω der Teilmengen einer Zerlegung"""
    S = _subset(S)
    if len(S) < 3:
        raise AwError(f"ω_S braucht |S| >= 3, nicht {set_str(S)}")
    if max(S) > n or min(S) < 1:
        raise LabelError(f"{set_str(S)} liegt nicht in 1..{n}")
    partition = partition or default_partition(S)
    if partition.support != S:
        raise AwError(f"Zerlegung {partition} passt nicht zu {set_str(S)}")
    total = NCPoly.zero(n)
    I1, I2, I3 = partition.parts
    for I in _subsets(I1):
        for J in _subsets(I2):
            for K in _subsets(I3):
                if not (I and J and K):
                    continue
                sign = -1 if (len(S) - len(I) - len(J) - len(K)) % 2 else 1
                total = total + _omega3((I, J, K), n) * sign
    return total


# ---------------------------------------------------------------------------
# Γ_n
# ---------------------------------------------------------------------------

class GammaVector:
    """Koordinaten c_S in der Familie {ω_S}"""

    def __init__(self, coeffs: Optional[Dict[Subset, object]] = None):
        self.coeffs: Dict[Subset, object] = {}
        for S, c in (coeffs or {}).items():
            c = to_qrat(c)
            if c:
                self.coeffs[_subset(S)] = c

    @classmethod
    def unit(cls, S: Iterable[int]) -> 'GammaVector':
        return cls({_subset(S): 1})

    def __add__(self, other: 'GammaVector') -> 'GammaVector':
        out = dict(self.coeffs)
        for S, c in other.coeffs.items():
            out[S] = out[S] + c if S in out else c
        return GammaVector(out)

    def __sub__(self, other: 'GammaVector') -> 'GammaVector':
        return self + other.scale(-1)

    def scale(self, value) -> 'GammaVector':
        value = to_qrat(value)
        return GammaVector({S: c * value for S, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def items(self) -> List[Tuple[Subset, object]]:
        return sorted(self.coeffs.items(), key=lambda item: (len(item[0]), sorted(item[0])))

    def to_ncpoly(self, n: int) -> NCPoly:
        total = NCPoly.zero(n)
        for S, c in self.items():
            total = total + omega(S, n) * c
        return total

    def to_dict(self) -> Dict[str, str]:
        return {set_str(S): qrat_str(c) for S, c in self.items()}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for S, c in self.items():
            name = "w" + set_str(S)
            terms.append(name if c == QFIELD.one else f"({qrat_str(c)})*{name}")
        return " + ".join(terms)


# Wirkung von r_0 auf Γ_4 in der Basis ω123, ω124, ω134, ω234, ω1234; Spalte j ist das Bild von Basis j
R0_GAMMA4 = (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (1, 1, 1, 1, -2),
    (1, 1, 1, 0, -1),
)


def _transpose(S: Subset, i: int) -> Subset:
    swap = {i: i + 1, i + 1: i}
    return frozenset(swap.get(x, x) for x in S)


def _delta_set(S: Subset, i: int) -> GammaVector:
    shifted = frozenset(x + 1 if x > i else x for x in S)
    if i not in S:
        return GammaVector.unit(shifted)
    full = shifted | {i + 1}
    return GammaVector.unit(full) + GammaVector.unit(full - {i}) + GammaVector.unit(full - {i + 1})


def gamma_action(tag: MorphismTag, v: GammaVector, n: int,
                 comparator: Optional[Comparator] = None, derived: bool = False) -> GammaVector:
    """
    r_i, r̄_i permutieren S, δ_i nach der Koprodukt-Formel, r_0 über die
    Matrix für n=4 und sonst (oder mit derived=True) durch Entwicklung in Γ_n
    """
    tag.validate(n)
    out = GammaVector()
    if tag.kind == MorphismKind.DELTA:
        for S, c in v.items():
            out = out + _delta_set(S, tag.index).scale(c)
        return out
    if tag.kind not in (MorphismKind.R, MorphismKind.RBAR):
        raise UnsupportedError(f"{tag} wirkt nicht auf Γ_n")
    if tag.index > 0:
        return GammaVector({_transpose(S, tag.index): c for S, c in v.items()})
    if n == 4 and not derived:
        basis = gamma_basis(4)
        for S, c in v.items():
            column = basis.index(S)
            image = GammaVector({basis[row]: R0_GAMMA4[row][column] for row in range(len(basis))})
            out = out + image.scale(c)
        return out
    if comparator is None:
        raise UnsupportedError(f"r0 auf Γ_{n} braucht Regeln zum Entwickeln")
    for S, c in v.items():
        result = express_in_gamma(apply(r(0), omega(S, n)), n, comparator)
        if result.vector is None:
            raise UnsupportedError(f"r0(ω{set_str(S)}) nicht in Γ_{n} darstellbar: {result.status}")
        out = out + result.vector.scale(c)
    return out


def gamma_word(word: Sequence[MorphismTag], v: GammaVector, n: int,
               comparator: Optional[Comparator] = None) -> GammaVector:
    for tag in reversed(word):
        v = gamma_action(tag, v, n, comparator)
        n = tag.rank_out(n)
    return v


@dataclass
class ExpressResult:
    status: str
    vector: Optional[GammaVector] = None
    detail: str = ''


def _coefficient_rows(terms: Dict, rows: Dict[tuple, int]) -> Dict[int, object]:
    out = {}
    for word, poly in terms.items():
        for monom, c in poly.terms():
            key = (word, monom)
            if key not in rows:
                rows[key] = len(rows)
            out[rows[key]] = c
    return out


def express_in_gamma(x: NCPoly, n: int, comparator: Comparator) -> ExpressResult:
    """Löst x = Σ c_S ω_S über den Normalformen der Regeln von aw(n)"""
    if n > 4:
        raise UnsupportedError(f"Entwicklung in Γ_n nur bis n=4, nicht {n}")
    rules = comparator.rules_for(n)
    if rules is None:
        raise UnsupportedError(f"Keine Regeln für aw({n})")
    if x.n != n:
        raise AwError(f"Element hat Rang {x.n}, erwartet {n}")

    centrality = [comparator.is_zero(comm(x, NCPoly.letter(Label((s,), True), n))) for s in connected_subsets(n)]
    if any(c.failed for c in centrality):
        return ExpressResult('not-central', detail="Element ist nicht zentral")

    basis = gamma_basis(n)
    rows: Dict[tuple, int] = {}
    columns = [_coefficient_rows(rules.reduce_terms(rules.to_terms(omega(S, n))), rows) for S in basis]
    target = _coefficient_rows(rules.reduce_terms(rules.to_terms(x)), rows)
    width = len(basis) + 1
    dod: Dict[int, Dict[int, object]] = {}
    for j, column in enumerate(columns + [target]):
        for i, c in column.items():
            dod.setdefault(i, {})[j] = c
    if not rows:
        return ExpressResult('expressed', GammaVector())
    M = DomainMatrix.from_dod(dod, (len(rows), width), QDOMAIN).to_dense()
    reduced, pivots = M.rref()
    if len(basis) in pivots:
        return ExpressResult('not-in-span', detail=f"nicht in Γ_{n} (innerhalb der Gradschranke)")
    if len(pivots) < len(basis):
        return ExpressResult('inconclusive', detail="Gleichungssystem unterbestimmt")
    values = reduced.to_list()
    vector = GammaVector({basis[j]: values[i][len(basis)] for i, j in enumerate(pivots)})
    check = comparator.is_zero(x - vector.to_ncpoly(n))
    if check.status != 'proved' and check.status != 'syntactic':
        return ExpressResult('inconclusive', vector, f"Probe: {check.status}")
    return ExpressResult('expressed', vector)


# ---------------------------------------------------------------------------
# Prüfungen
# ---------------------------------------------------------------------------

def check_centrality(S: Iterable[int], n: int, comparator: Comparator) -> CheckReport:
    """[ω_S, C_I] = 0 für alle zusammenhängenden I"""
    S = _subset(S)
    report = CheckReport(f"centrality w{set_str(S)} n={n}")
    w = omega(S, n)
    for part in connected_subsets(n):
        label = Label((part,), True)
        result = comparator.is_zero(comm(w, NCPoly.letter(label, n)))
        report.add(f"[w{set_str(S)}, {label}]", result.status, result.detail)
    log_report(report, checks_logger)
    return report


def check_partition_independence(S: Iterable[int], n: int, comparator: Comparator) -> CheckReport:
    S = _subset(S)
    report = CheckReport(f"partitions w{set_str(S)} n={n}")
    base = omega(S, n)
    for partition in partitions(S):
        result = comparator.compare(omega(S, n, partition), base)
        report.add(f"w{set_str(S)} über ({partition})", result.status, result.detail)
    log_report(report, checks_logger)
    return report


def check_casimir_identities(n: int, comparator: Comparator) -> CheckReport:
    """up-Invarianz, δ auf Ω, r_i = r̄_i auf ω_S und die Permutationswirkung"""
    report = CheckReport(f"casimir n={n}")
    if n >= 3:
        report.add("Ω mit leerem Teil = 0", 'syntactic' if omega3([], [2], [3], n).is_zero() else 'failed')
    for S in gamma_basis(n):
        w = omega(S, n)
        result = comparator.compare(apply(UP, w), w)
        report.add(f"up(w{set_str(S)}) = w{set_str(S)}", result.status, result.detail)
        for i in range(1, n):
            target = omega(_transpose(S, i), n)
            statuses = [comparator.compare(apply(tag, w), target).status for tag in (r(i), rb(i))]
            report.add(f"r{i}, rb{i} auf w{set_str(S)}", weakest(statuses))
    if n == 3:
        w = omega3([1], [2], [3], 3)
        for i in (1, 2, 3):
            image = _delta_set(frozenset({1, 2, 3}), i)
            result = comparator.compare(apply(d(i), w), image.to_ncpoly(4))
            report.add(f"d{i}(w{{1,2,3}}) = {image}", result.status, result.detail)
        ok = apply(d(1), w) == omega3([1, 2], [3], [4], 4)
        report.add("d1(Ω_{1,2,3}) = Ω_{12,3,4}", 'syntactic' if ok else 'failed')
    log_report(report, checks_logger)
    return report


def _permutation(word: Sequence[MorphismTag], n: int) -> Tuple[int, ...]:
    perm = list(range(n + 1))
    for tag in reversed(word):
        a = tag.index
        perm = [a + 1 if x == a else a if x == a + 1 else x for x in perm]
    return tuple(perm)


def _sorting_word(perm: Tuple[int, ...]) -> List[MorphismTag]:
    """Ein Wort aus r_a mit derselben Permutation (Bubblesort)"""
    current = list(perm)
    swaps = []
    changed = True
    while changed:
        changed = False
        for a in range(len(current) - 1):
            if current[a] > current[a + 1]:
                current[a], current[a + 1] = current[a + 1], current[a]
                swaps.append(a)
                changed = True
    # Wörter wirken von rechts, die letzte Vertauschung steht vorne
    return [r(a) for a in reversed(swaps)]


def check_gamma_action(n: int, comparator: Optional[Comparator] = None, seed: int = 1,
                       samples: int = 5, length: int = 6) -> CheckReport:
    """r_0^2 = id auf Γ_n und Wortwirkung hängt nur von der Permutation ab"""
    report = CheckReport(f"gamma n={n}")
    basis = gamma_basis(n)
    if n == 4 and (comparator is None or comparator.rules_for(n) is None):
        # ohne Regeln nur die Tabelle selbst, die Herleitung prüft check_r0_matrix
        ok = all(gamma_word((r(0), r(0)), GammaVector.unit(S), n) == GammaVector.unit(S) for S in basis)
        report.add("r0^2 = id auf Γ_n", 'reported' if ok else 'failed', "r0-Tabelle")
    else:
        ok = True
        for S in basis:
            once = gamma_action(r(0), GammaVector.unit(S), n, comparator, derived=True)
            if gamma_action(r(0), once, n, comparator, derived=True) != GammaVector.unit(S):
                ok = False
                break
        report.add("r0^2 = id auf Γ_n", 'proved' if ok else 'failed', "aus r0(ω_S) entwickelt")
    ok = all(gamma_action(r(0), GammaVector.unit(S), n, comparator) == GammaVector.unit(S)
             for S in basis if 1 not in S)
    report.add("r0(w_S) = w_S für 1 ∉ S", 'syntactic' if ok else 'failed')

    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        word = [rng.choice([r, rb])(rng.randrange(n)) for _ in range(length)]
        perm = _permutation(word, n)
        canonical = _sorting_word(perm)
        for S in basis:
            v = GammaVector.unit(S)
            if gamma_word(word, v, n, comparator) != gamma_word(canonical, v, n, comparator):
                bad = word
                break
        if bad:
            break
    report.add("Wirkung faktorisiert über S_{n+1}", 'failed' if bad else 'syntactic',
               " ".join(str(t) for t in bad) if bad else '')
    log_report(report, checks_logger)
    return report


def check_r0_matrix(comparator: Comparator) -> CheckReport:
    """Spalten der r_0-Matrix auf Γ_4 aus r_0(ω_S) entwickelt"""
    report = CheckReport("r0 on Γ_4")
    for S in gamma_basis(4):
        expected = gamma_action(r(0), GammaVector.unit(S), 4)
        result = express_in_gamma(apply(r(0), omega(S, 4)), 4, comparator)
        if result.vector is None:
            report.add(f"r0(w{set_str(S)})", result.status, result.detail)
        else:
            report.add(f"r0(w{set_str(S)}) = {expected}",
                       'proved' if result.vector == expected else 'failed', str(result.vector))
    log_report(report, checks_logger)
    return report


def check_kernel(n: int, q_points: Optional[Sequence] = None) -> CheckReport:
    """φ(ω_S) = 0 auf Spin 1/2, symbolisch oder an einzelnen Punkten q0"""
    from awn.services.uq import RepSpec, phi_is_zero
    spec = RepSpec.half(n)
    points = list(q_points) if q_points else [None]
    report = CheckReport(f"kernel n={n}")
    for S in gamma_basis(n):
        w = omega(S, n)
        ok = all(phi_is_zero(w, spec, q0) for q0 in points)
        status = 'syntactic' if q_points is None else 'rep-consistent'
        report.add(f"phi(w{set_str(S)}) = 0", status if ok else 'failed',
                   '' if q_points is None else "q0 = " + ", ".join(str(p) for p in points))
    log_report(report, checks_logger)
    return report
