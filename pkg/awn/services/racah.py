"""
Racah-Grenzwert
Substitution C_I = ε K_I + 1 mit ε = (q - q^-1)^2 / (q + q^-1), Entwicklung
in h = q - 1 und der erste nichttriviale Koeffizient als Polynom in den K_I
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from awn.services.algebra import ConnectedSubset, Label, NCPoly, label_from_set
from awn.services.errors import AwError
from awn.services.relations import (
    FOUR_CLUSTER, RelationFamily, build_instance, relation_instances
)
from awn.services.report import CheckReport, log_report
from awn.services.scalar import HSeries, QFIELD, q, qrat_hseries, to_qrat

checks_logger = logging.getLogger('checks')
algebra_logger = logging.getLogger('algebra')

DEFAULT_PRECISION = 6
EPSILON = (q - q ** -1) ** 2 / (q + q ** -1)

KWord = Tuple[Label, ...]


def _commute(a: Label, b: Label) -> bool:
    """K_I und K_J vertauschen im Grenzwert, wenn I, J geschachtelt oder disjunkt sind"""
    if a == b:
        return True
    if not (a.is_generator and b.is_generator):
        return False
    sa, sb = a.support, b.support
    return sa <= sb or sb <= sa or sa.isdisjoint(sb)


def normal_word(word: KWord) -> KWord:
    """
    Lexikographisch kleinster Vertreter modulo der Grenz-Vertauschungen

    Greift wiederholt den kleinsten Buchstaben, der mit allen Buchstaben
    vor ihm vertauscht.
    """
    rest = list(word)
    out: List[Label] = []
    while rest:
        best = None
        for i, letter in enumerate(rest):
            if all(_commute(letter, other) for other in rest[:i]):
                if best is None or letter.sort_key() < rest[best].sort_key():
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


def _k_str(label: Label) -> str:
    return "K" + str(label)[1:]


class KPoly:
    """Nichtkommutatives Polynom in den K_I mit rationalen Koeffizienten"""
    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[KWord, Fraction]] = None):
        self.terms: Dict[KWord, Fraction] = {}
        for word, coeff in (terms or {}).items():
            key = tuple(l for l in word if not l.is_empty)
            value = self.terms.get(key, Fraction(0)) + Fraction(coeff)
            if value:
                self.terms[key] = value
            else:
                self.terms.pop(key, None)

    @classmethod
    def K(cls, label: Label) -> 'KPoly':
        return cls({(label,): 1})

    @classmethod
    def scalar(cls, value) -> 'KPoly':
        return cls({(): value})

    def __add__(self, other: 'KPoly') -> 'KPoly':
        terms = dict(self.terms)
        for word, c in other.terms.items():
            terms[word] = terms.get(word, Fraction(0)) + c
        return KPoly(terms)

    def __neg__(self) -> 'KPoly':
        return KPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'KPoly') -> 'KPoly':
        return self + (-other)

    def scale(self, value) -> 'KPoly':
        return KPoly({w: c * Fraction(value) for w, c in self.terms.items()})

    def __mul__(self, other: 'KPoly') -> 'KPoly':
        terms: Dict[KWord, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                terms[wa + wb] = terms.get(wa + wb, Fraction(0)) + ca * cb
        return KPoly(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, KPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[KWord, Fraction]]:
        return iter(self.terms.items())

    def normalized(self) -> 'KPoly':
        """Alle Wörter in Normalform modulo [K_I, K_J] = 0 (I, J geschachtelt/disjunkt)"""
        terms: Dict[KWord, Fraction] = {}
        for word, c in self.terms.items():
            key = normal_word(word)
            terms[key] = terms.get(key, Fraction(0)) + c
        return KPoly(terms)

    def ratio_to(self, other: 'KPoly') -> Optional[Fraction]:
        """λ mit self = λ·other (beide normalisiert), sonst None"""
        a, b = self.normalized(), other.normalized()
        if a.is_zero() or b.is_zero() or a.terms.keys() != b.terms.keys():
            return None
        word = next(iter(b.terms))
        ratio = a.terms[word] / b.terms[word]
        if all(a.terms[w] == ratio * c for w, c in b.terms.items()):
            return ratio
        return None

    def sorted_terms(self) -> List[Tuple[KWord, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), [l.sort_key() for l in item[0]]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word, c in self.sorted_terms():
            body = "*".join(_k_str(l) for l in word)
            if not word:
                text = str(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{c}*{body}"
            pieces.append(text)
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith('-') else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"KPoly({self})"


def kcomm(a: KPoly, b: KPoly) -> KPoly:
    return a * b - b * a


def kanti(a: KPoly, b: KPoly) -> KPoly:
    return a * b + b * a


@dataclass
class SeriesNCPoly:
    """
    K-Wörter mit Koeffizienten in Q(q), gelesen als Reihen in h

    Alle Koeffizienten sind bis einschließlich h^precision bekannt.
    """
    exact: Dict[KWord, FracElement]
    precision: int = DEFAULT_PRECISION
    _series: Dict[KWord, HSeries] = field(default_factory=dict, repr=False)

    @property
    def terms(self) -> Dict[KWord, HSeries]:
        if not self._series and self.exact:
            self._series = {w: qrat_hseries(c, max_order=self.precision) for w, c in self.exact.items()}
        return self._series

    def is_zero(self) -> bool:
        """Identisch null (exakt, nicht nur im Fenster)"""
        return not self.exact

    def valuation(self) -> Optional[int]:
        orders = [min(s.terms()) for s in self.terms.values() if not s.is_zero()]
        return min(orders) if orders else None

    def coefficient(self, order: int) -> KPoly:
        if order > self.precision:
            raise AwError(f"Ordnung {order} liegt außerhalb des Fensters (bis {self.precision})")
        return KPoly({w: s.terms().get(order, Fraction(0)) for w, s in self.terms.items()})

    def __add__(self, other: 'SeriesNCPoly') -> 'SeriesNCPoly':
        exact = dict(self.exact)
        for word, c in other.exact.items():
            exact[word] = exact.get(word, QFIELD.zero) + c
        return SeriesNCPoly({w: c for w, c in exact.items() if c}, min(self.precision, other.precision))

    def scale(self, value) -> 'SeriesNCPoly':
        factor = to_qrat(Fraction(value))
        return SeriesNCPoly({w: c * factor for w, c in self.exact.items() if c * factor}, self.precision)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = [f"({s})*{'*'.join(_k_str(l) for l in w) or '1'}" for w, s in self.terms.items() if not s.is_zero()]
        return " + ".join(parts) if parts else f"O(h^{self.precision + 1})"


@lru_cache(maxsize=None)
def _epsilon_power(k: int) -> FracElement:
    return EPSILON ** k


def substitute_K(x: NCPoly, precision: int = DEFAULT_PRECISION) -> SeriesNCPoly:
    """
    C_I -> ε K_I + 1 in jedem Wort

    Mehrteilige Buchstaben werden vorher über Generatoren entwickelt, es
    treten also nur K_I zu zusammenhängenden I auf.
    """
    if precision < 1:
        raise AwError("precision muss mindestens 1 sein")
    plain = x.deabsorb().expand_letters()
    exact: Dict[KWord, FracElement] = {}
    for word, coeff in plain.items():
        for mask in product((False, True), repeat=len(word)):
            kword = tuple(l for l, take in zip(word, mask) if take)
            value = coeff * _epsilon_power(len(kword))
            exact[kword] = exact[kword] + value if kword in exact else value
    exact = {w: c for w, c in exact.items() if c}
    algebra_logger.debug(f"🔁 K-Substitution: {len(plain)} Wörter -> {len(exact)} K-Wörter")
    return SeriesNCPoly(exact, precision)


def leading_term(s: SeriesNCPoly, commuting: bool = True) -> Tuple[int, KPoly]:
    """
    Kleinste Ordnung in h mit nichtverschwindendem Koeffizienten

    commuting=True liest jeden Koeffizienten modulo der Grenz-Vertauschungen
    (geschachtelte oder disjunkte K_I vertauschen).
    """
    if s.is_zero():
        raise AwError("Reihe ist identisch null, kein führender Term")
    low = s.valuation()
    if low is not None:
        for order in range(low, s.precision + 1):
            poly = s.coefficient(order)
            if commuting:
                poly = poly.normalized()
            if not poly.is_zero():
                return order, poly
    raise AwError(f"Alle Koeffizienten bis h^{s.precision} verschwinden, precision erhöhen")


def format_leading(order: int, poly: KPoly) -> str:
    return f"h^{order} : {poly}"


# ---------------------------------------------------------------------------
# Zielidentitäten
# ---------------------------------------------------------------------------

class _Ks:
    """K(i, j, ...) = K_{I_i ∪ I_j ∪ ...} für ein festes Tupel"""

    def __init__(self, subsets: Sequence[ConnectedSubset]):
        self.subsets = subsets

    def __call__(self, *indices: int) -> KPoly:
        elements = set()
        for i in indices:
            elements |= set(self.subsets[i - 1].elements())
        return KPoly.K(label_from_set(elements))


def rac1(subsets: Sequence[ConnectedSubset]) -> KPoly:
    """LHS - RHS der ersten Racah-Relation für (I1, I2, I3)"""
    K = _Ks(subsets)
    lhs = kcomm(K(1, 2), kcomm(K(1, 2), K(2, 3))).scale(Fraction(1, 2))
    rhs = (K(1, 2) * K(1, 2) + kanti(K(1, 2), K(2, 3))
           - (K(1) + K(2) + K(3) + K(1, 2, 3)) * K(1, 2)
           - (K(1) - K(2)) * (K(3) - K(1, 2, 3)))
    return lhs - rhs


def rac2(subsets: Sequence[ConnectedSubset]) -> KPoly:
    K = _Ks(subsets)
    lhs = kcomm(K(2, 3), kcomm(K(2, 3), K(1, 2))).scale(Fraction(1, 2))
    rhs = (K(2, 3) * K(2, 3) + kanti(K(1, 2), K(2, 3))
           - (K(1) + K(2) + K(3) + K(1, 2, 3)) * K(2, 3)
           - (K(1) - K(1, 2, 3)) * (K(3) - K(2)))
    return lhs - rhs


def cub0(subsets: Sequence[ConnectedSubset]) -> KPoly:
    K = _Ks(subsets)
    return (kcomm(K(1, 2), K(2, 3)) + kcomm(K(2, 3), K(3, 4)) - kcomm(K(1, 2, 3), K(3, 4))
            - kcomm(K(1, 2), K(2, 3, 4)) + kcomm(K(1, 2, 3), K(2, 3, 4)))


def cubic_sum(subsets: Sequence[ConnectedSubset]) -> KPoly:
    """Kubische Identität aus relaw41 + relaw43 (umgekehrtes Tupel), vereinfacht mit cub0"""
    K = _Ks(subsets)
    lhs = kcomm(K(3, 4), kcomm(K(1, 2), K(2, 3))).scale(Fraction(1, 2))
    rhs = (K(1, 2) * (K(2, 3) + K(3, 4) - K(2, 3, 4) - K(3))
           + K(2, 3) * (K(3, 4) - K(1, 2, 3, 4))
           - K(3, 4) * K(2)
           + K(1, 2, 3) * (K(2, 3, 4) - K(3, 4) - K(2))
           - K(2, 3, 4) * K(3)
           + (K(2) + K(3)) * K(1, 2, 3, 4)
           + K(2) * K(3))
    return lhs - rhs


def in_span(target: KPoly, basis: Sequence[KPoly]) -> Optional[List[Fraction]]:
    """Koeffizienten μ mit target = Σ μ_j basis_j (modulo Vertauschungen), sonst None"""
    vectors = [b.normalized() for b in basis] + [target.normalized()]
    words = sorted({w for v in vectors for w in v.terms}, key=lambda w: [l.sort_key() for l in w])
    if not words:
        return [Fraction(0)] * len(basis)
    dod = {}
    for i, word in enumerate(words):
        row = {j: QQ(v.terms[word].numerator, v.terms[word].denominator)
               for j, v in enumerate(vectors) if word in v.terms}
        if row:
            dod[i] = row
    M = DomainMatrix.from_dod(dod, (len(words), len(vectors)), QQ).to_dense()
    reduced, pivots = M.rref()
    if len(basis) in pivots:
        return None
    values = reduced.to_list()
    out = [Fraction(0)] * len(basis)
    for i, j in enumerate(pivots):
        value = values[i][len(basis)]
        out[j] = Fraction(int(value.numerator), int(value.denominator))
    return out


# ---------------------------------------------------------------------------
# Prüfbericht
# ---------------------------------------------------------------------------

def singletons(k: int) -> Tuple[ConnectedSubset, ...]:
    return tuple(ConnectedSubset(i, i) for i in range(1, k + 1))


def relation_leading(tag: str, subsets: Sequence[ConnectedSubset], n: int,
                     precision: int = DEFAULT_PRECISION) -> Tuple[int, KPoly]:
    instance = build_instance(tag, tuple(subsets), n)
    return leading_term(substitute_K(instance.letter_form(), precision))


def _match(poly: KPoly, targets: Dict[str, KPoly]) -> Optional[str]:
    for name, target in targets.items():
        if poly.ratio_to(target) is not None:
            return name
    return None


SUM_PAIRS = (('relaw41', 'relaw43'), ('relaw42', 'relaw44'), ('relaw45', 'relaw46'))


def sum_trick(first: str, second: str, subsets: Sequence[ConnectedSubset], n: int,
              precision: int = DEFAULT_PRECISION) -> Tuple[Optional[Fraction], Optional[Tuple[int, KPoly]]]:
    """
    first + λ·second' mit λ so, dass der gemeinsame führende Term wegfällt

    Liefert (λ, (Ordnung, Koeffizient)) der Kombination, oder (None, None),
    wenn die führenden Terme nicht proportional sind.
    """
    s1 = substitute_K(build_instance(first, tuple(subsets), n).letter_form(), precision)
    s2 = substitute_K(build_instance(second, tuple(reversed(subsets)), n).letter_form(), precision)
    o1, p1 = leading_term(s1)
    o2, p2 = leading_term(s2)
    ratio = p1.ratio_to(p2) if o1 == o2 else None
    if ratio is None:
        return None, None
    combined = s1 + s2.scale(-ratio)
    if combined.is_zero():
        return -ratio, None
    return -ratio, leading_term(combined)


def check_racah(precision: int = DEFAULT_PRECISION) -> CheckReport:
    """Rac1/Rac2 bei n=3, cub0 bei n=4, die Summen und der Casimir-Grenzwert"""
    from awn.services.casimir import omega3

    report = CheckReport("racah")

    t3 = singletons(3)
    for subsets, suffix in ((t3, ''), (tuple(reversed(t3)), "'")):
        targets = {'Rac1': rac1(subsets), 'Rac2': rac2(subsets)}
        for tag in ('relaw31v', 'relaw32'):
            order, poly = relation_leading(tag, subsets, 3, precision)
            name = _match(poly, targets)
            report.add(f"{tag}{suffix} -> Rac", 'proved' if name else 'failed',
                       f"h^{order}, {name}" if name else format_leading(order, poly))
        identity = substitute_K(build_instance('relaw33', subsets, 3).letter_form(), precision)
        report.add(f"relaw33{suffix} identisch null", 'syntactic' if identity.is_zero() else 'failed')

    for instance in relation_instances(3, RelationFamily.COMMUTATION):
        series = substitute_K(instance.letter_form(), precision)
        if series.is_zero():
            report.add(f"{instance.describe()} -> 0", 'syntactic')
            continue
        order, poly = leading_term(series, commuting=False)
        ok = poly.normalized().is_zero()
        report.add(f"{instance.describe()} -> [K_I,K_J]", 'proved' if ok else 'failed', f"h^{order}")

    t4 = singletons(4)
    for subsets, suffix in ((t4, ''), (tuple(reversed(t4)), "'")):
        target = cub0(subsets)
        for equation in FOUR_CLUSTER:
            order, poly = relation_leading(equation.tag, subsets, 4, precision)
            ratio = poly.ratio_to(target)
            if ratio is not None:
                report.add(f"{equation.tag}{suffix} -> cub0", 'proved', f"h^{order}")
            elif equation.tag.startswith('relaw2h'):
                # h^3 hebt sich hier auf, der Leitterm liegt höher und wird nur berichtet
                report.add(f"{equation.tag}{suffix} Leitterm", 'reported', format_leading(order, poly))
            else:
                report.add(f"{equation.tag}{suffix} -> cub0", 'failed', format_leading(order, poly))

    basis = [cubic_sum(t4), cub0(t4)]
    for first, second in SUM_PAIRS:
        ratio, lead = sum_trick(first, second, t4, 4, precision)
        name = f"{first} + λ·{second}'"
        if lead is None:
            report.add(name, 'inconclusive', "führende Terme nicht proportional" if ratio is None else "Summe null")
            continue
        order, poly = lead
        coeffs = in_span(poly, basis)
        detail = f"λ={ratio}, {format_leading(order, poly)}"
        if coeffs is not None and coeffs[0]:
            detail += f", = {coeffs[0]}·kubisch + {coeffs[1]}·cub0"
        report.add(name, 'reported' if coeffs is not None else 'inconclusive', detail)

    order, poly = leading_term(substitute_K(omega3([1], [2], [3], 3), precision))
    report.add("Ω_{1,2,3} Grenzwert", 'reported', format_leading(order, poly))

    log_report(report, checks_logger)
    return report
