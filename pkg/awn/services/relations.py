"""
Relationen
Erzeugt die definierenden und abgeleiteten Relationen als Instanzen über
Teilmengen-Tupeln; jede Instanz ist LHS - RHS = 0 in aw(n)
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from awn.services.algebra import (
    ConnectedSubset, Label, NCPoly, canonicalize, comm, connected_subsets, labels,
    make_label, one_step, qcomm
)
from awn.services.errors import AwError
from awn.services.scalar import q

algebra_logger = logging.getLogger('algebra')

Subsets = Tuple[Optional[ConnectedSubset], ...]


class RelationFamily(str, Enum):
    COMMUTATION = 'commutation'
    THREE_ADJACENT = 'three-adjacent'
    THREE_CLUSTER = 'three-cluster'
    FOUR_ADJACENT = 'four-adjacent'
    FOUR_CLUSTER = 'four-cluster'
    C13C31 = 'c13c31'
    COMMUTATOR_SUMS = 'commutator-sums'
    EXTRA_COMMUTING = 'extra-commuting'
    FF_COMMUTATORS = 'ff-commutators'
    ALTERNATIVE = 'alternative'


DEFINING_FAMILIES = (
    RelationFamily.COMMUTATION,
    RelationFamily.THREE_ADJACENT,
    RelationFamily.FOUR_ADJACENT,
)


@dataclass
class RelationInstance:
    """Eine Relation LHS = RHS in Buchstabenform, mit Metadaten"""
    family: RelationFamily
    equation: str
    subsets: Subsets
    lhs: NCPoly
    rhs: NCPoly
    mixed: bool = False
    inferred: bool = False

    @property
    def n(self) -> int:
        return self.lhs.n

    def letter_form(self) -> NCPoly:
        return self.lhs - self.rhs

    def expanded(self) -> NCPoly:
        """LHS - RHS über Generatoren entwickelt"""
        return self.letter_form().expand_letters()

    def describe(self) -> str:
        parts = ",".join('∅' if s is None else '{' + str(s) + '}' for s in self.subsets)
        flags = ''.join([' mixed' if self.mixed else '', ' inferred' if self.inferred else ''])
        return f"{self.equation}({parts}){flags}"

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


class _Builder:
    """C(i, j, ...) = C_{I_i I_j ...} für ein festes Teilmengen-Tupel"""

    def __init__(self, subsets: Subsets, n: int):
        self.subsets = subsets
        self.n = n

    def C(self, *indices: int) -> NCPoly:
        parts = [self.subsets[i - 1] for i in indices if self.subsets[i - 1] is not None]
        return NCPoly.letter(make_label(parts, None, self.n), self.n)


Build = Callable[[_Builder], Tuple[NCPoly, NCPoly]]


@dataclass(frozen=True)
class Equation:
    tag: str
    arity: int
    build: Build
    mixed: bool = False


def _qc(a: NCPoly, b: NCPoly) -> NCPoly:
    return qcomm(a, b)


def _zero(c: _Builder) -> NCPoly:
    return NCPoly.zero(c.n)


_A = q ** -1 / (q + q ** -1)
_B = q / (q + q ** -1)
_QQ = q ** 2 - q ** -2


THREE_ADJACENT = [
    Equation('relaw31v', 3, lambda c: (
        c.C(1, 2), -_qc(c.C(2, 3), c.C(1, 3)) + c.C(1) * c.C(2) + c.C(3) * c.C(1, 2, 3))),
]

THREE_CLUSTER = [
    Equation('relaw32', 3, lambda c: (
        c.C(2, 3), -_qc(c.C(1, 3), c.C(1, 2)) + c.C(2) * c.C(3) + c.C(1) * c.C(1, 2, 3))),
    Equation('relaw33', 3, lambda c: (
        c.C(1, 3), -_qc(c.C(1, 2), c.C(2, 3)) + c.C(1) * c.C(3) + c.C(2) * c.C(1, 2, 3))),
]

FOUR_ADJACENT = [
    Equation('relaw41v', 4, lambda c: (
        c.C(1, 4), -_qc(c.C(1, 3), c.C(3, 4)) + c.C(1) * c.C(4) + c.C(3) * c.C(1, 3, 4))),
]

FOUR_CLUSTER = [
    Equation('relaw43', 4, lambda c: (
        c.C(1, 4), -_qc(c.C(1, 2), c.C(2, 4)) + c.C(1) * c.C(4) + c.C(2) * c.C(1, 2, 4))),
    Equation('relaw46', 4, lambda c: (
        c.C(2, 4), -_qc(c.C(1, 4), c.C(1, 2)) + c.C(2) * c.C(4) + c.C(1) * c.C(1, 2, 4))),
    Equation('relaw2h3', 4, lambda c: (
        c.C(1, 2), -_qc(c.C(2, 4), c.C(1, 4)) + c.C(1) * c.C(2) + c.C(4) * c.C(1, 2, 4))),
    Equation('relaw41', 4, lambda c: (
        c.C(1, 4), -_qc(c.C(1, 3), c.C(3, 4)) + c.C(1) * c.C(4) + c.C(3) * c.C(1, 3, 4))),
    Equation('relaw45', 4, lambda c: (
        c.C(1, 3), -_qc(c.C(3, 4), c.C(1, 4)) + c.C(1) * c.C(3) + c.C(4) * c.C(1, 3, 4))),
    Equation('relaw2h2', 4, lambda c: (
        c.C(3, 4), -_qc(c.C(1, 4), c.C(1, 3)) + c.C(3) * c.C(4) + c.C(1) * c.C(1, 3, 4))),
    Equation('relaw47', 4, lambda c: (
        c.C(1, 2, 4), -_qc(c.C(3, 1), c.C(2, 3, 4)) + c.C(1) * c.C(2, 4) + c.C(3) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw49', 4, lambda c: (
        c.C(3, 1), -_qc(c.C(2, 3, 4), c.C(1, 2, 4)) + c.C(3) * c.C(1) + c.C(2, 4) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw2h4', 4, lambda c: (
        c.C(2, 3, 4), -_qc(c.C(1, 2, 4), c.C(3, 1)) + c.C(3) * c.C(2, 4) + c.C(1) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw48', 4, lambda c: (
        c.C(1, 3, 4), -_qc(c.C(1, 2, 3), c.C(4, 2)) + c.C(4) * c.C(1, 3) + c.C(2) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw410', 4, lambda c: (
        c.C(4, 2), -_qc(c.C(1, 3, 4), c.C(1, 2, 3)) + c.C(2) * c.C(4) + c.C(1, 3) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw2h5', 4, lambda c: (
        c.C(1, 2, 3), -_qc(c.C(4, 2), c.C(1, 3, 4)) + c.C(2) * c.C(1, 3) + c.C(4) * c.C(1, 2, 3, 4)),
        mixed=True),
    Equation('relaw42', 4, lambda c: (
        c.C(1, 2, 4), -_qc(c.C(2, 3), c.C(1, 3, 4)) + c.C(2) * c.C(1, 4) + c.C(3) * c.C(1, 2, 3, 4))),
    Equation('relaw44', 4, lambda c: (
        c.C(1, 3, 4), -_qc(c.C(1, 2, 4), c.C(2, 3)) + c.C(1, 4) * c.C(3) + c.C(2) * c.C(1, 2, 3, 4))),
    Equation('relaw2h1', 4, lambda c: (
        c.C(2, 3), -_qc(c.C(1, 3, 4), c.C(1, 2, 4)) + c.C(2) * c.C(3) + c.C(1, 4) * c.C(1, 2, 3, 4))),
]

C13C31 = [
    Equation('c13c31a', 3, lambda c: (
        c.C(1, 3) * _A + c.C(3, 1) * _B,
        -(c.C(2, 3) * c.C(1, 2)) + c.C(1) * c.C(3) + c.C(2) * c.C(1, 2, 3)), mixed=True),
    Equation('c13c31b', 3, lambda c: (
        c.C(1, 3) * _B + c.C(3, 1) * _A,
        -(c.C(1, 2) * c.C(2, 3)) + c.C(1) * c.C(3) + c.C(2) * c.C(1, 2, 3)), mixed=True),
]

COMMUTATOR_SUMS = [
    Equation('comut1', 4, lambda c: (
        comm(c.C(1, 2), c.C(2, 3)), comm(c.C(1, 2, 4), c.C(2, 3, 4)) + comm(c.C(3, 4), c.C(1, 4)))),
    Equation('comut2', 4, lambda c: (
        comm(c.C(2, 3), c.C(3, 4)), comm(c.C(1, 2, 3), c.C(1, 3, 4)) + comm(c.C(1, 4), c.C(1, 2)))),
    Equation('comut3', 4, lambda c: (
        comm(c.C(1, 2), c.C(2, 3, 4)), comm(c.C(1, 2, 4), c.C(2, 3)) + comm(c.C(1, 2, 3), c.C(2, 4)))),
    Equation('comut4', 4, lambda c: (
        comm(c.C(3, 4), c.C(1, 2, 3)), comm(c.C(1, 3, 4), c.C(2, 3)) + comm(c.C(2, 3, 4), c.C(1, 3)))),
    Equation('comut5', 4, lambda c: (
        comm(c.C(1, 2, 3), c.C(2, 3, 4)), comm(c.C(1, 2), c.C(2, 4)) + comm(c.C(3, 1), c.C(3, 4))),
        mixed=True),
    Equation('comut6', 4, lambda c: (
        comm(c.C(1, 3), c.C(1, 2, 4)), comm(c.C(1, 3, 4), c.C(1, 2)) + comm(c.C(1, 2, 3), c.C(1, 4)))),
    Equation('comut7', 4, lambda c: (
        comm(c.C(2, 4), c.C(1, 3, 4)), comm(c.C(1, 2, 4), c.C(3, 4)) + comm(c.C(2, 3, 4), c.C(1, 4)))),
    Equation('comut8', 4, lambda c: (
        comm(c.C(1, 4), c.C(3, 1)), comm(c.C(2, 3), c.C(2, 4)) + comm(c.C(1, 2, 4), c.C(1, 2, 3))),
        mixed=True),
]

EXTRA_COMMUTING = [
    Equation('relcom1a', 4, lambda c: (comm(c.C(1, 2), c.C(1, 2, 4)), _zero(c))),
    Equation('relcom1b', 4, lambda c: (comm(c.C(3, 4), c.C(1, 3, 4)), _zero(c))),
    Equation('relcom1c', 4, lambda c: (comm(c.C(1, 2, 3), c.C(1, 3)), _zero(c))),
    Equation('relcom1d', 4, lambda c: (comm(c.C(2, 3, 4), c.C(2, 4)), _zero(c))),
    Equation('relcom1e', 4, lambda c: (comm(c.C(2, 3), c.C(1, 4)), _zero(c))),
    Equation('relcom2a', 4, lambda c: (comm(c.C(1, 2), c.C(4, 2, 1)), _zero(c)), mixed=True),
    Equation('relcom2b', 4, lambda c: (comm(c.C(3, 4), c.C(4, 3, 1)), _zero(c)), mixed=True),
    Equation('relcom2c', 4, lambda c: (comm(c.C(1, 2, 3), c.C(3, 1)), _zero(c)), mixed=True),
    Equation('relcom2d', 4, lambda c: (comm(c.C(2, 3, 4), c.C(4, 2)), _zero(c)), mixed=True),
    Equation('relcom2e', 4, lambda c: (comm(c.C(2, 3), c.C(4, 1)), _zero(c)), mixed=True),
    Equation('coma1', 4, lambda c: (comm(c.C(1, 3), c.C(4, 2)), _zero(c)), mixed=True),
    Equation('coma3a', 4, lambda c: (comm(c.C(1, 3, 4), c.C(1, 3)), _zero(c))),
    Equation('coma3b', 4, lambda c: (comm(c.C(1, 2, 4), c.C(2, 4)), _zero(c))),
    Equation('coma4a', 4, lambda c: (comm(c.C(1, 3, 4), c.C(1, 4)), _zero(c))),
    Equation('coma4b', 4, lambda c: (comm(c.C(1, 2, 4), c.C(1, 4)), _zero(c))),
]

FF_COMMUTATORS = [
    Equation('com13', 3, lambda c: (
        comm(c.C(1, 3), c.C(3, 1)) * (1 / _QQ),
        c.C(2, 3) * c.C(2, 3) - c.C(1, 2) * c.C(1, 2)
        - c.C(2, 3) * (c.C(2) * c.C(3) + c.C(1) * c.C(1, 2, 3))
        + c.C(1, 2) * (c.C(1) * c.C(2) + c.C(3) * c.C(1, 2, 3))), mixed=True),
    Equation('com1324', 4, lambda c: (
        comm(c.C(1, 3), c.C(2, 4)) * (1 / _QQ),
        c.C(3) * c.C(4) * c.C(1, 2) + c.C(1) * c.C(2) * c.C(3, 4)
        - c.C(2) * c.C(3) * c.C(1, 4) - c.C(1) * c.C(4) * c.C(2, 3)
        - c.C(1, 2) * c.C(3, 4) + c.C(2, 3) * c.C(1, 4))),
]

# Tupel (I1, I2, H, I3, I4); Bedingungsmengen je Gleichung
ALTERNATIVE = [
    Equation('rel1', 5, lambda c: (
        c.C(1, 2, 5), -_qc(c.C(2, 4), c.C(1, 4, 5)) + c.C(2) * c.C(1, 5) + c.C(4) * c.C(1, 2, 4, 5))),
    Equation('rel2', 5, lambda c: (
        c.C(1, 4, 5), -_qc(c.C(1, 2, 5), c.C(2, 4)) + c.C(1, 5) * c.C(4) + c.C(2) * c.C(1, 2, 4, 5))),
    Equation('rel3', 5, lambda c: (
        c.C(2, 4), -_qc(c.C(1, 4, 5), c.C(1, 2, 5)) + c.C(4) * c.C(2) + c.C(1, 5) * c.C(1, 2, 4, 5))),
]

_ALTERNATIVE_CONDITIONS: Dict[str, Tuple[int, int]] = {
    'rel1': (0, 2),
    'rel2': (2, 4),
    'rel3': (4, 0),
}

EQUATIONS: Dict[RelationFamily, List[Equation]] = {
    RelationFamily.THREE_ADJACENT: THREE_ADJACENT,
    RelationFamily.THREE_CLUSTER: THREE_CLUSTER,
    RelationFamily.FOUR_ADJACENT: FOUR_ADJACENT,
    RelationFamily.FOUR_CLUSTER: FOUR_CLUSTER,
    RelationFamily.C13C31: C13C31,
    RelationFamily.COMMUTATOR_SUMS: COMMUTATOR_SUMS,
    RelationFamily.EXTRA_COMMUTING: EXTRA_COMMUTING,
    RelationFamily.FF_COMMUTATORS: FF_COMMUTATORS,
    RelationFamily.ALTERNATIVE: ALTERNATIVE,
}


# ---------------------------------------------------------------------------
# Aufzählung der Tupel
# ---------------------------------------------------------------------------

def increasing_tuples(n: int, k: int, adjacent: bool = True,
                      empty_ok: Sequence[int] = ()) -> Iterator[Tuple[Subsets, bool]]:
    """
    Aufsteigende Tupel von k zusammenhängenden Teilmengen

    Liefert (Tupel, mit_Lücke). Bei adjacent=True schließen die Teile
    lückenlos aneinander an; Positionen in empty_ok dürfen leer (None) sein.
    """
    def rec(pos: int, start: Optional[int], acc: List[Optional[ConnectedSubset]], gapped: bool):
        if pos == k:
            if any(s is not None for s in acc):
                yield tuple(acc), gapped
            return
        if pos in empty_ok:
            yield from rec(pos + 1, start, acc + [None], gapped)
        if start is None:
            starts = range(1, n + 1)
        elif adjacent:
            starts = range(start, start + 1)
        else:
            starts = range(start, n + 1)
        for lo in starts:
            for hi in range(lo, n + 1):
                yield from rec(pos + 1, hi + 1, acc + [ConnectedSubset(lo, hi)],
                               gapped or (start is not None and lo > start))

    yield from rec(0, None, [], False)


def _tuples(n: int, k: int, generalized: bool, empty_ok: Sequence[int] = ()) -> List[Tuple[Subsets, bool, bool]]:
    """(Tupel, aufsteigend, mit_Lücke) in fester Reihenfolge"""
    out = []
    for tup, gapped in increasing_tuples(n, k, adjacent=not generalized, empty_ok=empty_ok):
        out.append((tup, True, gapped))
        out.append((tuple(reversed(tup)), False, gapped))
    return out


def _build(equation: Equation, family: RelationFamily, subsets: Subsets, n: int,
           inferred: bool) -> RelationInstance:
    lhs, rhs = equation.build(_Builder(subsets, n))
    return RelationInstance(family, equation.tag, subsets, lhs, rhs, equation.mixed, inferred)


def build_instance(tag: str, subsets: Subsets, n: int) -> RelationInstance:
    """Eine einzelne Gleichung an einem vorgegebenen Tupel"""
    for family, equations in EQUATIONS.items():
        for equation in equations:
            if equation.tag == tag:
                if len(subsets) != equation.arity:
                    raise AwError(f"{tag} erwartet {equation.arity} Teilmengen, nicht {len(subsets)}")
                return _build(equation, family, tuple(subsets), n, inferred=False)
    raise AwError(f"Unbekannte Gleichung: {tag}")


def _commutation_instances(n: int, generalized: bool) -> List[RelationInstance]:
    out = []
    subsets = connected_subsets(n)
    for i, first in enumerate(subsets):
        for second in subsets[i + 1:]:
            a, b = set(first.elements()), set(second.elements())
            if a & b and not (a <= b or b <= a):
                continue
            lhs = comm(NCPoly.letter(Label((first,), True), n), NCPoly.letter(Label((second,), True), n))
            out.append(RelationInstance(RelationFamily.COMMUTATION, 'relcommv', (first, second),
                                        lhs, NCPoly.zero(n)))
    if not generalized:
        return out

    # Mehrteilige Elemente gegen zusammenhängende Mengen
    for label in labels(n):
        if len(label.parts) < 2:
            continue
        support = label.support
        for other in subsets:
            elements = set(other.elements())
            if elements & support and not (elements <= support or support <= elements):
                continue
            lhs = comm(NCPoly.letter(label, n), NCPoly.letter(Label((other,), True), n))
            out.append(RelationInstance(RelationFamily.COMMUTATION, 'commg2', label.parts + (other,),
                                        lhs, NCPoly.zero(n)))

    # Zerlegung einer Folge mit Löchern in zwei Stücke
    for label in labels(n):
        if len(label.parts) < 3:
            continue
        for p in range(1, len(label.parts)):
            head = make_label(label.parts[:p], label.increasing)
            tail = make_label(label.parts[p:], label.increasing)
            lhs = comm(NCPoly.letter(head, n), NCPoly.letter(tail, n))
            out.append(RelationInstance(RelationFamily.COMMUTATION, 'commg3', label.parts,
                                        lhs, NCPoly.zero(n)))
    return out


def _alternative_instances(n: int) -> List[RelationInstance]:
    out = []
    for subsets, _, _ in _tuples(n, 5, False, empty_ok=(0, 2, 4)):
        if subsets[1] is None or subsets[3] is None:
            continue
        for equation in ALTERNATIVE:
            first, second = _ALTERNATIVE_CONDITIONS[equation.tag]
            empties = [subsets[first] is None, subsets[second] is None]
            third = ({0, 2, 4} - {first, second}).pop()
            if sum(empties) != 1 or subsets[third] is None:
                continue
            out.append(_build(equation, RelationFamily.ALTERNATIVE, subsets, n, False))
    return out


def relation_instances(n: int, family: RelationFamily, generalized: bool = False) -> List[RelationInstance]:
    """
    Alle Instanzen einer Relationsfamilie bei Rang n

    generalized=True zählt auch nicht benachbarte monotone Tupel auf
    (nur für Gleichungen mit einer einzigen Richtung).
    """
    family = RelationFamily(family)
    if n < 2:
        raise AwError(f"Rang n muss mindestens 2 sein, nicht {n}")

    if family == RelationFamily.COMMUTATION:
        return _commutation_instances(n, generalized)
    if family == RelationFamily.ALTERNATIVE:
        out = _alternative_instances(n)
        if not out:
            algebra_logger.warning(f"⚠️ Familie {family.value} bei n={n} leer")
        return out

    equations = EQUATIONS[family]
    out: List[RelationInstance] = []
    # Familien mischen Stelligkeiten (com13 neben com1324)
    arities = list(dict.fromkeys(equation.arity for equation in equations))
    for arity in arities:
        for subsets, rising, gapped in _tuples(n, arity, generalized):
            for equation in equations:
                if equation.arity != arity or (gapped and equation.mixed):
                    continue
                out.append(_build(equation, family, subsets, n, inferred=gapped and not rising))
    if not out:
        algebra_logger.warning(f"⚠️ Familie {family.value} bei n={n} leer")
    return out


def relation_polys(n: int, family: RelationFamily, generalized: bool = False) -> List[NCPoly]:
    """LHS - RHS jeder Instanz, über Generatoren entwickelt"""
    return [instance.expanded() for instance in relation_instances(n, family, generalized)]


def defining_instances(n: int) -> List[RelationInstance]:
    out: List[RelationInstance] = []
    for family in DEFINING_FAMILIES:
        out.extend(relation_instances(n, family))
    return out


# ---------------------------------------------------------------------------
# Elimination absteigender Labels
# ---------------------------------------------------------------------------

def decreasing_elimination(label: Label, n: int) -> NCPoly:
    """
    Schreibt C_{I_2 I_1} (absteigend) über aufsteigende Labels

    Zwei Teile: Auflösung des linearen Paars zwischen C_{I_1I_2} und C_{I_2I_1};
    mehr Teile: ein Rekursionsschritt am linkesten Loch, dann rekursiv.
    """
    label = canonicalize(label, n)
    if label.increasing or len(label.parts) < 2:
        return NCPoly.letter(label, n)

    if len(label.parts) == 2:
        high, low = label.parts
        hole = label.holes()[0]
        L = lambda parts: NCPoly.letter(make_label(parts, True, n), n)
        rising = L([low, high])
        swapped = L([hole, high]) * L([low, hole])
        rest = L([low]) * L([high]) + L([hole]) * L([low, hole, high])
        return (-swapped + rest) * (q ** -1 * (q + q ** -1)) - rising * q ** -2

    step = one_step(label, n)
    return step.substitute(lambda letter: decreasing_elimination(letter, n))
