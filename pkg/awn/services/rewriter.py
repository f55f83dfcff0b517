"""
Rewriter
Normalordnung über einem geordneten Buchstaben-Alphabet, beschränkte
Diamant-Lemma-Vervollständigung und der dreiwertige Null-Test
"""
import heapq
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from awn.services.algebra import Label, NCPoly, label_from_set, one_step
from awn.services.errors import AwError, PoleError
from awn.services.relations import (
    DEFINING_FAMILIES, RelationFamily, decreasing_elimination, relation_instances,
)

rewriter_logger = logging.getLogger('rewriter')
error_logger = logging.getLogger('errors')

Key = Tuple[int, ...]
Terms = Dict[Key, PolyElement]

# Reihenfolge der Buchstaben bei n=4 (kleinster zuerst)
G4 = ((1, 3, 4), (1, 4), (1, 2, 4), (2, 4), (1, 3), (2, 3, 4), (1, 2, 3), (3, 4), (2, 3), (1, 2))


class LetterOrder:
    """Geordnetes Alphabet aufsteigender Labels C_S mit 2 <= |S| <= n-1"""

    def __init__(self, n: int, letters: Sequence[Label]):
        self.n = n
        self.letters: Tuple[Label, ...] = tuple(letters)
        self.rank: Dict[Label, int] = {label: i for i, label in enumerate(self.letters)}
        if len(self.rank) != len(self.letters):
            raise AwError("Doppelte Buchstaben in der Ordnung")
        for label in self.letters:
            if not label.increasing or label.is_central(n):
                raise AwError(f"{label} ist kein gültiger Buchstabe für n={n}")

    def key(self, word: Sequence[Label]) -> Key:
        try:
            return tuple(self.rank[label] for label in word)
        except KeyError as e:
            raise AwError(f"Buchstabe {e.args[0]} liegt nicht im Alphabet")

    def word(self, key: Key) -> Tuple[Label, ...]:
        return tuple(self.letters[i] for i in key)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, LetterOrder) and (self.n, self.letters) == (other.n, other.letters)

    def __str__(self) -> str:
        return " ".join(str(label) for label in self.letters)


def default_order(n: int) -> LetterOrder:
    """
    Standardordnung: bei n=4 die feste Folge G4, sonst
    Löcher absteigend, dann größtes Element absteigend, dann lexikographisch
    """
    if n == 4:
        return LetterOrder(n, [label_from_set(s) for s in G4])
    sets = [s for size in range(2, n) for s in combinations(range(1, n + 1), size)]
    letters = [label_from_set(s) for s in sets]
    letters.sort(key=lambda label: (-(len(label.parts) - 1), -max(label.support), sorted(label.support)))
    return LetterOrder(n, letters)


def _monomial_key(key: Key) -> Tuple[int, Key]:
    """Grad-lexikographische Ordnung"""
    return (len(key), key)


def _leading(terms: Terms) -> Key:
    return max(terms, key=_monomial_key)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Tuple[Label, ...]
    rhs: NCPoly

    def __str__(self) -> str:
        return f"{'*'.join(str(l) for l in self.lhs)} := {self.rhs}"


class VerdictStatus(str, Enum):
    PROVED_ZERO = 'ProvedZero'
    PROVED_NONZERO = 'ProvedNonzero'
    INCONCLUSIVE = 'Inconclusive'


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    witness: Optional[Tuple[object, Fraction]] = None
    remainder: Optional[NCPoly] = None

    @property
    def is_zero(self) -> bool:
        return self.status == VerdictStatus.PROVED_ZERO

    @property
    def is_nonzero(self) -> bool:
        return self.status == VerdictStatus.PROVED_NONZERO

    def __str__(self) -> str:
        if self.witness is not None:
            spec, q0 = self.witness
            return f"{self.status.value} (spins={spec}, q0={q0})"
        return self.status.value


@dataclass
class RuleSet:
    """
    Regeln lhs -> rhs und lineare Relationen über Schlüsselwörtern

    Koeffizienten liegen im zentralen Ring Q(q)[z1..zn, zf]; Wörter sind
    Tupel von Rängen in `order`.
    """
    order: LetterOrder
    rules: Dict[Key, List[Tuple[Key, PolyElement]]] = field(default_factory=dict)
    linear_relations: List[Terms] = field(default_factory=list)
    degree_bound: int = 6
    incomplete: bool = False
    gaps: List[Tuple[Label, Label]] = field(default_factory=list)
    rejected: List[str] = field(default_factory=list)
    processed: set = field(default_factory=set)
    last_steps: int = 0

    @property
    def n(self) -> int:
        return self.order.n

    def copy(self) -> 'RuleSet':
        return RuleSet(
            order=self.order,
            rules={lhs: list(rhs) for lhs, rhs in self.rules.items()},
            linear_relations=[dict(rel) for rel in self.linear_relations],
            degree_bound=self.degree_bound,
            incomplete=self.incomplete,
            gaps=list(self.gaps),
            rejected=list(self.rejected),
            processed=set(self.processed),
        )

    # -- Umwandlung --------------------------------------------------------

    def to_terms(self, x: NCPoly) -> Terms:
        x = to_alphabet(x, self.order)
        return {self.order.key(word): coeff for word, coeff in x.items()}

    def to_ncpoly(self, terms: Terms) -> NCPoly:
        return NCPoly(self.n, {self.order.word(k): c for k, c in terms.items()}, central=True)

    def rewrite_rules(self) -> List[RewriteRule]:
        out = []
        for lhs in sorted(self.rules, key=_monomial_key):
            rhs = self.to_ncpoly(dict(self.rules[lhs]))
            out.append(RewriteRule(self.order.word(lhs), rhs))
        return out

    def relations(self) -> List[NCPoly]:
        return [self.to_ncpoly(rel) for rel in self.linear_relations]

    # -- Reduktion ---------------------------------------------------------

    def _match(self, word: Key) -> Optional[Tuple[int, Key]]:
        lengths = sorted({len(lhs) for lhs in self.rules})
        for i in range(len(word)):
            for size in lengths:
                if i + size > len(word):
                    break
                piece = word[i:i + size]
                if piece in self.rules:
                    return i, piece
        return None

    def reduce_terms(self, terms: Terms) -> Terms:
        """Normalform: größtes Wort zuerst, jedes Wort wird genau einmal bearbeitet"""
        todo: Terms = {}
        heap: list = []

        def push(word: Key, coeff: PolyElement) -> None:
            if word in todo:
                todo[word] = todo[word] + coeff
            else:
                todo[word] = coeff
                heapq.heappush(heap, ((-len(word), tuple(-r for r in word)), word))

        for word, coeff in terms.items():
            if coeff:
                push(word, coeff)

        out: Terms = {}
        steps = 0
        while heap:
            _, word = heapq.heappop(heap)
            coeff = todo.pop(word, None)
            if not coeff:
                continue
            hit = self._match(word)
            if hit is not None:
                steps += 1
                i, lhs = hit
                prefix, suffix = word[:i], word[i + len(lhs):]
                for sub, c in self.rules[lhs]:
                    push(prefix + sub + suffix, coeff * c)
                continue
            for rel in self.linear_relations:
                lead = _leading(rel)
                pos = _find(word, lead)
                if pos is None:
                    continue
                quotient, coeff = divmod(coeff, rel[lead])
                if quotient:
                    steps += 1
                    prefix, suffix = word[:pos], word[pos + len(lead):]
                    for sub, c in rel.items():
                        if sub != lead:
                            push(prefix + sub + suffix, -quotient * c)
                if not coeff:
                    break
            if coeff:
                out[word] = coeff
        self.last_steps = steps
        return out

    def reduce(self, x: NCPoly) -> NCPoly:
        return self.to_ncpoly(self.reduce_terms(self.to_terms(x)))

    # -- Aufnahme neuer Relationen ----------------------------------------

    def add_relation(self, terms: Terms, source: str = '') -> bool:
        """Reduziert und nimmt als Regel (Leitkoeffizient in Q(q)) oder lineare Relation auf"""
        terms = self.reduce_terms(terms)
        if not terms:
            return False
        lead = _leading(terms)
        lc = terms[lead]
        if not lead:
            error_logger.error(f"❌ Widerspruch: nichtverschwindende Konstante aus {source or 'Relation'}")
            self.linear_relations.append(terms)
            return True
        if lc.is_ground:
            inverse = 1 / lc.LC
            self.rules[lead] = [(w, -c * inverse) for w, c in sorted(terms.items(), key=lambda t: _monomial_key(t[0]), reverse=True) if w != lead]
            rewriter_logger.debug(f"🔄 Neue Regel {self.order.word(lead)} aus {source}")
        else:
            scale = 1 / lc.LC
            self.linear_relations.append({w: c * scale for w, c in terms.items()})
            rewriter_logger.debug(f"🔄 Neue lineare Relation mit Leitwort {self.order.word(lead)} aus {source}")
        return True

    def set_rule(self, lhs: Key, terms: Terms) -> None:
        """Regel direkt setzen (Cache), rechte Seite absteigend geordnet"""
        self.rules[lhs] = sorted(terms.items(), key=lambda t: _monomial_key(t[0]), reverse=True)

    def normalize(self) -> None:
        """Reduziert alle rechten Seiten gegen die übrigen Regeln"""
        for lhs in sorted(self.rules, key=_monomial_key):
            reduced = self.reduce_terms(dict(self.rules[lhs]))
            self.rules[lhs] = sorted(reduced.items(), key=lambda t: _monomial_key(t[0]), reverse=True)

    def find_gaps(self) -> List[Tuple[Label, Label]]:
        gaps = []
        for high in range(len(self.order)):
            for low in range(high):
                if (high, low) not in self.rules:
                    gaps.append((self.order.letters[high], self.order.letters[low]))
        self.gaps = gaps
        return gaps


def _find(word: Key, piece: Key) -> Optional[int]:
    size = len(piece)
    for i in range(len(word) - size + 1):
        if word[i:i + size] == piece:
            return i
    return None


# ---------------------------------------------------------------------------
# Alphabet
# ---------------------------------------------------------------------------

def to_alphabet(x: NCPoly, order: LetterOrder) -> NCPoly:
    """
    Bringt ein Element in die Form des Alphabets

    Absteigende Labels werden eliminiert, zentrale Buchstaben wandern in die
    Koeffizienten, aufsteigende Labels bleiben Buchstaben.
    """
    n = order.n
    if x.n != n:
        raise AwError(f"Element hat Rang {x.n}, Alphabet Rang {n}")
    plain = x.deabsorb()
    if any(not l.increasing for w, _ in plain.items() for l in w):
        plain = plain.substitute(
            lambda label: NCPoly.letter(label, n) if label.increasing else decreasing_elimination(label, n)
        )
    central = plain.absorb_central()
    for word, _ in central.items():
        order.key(word)
    return central


# ---------------------------------------------------------------------------
# Saat und Vervollständigung
# ---------------------------------------------------------------------------

SEED_FAMILIES = tuple(RelationFamily)


def seed_relations(n: int, order: LetterOrder,
                   families: Iterable[RelationFamily] = SEED_FAMILIES) -> List[Tuple[str, NCPoly]]:
    """Definitionen der Buchstaben mit Löchern, danach der Relationskatalog"""
    seeds: List[Tuple[str, NCPoly]] = []
    for label in order.letters:
        if len(label.parts) >= 2:
            seeds.append((f"def {label}", NCPoly.letter(label, n) - one_step(label, n)))
    for family in families:
        # abgeleitete Familien sind nur im Bild geprüft, nicht bewiesen
        mark = '' if family in DEFINING_FAMILIES else 'abgeleitet '
        for instance in relation_instances(n, family, generalized=True):
            seeds.append((f"{mark}{instance.describe()}", instance.letter_form()))
    return seeds


def seed_rules(n: int, order: Optional[LetterOrder] = None,
               families: Iterable[RelationFamily] = SEED_FAMILIES,
               degree_bound: int = 6, validate: bool = True, seed: int = 1) -> RuleSet:
    """
    Startregeln aus dem Relationskatalog

    validate=True prüft jede Saat-Relation im Spin-1/2-Bild bei einem
    zufälligen q0 und verwirft Relationen mit nichtverschwindendem Bild.
    """
    if n > 5:
        raise AwError(f"Rewriting wird nur bis n=5 unterstützt, nicht n={n}")
    if n == 5:
        rewriter_logger.warning("⚠️ n=5 ist experimentell")
    order = order or default_order(n)
    rules = RuleSet(order=order, degree_bound=degree_bound)

    candidates = []
    for index, (source, poly) in enumerate(seed_relations(n, order, families)):
        if validate and not _vanishes(poly, n, seed):
            rules.rejected.append(source)
            error_logger.error(f"❌ Saat-Relation {source} verschwindet nicht im Bild, verworfen")
            continue
        terms = rules.to_terms(poly)
        if terms:
            degree = max(len(w) for w in terms)
            candidates.append((degree, index, source, terms))
    candidates.sort(key=lambda item: (item[0], item[1]))

    for _, _, source, terms in candidates:
        rules.add_relation(terms, source)

    _promote_relations(rules)
    rules.normalize()
    rules.find_gaps()
    rewriter_logger.info(
        f"✅ Saat n={n}: {len(rules.rules)} Regeln, {len(rules.linear_relations)} lineare Relationen, "
        f"{len(rules.gaps)} Lücken"
    )
    return rules


def _promote_relations(rules: RuleSet) -> None:
    """Lineare Relationen erneut reduzieren, bis keine mehr zur Regel wird"""
    changed = True
    while changed:
        changed = False
        pending, rules.linear_relations = rules.linear_relations, []
        for rel in pending:
            before = len(rules.rules)
            rules.add_relation(rel, 'relation')
            changed = changed or len(rules.rules) > before


def _vanishes(poly: NCPoly, n: int, seed: int) -> bool:
    from awn.services.uq import RepSpec, phi_is_zero
    rng = random.Random(seed)
    spec = RepSpec.half(n)
    for _ in range(5):
        q0 = sample_q0(rng)
        try:
            return phi_is_zero(poly, spec, q0)
        except PoleError:
            continue
    return True


def _ambiguities(rules: RuleSet) -> List[Tuple[tuple, Key, Terms, Terms]]:
    """Überlappungen und Einschlüsse von Regel-Linksseiten bis zur Gradschranke"""
    out = []
    bound = rules.degree_bound
    for l1 in sorted(rules.rules, key=_monomial_key):
        for l2 in sorted(rules.rules, key=_monomial_key):
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] != l2[:k]:
                    continue
                word = l1 + l2[k:]
                tag = ('o', l1, l2, k)
                if len(word) > bound or tag in rules.processed:
                    continue
                left = {w + l2[k:]: c for w, c in rules.rules[l1]}
                right = {l1[:-k] + w: c for w, c in rules.rules[l2]}
                out.append((tag, word, left, right))
            if l1 != l2 and len(l2) < len(l1):
                pos = _find(l1, l2)
                tag = ('i', l1, l2, pos)
                if pos is None or tag in rules.processed:
                    continue
                left = dict(rules.rules[l1])
                right = {l1[:pos] + w + l1[pos + len(l2):]: c for w, c in rules.rules[l2]}
                out.append((tag, l1, left, right))
    return out


def complete(rules: RuleSet, degree_bound: Optional[int] = None, max_iter: int = 10) -> RuleSet:
    """
    Beschränkte Vervollständigung

    Beide Reduktionen jeder Mehrdeutigkeit werden verglichen, Differenzen
    werden Regeln oder lineare Relationen. Lineare Relationen werden mit
    Buchstaben multipliziert. Wird max_iter erreicht, ist `incomplete` gesetzt.
    """
    result = rules.copy()
    if degree_bound is not None:
        result.degree_bound = degree_bound
    if result.degree_bound < 3:
        raise AwError("degree_bound muss mindestens 3 sein")

    letters = range(len(result.order))
    for iteration in range(1, max_iter + 1):
        added = 0
        for tag, word, left, right in _ambiguities(result):
            result.processed.add(tag)
            diff = dict(result.reduce_terms(left))
            for w, c in result.reduce_terms(right).items():
                diff[w] = diff[w] - c if w in diff else -c
            diff = {w: c for w, c in diff.items() if c}
            if diff and result.add_relation(diff, f"overlap {result.order.word(word)}"):
                added += 1

        for rel in list(result.linear_relations):
            frozen = tuple(sorted((w, str(c)) for w, c in rel.items()))
            degree = max(len(w) for w in rel)
            if degree + 1 > result.degree_bound:
                continue
            for letter in letters:
                for side in ('l', 'r'):
                    tag = ('m', frozen, side, letter)
                    if tag in result.processed:
                        continue
                    result.processed.add(tag)
                    if side == 'l':
                        product = {(letter,) + w: c for w, c in rel.items()}
                    else:
                        product = {w + (letter,): c for w, c in rel.items()}
                    if result.add_relation(product, 'relation*letter'):
                        added += 1

        _promote_relations(result)
        rewriter_logger.info(
            f"🔄 Vervollständigung Runde {iteration}: +{added}, "
            f"{len(result.rules)} Regeln, {len(result.linear_relations)} lineare Relationen"
        )
        if not added:
            result.incomplete = False
            result.normalize()
            result.find_gaps()
            return result

    result.incomplete = True
    result.normalize()
    result.find_gaps()
    rewriter_logger.warning(f"⚠️ Vervollständigung nach {max_iter} Runden abgebrochen")
    return result


# ---------------------------------------------------------------------------
# Null-Test
# ---------------------------------------------------------------------------

def sample_q0(rng: random.Random) -> Fraction:
    """Zufälliges rationales q0 in (1, 2) mit Nenner <= 100"""
    den = rng.randint(2, 100)
    return Fraction(rng.randint(den + 1, 2 * den - 1), den)


def falsify(x: NCPoly, falsifier: Sequence, seed: int = 1, points: int = 2) -> Optional[Tuple[object, Fraction]]:
    """Sucht eine Darstellung und ein q0, an dem das Bild nicht verschwindet"""
    from awn.services.uq import phi_is_zero
    rng = random.Random(seed)
    for spec in falsifier:
        tried = 0
        for _ in range(5 * points):
            if tried == points:
                break
            q0 = sample_q0(rng)
            try:
                zero = phi_is_zero(x, spec, q0)
            except PoleError:
                continue
            tried += 1
            if not zero:
                return spec, q0
    return None


def verify_zero(x: NCPoly, rules: Optional[RuleSet], falsifier: Optional[Sequence] = None,
                seed: int = 1) -> Verdict:
    """
    ProvedZero, wenn die Reduktion 0 ergibt; ProvedNonzero mit Zeuge, wenn ein
    Bild nicht verschwindet; sonst Inconclusive.

    rules=None überspringt die Reduktion (nur Darstellungen).
    """
    from awn.services.uq import RepSpec
    remainder = None
    if rules is not None:
        remainder = rules.reduce(x)
        if remainder.is_zero():
            return Verdict(VerdictStatus.PROVED_ZERO)
    elif x.expand_letters().is_zero():
        return Verdict(VerdictStatus.PROVED_ZERO)

    falsifier = falsifier if falsifier is not None else [RepSpec.half(x.n)]
    witness = falsify(x, falsifier, seed)
    if witness is not None:
        return Verdict(VerdictStatus.PROVED_NONZERO, witness, remainder)
    return Verdict(VerdictStatus.INCONCLUSIVE, None, remainder)
