"""
Algebra-Schicht
Index-Kombinatorik (zusammenhängende Teilmengen, monotone Folgen, Löcher)
und freie nichtkommutative Polynome, in denen alle Elemente ausgedrückt werden
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from awn.services.errors import AwError, LabelError, ModeMismatchError
from awn.services.scalar import (
    QFIELD, central_ring, q, qrat_is_monomial, qrat_str, to_qrat
)

algebra_logger = logging.getLogger('algebra')


class ConnectedSubset(NamedTuple):
    """Intervall {lo, ..., hi}"""
    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def elements(self) -> range:
        return range(self.lo, self.hi + 1)

    def has(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return str(self.lo) if self.lo == self.hi else f"{self.lo}..{self.hi}"


def interval(lo: int, hi: Optional[int] = None) -> ConnectedSubset:
    hi = lo if hi is None else hi
    if lo > hi:
        raise LabelError(f"Leeres Intervall {lo}..{hi}")
    return ConnectedSubset(lo, hi)


def components(elements: Iterable[int]) -> List[ConnectedSubset]:
    """Zerlegung einer Menge in maximale Intervalle, aufsteigend"""
    out: List[ConnectedSubset] = []
    for x in sorted(set(elements)):
        if out and out[-1].hi + 1 == x:
            out[-1] = ConnectedSubset(out[-1].lo, x)
        else:
            out.append(ConnectedSubset(x, x))
    return out


class Label(NamedTuple):
    """
    Index (I_1, ..., I_k) eines Elements C_{I_1...I_k}

    Kanonische Labels haben disjunkte, in Richtung `increasing` streng
    monotone Teile ohne benachbarte Teile; ein Teil ist immer aufsteigend.
    """
    parts: Tuple[ConnectedSubset, ...]
    increasing: bool = True

    @property
    def support(self) -> frozenset:
        return frozenset(x for part in self.parts for x in part.elements())

    @property
    def is_generator(self) -> bool:
        return len(self.parts) == 1

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def holes(self) -> List[ConnectedSubset]:
        out = []
        for a, b in zip(self.parts, self.parts[1:]):
            low, high = (a, b) if self.increasing else (b, a)
            out.append(ConnectedSubset(low.hi + 1, high.lo - 1))
        return out

    def reversed(self) -> 'Label':
        """Label von C^up: Teile in umgekehrter Reihenfolge"""
        if len(self.parts) <= 1:
            return self
        return Label(tuple(reversed(self.parts)), not self.increasing)

    def is_central(self, n: int) -> bool:
        if not self.is_generator:
            return False
        part = self.parts[0]
        return part.size == 1 or (part.lo == 1 and part.hi == n)

    def sort_key(self) -> tuple:
        return (len(self.parts), tuple(self.parts), not self.increasing)

    def __str__(self) -> str:
        if not self.parts:
            return "1"
        return "C[" + ";".join(str(p) for p in self.parts) + "]"


EMPTY = Label((), True)


def make_label(parts: Sequence[ConnectedSubset], increasing: Optional[bool] = None,
               n: Optional[int] = None) -> Label:
    """
    Baut ein kanonisches Label

    Richtung None: wird aus der Reihenfolge der Teile abgeleitet.
    Benachbarte Teile werden verschmolzen.
    """
    parts = [ConnectedSubset(p.lo, p.hi) for p in parts]
    for part in parts:
        if part.lo > part.hi:
            raise LabelError(f"Leerer Block {part.lo}..{part.hi}")
        if n is not None and (part.lo < 1 or part.hi > n):
            raise LabelError(f"Block {part} liegt nicht in 1..{n}")

    seen: set = set()
    for part in parts:
        elements = set(part.elements())
        if seen & elements:
            raise LabelError(f"Überlappende Teile in {';'.join(str(p) for p in parts)}")
        seen |= elements

    if len(parts) >= 2:
        rising = all(a.hi < b.lo for a, b in zip(parts, parts[1:]))
        falling = all(a.lo > b.hi for a, b in zip(parts, parts[1:]))
        if increasing is None:
            if not (rising or falling):
                raise LabelError(f"Nicht-monotone Folge {';'.join(str(p) for p in parts)}")
            increasing = rising
        elif (increasing and not rising) or (not increasing and not falling):
            raise LabelError(f"Folge {';'.join(str(p) for p in parts)} ist nicht monoton in der angegebenen Richtung")

    merged: List[ConnectedSubset] = []
    for part in parts:
        if merged:
            prev = merged[-1]
            if increasing and prev.hi + 1 == part.lo:
                merged[-1] = ConnectedSubset(prev.lo, part.hi)
                continue
            if not increasing and part.hi + 1 == prev.lo:
                merged[-1] = ConnectedSubset(part.lo, prev.hi)
                continue
        merged.append(part)

    if len(merged) <= 1:
        return Label(tuple(merged), True)
    return Label(tuple(merged), bool(increasing))


def canonicalize(label: Label, n: int) -> Label:
    """Verschmilzt benachbarte Teile und normalisiert die Richtung"""
    return make_label(label.parts, label.increasing if len(label.parts) >= 2 else None, n)


def label_from_set(elements: Iterable[int], increasing: bool = True) -> Label:
    """Label C_S einer Menge S in gegebener Richtung"""
    comps = components(elements)
    if not increasing:
        comps.reverse()
    if len(comps) <= 1:
        return Label(tuple(comps), True)
    return Label(tuple(comps), increasing)


def gen(lo: int, hi: Optional[int] = None) -> Label:
    """Generator C_{lo..hi}"""
    return Label((interval(lo, hi),), True)


def central_label(n: int, index: Optional[int]) -> Label:
    """C_i bzw. C_{1..n} für index=None"""
    return gen(1, n) if index is None else gen(index)


def connected_subsets(n: int) -> List[ConnectedSubset]:
    return [ConnectedSubset(lo, hi) for lo in range(1, n + 1) for hi in range(lo, n + 1)]


def generators(n: int) -> List[Label]:
    return [Label((s,), True) for s in connected_subsets(n)]


# ---------------------------------------------------------------------------
# Freie nichtkommutative Polynome
# ---------------------------------------------------------------------------

Word = Tuple[Label, ...]


class NCPoly:
    """
    Endliche Summe von Wörtern mit Koeffizienten

    plain: Koeffizienten in Q(q), Buchstaben beliebige Labels (Buchstabenform).
    central: Koeffizienten in Q(q)[z1..zn, zf], keine zentralen Buchstaben.
    Werte werden nach der Konstruktion nicht mehr verändert.
    """
    __slots__ = ('n', 'central', 'terms')

    def __init__(self, n: int, terms: Optional[Dict[Word, object]] = None, central: bool = False):
        self.n = n
        self.central = central
        self.terms: Dict[Word, object] = {}
        if terms:
            for word, coeff in terms.items():
                coeff = self._coerce(coeff)
                if coeff:
                    self.terms[tuple(word)] = coeff

    # -- Konstruktoren -----------------------------------------------------

    @classmethod
    def zero(cls, n: int, central: bool = False) -> 'NCPoly':
        return cls(n, None, central)

    @classmethod
    def one(cls, n: int, central: bool = False) -> 'NCPoly':
        return cls.scalar(n, 1, central)

    @classmethod
    def scalar(cls, n: int, value, central: bool = False) -> 'NCPoly':
        return cls(n, {(): value}, central)

    @classmethod
    def letter(cls, label: Label, n: int) -> 'NCPoly':
        """Einzelner Buchstabe in Buchstabenform; C_∅ = 1"""
        if label.is_empty:
            return cls.one(n)
        return cls(n, {(label,): 1})

    @classmethod
    def word(cls, word: Sequence[Label], n: int, coeff=1, central: bool = False) -> 'NCPoly':
        return cls(n, {tuple(l for l in word if not l.is_empty): coeff}, central)

    # -- Koeffizienten -----------------------------------------------------

    def _coerce(self, coeff):
        if self.central:
            ring = central_ring(self.n)
            if isinstance(coeff, PolyElement):
                if coeff.ring != ring:
                    raise ModeMismatchError("Zentrales Polynom aus fremdem Ring")
                return coeff
            return ring.ground_new(to_qrat(coeff))
        if isinstance(coeff, PolyElement):
            raise ModeMismatchError("Zentrales Polynom im plain-Modus")
        return to_qrat(coeff)

    def _check(self, other: 'NCPoly') -> None:
        if self.n != other.n:
            raise ModeMismatchError(f"Rang {self.n} und {other.n} gemischt")
        if self.central != other.central:
            raise ModeMismatchError("plain- und central-Modus gemischt")

    # -- Arithmetik --------------------------------------------------------

    def __add__(self, other) -> 'NCPoly':
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(self.n, other, self.central)
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms[word] + coeff if word in terms else coeff
        return NCPoly(self.n, terms, self.central)

    __radd__ = __add__

    def __neg__(self) -> 'NCPoly':
        return NCPoly(self.n, {w: -c for w, c in self.terms.items()}, self.central)

    def __sub__(self, other) -> 'NCPoly':
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(self.n, other, self.central)
        return self + (-other)

    def __rsub__(self, other) -> 'NCPoly':
        return (-self) + other

    def scale(self, value) -> 'NCPoly':
        c = self._coerce(value)
        return NCPoly(self.n, {w: c * coeff for w, coeff in self.terms.items()}, self.central)

    def __mul__(self, other) -> 'NCPoly':
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        terms: Dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                c = c1 * c2
                terms[word] = terms[word] + c if word in terms else c
        return NCPoly(self.n, terms, self.central)

    def __rmul__(self, other) -> 'NCPoly':
        return self.scale(other)

    def __truediv__(self, other) -> 'NCPoly':
        value = to_qrat(other)
        if not value:
            raise AwError("Division durch Null")
        return self.scale(1 / value)

    def __pow__(self, k: int) -> 'NCPoly':
        if k < 0:
            raise AwError("Negative Potenzen von Algebra-Elementen sind nicht definiert")
        result = NCPoly.one(self.n, self.central)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.n == other.n and self.central == other.central and self.terms == other.terms

    __hash__ = None

    # -- Abfragen ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[Tuple[Word, object]]:
        return iter(self.terms.items())

    def is_scalar(self) -> bool:
        return all(not word for word in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise AwError("Element ist kein Skalar")
        return self.terms.get((), self._coerce(0))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def letters(self) -> set:
        return {l for w in self.terms for l in w}

    # -- Transformationen --------------------------------------------------

    def map_coefficients(self, fn: Callable) -> 'NCPoly':
        """Wendet fn auf jeden Koeffizienten an (plain-Modus)"""
        return NCPoly(self.n, {w: fn(c) for w, c in self.terms.items()}, self.central)

    def substitute(self, image: Callable[[Label], 'NCPoly'], n_out: Optional[int] = None,
                   reverse: bool = False) -> 'NCPoly':
        """
        Multiplikative Fortsetzung einer Buchstaben-Abbildung

        reverse=True kehrt die Wörter um (Anti-Automorphismus).
        """
        if self.central:
            raise ModeMismatchError("substitute erwartet plain-Modus")
        n_out = self.n if n_out is None else n_out
        cache: Dict[Label, NCPoly] = {}
        result = NCPoly.zero(n_out)
        for word, coeff in self.terms.items():
            term = NCPoly.scalar(n_out, coeff)
            for letter in (reversed(word) if reverse else word):
                if letter not in cache:
                    cache[letter] = image(letter)
                term = term * cache[letter]
            result = result + term
        return result

    def expand_letters(self) -> 'NCPoly':
        """Ersetzt mehrteilige Buchstaben durch ihre Entwicklung über Generatoren"""
        if all(l.is_generator for w in self.terms for l in w):
            return self
        plain = self.deabsorb() if self.central else self
        expanded = plain.substitute(lambda label: expand(label, self.n))
        return expanded.absorb_central() if self.central else expanded

    def absorb_central(self) -> 'NCPoly':
        """Zentrale Buchstaben C_i, C_{1..n} wandern in die Koeffizienten"""
        if self.central:
            return self
        ring = central_ring(self.n)
        terms: Dict[Word, PolyElement] = {}
        for word, coeff in self.terms.items():
            monom = ring.ground_new(coeff)
            rest = []
            for letter in word:
                if letter.is_central(self.n):
                    part = letter.parts[0]
                    slot = part.lo - 1 if part.size == 1 else self.n
                    monom = monom * ring.gens[slot]
                else:
                    rest.append(letter)
            key = tuple(rest)
            terms[key] = terms[key] + monom if key in terms else monom
        return NCPoly(self.n, terms, central=True)

    def deabsorb(self) -> 'NCPoly':
        """Zentrale Koeffizienten als Buchstaben vor das Wort stellen"""
        if not self.central:
            return self
        letters = [central_label(self.n, i) for i in range(1, self.n + 1)] + [central_label(self.n, None)]
        terms: Dict[Word, FracElement] = {}
        for word, poly in self.terms.items():
            for monom, c in poly.terms():
                prefix: List[Label] = []
                for letter, exp in zip(letters, monom):
                    prefix.extend([letter] * exp)
                key = tuple(prefix) + word
                terms[key] = terms[key] + c if key in terms else c
        return NCPoly(self.n, terms)

    def with_rank(self, n: int) -> 'NCPoly':
        """Dasselbe Element als Element einer größeren Algebra (plain-Modus)"""
        if self.central:
            raise ModeMismatchError("with_rank erwartet plain-Modus")
        return NCPoly(n, dict(self.terms))

    # -- Ausgabe -----------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), [l.sort_key() for l in item[0]]))

    def __str__(self) -> str:
        plain = self.deabsorb()
        if not plain.terms:
            return "0"
        rendered = [_term_str(word, coeff) for word, coeff in plain.sorted_terms()]
        text = rendered[0]
        for term in rendered[1:]:
            text += f" - {term[1:]}" if term.startswith('-') else f" + {term}"
        return text

    def __repr__(self) -> str:
        mode = "central" if self.central else "plain"
        return f"NCPoly(n={self.n}, {mode}, {self})"


def _term_str(word: Word, coeff: FracElement) -> str:
    body = "*".join(str(l) for l in word)
    if not word:
        return qrat_str(coeff)
    if coeff == QFIELD.one:
        return body
    if coeff == -QFIELD.one:
        return f"-{body}"
    text = qrat_str(coeff)
    if qrat_is_monomial(coeff):
        return f"{text}*{body}"
    if text.startswith('('):
        return f"{text}*{body}"
    return f"({text})*{body}"


# ---------------------------------------------------------------------------
# Kommutatoren
# ---------------------------------------------------------------------------

def qcomm(a: NCPoly, b: NCPoly) -> NCPoly:
    """[A,B]_q = (qAB - q^-1 BA)/(q - q^-1)"""
    return (a * b * q - b * a * q ** -1) * (1 / (q - q ** -1))


def qcomm_bar(a: NCPoly, b: NCPoly) -> NCPoly:
    """[A,B]_{q^-1} = [B,A]_q"""
    return qcomm(b, a)


def comm(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


def ncpoly_arith(a: NCPoly, b, op: str) -> NCPoly:
    """Arithmetik auf NCPoly; scale erwartet einen Skalar als b"""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'scale':
        return a.scale(b)
    if op == 'qcomm_plus':
        return qcomm(a, b)
    if op == 'qcomm_minus':
        return qcomm_bar(a, b)
    if op == 'comm':
        return comm(a, b)
    raise AwError(f"Unbekannte Operation: {op}")


# ---------------------------------------------------------------------------
# Entwicklung mehrteiliger Labels
# ---------------------------------------------------------------------------

def hole_split(label: Label, a: int) -> Tuple[Label, Label, Label, Label, Label, Label]:
    """
    Zerlegung an Loch a (0-basiert)

    Rückgabe: (I≤a H, H I>a, I≤a, I>a, H, I≤a H I>a)
    """
    parts = label.parts
    hole = label.holes()[a]
    inc = label.increasing
    head, tail = parts[:a + 1], parts[a + 1:]
    return (
        make_label(head + (hole,), inc),
        make_label((hole,) + tail, inc),
        make_label(head, inc),
        make_label(tail, inc),
        Label((hole,), True),
        make_label(head + (hole,) + tail, inc),
    )


def expand(label: Label, n: int, hole: int = 0) -> NCPoly:
    """
    Entwicklung von C_{I_1...I_k} über Generatoren

    C = -[C_{I≤a H}, C_{H I>a}]_q + C_{I≤a} C_{I>a} + C_H C_{I≤a H I>a}
    mit Loch `hole` auf der obersten Stufe, danach immer das linkeste Loch.
    """
    label = canonicalize(label, n)
    if label.is_empty:
        return NCPoly.one(n)
    if label.is_generator:
        return NCPoly.letter(label, n)
    if not 0 <= hole < len(label.parts) - 1:
        raise LabelError(f"Loch {hole} existiert nicht in {label}")
    return _expand_cached(label, n, hole)


@lru_cache(maxsize=4096)
def _expand_cached(label: Label, n: int, hole: int) -> NCPoly:
    left, right, low, high, middle, full = hole_split(label, hole)
    return (
        -qcomm(expand(left, n), expand(right, n))
        + expand(low, n) * expand(high, n)
        + expand(middle, n) * expand(full, n)
    )


def one_step(label: Label, n: int, hole: int = 0) -> NCPoly:
    """Eine Stufe der Loch-Rekursion in Buchstabenform (Teile bleiben Buchstaben)"""
    left, right, low, high, middle, full = hole_split(label, hole)
    L = lambda l: NCPoly.letter(l, n)
    return -qcomm(L(left), L(right)) + L(low) * L(high) + L(middle) * L(full)


def hole_choice_expansions(label: Label, n: int) -> List[NCPoly]:
    """Entwicklungen für jede Wahl des obersten Lochs"""
    label = canonicalize(label, n)
    if len(label.parts) < 2:
        return [expand(label, n)]
    return [expand(label, n, hole=a) for a in range(len(label.parts) - 1)]


def labels(n: int, max_parts: Optional[int] = None) -> List[Label]:
    """Alle kanonischen Labels (beide Richtungen) mit höchstens max_parts Teilen"""
    out: List[Label] = []

    def grow(parts: List[ConnectedSubset], start: int) -> None:
        if parts:
            out.append(Label(tuple(parts), True))
            if len(parts) >= 2:
                out.append(Label(tuple(reversed(parts)), False))
        if max_parts is not None and len(parts) >= max_parts:
            return
        first = start + 1 if parts else start
        for lo in range(first, n + 1):
            for hi in range(lo, n + 1):
                grow(parts + [ConnectedSubset(lo, hi)], hi + 1)

    grow([], 1)
    return out


def random_element(n: int, rng, terms: int = 3, degree: int = 2) -> NCPoly:
    """Zufälliges Element über Generatoren mit kleinen ganzzahligen Koeffizienten"""
    gens = generators(n)
    out = NCPoly.zero(n)
    for _ in range(terms):
        size = rng.randint(1, degree)
        word = [gens[rng.randrange(len(gens))] for _ in range(size)]
        coeff = rng.choice([-2, -1, 1, 2, 3])
        out = out + NCPoly.word(word, n, coeff)
    return out
