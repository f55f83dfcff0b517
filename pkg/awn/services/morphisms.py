"""
Morphismen
Zopfgruppen-Automorphismen r_a und r̄_a, der Anti-Automorphismus up,
die Koproduktabbildungen δ_a und r'_0, dazu die ausführbaren Prüfungen

Wörter werden von rechts nach links angewendet: "r0 r1" ist r_0∘r_1,
also zuerst r_1.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from awn.services.algebra import (
    Label, NCPoly, comm, expand, gen, generators, interval, label_from_set, labels,
    make_label, qcomm, random_element,
)
from awn.services.errors import AwError
from awn.services.relations import defining_instances
from awn.services.report import CheckReport, log_report
from awn.services.rewriter import RuleSet, verify_zero
from awn.services.scalar import q, qrat_invert

checks_logger = logging.getLogger('checks')


class MorphismKind(str, Enum):
    R = 'r'
    RBAR = 'rb'
    DELTA = 'd'
    UP = 'up'
    R0P = 'r0p'


@dataclass(frozen=True)
class MorphismTag:
    """Eine Abbildung; δ_a erhöht den Rang n -> n+1, alle anderen erhalten ihn"""
    kind: MorphismKind
    index: Optional[int] = None

    def rank_out(self, n: int) -> int:
        return n + 1 if self.kind == MorphismKind.DELTA else n

    def validate(self, n: int) -> None:
        if n < 2:
            raise AwError(f"{self} braucht Rang >= 2, nicht {n}")
        if self.kind in (MorphismKind.R, MorphismKind.RBAR) and not 0 <= self.index <= n - 1:
            raise AwError(f"{self} existiert nicht für n={n} (Index 0..{n - 1})")
        if self.kind == MorphismKind.DELTA and not 0 <= self.index <= n:
            raise AwError(f"{self} existiert nicht für n={n} (Index 0..{n})")

    def __str__(self) -> str:
        if self.index is None:
            return self.kind.value
        return f"{self.kind.value}{self.index}"


BraidWord = Tuple[MorphismTag, ...]


def r(a: int) -> MorphismTag:
    return MorphismTag(MorphismKind.R, a)


def rb(a: int) -> MorphismTag:
    return MorphismTag(MorphismKind.RBAR, a)


def d(a: int) -> MorphismTag:
    return MorphismTag(MorphismKind.DELTA, a)


UP = MorphismTag(MorphismKind.UP)
R0P = MorphismTag(MorphismKind.R0P)


def parse_word(text: str) -> BraidWord:
    """Tokens r<a>, rb<a>, d<a>, up, r0p, durch Leerzeichen getrennt"""
    word = []
    for token in text.split():
        if token in ('up', 'r0p'):
            word.append(UP if token == 'up' else R0P)
            continue
        for kind in (MorphismKind.RBAR, MorphismKind.R, MorphismKind.DELTA):
            rest = token[len(kind.value):]
            if token.startswith(kind.value) and rest.isdigit():
                word.append(MorphismTag(kind, int(rest)))
                break
        else:
            raise AwError(f"Unbekanntes Morphismus-Token: {token!r}")
    if not word:
        raise AwError("Leeres Morphismus-Wort")
    return tuple(word)


def word_str(word: Sequence[MorphismTag]) -> str:
    return " ".join(str(tag) for tag in word) if word else "id"


def word_rank(word: Sequence[MorphismTag], n: int) -> int:
    """Prüft die Indizes von rechts nach links und liefert den Zielrang"""
    for tag in reversed(word):
        tag.validate(n)
        n = tag.rank_out(n)
    return n


def delta_word(a: int, b: int) -> BraidWord:
    """Δ_{a..b} = r_a · r_{a+1} r_a · ... · r_b ... r_{a+1} r_a"""
    word: List[MorphismTag] = []
    for top in range(a, b + 1):
        word.extend(r(i) for i in range(top, a - 1, -1))
    return tuple(word)


def r0p_word(n: int) -> BraidWord:
    """r'_0 = r̄_{n-1} ... r̄_1 r̄_0 r̄_1 ... r̄_{n-1}"""
    return tuple([rb(i) for i in range(n - 1, 0, -1)] + [rb(0)] + [rb(i) for i in range(1, n)])


# ---------------------------------------------------------------------------
# Bilder einzelner Buchstaben
# ---------------------------------------------------------------------------

def _structural_ri(i: int, label: Label, bar: bool) -> Optional[Label]:
    S = label.support
    low, high = i in S, (i + 1) in S
    if low == high:
        return label
    inc, single = label.increasing, label.is_generator
    if high and (single or inc != bar):
        return label_from_set((S - {i + 1}) | {i}, not bar)
    if low and (single or inc == bar):
        return label_from_set((S - {i}) | {i + 1}, bar)
    return None


def _structural_r0(label: Label, n: int, bar: bool) -> Optional[Label]:
    S = label.support
    if 1 not in S:
        return label
    if label.is_generator or label.increasing != bar:
        rest = set(range(2, n + 1)) - S
        return label_from_set(rest | {1}, bar)
    return None


def _formula_ri(i: int, label: Label, n: int, bar: bool) -> NCPoly:
    S = label.support
    hit = S & {i, i + 1}
    if len(hit) != 1:
        return NCPoly.letter(label, n)
    a = next(iter(hit))
    other = i + 1 if a == i else i
    L = lambda l: NCPoly.letter(l, n)
    pair, x = L(gen(i, i + 1)), L(label)
    inc = label.increasing
    return (
        -(qcomm(x, pair) if bar else qcomm(pair, x))
        + L(gen(other)) * L(label_from_set(S - {a}, inc))
        + L(gen(a)) * L(label_from_set(S | {i, i + 1}, inc))
    )


def _formula_r0(label: Label, n: int, bar: bool) -> NCPoly:
    S = label.support
    if 1 not in S:
        return NCPoly.letter(label, n)
    L = lambda l: NCPoly.letter(l, n)
    tail, x = L(gen(2, n)), L(label)
    inc = label.increasing
    rest = set(range(2, n + 1))
    return (
        -(qcomm(x, tail) if bar else qcomm(tail, x))
        + L(label_from_set(rest - S, inc)) * L(gen(1))
        + L(label_from_set(S & rest, inc)) * L(gen(1, n))
    )


def formula_image(tag: MorphismTag, label: Label, n: int) -> NCPoly:
    """q-Kommutator-Formel für r_a, r̄_a (auch auf mehrteiligen Labels)"""
    tag.validate(n)
    bar = tag.kind == MorphismKind.RBAR
    if tag.kind not in (MorphismKind.R, MorphismKind.RBAR):
        raise AwError(f"Keine Kommutator-Formel für {tag}")
    if tag.index == 0:
        return _formula_r0(label, n, bar)
    return _formula_ri(tag.index, label, n, bar)


def delta_label(label: Label, a: int) -> Label:
    """δ_a auf Indexmengen: a -> {a, a+1}, größere Indizes +1"""
    parts = [interval(p.lo + 1 if p.lo > a else p.lo, p.hi + 1 if p.hi >= a else p.hi) for p in label.parts]
    return make_label(parts, label.increasing if len(parts) >= 2 else None)


def r0p_label(label: Label, n: int) -> NCPoly:
    """Geschlossene Form von r'_0 auf Generatoren"""
    if not label.is_generator:
        return expand(label, n).substitute(lambda l: r0p_label(l, n))
    part = label.parts[0]
    if part.hi < n:
        return NCPoly.letter(label, n)
    return NCPoly.letter(label_from_set(set(range(1, part.lo)) | {n}, True), n)


def apply_generator_map(tag: MorphismTag, label: Label, n: int, structural: bool = True) -> NCPoly:
    """
    Bild eines Buchstabens

    Mit structural=True wird, wo möglich, das Label direkt umgeschrieben;
    sonst die q-Kommutator-Formel. Triviale Fälle geben den Buchstaben zurück.
    """
    tag.validate(n)
    if tag.kind == MorphismKind.DELTA:
        return NCPoly.letter(delta_label(label, tag.index), n + 1)
    if tag.kind == MorphismKind.UP:
        return NCPoly.letter(label.reversed(), n)
    if tag.kind == MorphismKind.R0P:
        return r0p_label(label, n)
    bar = tag.kind == MorphismKind.RBAR
    if structural:
        if tag.index == 0:
            image = _structural_r0(label, n, bar)
        else:
            image = _structural_ri(tag.index, label, bar)
        if image is not None:
            return NCPoly.letter(image, n)
    return formula_image(tag, label, n)


def apply_tag(tag: MorphismTag, x: NCPoly, structural: bool = True) -> NCPoly:
    n = x.n
    tag.validate(n)
    plain = x.deabsorb()
    if tag.kind == MorphismKind.UP:
        return plain.substitute(lambda l: NCPoly.letter(l.reversed(), n), reverse=True)
    if tag.kind == MorphismKind.R0P:
        return apply(r0p_word(n), plain, structural)
    return plain.substitute(lambda l: apply_generator_map(tag, l, n, structural), n_out=tag.rank_out(n))


def apply(morphism: Union[MorphismTag, Sequence[MorphismTag]], x: NCPoly, structural: bool = True) -> NCPoly:
    """Multiplikative Fortsetzung; Wörter von rechts nach links"""
    word = (morphism,) if isinstance(morphism, MorphismTag) else tuple(morphism)
    word_rank(word, x.n)
    result = x.deabsorb()
    for tag in reversed(word):
        result = apply_tag(tag, result, structural)
    return result


def invert_q(x: NCPoly) -> NCPoly:
    """Automorphismus q -> q^-1 auf den Koeffizienten"""
    return x.deabsorb().map_coefficients(qrat_invert)


# ---------------------------------------------------------------------------
# Vergleich zweier Elemente
# ---------------------------------------------------------------------------

STRENGTH = ('syntactic', 'proved', 'rep-consistent', 'inconclusive', 'nonzero')


@dataclass(frozen=True)
class Comparison:
    status: str
    detail: str = ''

    @property
    def failed(self) -> bool:
        return self.status == 'nonzero'


def weakest(statuses: Iterable[str]) -> str:
    statuses = list(statuses)
    if not statuses:
        return 'syntactic'
    return max(statuses, key=STRENGTH.index)


class Comparator:
    """
    Gleichheit in aw(n): erst syntaktisch, dann Reduktion mit den Regeln
    des Rangs, sonst Darstellungstest

    Ohne Regeln ist das beste Ergebnis 'rep-consistent'.
    """

    def __init__(self, rules: Optional[Dict[int, RuleSet]] = None,
                 provider: Optional[Callable[[int], Optional[RuleSet]]] = None,
                 falsifier: Optional[Sequence] = None, seed: int = 1):
        self.rules: Dict[int, Optional[RuleSet]] = dict(rules or {})
        self.provider = provider
        self.falsifier = list(falsifier) if falsifier else []
        self.seed = seed

    def rules_for(self, n: int) -> Optional[RuleSet]:
        if n not in self.rules:
            self.rules[n] = self.provider(n) if self.provider else None
        return self.rules[n]

    def is_zero(self, x: NCPoly) -> Comparison:
        plain = x.deabsorb()
        if plain.is_zero() or plain.expand_letters().absorb_central().is_zero():
            return Comparison('syntactic')
        rules = self.rules_for(x.n)
        falsifier = [spec for spec in self.falsifier if spec.n == x.n] or None
        verdict = verify_zero(plain, rules, falsifier, self.seed)
        if verdict.is_zero:
            return Comparison('proved')
        if verdict.is_nonzero:
            spec, q0 = verdict.witness
            return Comparison('nonzero', f"Bild in ({spec}) bei q={q0} ist nicht 0")
        return Comparison('rep-consistent' if rules is None else 'inconclusive')

    def compare(self, a: NCPoly, b: NCPoly) -> Comparison:
        if a.n != b.n:
            return Comparison('nonzero', f"Rang {a.n} gegen {b.n}")
        return self.is_zero(a.deabsorb() - b.deabsorb())


def _check_on_generators(report: CheckReport, name: str, n: int, comparator: Comparator,
                         lhs: Callable[[Label], NCPoly], rhs: Callable[[Label], NCPoly],
                         domain: Optional[Iterable[Label]] = None) -> None:
    statuses = []
    for label in (generators(n) if domain is None else domain):
        result = comparator.compare(lhs(label), rhs(label))
        if result.failed:
            checks_logger.error(f"❌ {name} scheitert auf {label}: {result.detail}")
            report.add(name, result.status, f"{label}: {result.detail}")
            return
        statuses.append(result.status)
    report.add(name, weakest(statuses))


def _check_words(report: CheckReport, lhs: BraidWord, rhs: BraidWord, n: int,
                 comparator: Comparator, name: Optional[str] = None) -> None:
    name = name or f"{word_str(lhs)} = {word_str(rhs)}"
    _check_on_generators(
        report, name, n, comparator,
        lambda l: apply(lhs, NCPoly.letter(l, n)),
        lambda l: apply(rhs, NCPoly.letter(l, n)),
    )


def _check_images(report: CheckReport, name: str, word: BraidWord, n: int, comparator: Comparator,
                  cases: List[Tuple[Label, Label]]) -> None:
    if not cases:
        return
    images = dict(cases)
    _check_on_generators(
        report, name, n, comparator,
        lambda l: apply(word, NCPoly.letter(l, n)),
        lambda l: NCPoly.letter(images[l], n),
        [source for source, _ in cases],
    )


# ---------------------------------------------------------------------------
# Zopfrelationen
# ---------------------------------------------------------------------------

def _braid_closed_forms(n: int) -> List[Tuple[str, BraidWord, List[Tuple[Label, Label]]]]:
    S = lambda *ranges: set().union(*[set(x) for x in ranges])
    out = []
    for i in range(1, n - 1):
        cases = []
        for k in range(i + 3, n + 1):
            cases.append((gen(i + 2, k), label_from_set(S([i], range(i + 3, k + 1)))))
        for k in range(i + 2, n + 1):
            cases.append((gen(i + 1, k), label_from_set(S([i, i + 1], range(i + 3, k + 1)))))
        for j in range(1, i + 1):
            cases.append((gen(j, i + 1), label_from_set(S([i + 1, i + 2], range(j, i)), False)))
        for j in range(1, i):
            cases.append((gen(j, i), label_from_set(S([i + 2], range(j, i)), False)))
        out.append((f"r{i} r{i + 1} r{i} Bilder", (r(i), r(i + 1), r(i)), cases))
    if n >= 3:
        cases = []
        for j in range(2, n + 1):
            cases.append((gen(2, j), label_from_set(S(range(j + 1, n + 1), [1, 2]), False)))
            cases.append((gen(1, j), label_from_set(S(range(j + 1, n + 1), [2]), False)))
        out.append(("r0 r1 r0 Bilder", (r(0), r(1), r(0)), cases))
    for a in range(0, n):
        for b in range(a + 2, n):
            if a > 0:
                image = label_from_set(S([a], range(a + 2, b), [b + 1]))
            else:
                image = label_from_set(S(range(b + 2, n + 1), [b], [1]), False)
            out.append((f"r{a} rb{b} Bild", (r(a), rb(b)), [(gen(a + 1, b), image)]))
            out.append((f"rb{b} r{a} Bild", (rb(b), r(a)), [(gen(a + 1, b), image)]))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out.append(("Δ_{1..n-1} Bilder", delta_word(1, n - 1),
                [(gen(i, j), gen(n - j + 1, n - i + 1)) for i, j in pairs]))
    out.append(("Δ_{0..n-1} Bilder", delta_word(0, n - 1),
                [(gen(i, j), gen(n - j, n - i) if j != n else gen(n - i + 1, n)) for i, j in pairs]))
    return out


def check_braid_relations(n: int, comparator: Comparator) -> CheckReport:
    """Zopfrelationen, Zentrumsquotient, geschlossene Bilder und r'_0 auf allen Generatoren"""
    if n < 3:
        raise AwError(f"Zopfrelationen brauchen n >= 3, nicht {n}")
    checks_logger.info(f"🔄 Zopfrelationen für n={n}")
    report = CheckReport(f"braid n={n}")
    for a in range(n):
        _check_words(report, (r(a), rb(a)), (), n, comparator)
        _check_words(report, (rb(a), r(a)), (), n, comparator)
    for a in range(n - 1):
        _check_words(report, (r(a), r(a + 1), r(a)), (r(a + 1), r(a), r(a + 1)), n, comparator)
    for a in range(n):
        for b in range(a + 2, n):
            _check_words(report, (r(a), r(b)), (r(b), r(a)), n, comparator)

    d1 = delta_word(1, n - 1)
    _check_words(report, d1 + d1, (), n, comparator, "(Δ_{1..n-1})^2 = id")
    d0 = delta_word(0, n - 1)
    _check_words(report, d0 + d0, (), n, comparator, "(Δ_{0..n-1})^2 = id")
    d02 = delta_word(0, n - 2)
    _check_words(report, d02 + d02, (), n, comparator, "(Δ_{0..n-2})^2 = id")
    down = tuple(r(i) for i in range(n - 1, 0, -1))
    _check_words(report, down + (r(0), r(0)) + tuple(reversed(down)), (), n, comparator)
    bar_down = tuple(rb(i) for i in range(1, n - 1))
    r0_squared = bar_down + (rb(n - 1), rb(n - 1)) + tuple(reversed(bar_down))
    _check_words(report, (r(0), r(0)), r0_squared, n, comparator)
    if n == 3:
        _check_words(report, (r(0), r(0)), (r(2), r(2)), n, comparator)

    for name, word, cases in _braid_closed_forms(n):
        _check_images(report, name, word, n, comparator, cases)

    _check_on_generators(
        report, "r'_0 geschlossene Form = Wort", n, comparator,
        lambda l: r0p_label(l, n),
        lambda l: apply(r0p_word(n), NCPoly.letter(l, n)),
    )
    report.extend(check_central_action(n))
    log_report(report, checks_logger)
    return report


def check_central_action(n: int) -> CheckReport:
    """Auf C_1..C_n, C_{1..n} wirken die r_a als Transpositionen"""
    report = CheckReport(f"central n={n}")
    central = [gen(i) for i in range(1, n + 1)] + [gen(1, n)]
    for a in range(n):
        swap = {gen(1): gen(1, n), gen(1, n): gen(1)} if a == 0 else {gen(a): gen(a + 1), gen(a + 1): gen(a)}
        for tag in (r(a), rb(a)):
            ok = True
            for label in central:
                x = NCPoly.letter(label, n)
                image = apply(tag, x)
                if image != NCPoly.letter(swap.get(label, label), n) or apply(tag, image) != x:
                    ok = False
                    report.add(f"{tag} auf zentralen Buchstaben", 'failed', str(label))
                    break
            if ok:
                report.add(f"{tag} auf zentralen Buchstaben", 'syntactic')
    return report


# ---------------------------------------------------------------------------
# Formeln
# ---------------------------------------------------------------------------

def check_formulas(n: int, comparator: Comparator, seed: int = 1, max_parts: int = 2) -> CheckReport:
    """
    Strukturregeln gegen Kommutator-Formeln, Differenzformel r_a - r̄_a,
    q -> q^-1 auf Ein-Loch-Labels und [A,B] über q-Kommutatoren
    """
    report = CheckReport(f"formulas n={n}")
    domain = [l for l in labels(n, max_parts) if not l.is_central(n)]
    factor = (q + q ** -1) / (q - q ** -1)
    for a in range(n):
        for tag in (r(a), rb(a)):
            bar = tag.kind == MorphismKind.RBAR
            moved = []
            for label in domain:
                image = _structural_r0(label, n, bar) if a == 0 else _structural_ri(a, label, bar)
                if image is not None and image != label:
                    moved.append(label)
            _check_on_generators(
                report, f"{tag} Strukturregel = Formel", n, comparator,
                lambda l, tag=tag: apply_generator_map(tag, l, n),
                lambda l, tag=tag: formula_image(tag, l, n),
                moved,
            )
        other = gen(2, n) if a == 0 else gen(a, a + 1)
        bad = None
        for label in domain:
            x = NCPoly.letter(label, n)
            diff = formula_image(r(a), label, n) - formula_image(rb(a), label, n)
            hits = len(label.support & ({1} if a == 0 else {a, a + 1}))
            expected = comm(x, NCPoly.letter(other, n)) * factor if hits == 1 else NCPoly.zero(n)
            if diff != expected:
                bad = label
                break
        report.add(f"r{a} - rb{a} Differenzformel", 'failed' if bad else 'syntactic', str(bad) if bad else '')

    one_hole = [l for l in labels(n, 2) if len(l.parts) == 2 and l.increasing]
    _check_on_generators(
        report, "q -> q^-1 vertauscht die Richtung", n, comparator,
        lambda l: invert_q(expand(l, n)),
        lambda l: expand(l.reversed(), n),
        one_hole,
    )

    rng = random.Random(seed)
    ok = True
    scale = (q - q ** -1) / (q + q ** -1)
    for _ in range(3):
        x, y = random_element(n, rng), random_element(n, rng)
        if comm(x, y) != (qcomm(x, y) - qcomm(y, x)) * scale:
            ok = False
            break
    report.add("[A,B] über q-Kommutatoren", 'syntactic' if ok else 'failed')
    log_report(report, checks_logger)
    return report


def check_up_compatibility(n: int, comparator: Comparator, seed: int = 1, samples: int = 3) -> CheckReport:
    """r̄_a(x^up) = r_a(x)^up und r_a(r̄_a(x)) = x für zufällige x"""
    report = CheckReport(f"up n={n}")
    rng = random.Random(seed)
    elements = [random_element(n, rng) for _ in range(samples)]
    for a in range(n):
        for name, lhs, rhs in (
            (f"rb{a}(x^up) = r{a}(x)^up", (rb(a), UP), (UP, r(a))),
            (f"r{a} rb{a} x = x", (r(a), rb(a)), ()),
        ):
            statuses = []
            for x in elements:
                result = comparator.compare(apply(lhs, x), apply(rhs, x))
                statuses.append(result.status)
                if result.failed:
                    break
            report.add(name, weakest(statuses))
    log_report(report, checks_logger)
    return report


# ---------------------------------------------------------------------------
# Morphismus-Eigenschaft und Koprodukt
# ---------------------------------------------------------------------------

def coproduct_identities(n: int) -> List[Tuple[BraidWord, BraidWord]]:
    """Identitäten zwischen δ_i und r_j als Abbildungen aw(n) -> aw(n+1)"""
    ids: List[Tuple[BraidWord, BraidWord]] = []
    for i in range(n + 1):
        ids.append(((r(i), d(i)), (d(i),)))
        ids.append(((rb(i), d(i)), (d(i),)))
    for i in range(n):
        ids.append(((d(i), r(i)), (r(i + 1), r(i), d(i + 1))))
        ids.append(((rb(i), rb(i + 1), d(i)), (d(i + 1), rb(i))))
        ids.append(((d(i + 1), r(i)), (r(i), r(i + 1), d(i))))
        ids.append(((rb(i + 1), rb(i), d(i + 1)), (d(i), rb(i))))
    for i in range(n + 1):
        for j in range(n):
            if j < i - 1:
                ids.append(((d(i), r(j)), (r(j), d(i))))
                ids.append(((d(i), rb(j)), (rb(j), d(i))))
            elif j > i:
                ids.append(((d(i), r(j)), (r(j + 1), d(i))))
                ids.append(((d(i), rb(j)), (rb(j + 1), d(i))))
    return ids


def check_coproduct_identities(n: int, comparator: Comparator,
                               only: Optional[MorphismTag] = None) -> CheckReport:
    report = CheckReport(f"coproduct n={n}")
    for lhs, rhs in coproduct_identities(n):
        if only is not None and only not in lhs + rhs:
            continue
        _check_words(report, lhs, rhs, n, comparator)
    log_report(report, checks_logger)
    return report


def check_morphism_property(tag: MorphismTag, n: int, comparator: Comparator) -> CheckReport:
    """Bilder der definierenden Relationen verschwinden; dazu die Koprodukt-Identitäten mit tag"""
    tag.validate(n)
    checks_logger.info(f"🔄 Morphismus-Eigenschaft von {tag} auf aw({n})")
    report = CheckReport(f"morphism {tag} n={n}")
    by_family: Dict[str, List[str]] = {}
    first_failure: Dict[str, str] = {}
    for instance in defining_instances(n):
        family = instance.family.value
        result = comparator.is_zero(apply(tag, instance.letter_form()))
        by_family.setdefault(family, []).append(result.status)
        if result.failed and family not in first_failure:
            first_failure[family] = f"{instance.describe()}: {result.detail}"
    for family, statuses in by_family.items():
        report.add(f"{tag} erhält {family}", weakest(statuses), first_failure.get(family, ''))
    if tag.kind in (MorphismKind.R, MorphismKind.RBAR, MorphismKind.DELTA):
        report.extend(check_coproduct_identities(n, comparator, only=tag))
    log_report(report, checks_logger)
    return report


def check_requirements(comparator: Comparator) -> CheckReport:
    """Forderungen an die Familie aw(n): aw(2), r_1 auf aw(2) und aw(3), ι_n"""
    report = CheckReport("requirements")
    C = lambda n, *parts: NCPoly.letter(make_label([interval(*p) for p in parts]), n)

    pairs = [(C(2, (1,)), C(2, (1, 2))), (C(2, (2,)), C(2, (1, 2))), (C(2, (1,)), C(2, (2,)))]
    report.add("aw(2) kommutativ", weakest(comparator.is_zero(comm(x, y)).status for x, y in pairs))

    swapped = apply(r(1), C(2, (1,))) == C(2, (2,)) and apply(r(1), C(2, (2,))) == C(2, (1,))
    report.add("r1 vertauscht C1 und C2 in aw(2)", 'syntactic' if swapped else 'failed')

    ok = apply(r(1), C(3, (2, 3))) == C(3, (1,), (3,))
    report.add("r1(C23) = C13", 'syntactic' if ok else 'failed')
    ok = apply(rb(1), C(3, (2, 3))) == C(3, (3,), (1,))
    report.add("rb1(C23) = C31", 'syntactic' if ok else 'failed')
    expected = -qcomm(C(3, (1, 2)), C(3, (2, 3))) + C(3, (1,)) * C(3, (3,)) + C(3, (2,)) * C(3, (1, 3))
    report.add("r1(C23) als Kommutator", 'syntactic' if formula_image(r(1), gen(2, 3), 3) == expected else 'failed')

    for tag, fixed in ((r(1), [(3,), (1, 2), (1, 3)]), (r(2), [(1,), (2, 3), (1, 3)])):
        ok = all(apply(tag, C(3, p)) == C(3, p) for p in fixed)
        report.add(f"{tag} Fixpunkte", 'syntactic' if ok else 'failed')

    ok = True
    for n in (2, 3):
        for i in range(1, n):
            for label in generators(n):
                small = apply(r(i), NCPoly.letter(label, n)).with_rank(n + 1)
                if small != apply(r(i), NCPoly.letter(label, n + 1)):
                    ok = False
    report.add("r_i vertauscht mit ι_n", 'syntactic' if ok else 'failed')
    log_report(report, checks_logger)
    return report


def check_rho_compatibility(n: int, q0=None) -> CheckReport:
    """ρ_i(φ(C_I)) = φ(r_i(C_I)) auf Spin 1/2"""
    from awn.services.uq import RepSpec, equal, phi, rho
    spec = RepSpec.half(n)
    report = CheckReport(f"rho n={n}")
    for i in range(1, n):
        bad = None
        for label in generators(n):
            x = NCPoly.letter(label, n)
            if not equal(rho(i, phi(x, spec, q0), spec, q0), phi(apply(r(i), x), spec, q0)):
                bad = label
                break
        report.add(f"rho{i} = phi r{i}", 'failed' if bad else 'syntactic', str(bad) if bad else '')
    log_report(report, checks_logger)
    return report
