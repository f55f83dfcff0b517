"""
Regel-Cache
Speichert eine vervollständigte RuleSet als Text in der Ausdrucksgrammatik
und lädt sie wieder; geschrieben wird atomar (temporäre Datei + rename)
"""
import logging
import os
import tempfile
from typing import List, Optional

from awn.services.errors import AwError
from awn.services.parser import parse_label, read
from awn.services.rewriter import LetterOrder, RuleSet, complete, seed_rules

rewriter_logger = logging.getLogger('rewriter')

MAGIC = 'awcache v1'


def header(n: int, degree_bound: int) -> str:
    return f"{MAGIC} n={n} degbound={degree_bound}"


def dumps(rules: RuleSet) -> str:
    lines = [header(rules.n, rules.degree_bound)]
    lines.append("order: " + " ".join(str(label) for label in rules.order.letters))
    lines.append(f"incomplete: {'yes' if rules.incomplete else 'no'}")
    for rule in rules.rewrite_rules():
        lines.append(f"rule: {rule}")
    for rel in rules.relations():
        lines.append(f"rel: {rel} = 0")
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> tuple:
    if not line.startswith(MAGIC):
        raise AwError(f"Kein Regel-Cache: {line[:40]!r}")
    fields = dict(item.split('=', 1) for item in line[len(MAGIC):].split())
    try:
        return int(fields['n']), int(fields['degbound'])
    except (KeyError, ValueError):
        raise AwError(f"Ungültiger Cache-Kopf: {line!r}")


def loads(text: str) -> RuleSet:
    lines: List[str] = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise AwError("Leerer Regel-Cache")
    n, degree_bound = _parse_header(lines[0])
    if len(lines) < 2 or not lines[1].startswith('order:'):
        raise AwError("Regel-Cache ohne order-Zeile")
    letters = [parse_label(token, n) for token in lines[1][len('order:'):].split()]
    rules = RuleSet(order=LetterOrder(n, letters), degree_bound=degree_bound)

    for lineno, line in enumerate(lines[2:], start=3):
        kind, _, body = line.partition(':')
        body = body.strip()
        if kind == 'incomplete':
            rules.incomplete = body == 'yes'
        elif kind == 'rule':
            lhs_text, sep, rhs_text = body.partition(':=')
            if not sep:
                raise AwError(f"Zeile {lineno}: ':=' fehlt")
            lhs = rules.to_terms(read(lhs_text, n, expand=False))
            if len(lhs) != 1:
                raise AwError(f"Zeile {lineno}: linke Seite ist kein Wort")
            (word, _), = lhs.items()
            rules.set_rule(word, rules.to_terms(read(rhs_text, n, expand=False)))
        elif kind == 'rel':
            expr_text, sep, zero = body.rpartition('=')
            if not sep or zero.strip() != '0':
                raise AwError(f"Zeile {lineno}: erwartet '<Ausdruck> = 0'")
            rules.linear_relations.append(rules.to_terms(read(expr_text, n, expand=False)))
        else:
            raise AwError(f"Zeile {lineno}: unbekannter Eintrag {kind!r}")
    rules.find_gaps()
    return rules


def save_rules(rules: RuleSet, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix='.awcache-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as handle:
            handle.write(dumps(rules))
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    rewriter_logger.info(f"📄 Regel-Cache geschrieben: {path} ({len(rules.rules)} Regeln)")


def load_rules(path: str, n: int, degree_bound: int) -> Optional[RuleSet]:
    """
    Lädt den Cache, wenn er zu n und degree_bound passt

    Fehlende Datei oder anderer Kopf -> None (neu rechnen).
    """
    if not os.path.exists(path):
        return None
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    first = text.split('\n', 1)[0]
    cached_n, cached_bound = _parse_header(first)
    if (cached_n, cached_bound) != (n, degree_bound):
        rewriter_logger.warning(
            f"⚠️ Cache {path} passt nicht (n={cached_n}, degbound={cached_bound}), wird neu berechnet"
        )
        return None
    rules = loads(text)
    rewriter_logger.info(f"✅ Regel-Cache geladen: {path} ({len(rules.rules)} Regeln)")
    return rules


def cached_completion(n: int, degree_bound: int, max_iter: int, path: Optional[str] = None,
                      seed: int = 1) -> RuleSet:
    """Cache lesen oder Saat + Vervollständigung rechnen und speichern"""
    if path:
        rules = load_rules(path, n, degree_bound)
        if rules is not None:
            return rules
    rules = complete(seed_rules(n, degree_bound=degree_bound, seed=seed), degree_bound, max_iter)
    if path:
        save_rules(rules, path)
    return rules


def rank_path(path: Optional[str], n: int) -> Optional[str]:
    """Eine Cache-Datei pro Rang: rules.txt -> rules.n4.txt"""
    if not path:
        return None
    root, ext = os.path.splitext(path)
    return f"{root}.n{n}{ext or '.txt'}"
