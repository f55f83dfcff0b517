"""
Ausdrucksparser
Tokenizer und rekursiver Abstieg für die Eingabegrammatik der CLI und der
HTTP-Schnittstelle, Ausgabe zurück in dieselbe Grammatik
"""
import logging
import re
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple, Union

from awn.services.algebra import ConnectedSubset, Label, NCPoly, comm, make_label, qcomm, qcomm_bar
from awn.services.errors import AwError, LabelError, ParseError
from awn.services.scalar import q

cli_logger = logging.getLogger('cli')

CALLS = ('qcomm', 'qcommbar', 'comm')


class Token(NamedTuple):
    type: str
    value: str
    pos: int


TOKEN_RE = re.compile(
    r"(?P<space>\s+)|(?P<int>\d+)|(?P<range>\.\.)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^(),;\[\]])"
)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"Unerwartetes Zeichen {text[pos]!r}", pos, text)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Syntaxbaum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QVar:
    pass


@dataclass(frozen=True)
class Gen:
    """C[...] in der geschriebenen Reihenfolge der Blöcke"""
    parts: Tuple[ConnectedSubset, ...]
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: 'Expr'


@dataclass(frozen=True)
class Binary:
    op: str
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Pow:
    base: 'Expr'
    exp: int


@dataclass(frozen=True)
class Call:
    name: str
    left: 'Expr'
    right: 'Expr'


Expr = Union[Num, QVar, Gen, Neg, Binary, Pow, Call]


class _Parser:
    """
    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-" unary | factor
    factor := atom ("^" ["-"] uint)?
    atom   := uint | "q" | gen | call "(" expr "," expr ")" | "(" expr ")"
    gen    := "C[" block (";" block)* "]" ;  block := uint [".." uint]
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.pos, self.text)

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, value: str) -> Token:
        if self.current.value != value:
            found = self.current.value or 'Ende'
            raise self.error(f"Erwartet {value!r}, gefunden {found!r}")
        return self.advance()

    def parse(self) -> Expr:
        expr = self.expr()
        if self.current.type != 'end':
            if self.current.type in ('int', 'name') or self.current.value in ('(',):
                raise self.error("Implizite Multiplikation ist nicht erlaubt, '*' verwenden")
            raise self.error(f"Unerwartetes Token {self.current.value!r}")
        return expr

    def expr(self) -> Expr:
        left = self.term()
        while self.current.value in ('+', '-'):
            op = self.advance().value
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.current.value in ('*', '/'):
            op = self.advance().value
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.current.value == '-':
            self.advance()
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self.current.value != '^':
            return base
        self.advance()
        sign = 1
        if self.current.value == '-':
            self.advance()
            sign = -1
        if self.current.type != 'int':
            raise self.error("Exponent muss eine ganze Zahl sein")
        return Pow(base, sign * int(self.advance().value))

    def atom(self) -> Expr:
        token = self.current
        if token.type == 'int':
            self.advance()
            return Num(int(token.value))
        if token.value == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        if token.type == 'name':
            if token.value == 'q':
                self.advance()
                return QVar()
            if token.value == 'C':
                return self.gen()
            if token.value in CALLS:
                self.advance()
                self.expect('(')
                left = self.expr()
                self.expect(',')
                right = self.expr()
                self.expect(')')
                return Call(token.value, left, right)
            raise self.error(f"Unbekannter Name {token.value!r}")
        raise self.error(f"Unerwartetes Token {token.value or 'Ende'!r}")

    def gen(self) -> Gen:
        start = self.advance()
        self.expect('[')
        parts = [self.block()]
        while self.current.value == ';':
            self.advance()
            parts.append(self.block())
        self.expect(']')
        return Gen(tuple(parts), start.pos)

    def block(self) -> ConnectedSubset:
        if self.current.type != 'int':
            raise self.error("Block muss mit einer Zahl beginnen")
        lo = int(self.advance().value)
        hi = lo
        if self.current.type == 'range':
            self.advance()
            if self.current.type != 'int':
                raise self.error("Nach '..' fehlt die obere Grenze")
            hi = int(self.advance().value)
        if lo > hi:
            raise self.error(f"Leerer Block {lo}..{hi}")
        return ConnectedSubset(lo, hi)


def parse(text: str) -> Expr:
    """Text -> Syntaxbaum, wirft ParseError mit Position"""
    return _Parser(text).parse()


def parse_expression(text: str) -> Tuple[bool, Optional[Expr], Optional[str]]:
    """
    Parst einen Ausdruck

    Returns:
        (ok, Syntaxbaum, Fehlermeldung)
    """
    try:
        return True, parse(text), None
    except ParseError as e:
        cli_logger.debug(f"🔍 Parserfehler: {e.message} bei {e.position}")
        return False, None, str(e)


def parse_label(text: str, n: int) -> Label:
    expr = parse(text)
    if not isinstance(expr, Gen):
        raise ParseError(f"Kein einzelnes Label: {text}", 0, text)
    return _label(expr, n)


# ---------------------------------------------------------------------------
# Ausgabe
# ---------------------------------------------------------------------------

_PREC = {'+': 1, '-': 1, '*': 2, '/': 2}


def _prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Neg):
        return 3
    if isinstance(expr, Pow):
        return 4
    return 5


def _wrap(expr: Expr, needed: int) -> str:
    text = to_text(expr)
    return f"({text})" if _prec(expr) < needed else text


def to_text(expr: Expr) -> str:
    """Syntaxbaum -> Text; parse(to_text(e)) == e"""
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, QVar):
        return 'q'
    if isinstance(expr, Gen):
        return "C[" + ";".join(str(p) for p in expr.parts) + "]"
    if isinstance(expr, Neg):
        return "-" + _wrap(expr.arg, 3)
    if isinstance(expr, Pow):
        return f"{_wrap(expr.base, 5)}^{expr.exp}"
    if isinstance(expr, Call):
        return f"{expr.name}({to_text(expr.left)}, {to_text(expr.right)})"
    prec = _PREC[expr.op]
    return f"{_wrap(expr.left, prec)} {expr.op} {_wrap(expr.right, prec + 1)}"


# ---------------------------------------------------------------------------
# Absenken auf NCPoly
# ---------------------------------------------------------------------------

def _label(expr: Gen, n: int) -> Label:
    try:
        return make_label(expr.parts, None, n)
    except LabelError as e:
        raise ParseError(str(e), expr.pos) from e


def _scalar_of(value: NCPoly, what: str):
    if not value.is_scalar():
        raise AwError(f"{what} muss ein Skalar sein")
    return value.scalar_value()


def _lower(expr: Expr, n: int) -> NCPoly:
    if isinstance(expr, Num):
        return NCPoly.scalar(n, expr.value)
    if isinstance(expr, QVar):
        return NCPoly.scalar(n, q)
    if isinstance(expr, Gen):
        return NCPoly.letter(_label(expr, n), n)
    if isinstance(expr, Neg):
        return -_lower(expr.arg, n)
    if isinstance(expr, Pow):
        base = _lower(expr.base, n)
        if expr.exp >= 0:
            return base ** expr.exp
        value = _scalar_of(base, "Basis einer negativen Potenz")
        if not value:
            raise AwError("Division durch Null")
        return NCPoly.scalar(n, (1 / value) ** (-expr.exp))
    if isinstance(expr, Call):
        left, right = _lower(expr.left, n), _lower(expr.right, n)
        if expr.name == 'qcomm':
            return qcomm(left, right)
        if expr.name == 'qcommbar':
            return qcomm_bar(left, right)
        return comm(left, right)
    left, right = _lower(expr.left, n), _lower(expr.right, n)
    if expr.op == '+':
        return left + right
    if expr.op == '-':
        return left - right
    if expr.op == '*':
        return left * right
    return left / _scalar_of(right, "Divisor")


def lower(expr: Expr, n: int, expand: bool = True) -> NCPoly:
    """
    Syntaxbaum -> NCPoly in Buchstabenform

    expand=True entwickelt mehrteilige Labels über Generatoren.
    """
    value = _lower(expr, n)
    return value.expand_letters() if expand else value


def read(text: str, n: int, expand: bool = True) -> NCPoly:
    return lower(parse(text), n, expand)
