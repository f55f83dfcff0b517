"""
Skalare
Exakte Koeffizienten: rationale Funktionen in q (QRat), Polynome in den
zentralen Buchstaben (CentralPoly) und abgeschnittene Reihen in h = q - 1 (HSeries)
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Dict, List, Optional, Tuple, Union

from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement, PolyRing, ring

from awn.services.errors import AwError, PoleError

error_logger = logging.getLogger('errors')

QFIELD, q = field("q", QQ)
QDOMAIN = QFIELD.to_domain()

QRat = FracElement
CentralPoly = PolyElement
Scalar = Union[int, Fraction, FracElement]


def to_qrat(value: Scalar) -> FracElement:
    """Wandelt int, Fraction oder QRat in ein Element von Q(q)"""
    if isinstance(value, FracElement):
        if value.field != QFIELD:
            raise AwError(f"Fremder Körper: {value.field}")
        return value
    if isinstance(value, bool):
        raise AwError("bool ist kein Skalar")
    if isinstance(value, int):
        return QFIELD(QQ(value))
    if isinstance(value, Fraction):
        return QFIELD(QQ(value.numerator, value.denominator))
    raise AwError(f"Kein Skalar: {value!r}")


def q_int(m: int) -> FracElement:
    """q-Zahl [m] = (q^m - q^-m)/(q - q^-1)"""
    if m == 0:
        return QFIELD.zero
    if m < 0:
        return -q_int(-m)
    return sum((q ** (m - 1 - 2 * i) for i in range(m)), QFIELD.zero)


def qrat_invert(f: Scalar) -> FracElement:
    """Automorphismus q -> q^-1"""
    f = to_qrat(f)

    def flip(p: PolyElement) -> FracElement:
        return sum((QFIELD(c) * q ** (-monom[0]) for monom, c in p.terms()), QFIELD.zero)

    return flip(f.numer) / flip(f.denom)


# ---------------------------------------------------------------------------
# Kanonische Form und Ausgabe
# ---------------------------------------------------------------------------

def _integer_terms(numer: PolyElement, denom: PolyElement) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Zähler und Nenner mit ganzzahligen, teilerfremden Koeffizienten, Nenner-LC > 0"""
    num_terms = {monom[0]: Fraction(int(c.numerator), int(c.denominator)) for monom, c in numer.terms()}
    den_terms = {monom[0]: Fraction(int(c.numerator), int(c.denominator)) for monom, c in denom.terms()}

    scale = 1
    for c in list(num_terms.values()) + list(den_terms.values()):
        scale = scale * c.denominator // gcd(scale, c.denominator)
    num_ints = {e: int(c * scale) for e, c in num_terms.items()}
    den_ints = {e: int(c * scale) for e, c in den_terms.items()}

    content = 0
    for c in list(num_ints.values()) + list(den_ints.values()):
        content = gcd(content, abs(c))
    if content > 1:
        num_ints = {e: c // content for e, c in num_ints.items()}
        den_ints = {e: c // content for e, c in den_ints.items()}

    if den_ints[max(den_ints)] < 0:
        num_ints = {e: -c for e, c in num_ints.items()}
        den_ints = {e: -c for e, c in den_ints.items()}
    return num_ints, den_ints


def laurent_parts(f: FracElement) -> Tuple[int, Dict[int, int], Dict[int, int]]:
    """
    Verschobene kanonische Form f = q^k * N/D

    N und D sind ganzzahlige Polynome mit N(0) != 0 (außer f = 0) und D(0) != 0.
    Rückgabe als (k, {exp: coeff}, {exp: coeff}).
    """
    f = to_qrat(f)
    if not f:
        return 0, {}, {0: 1}
    num, den = _integer_terms(f.numer, f.denom)
    shift_num = min(num)
    shift_den = min(den)
    num = {e - shift_num: c for e, c in num.items()}
    den = {e - shift_den: c for e, c in den.items()}
    return shift_num - shift_den, num, den


def _poly_str(terms: Dict[int, int]) -> str:
    parts = []
    for exp in sorted(terms, reverse=True):
        coeff = terms[exp]
        sign = '-' if coeff < 0 else '+'
        mag = abs(coeff)
        if exp == 0:
            body = str(mag)
        else:
            power = 'q' if exp == 1 else f'q^{exp}'
            body = power if mag == 1 else f'{mag}*{power}'
        parts.append((sign, body))
    if not parts:
        return '0'
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        text += f'{sign}{body}'
    return text


def qrat_str(f: FracElement) -> str:
    """Kanonische Textform, z.B. (q^4-2*q^2+1)/(q^2)"""
    f = to_qrat(f)
    if not f:
        return '0'
    num, den = _integer_terms(f.numer, f.denom)
    if den == {0: 1}:
        return _poly_str(num)
    return f'({_poly_str(num)})/({_poly_str(den)})'


def qrat_is_monomial(f: FracElement) -> bool:
    """True für c*q^k mit ganzem c (druckbar ohne Klammern)"""
    f = to_qrat(f)
    num, den = _integer_terms(f.numer, f.denom)
    return len(num) <= 1 and den == {0: 1}


# ---------------------------------------------------------------------------
# Grenzfunktionen im Stil (ok, Wert, Fehler)
# ---------------------------------------------------------------------------

def qrat_arith(a: Scalar, b: Optional[Scalar], op: str) -> Tuple[bool, Optional[Union[FracElement, bool]], Optional[str]]:
    """
    Arithmetik in Q(q)

    Returns:
        (ok, Ergebnis, Fehlermeldung)
    """
    try:
        x = to_qrat(a)
        y = to_qrat(b) if b is not None else None
    except AwError as e:
        return False, None, str(e)

    if op != 'neg' and y is None:
        return False, None, f"Operation {op} braucht zwei Argumente"

    if op == 'add':
        return True, x + y, None
    if op == 'sub':
        return True, x - y, None
    if op == 'mul':
        return True, x * y, None
    if op == 'div':
        if not y:
            return False, None, "Division durch Null"
        return True, x / y, None
    if op == 'neg':
        return True, -x, None
    if op == 'eq':
        return True, x == y, None
    return False, None, f"Unbekannte Operation: {op}"


def evaluate(f: Scalar, q0: Fraction) -> Fraction:
    """Exakter Wert von f bei q = q0, wirft PoleError"""
    q0 = Fraction(q0)
    if q0 in (0, 1, -1):
        raise PoleError(f"q0 = {q0} ist ausgeschlossen (q0 != 0 und q0^2 != 1)")
    f = to_qrat(f)
    num = _poly_value(f.numer, q0)
    den = _poly_value(f.denom, q0)
    if den == 0:
        raise PoleError(f"Polstelle von {qrat_str(f)} bei q0 = {q0}")
    return num / den


def _poly_value(p: PolyElement, q0: Fraction) -> Fraction:
    total = Fraction(0)
    for (exp,), c in p.terms():
        total += Fraction(int(c.numerator), int(c.denominator)) * q0 ** exp
    return total


def qrat_eval(f: Scalar, q0: Union[Fraction, int, str]) -> Tuple[bool, Optional[Fraction], Optional[str]]:
    """Auswertung bei q0 als (ok, Wert, Fehler)"""
    try:
        return True, evaluate(f, Fraction(q0)), None
    except (AwError, ValueError, ZeroDivisionError) as e:
        return False, None, str(e)


# ---------------------------------------------------------------------------
# Zentrale Buchstaben
# ---------------------------------------------------------------------------

def central_names(n: int) -> List[str]:
    return [f"z{i}" for i in range(1, n + 1)] + ["zf"]


@lru_cache(maxsize=None)
def central_ring(n: int) -> PolyRing:
    """Polynomring Q(q)[z1, ..., zn, zf]; zf steht für C_{1..n}"""
    return ring(",".join(central_names(n)), QDOMAIN)[0]


def central_const(n: int, value: Scalar) -> PolyElement:
    return central_ring(n).ground_new(to_qrat(value))


def central_var(n: int, index: Optional[int]) -> PolyElement:
    """z_index, oder zf für index=None"""
    gens = central_ring(n).gens
    return gens[n] if index is None else gens[index - 1]


def central_is_unit(p: PolyElement) -> bool:
    """Konstantes, von Null verschiedenes Polynom"""
    return bool(p) and p.is_ground


# ---------------------------------------------------------------------------
# Reihen in h = q - 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HSeries:
    """
    Abgeschnittene Laurent-Reihe in h

    Koeffizienten für die Ordnungen valuation .. valuation+precision-1.
    identically_zero markiert die exakte Null (unendliche Präzision).
    """
    valuation: int
    coeffs: Tuple[Fraction, ...]
    precision: int
    identically_zero: bool = False

    @property
    def end(self) -> Optional[int]:
        """Erste nicht mehr bekannte Ordnung"""
        if self.identically_zero:
            return None
        return self.valuation + self.precision

    @classmethod
    def zero(cls, end: Optional[int] = None) -> 'HSeries':
        if end is None:
            return cls(0, (), 0, True)
        return cls(end, (), 0, False)

    @classmethod
    def from_terms(cls, terms: Dict[int, Fraction], end: Optional[int]) -> 'HSeries':
        nonzero = {k: Fraction(v) for k, v in terms.items() if v and (end is None or k < end)}
        if not nonzero:
            return cls.zero(end)
        if end is None:
            end = max(nonzero) + 1
        low = min(nonzero)
        return cls(low, tuple(nonzero.get(k, Fraction(0)) for k in range(low, end)), end - low)

    def is_zero(self) -> bool:
        return self.identically_zero or not any(self.coeffs)

    def terms(self) -> Dict[int, Fraction]:
        return {self.valuation + i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, order: int) -> Fraction:
        end = self.end
        if end is not None and order >= end:
            raise AwError(f"Ordnung {order} liegt außerhalb des Fensters (bis {end - 1})")
        return self.terms().get(order, Fraction(0))

    def leading(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self.coeffs[0]

    @staticmethod
    def _common_end(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: 'HSeries') -> 'HSeries':
        end = self._common_end(self.end, other.end)
        terms = dict(self.terms())
        for k, c in other.terms().items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return HSeries.from_terms(terms, end)

    def __neg__(self) -> 'HSeries':
        if self.identically_zero:
            return self
        return HSeries(self.valuation, tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other: 'HSeries') -> 'HSeries':
        return self + (-other)

    def scale(self, c: Fraction) -> 'HSeries':
        if not c:
            return HSeries.zero()
        return HSeries.from_terms({k: v * c for k, v in self.terms().items()}, self.end)

    def __mul__(self, other: 'HSeries') -> 'HSeries':
        if self.identically_zero or other.identically_zero:
            return HSeries.zero()
        # Fenster: niedrigste Ordnung + kleinere relative Präzision
        low = self.valuation + other.valuation
        end = low + min(self.precision, other.precision)
        terms: Dict[int, Fraction] = {}
        for i, a in self.terms().items():
            for j, b in other.terms().items():
                if i + j < end:
                    terms[i + j] = terms.get(i + j, Fraction(0)) + a * b
        return HSeries.from_terms(terms, end)

    def value_at(self, h: Fraction) -> Fraction:
        """Summe der bekannten Terme an der Stelle h"""
        return sum((c * Fraction(h) ** k for k, c in self.terms().items()), Fraction(0))

    def __str__(self) -> str:
        if self.is_zero():
            return '0' if self.end is None else f'O(h^{self.end})'
        body = ' + '.join(f'({c})*h^{k}' for k, c in sorted(self.terms().items()))
        return f'{body} + O(h^{self.end})'


def _shifted_coefficients(p: PolyElement, upto: int) -> List[Fraction]:
    """Koeffizienten von p(1+h) für h^0 .. h^(upto-1)"""
    out = [Fraction(0)] * upto
    for (exp,), c in p.terms():
        value = Fraction(int(c.numerator), int(c.denominator))
        for k in range(min(exp, upto - 1) + 1):
            out[k] += value * comb(exp, k)
    return out


def _valuation(p: PolyElement) -> int:
    """Ordnung der Nullstelle von p(1+h) bei h = 0"""
    degree = max((exp for (exp,), _ in p.terms()), default=0)
    coeffs = _shifted_coefficients(p, degree + 1)
    for k, c in enumerate(coeffs):
        if c:
            return k
    raise AwError("Nullpolynom hat keine Bewertung")


def qrat_hseries(f: Scalar, precision: int = 4, max_order: Optional[int] = None) -> HSeries:
    """
    Laurent-Entwicklung von f(1+h)

    Mit max_order wird statt der relativen Präzision bis zur absoluten
    Ordnung max_order (einschließlich) entwickelt.
    """
    f = to_qrat(f)
    if not f:
        return HSeries.zero()
    v_num = _valuation(f.numer)
    v_den = _valuation(f.denom)
    valuation = v_num - v_den
    if max_order is not None:
        precision = max_order - valuation + 1
        if precision <= 0:
            return HSeries.zero(max_order + 1)
    if precision < 1:
        raise AwError("precision muss mindestens 1 sein")

    num = _shifted_coefficients(f.numer, v_num + precision)[v_num:]
    den = _shifted_coefficients(f.denom, v_den + precision)[v_den:]

    coeffs: List[Fraction] = []
    for k in range(precision):
        acc = num[k]
        for i in range(1, k + 1):
            acc -= den[i] * coeffs[k - i]
        coeffs.append(acc / den[0])
    return HSeries(valuation, tuple(coeffs), precision)
