"""
Konfiguration
Liest alle Einstellungen aus Umgebungsvariablen, CLI-Flags überschreiben sie
"""
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

from awn.services.errors import AwError


def parse_spins(text: Optional[str]) -> Optional[Tuple[Fraction, ...]]:
    """'1/2,1,1/2' -> (1/2, 1, 1/2)"""
    if text is None or not text.strip():
        return None
    spins = []
    for chunk in text.split(','):
        try:
            spin = Fraction(chunk.strip())
        except (ValueError, ZeroDivisionError):
            raise AwError(f"Ungültiger Spin: {chunk!r}")
        if spin < 0 or (2 * spin).denominator != 1:
            raise AwError(f"Spin muss ein nichtnegatives Halb-Ganzes sein: {chunk!r}")
        spins.append(spin)
    return tuple(spins)


def parse_rational(text: Optional[str]) -> Optional[Fraction]:
    if text is None or not str(text).strip():
        return None
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise AwError(f"Ungültige rationale Zahl: {text!r}")


def _flag(value: Optional[str]) -> bool:
    return (value or '0').strip().lower() in ('1', 'true', 'yes', 'on')


@dataclass(frozen=True)
class Config:
    n: int = 3
    degree_bound: int = 6
    max_iter: int = 10
    spins: Optional[Tuple[Fraction, ...]] = None
    eval_q: Optional[Fraction] = None
    seed: int = 1
    cache: Optional[str] = None
    generalized: bool = False
    log_dir: str = 'logs'
    port: int = 5000

    @classmethod
    def from_env(cls) -> 'Config':
        return cls(
            n=int(os.getenv('AW_N', 3)),
            degree_bound=int(os.getenv('AW_DEGREE_BOUND', 6)),
            max_iter=int(os.getenv('AW_MAX_ITER', 10)),
            spins=parse_spins(os.getenv('AW_SPINS')),
            eval_q=parse_rational(os.getenv('AW_EVAL_Q')),
            seed=int(os.getenv('AW_SEED', 1)),
            cache=os.getenv('AW_CACHE') or None,
            generalized=_flag(os.getenv('AW_GENERALIZED')),
            log_dir=os.getenv('AW_LOG_DIR', 'logs'),
            port=int(os.getenv('PORT', 5000)),
        )

    def with_overrides(self, **overrides) -> 'Config':
        """Übernimmt nur gesetzte Werte (None = nicht angegeben)"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        config = replace(self, **changes)
        if config.n < 2:
            raise AwError(f"Rang n muss mindestens 2 sein, nicht {config.n}")
        if config.spins is not None and len(config.spins) != config.n:
            raise AwError(f"Spin-Liste hat Länge {len(config.spins)}, erwartet {config.n}")
        return config

    def rep_spins(self) -> Tuple[Fraction, ...]:
        """Spins für den Falsifizierer, Standard: alle 1/2"""
        if self.spins is not None:
            return self.spins
        return tuple(Fraction(1, 2) for _ in range(self.n))
