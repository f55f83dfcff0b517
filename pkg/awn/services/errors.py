"""
Fehlerklassen
Alle fachlichen Fehler des Pakets erben von AwError
"""
from typing import Optional


class AwError(ValueError):
    """Basisklasse für alle fachlichen Fehler (CLI: Exit-Code 3, HTTP: 400)"""

    code = "aw_error"


class LabelError(AwError):
    """Überlappende, außerhalb liegende oder nicht-monotone Labels"""

    code = "label_error"


class ParseError(AwError):
    """Syntaxfehler im Ausdruck, mit Position"""

    code = "parse_error"

    def __init__(self, message: str, position: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.position = position
        self.source = source
        super().__init__(self._render())

    def _render(self) -> str:
        if self.position is None:
            return self.message
        text = f"{self.message} (Position {self.position})"
        if self.source is not None:
            text += f"\n  {self.source}\n  {' ' * self.position}^"
        return text


class PoleError(AwError):
    """Auswertung an einer Polstelle oder an q0 in {0, 1, -1}"""

    code = "pole_error"


class ModeMismatchError(AwError):
    """Plain- und Central-Modus oder verschiedene Ränge gemischt"""

    code = "mode_mismatch"


class UnsupportedError(AwError):
    """Operation außerhalb des unterstützten Bereichs"""

    code = "unsupported"


class ConventionError(AwError):
    """Selbstvalidierung der U_q(sl2)-Konventionen fehlgeschlagen"""

    code = "convention_error"
