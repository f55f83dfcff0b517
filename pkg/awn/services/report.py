"""
Prüfberichte
Ergebniszeilen der Checks; der Text hängt nur von den Ergebnissen ab
"""
import logging
from dataclasses import dataclass, field
from typing import List

FAILING = ('nonzero', 'failed', 'error')


@dataclass(frozen=True)
class CheckLine:
    name: str
    status: str
    detail: str = ''

    @property
    def failed(self) -> bool:
        return self.status in FAILING

    def render(self) -> str:
        mark = 'FAIL' if self.failed else 'ok'
        text = f"[{mark:>4}] {self.name}: {self.status}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass
class CheckReport:
    title: str
    lines: List[CheckLine] = field(default_factory=list)

    def add(self, name: str, status: str, detail: str = '') -> CheckLine:
        line = CheckLine(name, status, detail)
        self.lines.append(line)
        return line

    def extend(self, other: 'CheckReport') -> None:
        self.lines.extend(other.lines)

    @property
    def passed(self) -> bool:
        return not any(line.failed for line in self.lines)

    @property
    def failures(self) -> List[CheckLine]:
        return [line for line in self.lines if line.failed]

    def count(self, status: str) -> int:
        return sum(1 for line in self.lines if line.status == status)

    def render(self) -> str:
        head = f"== {self.title}: {'PASS' if self.passed else 'FAIL'} ({len(self.lines)} checks) =="
        return "\n".join([head] + [line.render() for line in self.lines])


def log_report(report: CheckReport, logger: logging.Logger) -> None:
    if report.passed:
        logger.info(f"✅ {report.title}: {len(report.lines)} Prüfungen bestanden")
    else:
        for line in report.failures:
            logger.error(f"❌ {report.title}: {line.render()}")
