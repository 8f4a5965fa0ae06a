"""Per-check verdicts and the reports that collect them.

A report renders one line per verdict, ``NAME PASS|FAIL [witness]``, with an
optional trailing ``# detail`` comment.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    name: str
    ok: bool
    witness: str | None = None
    detail: str | None = None

    def line(self) -> str:
        text = f"{self.name} {'PASS' if self.ok else 'FAIL'}"
        if self.witness is not None:
            text += f" {self.witness}"
        if self.detail:
            text += f"  # {self.detail}"
        return text


def passed(name: str) -> Verdict:
    return Verdict(name, True)


def failed(name: str, witness=None, detail: str | None = None) -> Verdict:
    return Verdict(name, False, None if witness is None else str(witness), detail)


@dataclass(frozen=True)
class Report:
    verdicts: tuple[Verdict, ...]
    notes: tuple[str, ...] = field(default=(), kw_only=True)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def names(self) -> list[str]:
        return [v.name for v in self.verdicts]

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    def lines(self) -> list[str]:
        return [v.line() for v in self.verdicts] + [f"# {n}" for n in self.notes]

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines())
