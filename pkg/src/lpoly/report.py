"""Plain-text verification reports with a stable key: value grammar."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)

    def add(self, line: str):
        self.lines.append(line)

    def fail(self, line: str):
        self.ok = False
        self.lines.append(line)

    def render(self) -> str:
        out = [f"check: {self.title}"]
        out.extend(self.lines)
        out.append(f"result: {'pass' if self.ok else 'FAIL'}")
        return "\n".join(out)
