"""Ordered check reports and their two output formats."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, ERROR = "pass", "fail", "error"
WITNESS_CAP = 10_000

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def cap(items, limit: int = WITNESS_CAP) -> list:
    """Keep at most ``limit`` entries, with a closing note saying how many were dropped."""
    items = list(items)
    if len(items) <= limit:
        return items
    return items[:limit] + [f"... {len(items) - limit} more entries omitted"]


@dataclass(frozen=True)
class Record:
    check: str
    status: str
    witness: str = ""
    seconds: float | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, ERROR):
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class Report:
    command: str
    records: list = field(default_factory=list)

    def add(self, check: str, status, witness="", seconds=None) -> Record:
        if isinstance(status, bool):
            status = PASS if status else FAIL
        if not isinstance(witness, str):
            witness = "\n".join(cap(str(w) for w in witness))
        r = Record(check, status, witness, seconds)
        self.records.append(r)
        return r

    def info(self, check: str, witness="") -> Record:
        return self.add(check, PASS, witness)

    @property
    def passed(self) -> bool:
        return all(r.status == PASS for r in self.records)

    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAIL

    def render(self, fmt: str = "text", timing: bool = False) -> str:
        if fmt == "record":
            lines = [_record_line(r, timing) for r in self.records]
        else:
            lines = []
            for r in self.records:
                head = f"[{r.status.upper()}] {r.check}"
                if timing and r.seconds is not None:
                    head += f" ({r.seconds:.2f}s)"
                body = r.witness.splitlines()
                if len(body) == 1 and len(head) + len(body[0]) < 100:
                    lines.append(f"{head}: {body[0]}")
                else:
                    lines.append(head)
                    lines.extend("    " + b for b in body)
            ok = sum(r.status == PASS for r in self.records)
            lines.append(f"{self.command}: {ok}/{len(self.records)} pass")
        return "\n".join(lines) + "\n"


def _record_line(r: Record, timing: bool) -> str:
    # tabs and newlines would break the one-record-per-line contract
    witness = " | ".join(r.witness.replace("\t", " ").splitlines())
    fields = [r.check, r.status, witness]
    if timing and r.seconds is not None:
        fields.append(f"{r.seconds:.3f}s")
    return "\t".join(fields)
