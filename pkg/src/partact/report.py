from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    """Outcome of one named check.

    ``witness`` maps roles (``"g"``, ``"h"``, ``"x"``, ...) to display labels;
    it is ``None`` when the check passed or was skipped.
    """

    name: str
    passed: bool
    witness: dict[str, str] | None = None
    detail: str = ""
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "detail": self.detail,
        }


@dataclass
class ValidationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed and not c.skipped for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def add(self, name: str, witness: dict[str, str] | None = None, detail: str = "") -> Check:
        c = Check(name, witness is None, witness, detail)
        self.checks.append(c)
        return c

    def skip(self, name: str, detail: str) -> Check:
        c = Check(name, False, None, detail, skipped=True)
        self.checks.append(c)
        return c

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed or c.skipped]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }
