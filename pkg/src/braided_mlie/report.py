from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a structural check.

    On failure ``witness`` holds the first offending tuple (basis indices,
    generator indices or group elements, depending on the check) and
    ``defect`` the nonzero quantity that should have vanished.
    """

    name: str
    passed: bool
    witness: tuple | None = None
    defect: Any = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing check {self.name!r} needs a witness")

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, name: str, detail: str = "") -> CheckReport:
        return cls(name, True, detail=detail)

    @classmethod
    def fail(cls, name: str, witness: tuple, defect: Any = None, detail: str = "") -> CheckReport:
        return cls(name, False, tuple(witness), defect, detail)

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        out = f"{self.name}: {verdict}"
        if not self.passed:
            out += f" witness={self.witness}"
            if self.defect is not None:
                out += f" defect={self.defect}"
        if self.detail:
            out += f" ({self.detail})"
        return out
