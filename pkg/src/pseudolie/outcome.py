"""Three-valued outcomes shared across modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Unknown:
    """An undecided answer.  Using it as a boolean is an error."""

    reason: str

    def __bool__(self):
        raise TypeError(f"Unknown has no truth value ({self.reason})")

    def to_json(self):
        return {"unknown": self.reason}
