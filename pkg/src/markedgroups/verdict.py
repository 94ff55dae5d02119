"""Result type and budget shared by every semi-decision procedure."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    fuel_spent: int = 0

    @classmethod
    def verified(cls, witness: Any, fuel_spent: int) -> "Verdict":
        return cls(Status.VERIFIED, witness, fuel_spent)

    @classmethod
    def refuted(cls, witness: Any, fuel_spent: int) -> "Verdict":
        return cls(Status.REFUTED, witness, fuel_spent)

    @classmethod
    def unknown(cls, fuel_spent: int, witness: Any = None) -> "Verdict":
        return cls(Status.UNKNOWN, witness, fuel_spent)

    @property
    def is_verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_dict(self) -> dict:
        return {"status": self.status.value, "witness": _jsonable(self.witness),
                "fuel_spent": self.fuel_spent}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(Status(data["status"]), data.get("witness"), int(data["fuel_spent"]))


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


class OutOfFuel(Exception):
    pass


@dataclass
class Fuel:
    """A deterministic budget; one unit per oracle query or derived word."""

    budget: int
    spent: int = field(default=0)

    def spend(self, amount: int = 1) -> None:
        if self.spent + amount > self.budget:
            self.spent = self.budget
            raise OutOfFuel
        self.spent += amount

    @property
    def remaining(self) -> int:
        return self.budget - self.spent

    def query(self, group, word) -> bool:
        self.spend()
        return group.is_relation(word)

    def exhausted(self) -> Verdict:
        return Verdict.unknown(self.budget)
