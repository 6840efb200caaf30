"""Verification reports and their JSON / text renderings."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from . import __version__


class Status(str, enum.Enum):
    VERIFIED = "VERIFIED"
    FALSIFIED = "FALSIFIED"
    UNKNOWN = "UNKNOWN"


EXIT_CODES = {Status.VERIFIED: 0, Status.FALSIFIED: 1, Status.UNKNOWN: 2}


def combine(statuses: Iterable[Status]) -> Status:
    statuses = list(statuses)
    if Status.FALSIFIED in statuses:
        return Status.FALSIFIED
    if Status.UNKNOWN in statuses:
        return Status.UNKNOWN
    return Status.VERIFIED


class FalsificationError(Exception):
    """An internal consistency check failed; *payload* is the counterexample."""

    def __init__(self, message: str, payload: Any):
        super().__init__(message)
        self.payload = payload


@dataclass
class Report:
    claim: str
    status: Status
    anchor: str
    witnesses: Any = field(default_factory=dict)
    budget: Optional[dict] = None
    version: str = __version__

    def __post_init__(self):
        self.status = Status(self.status)
        if self.status is Status.FALSIFIED and not self.witnesses:
            raise ValueError("a FALSIFIED report must carry a counterexample")
        if self.status is Status.UNKNOWN and self.budget is None:
            raise ValueError("an UNKNOWN report must echo its budget")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "status": self.status.value,
            "anchor": self.anchor,
            "witnesses": self.witnesses,
            "budget": self.budget,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"[{self.status.value}] {self.claim}", f"  anchor: {self.anchor}"]
        if self.budget is not None:
            lines.append(f"  budget: {json.dumps(self.budget)}")
        lines.extend(_text_block(self.witnesses, indent=2))
        return "\n".join(lines)


def _text_block(obj: Any, indent: int) -> list[str]:
    pad = " " * indent
    if isinstance(obj, dict):
        if {"claim", "status"} <= obj.keys():
            out = [f"{pad}[{obj['status']}] {obj['claim']}"]
            out.extend(_text_block(obj.get("witnesses", {}), indent + 2))
            return out
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_block(v, indent + 2))
            else:
                out.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        return out
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [pad + ", ".join(json.dumps(v, ensure_ascii=False) for v in obj)]
        out = []
        for v in obj:
            block = _text_block(v, indent + 2)
            if block:
                block[0] = pad + "- " + block[0].lstrip()
            out.extend(block)
        return out
    return [pad + json.dumps(obj, ensure_ascii=False)]
