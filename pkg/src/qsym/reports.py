"""Check reports shared by the library and the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class CheckReport:
    check_id: str
    params: dict = field(default_factory=dict)
    status: str = "pass"  # pass | fail | reported
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


ComparisonReport = CheckReport
