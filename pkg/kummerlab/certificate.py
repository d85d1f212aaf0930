"""Verification certificates: one record per checked condition, plus a verdict."""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckRecord(BaseModel):
    """Outcome of one condition at one level."""

    condition: str
    level: str
    passed: bool
    witness: Dict[str, Any] = Field(default_factory=dict)


class Certificate(BaseModel):
    """A list of check records whose conjunction is the verdict."""

    kind: str
    subject: Dict[str, Any] = Field(default_factory=dict)
    records: List[CheckRecord] = Field(default_factory=list)
    verdict: bool = True
    margins: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def build(
        cls,
        kind: str,
        records: List[CheckRecord],
        subject: Optional[Dict[str, Any]] = None,
        margins: Optional[Dict[str, Any]] = None,
    ) -> "Certificate":
        return cls(
            kind=kind,
            subject=subject or {},
            records=records,
            verdict=all(r.passed for r in records),
            margins=margins or {},
        )

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def first_failure(self) -> Optional[CheckRecord]:
        failed = self.failures()
        return failed[0] if failed else None

    def consistent(self) -> bool:
        """Stored verdict equals the conjunction of the stored records."""
        return self.verdict == all(r.passed for r in self.records)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.model_validate(json.loads(text))
