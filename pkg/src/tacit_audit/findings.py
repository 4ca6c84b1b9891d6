"""The finding record and its closed taxonomy."""

from __future__ import annotations

from dataclasses import dataclass

CATEGORIES = (
    "SPEC_ABSTRACTION",
    "SPEC_ORTHOGONALITY",
    "SPEC_ATOMICITY",
    "SPEC_CONTAINMENT",
    "SPEC_COMPLETENESS",
    "LANG_UNCLEAR",
    "LANG_UNINTENDED",
    "LANG_UNSPECIFIED",
    "LANG_FRAGMENTED",
    "CODE_SILENT_CONDITION",
    "CODE_FIXED_PARAMETER",
    "DOMAIN_GAP",
)

SEVERITIES = ("info", "question", "warning", "violation")
SEVERITY_RANK = {s: i for i, s in enumerate(SEVERITIES)}

ORACLE_TAG = "oracle: "

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def finding_id(category: str, subjects, file: str, line: int) -> str:
    key = f"{category}\0{','.join(subjects)}\0{file}:{line}"
    return f"{fnv1a64(key.encode('utf-8')):016x}"


@dataclass(frozen=True)
class Finding:
    id: str
    category: str
    severity: str
    subjects: tuple[str, ...]
    question: str
    evidence: str
    file: str
    line: int

    @property
    def from_oracle(self) -> bool:
        return self.evidence.startswith(ORACLE_TAG)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "severity": self.severity,
            "subjects": list(self.subjects),
            "question": self.question,
            "evidence": self.evidence,
            "location": {"file": self.file, "line": self.line},
        }


def make_finding(category: str, severity: str, subjects, question: str, evidence: str,
                 file: str, line: int) -> Finding:
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}")
    if severity not in SEVERITY_RANK:
        raise ValueError(f"unknown severity {severity!r}")
    subjects = tuple(subjects)
    return Finding(finding_id(category, subjects, file, line), category, severity, subjects,
                   question, evidence, file, line)
