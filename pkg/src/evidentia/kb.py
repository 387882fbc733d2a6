"""Knowledge-base documents: schema, validation, loading, serialization.

A KB document is a UTF-8 JSON object:

    { "name": string,
      "notes": [string, ...],          # optional free-text header
      "hypotheses": [string, ...],
      "catch_all": string,
      "rules": [ { "id": string, "label": string,
                   "diseases": [string, ...], "bpa": number }, ... ] }

Each rule maps one observable symptom to a set of candidate hypotheses with
a basic probability assignment in (0, 1].  The consultation frame is the
declared hypotheses followed by the catch-all element, so a rule covering
every declared hypothesis is still a proper subset of the frame.

Validation is total: a malformed document always raises a diagnostic error
and never yields a partially constructed KnowledgeBase.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import Frame, MassFunction, focal_set, make_frame, simple_support_mass
from .errors import (
    BpaOutOfRange,
    DuplicateRuleId,
    EmptyDiseaseSet,
    KbSchemaError,
    KbSyntaxError,
    UnknownDisease,
    UnknownRuleId,
)


@dataclass(frozen=True)
class SymptomRule:
    """One observation -> hypothesis-set @ bpa row of a knowledge base."""

    id: str
    label: str
    diseases: tuple[str, ...]
    bpa: float


@dataclass(frozen=True)
class KnowledgeBase:
    name: str
    hypotheses: tuple[str, ...]
    catch_all: str
    rules: tuple[SymptomRule, ...]
    notes: tuple[str, ...] = field(default=())

    def rule(self, rule_id: str) -> SymptomRule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise UnknownRuleId(f"no rule {rule_id!r}; valid ids: {', '.join(self.rule_ids())}")

    def rule_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.rules)


def kb_frame(kb: KnowledgeBase) -> Frame:
    """The consultation frame: declared hypotheses followed by the catch-all."""
    return make_frame(kb.hypotheses + (kb.catch_all,))


def rule_mass(kb: KnowledgeBase, rule_id: str) -> MassFunction:
    """The simple support mass induced by one rule over the KB frame."""
    r = kb.rule(rule_id)
    frame = kb_frame(kb)
    return simple_support_mass(frame, focal_set(frame, r.diseases), r.bpa)


def _expect_str(value: object, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise KbSchemaError(f"{where}: expected a non-empty string, got {value!r}")
    return value


def _expect_str_list(value: object, where: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(x, str) for x in value):
        raise KbSchemaError(f"{where}: expected a list of strings")
    return value


def _dedupe(labels: list[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(labels))


def _parse_rule(obj: object, where: str, hypotheses: tuple[str, ...]) -> SymptomRule:
    if not isinstance(obj, dict):
        raise KbSchemaError(f"{where}: expected an object")
    extra = set(obj) - {"id", "label", "diseases", "bpa"}
    if extra:
        raise KbSchemaError(f"{where}: unknown fields {sorted(extra)}")
    missing = {"id", "label", "diseases", "bpa"} - set(obj)
    if missing:
        raise KbSchemaError(f"{where}: missing fields {sorted(missing)}")
    rule_id = _expect_str(obj["id"], f"{where}.id")
    label = _expect_str(obj["label"], f"{where}.label")
    diseases = _dedupe(_expect_str_list(obj["diseases"], f"{where}.diseases"))
    if not diseases:
        raise EmptyDiseaseSet(f"{where}: rule {rule_id!r} lists no diseases")
    for d in diseases:
        if d not in hypotheses:
            raise UnknownDisease(
                f"{where}: rule {rule_id!r} references undeclared disease {d!r}"
            )
    bpa = obj["bpa"]
    if isinstance(bpa, bool) or not isinstance(bpa, (int, float)):
        raise KbSchemaError(f"{where}.bpa: expected a number, got {bpa!r}")
    if not 0.0 < float(bpa) <= 1.0:
        raise BpaOutOfRange(f"{where}: bpa {bpa!r} of rule {rule_id!r} is outside (0, 1]")
    return SymptomRule(id=rule_id, label=label, diseases=diseases, bpa=float(bpa))


def parse_kb(text: str) -> KnowledgeBase:
    """Parse and fully validate a KB document.

    Raises KbSyntaxError (with line/column) on malformed JSON, and a
    specific KbError subclass on every schema or integrity violation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise KbSyntaxError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise KbSchemaError("top level: expected an object")
    extra = set(doc) - {"name", "notes", "hypotheses", "catch_all", "rules"}
    if extra:
        raise KbSchemaError(f"top level: unknown fields {sorted(extra)}")
    missing = {"name", "hypotheses", "catch_all", "rules"} - set(doc)
    if missing:
        raise KbSchemaError(f"top level: missing fields {sorted(missing)}")

    name = _expect_str(doc["name"], "name")
    notes = tuple(_expect_str_list(doc.get("notes", []), "notes"))
    hypotheses = tuple(_expect_str_list(doc["hypotheses"], "hypotheses"))
    catch_all = _expect_str(doc["catch_all"], "catch_all")
    if not isinstance(doc["rules"], list):
        raise KbSchemaError("rules: expected a list")

    rules: list[SymptomRule] = []
    seen_ids: set[str] = set()
    for i, obj in enumerate(doc["rules"]):
        rule = _parse_rule(obj, f"rules[{i}]", hypotheses)
        if rule.id in seen_ids:
            raise DuplicateRuleId(f"rules[{i}]: duplicate rule id {rule.id!r}")
        seen_ids.add(rule.id)
        rules.append(rule)

    kb = KnowledgeBase(
        name=name,
        hypotheses=hypotheses,
        catch_all=catch_all,
        rules=tuple(rules),
        notes=notes,
    )
    kb_frame(kb)  # frame invariants (distinct labels, capacity) hold for the KB too
    return kb


def serialize_kb(kb: KnowledgeBase) -> str:
    """Render a KB back to its document form; parse_kb round-trips it."""
    doc: dict = {"name": kb.name}
    if kb.notes:
        doc["notes"] = list(kb.notes)
    doc["hypotheses"] = list(kb.hypotheses)
    doc["catch_all"] = kb.catch_all
    doc["rules"] = [
        {"id": r.id, "label": r.label, "diseases": list(r.diseases), "bpa": r.bpa}
        for r in kb.rules
    ]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_kb(path: str | Path) -> KnowledgeBase:
    """Read and parse a KB file. I/O errors propagate as OSError."""
    return parse_kb(Path(path).read_text(encoding="utf-8"))
