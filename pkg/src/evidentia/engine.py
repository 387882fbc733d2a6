"""Consultation sessions: incremental evidence folding with a full trace.

A session starts from total ignorance and folds one simple-support mass per
asserted symptom through Dempster's rule, recording every pairwise product,
the per-step conflict and the posterior.  Retraction refolds the remaining
evidence from scratch (the rule has no inverse), preserving assertion order.

A session is a single-writer entity; distinct sessions are independent.
Steps and reports are immutable snapshots.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass

from .core import (
    FocalSet,
    Frame,
    MassFunction,
    belief,
    combine,
    cross_products,
    plausibility,
    vacuous_mass,
)
from .errors import DuplicateSymptom, NotAsserted
from .kb import KnowledgeBase, kb_frame, rule_mass


@dataclass(frozen=True)
class ProductCell:
    """One cell of a combination table: left x right -> intersection."""

    left: FocalSet
    right: FocalSet
    intersection: FocalSet
    value: float

    @property
    def is_conflict(self) -> bool:
        return self.intersection.is_empty


@dataclass(frozen=True)
class CombinationStep:
    """Record of one evidence fold: the full product table plus outcome."""

    symptom_id: str
    prior: MassFunction
    evidence: MassFunction
    products: tuple[ProductCell, ...]
    conflict: float
    posterior: MassFunction


@dataclass(frozen=True)
class ReportEntry:
    focal_set: FocalSet
    mass: float
    belief: float
    plausibility: float


@dataclass(frozen=True)
class DiagnosisReport:
    """Ranked hypothesis sets with belief/plausibility and conflict history."""

    ranked: tuple[ReportEntry, ...]
    top: ReportEntry
    conflict_history: tuple[float, ...]


def rank_key(a: FocalSet, mass: float) -> tuple:
    """Deterministic ranking: mass desc, then smaller sets, then labels."""
    return (-mass, len(a), a.sorted_labels())


def ranked_entries(m: MassFunction) -> list[tuple[FocalSet, float]]:
    return sorted(m.entries.items(), key=lambda kv: rank_key(kv[0], kv[1]))


class ConsultationSession:
    """Ordered symptom evidence folded into a running combined mass."""

    def __init__(self, kb: KnowledgeBase, session_id: str | None = None):
        self.id = session_id or uuid.uuid4().hex
        self.kb = kb
        self.frame: Frame = kb_frame(kb)
        self.asserted: list[str] = []
        self.current: MassFunction = vacuous_mass(self.frame)
        self.trace: list[CombinationStep] = []

    def assert_symptom(self, rule_id: str) -> CombinationStep:
        """Fold one symptom's evidence in; returns the recorded step.

        Raises UnknownRuleId, DuplicateSymptom or TotalConflict; the session
        is unchanged on every error path.
        """
        if rule_id in self.asserted:
            raise DuplicateSymptom(f"symptom {rule_id!r} is already asserted")
        evidence = rule_mass(self.kb, rule_id)
        step = _fold(self.current, evidence, rule_id)
        self.asserted.append(rule_id)
        self.current = step.posterior
        self.trace.append(step)
        return step

    def retract_symptom(self, rule_id: str) -> None:
        """Remove one symptom and refold the rest in original order."""
        if rule_id not in self.asserted:
            raise NotAsserted(f"symptom {rule_id!r} is not asserted")
        remaining = [r for r in self.asserted if r != rule_id]
        current = vacuous_mass(self.frame)
        trace: list[CombinationStep] = []
        for r in remaining:
            step = _fold(current, rule_mass(self.kb, r), r)
            current = step.posterior
            trace.append(step)
        self.asserted = remaining
        self.current = current
        self.trace = trace

    def evaluate(self) -> DiagnosisReport:
        """Rank the current focal sets and attach belief/plausibility."""
        entries = tuple(
            ReportEntry(
                focal_set=a,
                mass=v,
                belief=belief(self.current, a),
                plausibility=plausibility(self.current, a),
            )
            for a, v in ranked_entries(self.current)
        )
        return DiagnosisReport(
            ranked=entries,
            top=entries[0],
            conflict_history=tuple(s.conflict for s in self.trace),
        )

    def explain(self) -> list[CombinationStep]:
        """The per-step combination tables accumulated so far."""
        return list(self.trace)


def start_session(kb: KnowledgeBase, session_id: str | None = None) -> ConsultationSession:
    return ConsultationSession(kb, session_id=session_id)


def _fold(prior: MassFunction, evidence: MassFunction, symptom_id: str) -> CombinationStep:
    posterior, k = combine(prior, evidence)  # TotalConflict propagates before any mutation
    cells = tuple(
        ProductCell(left=a, right=b, intersection=inter, value=v)
        for a, b, inter, v in _ordered_products(prior, evidence)
    )
    return CombinationStep(
        symptom_id=symptom_id,
        prior=prior,
        evidence=evidence,
        products=cells,
        conflict=k,
        posterior=posterior,
    )


def _ordered_products(prior: MassFunction, evidence: MassFunction):
    """Product table in row-major order: prior rows, evidence columns, ranked."""
    ordered = {
        (a.bits, b.bits): (a, b, inter, v)
        for a, b, inter, v in cross_products(prior, evidence)
    }
    for a, va in ranked_entries(prior):
        for b, vb in ranked_entries(evidence):
            yield ordered[(a.bits, b.bits)]


# --- report serialization -------------------------------------------------
#
# Canonical form: deterministic JSON text with focal sets as sorted label
# arrays and every number printed with 5 decimal places.  Byte-for-byte
# identical for identical sessions, shared by the CLI and the HTTP service.
# Full-precision values travel separately (report_to_dict).


def _canon_set(a: FocalSet) -> str:
    return "[" + ",".join(json.dumps(label) for label in a.sorted_labels()) + "]"


def _canon_entry(e: ReportEntry) -> str:
    return (
        f'{{"set":{_canon_set(e.focal_set)},"mass":{e.mass:.5f},'
        f'"belief":{e.belief:.5f},"plausibility":{e.plausibility:.5f}}}'
    )


def canonical_report_json(report: DiagnosisReport) -> str:
    ranked = ",".join(_canon_entry(e) for e in report.ranked)
    history = ",".join(f"{k:.5f}" for k in report.conflict_history)
    return (
        f'{{"ranked":[{ranked}],"top":{_canon_entry(report.top)},'
        f'"conflict_history":[{history}]}}'
    )


def report_to_dict(report: DiagnosisReport) -> dict:
    """Full-precision report for JSON APIs, plus the canonical rendering."""

    def entry(e: ReportEntry) -> dict:
        return {
            "set": list(e.focal_set.sorted_labels()),
            "mass": e.mass,
            "belief": e.belief,
            "plausibility": e.plausibility,
        }

    return {
        "ranked": [entry(e) for e in report.ranked],
        "top": entry(report.top),
        "conflict_history": list(report.conflict_history),
        "canonical": canonical_report_json(report),
    }


def mass_to_rows(m: MassFunction) -> list[dict]:
    """Mass function as ranked {set, mass} rows."""
    return [
        {"set": list(a.sorted_labels()), "mass": v} for a, v in ranked_entries(m)
    ]


def step_to_dict(step: CombinationStep) -> dict:
    """Full-precision combination step for JSON APIs."""
    return {
        "symptom_id": step.symptom_id,
        "conflict": step.conflict,
        "normalizer": 1.0 - step.conflict,
        "prior": mass_to_rows(step.prior),
        "evidence": mass_to_rows(step.evidence),
        "posterior": mass_to_rows(step.posterior),
        "products": [
            {
                "left": list(c.left.sorted_labels()),
                "right": list(c.right.sorted_labels()),
                "intersection": list(c.intersection.sorted_labels()),
                "value": c.value,
                "conflict": c.is_conflict,
            }
            for c in step.products
        ],
    }
