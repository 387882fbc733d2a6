#!/usr/bin/env python3
"""Fold the five reference symptoms and print every combination table.

Reproduces the reference consultation end to end: per-step product grids
with conflict cells marked, per-step normalizers, and the final ranked
diagnosis with belief/plausibility.

Usage: python scripts/run_worked_example.py [path/to/kb.json]
"""

import sys
from pathlib import Path

from evidentia import load_kb, start_session

SYMPTOMS = [
    "depression",
    "combs_wattle_bluish",
    "swollen_face",
    "narrow_eyes",
    "balance_disorders",
]

DEFAULT_KB = Path(__file__).resolve().parent.parent / "kb" / "avian_influenza.kb.json"


def set_name(focal_set) -> str:
    labels = focal_set.sorted_labels()
    return "{" + ",".join(labels) + "}"


def print_step(index: int, step) -> None:
    print(f"\n=== step {index}: {step.symptom_id} "
          f"(K={step.conflict:.5f}, normalizer={1 - step.conflict:.5f}) ===")
    for cell in step.products:
        target = "CONFLICT" if cell.is_conflict else set_name(cell.intersection)
        print(f"  {set_name(cell.left):44s} x {set_name(cell.right):44s}"
              f" -> {target:44s} {cell.value:.5f}")
    print("  posterior:")
    for entry, value in sorted(step.posterior.entries.items(), key=lambda kv: -kv[1]):
        print(f"    {set_name(entry):44s} {value:.5f}")


def main() -> int:
    kb_path = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_KB
    kb = load_kb(kb_path)
    session = start_session(kb)
    print(f"knowledge base: {kb.name} "
          f"({len(kb.hypotheses)} hypotheses + {kb.catch_all!r}, {len(kb.rules)} rules)")
    for i, rule_id in enumerate(SYMPTOMS, start=1):
        step = session.assert_symptom(rule_id)
        print_step(i, step)

    report = session.evaluate()
    print("\n=== final ranking ===")
    print(f"{'mass':>8}  {'belief':>8}  {'plaus':>8}  hypotheses")
    for e in report.ranked:
        print(f"{e.mass:8.5f}  {e.belief:8.5f}  {e.plausibility:8.5f}  "
              f"{set_name(e.focal_set)}")
    top = set_name(report.top.focal_set)
    print(f"\ndiagnosis: {top} with mass {report.top.mass:.5f} "
          f"(belief {report.top.belief:.5f}, plausibility {report.top.plausibility:.5f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
