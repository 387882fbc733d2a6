"""Command-line shell: validate, evaluate, consult, serve.

Exit codes: 0 success, 1 invalid input (bad KB content, unknown symptom,
total conflict), 2 I/O failure.  `serve` honors the EVIDENTIA_KB and
EVIDENTIA_LISTEN environment variables, which override the corresponding
flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .engine import ConsultationSession, DiagnosisReport, canonical_report_json, start_session
from .errors import EvidentiaError, KbError, TotalConflict
from .kb import KnowledgeBase, load_kb
from .service import LOG_LEVELS, ServiceConfig, create_app

ENV_KB = "EVIDENTIA_KB"
ENV_LISTEN = "EVIDENTIA_LISTEN"


def _load_kb_or_exit(path: str) -> KnowledgeBase:
    try:
        return load_kb(path)
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror or e}", file=sys.stderr)
        raise SystemExit(2)
    except KbError as e:
        print(f"error: {path}: {e}", file=sys.stderr)
        raise SystemExit(1)


def _format_report(report: DiagnosisReport) -> str:
    return "\n".join(
        f"{','.join(e.focal_set.sorted_labels())} {e.mass:.5f}" for e in report.ranked
    )


def cmd_validate(args: argparse.Namespace) -> int:
    kb = _load_kb_or_exit(args.kb)
    print(f"{args.kb}: OK, {len(kb.hypotheses)} hypotheses (+1 catch-all), {len(kb.rules)} rules")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    kb = _load_kb_or_exit(args.kb)
    session = start_session(kb)
    for symptom_id in args.symptoms:
        try:
            session.assert_symptom(symptom_id)
        except TotalConflict as e:
            print(f"error: {e}", file=sys.stderr)
            return 1
        except EvidentiaError:
            print(
                f"error: unknown or repeated symptom {symptom_id!r}; "
                f"valid ids: {', '.join(kb.rule_ids())}",
                file=sys.stderr,
            )
            return 1
    report = session.evaluate()
    if args.json:
        print(canonical_report_json(report))
    else:
        print(_format_report(report))
    return 0


def _print_consult_state(session: ConsultationSession) -> None:
    report = session.evaluate()
    if session.trace:
        print(f"step {len(session.trace)}: K={session.trace[-1].conflict:.5f}")
    print(f"{'mass':>8}  {'belief':>8}  {'plaus':>8}  hypotheses")
    for e in report.ranked:
        labels = ",".join(e.focal_set.sorted_labels())
        print(f"{e.mass:8.5f}  {e.belief:8.5f}  {e.plausibility:8.5f}  {labels}")


def _print_symptom_menu(session: ConsultationSession) -> None:
    print("symptoms ([x] = asserted):")
    for i, rule in enumerate(session.kb.rules, start=1):
        mark = "x" if rule.id in session.asserted else " "
        print(f"  [{mark}] {i}. {rule.id}: {rule.label} "
              f"({{{','.join(sorted(rule.diseases))}}} @ {rule.bpa:.2f})")


def _resolve_symptom(kb: KnowledgeBase, token: str) -> str | None:
    if token.isdigit():
        index = int(token)
        if 1 <= index <= len(kb.rules):
            return kb.rules[index - 1].id
        return None
    return token if token in kb.rule_ids() else None


def cmd_consult(args: argparse.Namespace) -> int:
    kb = _load_kb_or_exit(args.kb)
    session = start_session(kb)
    print(f"consultation over {kb.name!r} ({len(kb.hypotheses)} hypotheses + catch-all)")
    print("commands: <n>|<id> assert, r <n>|<id> retract, q quit")
    while True:
        _print_symptom_menu(session)
        try:
            line = input("> ").strip()
        except EOFError:
            line = "q"
        if not line:
            continue
        if line in ("q", "quit", "exit"):
            break
        retracting = False
        token = line
        if line.split()[0] in ("r", "retract"):
            retracting = True
            token = line.split(maxsplit=1)[1] if len(line.split()) > 1 else ""
        symptom_id = _resolve_symptom(kb, token)
        if symptom_id is None:
            print(f"invalid selection {token!r}")
            continue
        try:
            if retracting:
                session.retract_symptom(symptom_id)
            else:
                session.assert_symptom(symptom_id)
        except EvidentiaError as e:
            print(f"cannot {'retract' if retracting else 'assert'}: {e}")
            continue
        _print_consult_state(session)
    report = session.evaluate()
    top = ",".join(report.top.focal_set.sorted_labels())
    print(f"session summary: {len(session.asserted)} symptoms asserted "
          f"({', '.join(session.asserted) or 'none'}); top hypothesis {top} "
          f"at {report.top.mass:.5f}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    kb_path = os.environ.get(ENV_KB, args.kb)
    if not kb_path:
        print(f"error: no knowledge base; pass --kb or set {ENV_KB}", file=sys.stderr)
        return 1
    listen = os.environ.get(ENV_LISTEN, args.listen)
    config = ServiceConfig(
        kb_path=Path(kb_path),
        listen_address=listen,
        session_store_path=Path(args.store) if args.store else None,
        ui_path=Path(args.ui) if args.ui else None,
        log_level=args.log_level,
    )
    try:
        app = create_app(config)
    except OSError as e:
        print(f"error: cannot read {kb_path}: {e.strerror or e}", file=sys.stderr)
        return 2
    except (KbError, ValueError, EvidentiaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    import uvicorn

    host, port = config.host_port()
    level = {"warn": "warning"}.get(config.log_level, config.log_level)
    uvicorn.run(app, host=host, port=port, log_level=level)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evidentia",
        description="Evidential diagnostic consultation over Dempster-Shafer theory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a knowledge-base file")
    p.add_argument("kb", help="path to the KB document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evaluate", help="one-shot evaluation of asserted symptoms")
    p.add_argument("kb", help="path to the KB document")
    p.add_argument("symptoms", nargs="*", metavar="symptom-id")
    p.add_argument("--json", action="store_true", help="print the canonical JSON report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("consult", help="interactive consultation loop")
    p.add_argument("kb", help="path to the KB document")
    p.set_defaults(func=cmd_consult)

    p = sub.add_parser("serve", help="run the HTTP consultation service")
    p.add_argument("--kb", help=f"path to the KB document (or {ENV_KB})")
    p.add_argument("--listen", default="127.0.0.1:8000",
                   help=f"host:port to bind (or {ENV_LISTEN})")
    p.add_argument("--store", help="session store file for persistence across restarts")
    p.add_argument("--ui", help="directory of built web UI assets to serve at /")
    p.add_argument("--log-level", choices=LOG_LEVELS, default="info")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
