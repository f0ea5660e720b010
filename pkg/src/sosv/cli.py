"""Command-line interface.

Reports go to standard output, diagnostics to standard error (as
``file:line:col: severity[CODE] message``), so pipelines can consume reports
cleanly. Exit codes: 0 success / no errors, 1 validation or analysis findings
at error severity, 2 usage or IO errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .analysis import (
    Workspace,
    deployment_capacity,
    information_gap,
    resource_contention,
    startup_order,
)
from .diagnostics import Diagnostic, Severity
from .dsl import parse
from .errors import CycleError, SosvError
from .mappings import Framework, SourceInventory, scaffold
from .model import ArchitectureView, ModelKind
from .render import (
    Notation,
    ReviewStyle,
    render_dot,
    render_markdown,
    render_review_instrument,
)
from .validator import (
    LintConfig,
    assumption_gaps,
    concern_coverage,
    correspondence_lints,
    coverage_findings,
)

_ANSI = {Severity.ERROR: "\x1b[31m", Severity.WARNING: "\x1b[33m", Severity.INFO: "\x1b[36m"}
_RESET = "\x1b[0m"


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _use_color() -> bool:
    return sys.stderr.isatty() and not os.environ.get("SOSV_NO_COLOR")


def _print_diag(diag: Diagnostic) -> None:
    text = diag.render()
    if _use_color():
        text = text.replace(
            f"{diag.severity.value}[", f"{_ANSI[diag.severity]}{diag.severity.value}{_RESET}[", 1
        )
    print(text, file=sys.stderr)


def _print_diags(diags) -> bool:
    """Emit diagnostics to stderr; True when any is an error."""
    has_error = False
    for diag in diags:
        _print_diag(diag)
        if diag.severity is Severity.ERROR:
            has_error = True
    return has_error


def _fail_io(path: str, reason: str) -> _Exit:
    _print_diag(Diagnostic(Severity.ERROR, "E-IO", f"cannot read {path!r}: {reason}"))
    return _Exit(2)


def _fail_error(exc: SosvError) -> _Exit:
    _print_diag(Diagnostic(Severity.ERROR, exc.code, exc.message))
    return _Exit(1)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _fail_io(path, exc.strerror or str(exc))
    except UnicodeDecodeError as exc:
        raise _fail_io(path, f"not valid UTF-8 ({exc.reason})")


def _load_view(path: str) -> ArchitectureView:
    """Parse one file, emitting its diagnostics; exit 1 when it has errors."""
    outcome = parse(_read(path), path)
    _print_diags(outcome.diagnostics)
    if outcome.view is None:
        raise _Exit(1)
    return outcome.view


def _load_views(paths) -> list[ArchitectureView]:
    views = []
    failed = False
    for path in paths:
        outcome = parse(_read(path), path)
        _print_diags(outcome.diagnostics)
        if outcome.view is None:
            failed = True
        else:
            views.append(outcome.view)
    if failed:
        raise _Exit(1)
    return views


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args) -> int:
    lint_config: Optional[LintConfig] = None
    if args.lint is not None:
        try:
            if args.lint.strip() == "all":
                lint_config = LintConfig.all()
            else:
                codes = frozenset(c.strip() for c in args.lint.split(",") if c.strip())
                lint_config = LintConfig(codes)
        except SosvError as exc:
            _print_diag(Diagnostic(Severity.ERROR, exc.code, exc.message))
            return 2

    exit_code = 0
    for path in args.files:
        outcome = parse(_read(path), path)
        diags = list(outcome.diagnostics)
        if outcome.view is not None:
            if lint_config is not None:
                diags += correspondence_lints(outcome.view, lint_config)
            if args.assumptions:
                diags += assumption_gaps(outcome.view)
        if _print_diags(diags):
            exit_code = 1
    return exit_code


def _cmd_coverage(args) -> int:
    view = _load_view(args.file)
    filter_ids = args.concern if args.concern else None
    try:
        report = concern_coverage(view, filter_ids)
    except SosvError as exc:
        _print_diag(Diagnostic(Severity.ERROR, exc.code, exc.message))
        return 2
    _print_diags(coverage_findings(report))

    if args.format == "interchange":
        _emit_json({"system": view.system_name, "coverage": report.to_interchange()})
        return 0
    width_id = max(len(e.concern_id) for e in report.entries) if report.entries else 7
    width_id = max(width_id, len("concern"))
    print(f"{'concern':<{width_id}}  {'status':<9}  missing")
    for e in report.entries:
        missing = ", ".join(sorted(k.value for k in e.missing_kinds)) or "-"
        print(f"{e.concern_id:<{width_id}}  {e.status:<9}  {missing}")
    return 0


def _cmd_analyze(args) -> int:
    if args.what == "startup":
        workspace = _workspace(args.files)
        try:
            order = startup_order(workspace)
        except CycleError as exc:
            raise _fail_error(exc)
        if args.format == "interchange":
            _emit_json({"order": order})
        else:
            for name in order:
                print(name)
        return 0

    if args.what == "resources":
        matrix = resource_contention(_workspace(args.files))
        if args.format == "interchange":
            _emit_json(matrix.to_interchange())
            return 0
        for resource in matrix.resources:
            print(f"resource: {resource}")
            for user in matrix.users:
                modes = matrix.modes(resource, user)
                if modes:
                    mode_text = ", ".join(sorted(m.value for m in modes))
                    print(f"  {user.label()}: {mode_text}")
        if matrix.conflicts:
            print("conflicts:")
            for conflict in matrix.conflicts:
                users = "; ".join(u.label() for u in conflict.users)
                print(f"  {conflict.resource}: {users} ({conflict.reason})")
        return 0

    if args.what == "gaps":
        view = _load_view(args.file)
        aliases = {}
        for raw in args.alias or []:
            if "=" not in raw:
                _print_diag(
                    Diagnostic(
                        Severity.ERROR, "E-IO", f"bad --alias {raw!r}; expected required=field"
                    )
                )
                return 2
            required, _, target = raw.partition("=")
            aliases[required] = target
        try:
            report = information_gap(view, args.element, args.require, aliases)
        except SosvError as exc:
            raise _fail_error(exc)
        if args.format == "interchange":
            _emit_json(report.to_interchange())
            return 0
        print(f"element: {report.element}")
        if report.matched:
            print("matched:")
            for m in report.matched:
                print(f"  {m.required} = {m.matched} ({m.via})")
        if report.missing:
            print("missing:")
            for name in report.missing:
                print(f"  {name}")
        return 0

    # capacity
    view = _load_view(args.file)
    try:
        diags = deployment_capacity(view)
    except SosvError as exc:
        raise _fail_error(exc)
    _print_diags(diags)
    return 0


def _workspace(paths) -> Workspace:
    views = _load_views(paths)
    try:
        return Workspace(tuple(views))
    except SosvError as exc:
        raise _fail_error(exc)


def _cmd_render(args) -> int:
    view = _load_view(args.file)
    kind = ModelKind(args.model)
    try:
        if args.render_as == "dot":
            text = render_dot(view, kind)
        elif args.render_as == "matrix":
            text = render_markdown(view, kind, Notation.MATRIX)
        else:
            text = render_markdown(view, kind, Notation.TABLE)
    except SosvError as exc:
        raise _fail_error(exc)
    sys.stdout.write(text)
    return 0


def _cmd_scaffold(args) -> int:
    framework = Framework.VIEWS_AND_BEYOND if args.framework == "vab" else Framework.DODAF
    try:
        inventory = SourceInventory(framework, frozenset(args.have))
        skeleton, report = scaffold(inventory, args.system)
    except SosvError as exc:
        _print_diag(Diagnostic(Severity.ERROR, exc.code, exc.message))
        return 2
    sys.stdout.write(skeleton)
    for entry in report:
        line = f"{entry.kind.value}: {entry.status}"
        if entry.sources_used:
            line += " (from " + ", ".join(sorted(entry.sources_used)) + ")"
        if entry.caveat and entry.sources_used:
            line += f" -- {entry.caveat}"
        print(line, file=sys.stderr)
    return 0


def _cmd_review(args) -> int:
    view = _load_view(args.file)
    styles = set()
    for raw in args.style.split(","):
        raw = raw.strip()
        if not raw:
            continue
        try:
            styles.add(ReviewStyle(raw))
        except ValueError:
            valid = ", ".join(s.value for s in ReviewStyle)
            _print_diag(
                Diagnostic(
                    Severity.ERROR, "E-IO", f"unknown review style {raw!r}; expected: {valid}"
                )
            )
            return 2
    sys.stdout.write(render_review_instrument(view, styles))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sosv",
        description="Parse, validate, analyze, and render constituent-system "
        "architecture views.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check files against every metamodel constraint")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--lint", metavar="CODES", help="comma-separated lint codes, or 'all'")
    p.add_argument(
        "--assumptions", action="store_true", help="also report missing assumption content"
    )

    p = sub.add_parser("coverage", help="concern coverage against the built-in catalog")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--concern", action="append", metavar="ID", help="restrict to this concern id")
    p.add_argument("--format", choices=("text", "interchange"), default="text")

    analyze = sub.add_parser("analyze", help="SoS-level analyses")
    what = analyze.add_subparsers(dest="what", required=True)

    p = what.add_parser("startup", help="dependency-first startup order")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("text", "interchange"), default="text")

    p = what.add_parser("resources", help="cross-system shared resource contention")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("text", "interchange"), default="text")

    p = what.add_parser("gaps", help="information element field gap analysis")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--element", required=True, metavar="NAME")
    p.add_argument("--require", action="append", required=True, metavar="FIELD")
    p.add_argument("--alias", action="append", metavar="REQUIRED=FIELD")
    p.add_argument("--format", choices=("text", "interchange"), default="text")

    p = what.add_parser("capacity", help="deployment capacity check")
    p.add_argument("file", metavar="FILE")

    p = sub.add_parser("render", help="emit a model in a prescribed notation")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--model", required=True, choices=[k.value for k in ModelKind])
    p.add_argument("--as", dest="render_as", required=True, choices=("md", "matrix", "dot"))

    p = sub.add_parser("scaffold", help="skeleton view from a source inventory")
    p.add_argument("--framework", required=True, choices=("vab", "dodaf"))
    p.add_argument("--have", nargs="*", action="extend", default=[], metavar="ID")
    p.add_argument("--system", required=True, metavar="NAME")

    p = sub.add_parser("review", help="generate a review instrument")
    p.add_argument("file", metavar="FILE")
    p.add_argument(
        "--style",
        default="questionnaire,checklist,active,subjective",
        metavar="STYLES",
        help="comma-separated subset of questionnaire, checklist, subjective, active",
    )

    return parser


_COMMANDS = {
    "validate": _cmd_validate,
    "coverage": _cmd_coverage,
    "analyze": _cmd_analyze,
    "render": _cmd_render,
    "scaffold": _cmd_scaffold,
    "review": _cmd_review,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _Exit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
