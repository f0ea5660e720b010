"""Metamodel constraint checking, concern coverage, and cross-model lints.

`validate` returns an empty list exactly when every structural invariant
holds; violations come back as diagnostics, never exceptions. Coverage maps
model presence onto the built-in concern catalog. Lints are opt-in warnings:
the viewpoint itself defines no correspondence rules, so every lint here is
an extra (see docs/lints.md).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .catalog import catalog
from .diagnostics import Diagnostic, Location, Severity, sorted_diagnostics
from .errors import SosvError
from .graphs import find_shortest_cycle
from .model import (
    ArchitectureView,
    InteractionKind,
    ModelKind,
    Quality,
    RelationKind,
    StakeholderRole,
    UsageMode,
    UserScope,
)


class CoverageStatus:
    COVERED = "covered"
    PARTIAL = "partial"
    UNCOVERED = "uncovered"


@dataclass(frozen=True)
class CoverageEntry:
    concern_id: str
    status: str
    present_kinds: frozenset[ModelKind]
    missing_kinds: frozenset[ModelKind]
    quality: Quality
    impacted_stakeholders: frozenset[StakeholderRole]


@dataclass(frozen=True)
class CoverageReport:
    """Per-concern coverage, ordered by catalog order."""

    entries: tuple[CoverageEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def entry(self, concern_id: str) -> CoverageEntry:
        for e in self.entries:
            if e.concern_id == concern_id:
                return e
        raise SosvError("E-COV-UNKNOWN-ID", f"no coverage entry for {concern_id!r}")

    def to_interchange(self) -> list[dict]:
        return [
            {
                "concern": e.concern_id,
                "status": e.status,
                "present_kinds": sorted(k.value for k in e.present_kinds),
                "missing_kinds": sorted(k.value for k in e.missing_kinds),
                "quality": e.quality.value,
                "stakeholders": sorted(s.value for s in e.impacted_stakeholders),
            }
            for e in self.entries
        ]


LINT_CODES: tuple[str, ...] = (
    "W-XM-SR-UNDEPLOYED",
    "W-XM-STARTUP-UNDOC",
    "W-XM-MULTIWRITER",
)


@dataclass(frozen=True)
class LintConfig:
    """Enabled lint codes; unknown codes are rejected immediately."""

    enabled: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "enabled", frozenset(self.enabled))
        unknown = sorted(self.enabled - set(LINT_CODES))
        if unknown:
            raise SosvError("E-LINT-UNKNOWN", f"unknown lint code: {unknown[0]}")

    @classmethod
    def all(cls) -> "LintConfig":
        return cls(frozenset(LINT_CODES))


# ---------------------------------------------------------------------------
# validate


class _Collector:
    def __init__(self, view: ArchitectureView):
        self.view = view
        self.diags: list[Diagnostic] = []

    def _loc(self, key: tuple[str, ...]) -> Optional[Location]:
        origin = self.view.origin
        if origin is None:
            return None
        span = origin.spans.get(key)
        return span.start if span is not None else None

    def error(self, code: str, message: str, key: tuple[str, ...] = ()) -> None:
        self.diags.append(
            Diagnostic(Severity.ERROR, code, message, self._loc(key) if key else None)
        )

    def check_unique(self, names: Iterable[str], what: str, key_base: tuple[str, ...]) -> None:
        seen: set[str] = set()
        for name in names:
            if name in seen:
                self.error("E-DUP-NAME", f"duplicate {what} {name!r}", key_base + (name,))
            seen.add(name)

    def check_nonblank(self, names: Iterable[str], what: str, key_base: tuple[str, ...]) -> None:
        for name in names:
            if not name.strip():
                self.error("E-EMPTY-NAME", f"{what} name is empty", key_base + (name,))


def validate(view: ArchitectureView) -> list[Diagnostic]:
    """All metamodel constraints; pure, idempotent, never mutates the view."""
    c = _Collector(view)
    if view.stakeholder_model is not None:
        _check_stakeholders(c)
    if view.execution_context is not None:
        _check_execution_context(c)
    if view.code_context is not None:
        _check_code_context(c)
    if view.information_model is not None:
        _check_information_model(c)
    if view.shared_resources is not None:
        _check_shared_resources(c)
    if view.deployment is not None:
        _check_deployment(c)
    return sorted_diagnostics(c.diags)


def _check_stakeholders(c: _Collector) -> None:
    model = c.view.stakeholder_model
    base = ("stakeholders",)
    c.check_unique((s.name for s in model.stakeholders), "stakeholder", base + ("stakeholder",))
    c.check_nonblank((s.name for s in model.stakeholders), "stakeholder", base + ("stakeholder",))
    c.check_unique((x.id for x in model.concerns), "concern", base + ("concern",))
    c.check_nonblank((x.id for x in model.concerns), "concern id", base + ("concern",))

    known_ids = set(catalog().ids())
    for concern in model.concerns:
        for cid in sorted(concern.catalog_ids - known_ids):
            c.error(
                "E-CATALOG-UNKNOWN",
                f"concern {concern.id!r} references unknown catalog id {cid!r}",
                base + ("concern", concern.id),
            )

    declared_s = {s.name for s in model.stakeholders}
    declared_c = {x.id for x in model.concerns}
    seen_pairs: set[tuple[str, str]] = set()
    for holder, cid in model.has_concern:
        key = base + ("has", holder, cid)
        if (holder, cid) in seen_pairs:
            c.error("E-DUP-NAME", f"duplicate has pair {holder!r} -> {cid!r}", key)
        seen_pairs.add((holder, cid))
        if holder not in declared_s:
            c.error("E-REF-UNDECLARED", f"has pair references undeclared stakeholder {holder!r}", key)
        if cid not in declared_c:
            c.error("E-REF-UNDECLARED", f"has pair references undeclared concern {cid!r}", key)


def _check_execution_context(c: _Collector) -> None:
    model = c.view.execution_context
    base = ("execution-context",)
    c.check_unique((e.name for e in model.externals), "external", base + ("external",))
    c.check_nonblank((e.name for e in model.externals), "external", base + ("external",))

    declared = {e.name for e in model.externals}
    seen: set[tuple] = set()
    for i in model.interactions:
        key = base + ("interaction",) + tuple(str(p) for p in i.identity())
        if i.identity() in seen:
            c.error("E-DUP-NAME", "identical interaction declared twice", key)
        seen.add(i.identity())
        if i.external not in declared:
            c.error(
                "E-REF-UNDECLARED",
                f"interaction references undeclared external {i.external!r}",
                key,
            )
        if i.kind is InteractionKind.DATA_EXCHANGE and i.data_direction is None:
            c.error(
                "E-DATA-DIRECTION",
                "data-exchange interaction is missing data-direction",
                key,
            )
        if i.kind is not InteractionKind.DATA_EXCHANGE and i.data_direction is not None:
            c.error(
                "E-DATA-DIRECTION",
                f"data-direction is only valid on data-exchange interactions, not {i.kind.value}",
                key,
            )


def _check_code_context(c: _Collector) -> None:
    model = c.view.code_context
    base = ("code-context",)
    c.check_unique((m.name for m in model.external_modules), "module", base + ("module",))
    c.check_nonblank((m.name for m in model.external_modules), "module", base + ("module",))
    for m in model.external_modules:
        if not m.dependency_types:
            c.error(
                "E-EMPTY-SET",
                f"module {m.name!r} declares no dependency types",
                base + ("module", m.name),
            )


def _check_information_model(c: _Collector) -> None:
    model = c.view.information_model
    base = ("information-model",)
    c.check_unique((e.name for e in model.sos_elements), "sos element", base + ("sos-element",))
    c.check_unique((e.name for e in model.system_elements), "element", base + ("element",))
    c.check_nonblank((e.name for e in model.sos_elements), "sos element", base + ("sos-element",))
    c.check_nonblank((e.name for e in model.system_elements), "element", base + ("element",))
    for scope, elems in (("sos-element", model.sos_elements), ("element", model.system_elements)):
        for elem in elems:
            seen_fields: set[str] = set()
            for f in elem.data_fields:
                if f.name in seen_fields:
                    c.error(
                        "E-DUP-NAME",
                        f"duplicate field {f.name!r} in element {elem.name!r}",
                        base + (scope, elem.name),
                    )
                seen_fields.add(f.name)

    declared = {e.name for e in model.sos_elements} | {e.name for e in model.system_elements}
    system_names = {e.name for e in model.system_elements}
    sos_names = {e.name for e in model.sos_elements}

    seen_rel: set[tuple] = set()
    for r in model.relations:
        key = base + ("relation",) + tuple(str(p) for p in r.identity())
        if r.identity() in seen_rel:
            c.error("E-DUP-NAME", "identical relation declared twice", key)
        seen_rel.add(r.identity())
        for endpoint in (r.source, r.target):
            if endpoint not in declared:
                c.error(
                    "E-REF-UNDECLARED",
                    f"relation references undeclared element {endpoint!r}",
                    key,
                )
        if r.kind is RelationKind.ASSOCIATION and r.cardinality is None:
            c.error("E-CARDINALITY", "association relation is missing cardinality", key)
        if r.kind is not RelationKind.ASSOCIATION and r.cardinality is not None:
            c.error(
                "E-CARDINALITY",
                f"cardinality is only valid on association relations, not {r.kind.value}",
                key,
            )

    for kind in (RelationKind.SPECIALIZATION, RelationKind.AGGREGATION):
        cycle = find_shortest_cycle(
            declared, [(r.source, r.target) for r in model.relations if r.kind is kind]
        )
        if cycle is not None:
            pretty = " -> ".join(cycle + cycle[:1])
            c.error("E-INFO-CYCLE", f"{kind.value} relations form a cycle: {pretty}", base)

    # explicit no-counterpart declarations must reference declared sos
    # elements and must not contradict the relations
    c.check_unique(model.unrelated_sos_elements, "unrelated entry", base + ("unrelated",))
    related_sos = set()
    for r in model.relations:
        if r.source in sos_names and r.target in system_names:
            related_sos.add(r.source)
        if r.target in sos_names and r.source in system_names:
            related_sos.add(r.target)
    for name in model.unrelated_sos_elements:
        key = base + ("unrelated", name)
        if name not in sos_names:
            c.error(
                "E-REF-UNDECLARED",
                f"unrelated entry references undeclared sos element {name!r}",
                key,
            )
        elif name in related_sos:
            c.error(
                "E-INFO-UNRELATED",
                f"sos element {name!r} is declared unrelated but relates to a system element",
                key,
            )


def _check_shared_resources(c: _Collector) -> None:
    model = c.view.shared_resources
    base = ("shared-resources",)
    c.check_unique((r.name for r in model.resources), "resource", base + ("resource",))
    c.check_nonblank((r.name for r in model.resources), "resource", base + ("resource",))
    declared = {r.name for r in model.resources}
    seen: set[tuple] = set()
    for u in model.usages:
        key = base + ("usage",) + tuple(str(p) for p in u.identity())
        if u.identity() in seen:
            c.error("E-DUP-NAME", "identical usage declared twice", key)
        seen.add(u.identity())
        if u.resource not in declared:
            c.error(
                "E-REF-UNDECLARED",
                f"usage references undeclared resource {u.resource!r}",
                key,
            )
        if not u.modes:
            c.error("E-EMPTY-SET", f"usage by {u.user!r} declares no modes", key)


def _check_deployment(c: _Collector) -> None:
    model = c.view.deployment
    base = ("deployment",)
    c.check_unique((n.name for n in model.nodes), "node", base + ("node",))
    c.check_unique((u.name for u in model.units), "unit", base + ("unit",))
    c.check_nonblank((n.name for n in model.nodes), "node", base + ("node",))
    c.check_nonblank((u.name for u in model.units), "unit", base + ("unit",))

    for n in model.nodes:
        c.check_unique(
            (q.resource for q in n.provides), f"provides entry on node {n.name!r}", base + ("node", n.name, "provides")
        )
        for q in n.provides:
            if q.amount < 0:
                c.error(
                    "E-QTY-NEGATIVE",
                    f"node {n.name!r} provides negative {q.resource!r} ({q.amount})",
                    base + ("node", n.name),
                )
    for u in model.units:
        c.check_unique(
            (q.resource for q in u.needs), f"needs entry on unit {u.name!r}", base + ("unit", u.name, "needs")
        )
        for q in u.needs:
            if q.amount < 0:
                c.error(
                    "E-QTY-NEGATIVE",
                    f"unit {u.name!r} needs negative {q.resource!r} ({q.amount})",
                    base + ("unit", u.name),
                )

    nodes = {n.name for n in model.nodes}
    units = {u.name for u in model.units}
    seen_alloc: set[tuple[str, str]] = set()
    for a in model.allocations:
        key = base + ("allocation", a.unit, a.node)
        if (a.unit, a.node) in seen_alloc:
            c.error("E-DUP-NAME", f"duplicate allocation {a.unit!r} -> {a.node!r}", key)
        seen_alloc.add((a.unit, a.node))
        if a.unit not in units:
            c.error("E-REF-UNDECLARED", f"allocation references undeclared unit {a.unit!r}", key)
        if a.node not in nodes:
            c.error("E-REF-UNDECLARED", f"allocation references undeclared node {a.node!r}", key)


# ---------------------------------------------------------------------------
# concern coverage


def concern_coverage(
    view: ArchitectureView, filter_ids: Optional[Iterable[str]] = None
) -> CoverageReport:
    """One entry per catalog concern (or per filtered id), in catalog order.
    A model kind counts as present only when present and non-empty."""
    wanted: Optional[set[str]] = None
    if filter_ids is not None:
        wanted = set(filter_ids)
        for cid in sorted(wanted):
            if cid not in catalog():
                raise SosvError("E-COV-UNKNOWN-ID", f"unknown concern id: {cid!r}")

    present_kinds = view.non_empty_kinds
    entries = []
    for entry in catalog():
        if wanted is not None and entry.id not in wanted:
            continue
        present = frozenset(entry.model_kinds & present_kinds)
        missing = frozenset(entry.model_kinds - present_kinds)
        if not missing:
            status = CoverageStatus.COVERED
        elif not present:
            status = CoverageStatus.UNCOVERED
        else:
            status = CoverageStatus.PARTIAL
        entries.append(
            CoverageEntry(entry.id, status, present, missing, entry.quality, entry.stakeholders)
        )
    return CoverageReport(tuple(entries))


def coverage_findings(report: CoverageReport) -> list[Diagnostic]:
    """Partial/uncovered concerns as warning diagnostics (no location)."""
    diags = []
    for e in report.entries:
        if e.status == CoverageStatus.PARTIAL:
            missing = ", ".join(sorted(k.value for k in e.missing_kinds))
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    "W-COV-PARTIAL",
                    f"concern {e.concern_id!r} is partially covered; missing: {missing}",
                )
            )
        elif e.status == CoverageStatus.UNCOVERED:
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    "W-COV-UNCOVERED",
                    f"concern {e.concern_id!r} is not covered by any present model",
                )
            )
    return sorted_diagnostics(diags)


# ---------------------------------------------------------------------------
# correspondence lints (opt-in, warnings only)


def correspondence_lints(view: ArchitectureView, config: LintConfig) -> list[Diagnostic]:
    """Cross-model consistency warnings for the enabled codes only."""
    c = _Collector(view)
    diags: list[Diagnostic] = []

    if "W-XM-SR-UNDEPLOYED" in config.enabled and view.shared_resources is not None:
        unit_names = (
            {u.name for u in view.deployment.units} if view.deployment is not None else set()
        )
        flagged: set[str] = set()
        for usage in view.shared_resources.usages:
            if usage.user_scope is not UserScope.CONSTITUENT:
                continue
            if usage.user in unit_names or usage.user in flagged:
                continue
            flagged.add(usage.user)
            key = ("shared-resources", "usage") + tuple(str(p) for p in usage.identity())
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    "W-XM-SR-UNDEPLOYED",
                    f"shared-resource user {usage.user!r} is not declared as a deployment unit",
                    c._loc(key),
                )
            )

    if "W-XM-STARTUP-UNDOC" in config.enabled and view.execution_context is not None:
        ec = view.execution_context
        if ec.startup_sequence_note is None:
            for i in ec.interactions:
                if not i.required_at_startup:
                    continue
                key = ("execution-context", "interaction") + tuple(str(p) for p in i.identity())
                diags.append(
                    Diagnostic(
                        Severity.WARNING,
                        "W-XM-STARTUP-UNDOC",
                        f"interaction {i.self_interface!r} -> {i.external!r} is required at "
                        "startup but no startup sequence note is documented",
                        c._loc(key),
                    )
                )

    if "W-XM-MULTIWRITER" in config.enabled and view.shared_resources is not None:
        # the constituent system's own components are expected to write their
        # resources; the integration hazard is several *external* writers
        writers: dict[str, set[str]] = {}
        for usage in view.shared_resources.usages:
            if usage.user_scope is UserScope.EXTERNAL and UsageMode.WRITES in usage.modes:
                writers.setdefault(usage.resource, set()).add(usage.user)
        for resource in sorted(writers):
            users = writers[resource]
            if len(users) >= 2:
                names = ", ".join(sorted(users))
                diags.append(
                    Diagnostic(
                        Severity.WARNING,
                        "W-XM-MULTIWRITER",
                        f"resource {resource!r} has multiple external writers: {names}",
                        c._loc(("shared-resources", "resource", resource)),
                    )
                )

    return sorted_diagnostics(diags)


# ---------------------------------------------------------------------------
# assumption gaps (info-level; the "Adding Assumptions" content)


def assumption_gaps(view: ArchitectureView) -> list[Diagnostic]:
    """Info findings for assumption content the models invite but lack."""
    c = _Collector(view)
    diags: list[Diagnostic] = []
    if view.shared_resources is not None:
        for resource in view.shared_resources.resources:
            if resource.insufficient_behavior is None:
                diags.append(
                    Diagnostic(
                        Severity.INFO,
                        "I-ASSUME-INSUFFICIENT",
                        f"resource {resource.name!r} does not document behavior when "
                        "insufficient resources are available",
                        c._loc(("shared-resources", "resource", resource.name)),
                    )
                )
    if view.code_context is not None and not view.code_context.is_empty():
        if not view.code_context.evolution_assumptions:
            diags.append(
                Diagnostic(
                    Severity.INFO,
                    "I-ASSUME-EVOLUTION",
                    "code context lists no evolution assumptions for external modules",
                    c._loc(("code-context",)),
                )
            )
    if view.execution_context is not None and not view.execution_context.is_empty():
        if view.execution_context.monitoring_note is None:
            diags.append(
                Diagnostic(
                    Severity.INFO,
                    "I-ASSUME-MONITORING",
                    "execution context carries no monitoring note",
                    c._loc(("execution-context",)),
                )
            )
    return sorted_diagnostics(diags)
