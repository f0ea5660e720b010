"""Scaffolding from Views-and-Beyond and DoDAF source inventories.

Each framework registry records, per model kind, which source documents can
seed that model, plus any caveat about how complete that source tends to be.
`scaffold` emits a parseable skeleton view with TODO markers; `source_gaps`
is the inverse projection. Id-to-prose tables live in docs/frameworks.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import SosvError
from .model import MODEL_KIND_ORDER, ModelKind


class Framework(Enum):
    VIEWS_AND_BEYOND = "views-and-beyond"
    DODAF = "dodaf"


class TraceStatus:
    SOURCED = "sourced"
    PARTIAL = "partial"
    UNSOURCED = "unsourced"


@dataclass(frozen=True)
class KindMapping:
    """Registry row: the sources that can seed one model kind."""

    kind: ModelKind
    source_ids: tuple[str, ...]
    prose: dict[str, str]
    caveat: Optional[str] = None
    doubtful: bool = False  # the framework rarely yields everything needed


_VAB_ROWS: tuple[KindMapping, ...] = (
    KindMapping(
        ModelKind.STAKEHOLDERS,
        ("documentation-roadmap", "stakeholder-view-matrix"),
        {
            "documentation-roadmap": "Documentation roadmap (information beyond views)",
            "stakeholder-view-matrix": "Stakeholder/view matrix",
        },
        caveat="The stakeholder/view matrix is typically produced by the architect "
        "but not published with the architecture documentation.",
    ),
    KindMapping(
        ModelKind.EXECUTION_CONTEXT,
        ("context-diagram-cc",),
        {
            "context-diagram-cc": "Context diagram from a component-and-connector "
            "view (client-server, SOA, pipe-and-filter, publish-subscribe)"
        },
    ),
    KindMapping(
        ModelKind.CODE_CONTEXT,
        ("uses-context",),
        {"uses-context": "Context diagram from a module uses view"},
    ),
    KindMapping(
        ModelKind.INFORMATION_MODEL,
        ("interface-documentation", "data-model-view-packet"),
        {
            "interface-documentation": "Interface documentation for externally "
            "visible interfaces",
            "data-model-view-packet": "Data model view packet focused on externally "
            "visible information elements",
        },
    ),
    KindMapping(
        ModelKind.SHARED_RESOURCES,
        ("component-connector-view",),
        {"component-connector-view": "Component-and-connector view"},
    ),
    KindMapping(
        ModelKind.DEPLOYMENT,
        ("deployment-view",),
        {"deployment-view": "Deployment view primary presentation or context diagram"},
    ),
)

_DODAF_PROSE = {
    "AV-1": "AV-1 Overview and Summary Information",
    "PV-1": "PV-1 Project Portfolio Relationships",
    "SvcV-1": "SvcV-1 Services Context Description",
    "SvcV-2": "SvcV-2 Services Resource Flow Description",
    "SvcV-3a": "SvcV-3a Systems-Services Matrix",
    "SvcV-3b": "SvcV-3b Services-Services Matrix",
    "SvcV-6": "SvcV-6 Services Resource Flow Matrix",
    "SvcV-10c": "SvcV-10c Services Event-Trace Description",
    "StdV-1": "StdV-1 Standards Profile",
}


def _dodaf_row(kind: ModelKind, ids: tuple[str, ...], caveat=None, doubtful=False) -> KindMapping:
    return KindMapping(kind, ids, {i: _DODAF_PROSE[i] for i in ids}, caveat, doubtful)


_DODAF_ROWS: tuple[KindMapping, ...] = (
    _dodaf_row(
        ModelKind.STAKEHOLDERS,
        ("AV-1", "PV-1"),
        caveat="DoDAF does not treat stakeholders as a first-order concern; these "
        "products give insight into operational, maintenance, and development "
        "stakeholders.",
    ),
    _dodaf_row(ModelKind.EXECUTION_CONTEXT, ("SvcV-1", "SvcV-3b")),
    _dodaf_row(
        ModelKind.CODE_CONTEXT,
        ("SvcV-1",),
        caveat="When this information is captured at all, SvcV-1 is where it is "
        "most likely to appear.",
        doubtful=True,
    ),
    _dodaf_row(
        ModelKind.INFORMATION_MODEL,
        ("SvcV-2", "SvcV-6", "StdV-1"),
        caveat="DoDAF identifies interfaces and protocols as resource flows.",
    ),
    _dodaf_row(
        ModelKind.SHARED_RESOURCES,
        ("SvcV-3b", "SvcV-10c"),
        caveat="Shared resources are often not explicitly identified and must be "
        "discovered from the SvcV products.",
        doubtful=True,
    ),
    _dodaf_row(
        ModelKind.DEPLOYMENT,
        ("SvcV-1", "SvcV-3a"),
        caveat="DoDAF services mix software and hardware elements without explicit "
        "refinement; these products give insight but rarely provide everything "
        "needed for this model.",
        doubtful=True,
    ),
)

_REGISTRIES: dict[Framework, tuple[KindMapping, ...]] = {
    Framework.VIEWS_AND_BEYOND: _VAB_ROWS,
    Framework.DODAF: _DODAF_ROWS,
}


def registry(framework: Framework) -> tuple[KindMapping, ...]:
    return _REGISTRIES[framework]


def registry_ids(framework: Framework) -> frozenset[str]:
    return frozenset(i for row in _REGISTRIES[framework] for i in row.source_ids)


@dataclass(frozen=True)
class SourceInventory:
    """The source documents actually available for one system."""

    framework: Framework
    available: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "available", frozenset(self.available))
        known = registry_ids(self.framework)
        for source_id in sorted(self.available - known):
            raise SosvError(
                "E-MAP-UNKNOWN-SOURCE",
                f"unknown source id {source_id!r} for framework {self.framework.value}",
            )


@dataclass(frozen=True)
class KindTrace:
    kind: ModelKind
    sources_used: frozenset[str]
    status: str
    caveat: Optional[str] = None


@dataclass(frozen=True)
class TraceabilityReport:
    """Per model kind: which sources seeded it and how trustworthy that is."""

    entries: tuple[KindTrace, ...]

    def __iter__(self):
        return iter(self.entries)

    def entry(self, kind: ModelKind) -> KindTrace:
        for e in self.entries:
            if e.kind is kind:
                return e
        raise KeyError(kind)

    def to_interchange(self) -> list[dict]:
        out = []
        for e in self.entries:
            item = {
                "kind": e.kind.value,
                "sources_used": sorted(e.sources_used),
                "status": e.status,
            }
            if e.caveat is not None:
                item["caveat"] = e.caveat
            out.append(item)
        return out


@dataclass(frozen=True)
class SourceGap:
    kind: ModelKind
    missing: tuple[str, ...]
    caveat: Optional[str] = None


def scaffold(inventory: SourceInventory, system_name: str) -> tuple[str, TraceabilityReport]:
    """A parseable `.sosv` skeleton with one empty section per sourced model
    kind, each tagged with the source ids to transcribe from, plus a
    traceability report covering all six kinds."""
    if not system_name.strip():
        raise SosvError("E-EMPTY-NAME", "system name must be non-empty")

    rows = {row.kind: row for row in _REGISTRIES[inventory.framework]}
    quoted = system_name.replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'view "{quoted}" {{', f'  system "{quoted}"']
    entries = []
    for kind in MODEL_KIND_ORDER:
        row = rows[kind]
        used = tuple(i for i in row.source_ids if i in inventory.available)
        if used:
            lines.append("")
            lines.append(f"  {kind.value} {{")
            lines.append(f"    // TODO from: {', '.join(used)}")
            lines.append("  }")
            status = TraceStatus.PARTIAL if row.doubtful else TraceStatus.SOURCED
        else:
            status = TraceStatus.UNSOURCED
        entries.append(KindTrace(kind, frozenset(used), status, row.caveat))
    lines.append("}")
    return "\n".join(lines) + "\n", TraceabilityReport(tuple(entries))


def source_gaps(inventory: SourceInventory) -> list[SourceGap]:
    """Registry minus inventory: per kind, the source ids still missing."""
    gaps = []
    for row in _REGISTRIES[inventory.framework]:
        missing = tuple(i for i in row.source_ids if i not in inventory.available)
        if missing:
            gaps.append(SourceGap(row.kind, missing, row.caveat))
    return gaps
