"""Canonical text form: fixed section order, name-sorted declarations, LF."""

from __future__ import annotations

from ..model import (
    Acquisition,
    ArchitectureView,
    CodeContextModel,
    DeploymentModel,
    ExecutionTimeContextModel,
    ExternalCategory,
    InterfaceInformationModel,
    ModelKind,
    RelationKind,
    SharedResourceModel,
    SourceKind,
    StakeholderConcernModel,
)

_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def _q(text: str) -> str:
    return '"' + "".join(_STRING_ESCAPES.get(ch, ch) for ch in text) + '"'


def _num(amount: float) -> str:
    if float(amount).is_integer():
        return str(int(amount))
    return repr(float(amount))


def serialize(view: ArchitectureView) -> str:
    """Deterministic canonical text; two views that differ only in input
    declaration order serialize identically."""
    out = _Writer()
    out.line(f"view {_q(view.system_name)} {{")
    out.indent += 1
    out.line(f"system {_q(view.system_name)}")

    emitters = {
        ModelKind.STAKEHOLDERS: _stakeholders,
        ModelKind.EXECUTION_CONTEXT: _execution_context,
        ModelKind.CODE_CONTEXT: _code_context,
        ModelKind.INFORMATION_MODEL: _information_model,
        ModelKind.SHARED_RESOURCES: _shared_resources,
        ModelKind.DEPLOYMENT: _deployment,
    }
    for kind, emit in emitters.items():
        model = view.model(kind)
        if model is None:
            continue
        out.line("")
        out.line(f"{kind.value} {{")
        out.indent += 1
        emit(out, model)
        out.indent -= 1
        out.line("}")

    out.indent -= 1
    out.line("}")
    return out.text()


class _Writer:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.indent = 0

    def line(self, text: str) -> None:
        self.lines.append(("  " * self.indent + text) if text else "")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _stakeholders(out: _Writer, model: StakeholderConcernModel) -> None:
    for s in model.stakeholders:
        if s.role_note is None:
            out.line(f"stakeholder {_q(s.name)}")
        else:
            out.line(f"stakeholder {_q(s.name)} {{ note {_q(s.role_note)} }}")
    for c in model.concerns:
        out.line(f"concern {_q(c.id)} {{")
        out.indent += 1
        out.line(f"description {_q(c.description)}")
        if c.source_tag is not None:
            out.line(f"source {_q(c.source_tag)}")
        if c.catalog_ids:
            out.line("catalog " + " ".join(sorted(c.catalog_ids)))
        out.indent -= 1
        out.line("}")
    for holder, cid in model.has_concern:
        out.line(f"has {_q(holder)} -> {_q(cid)}")
    for name in model.excluded_stakeholders:
        out.line(f"excluded {_q(name)}")
    for text in model.unaddressed_concerns:
        out.line(f"unaddressed {_q(text)}")


def _execution_context(out: _Writer, model: ExecutionTimeContextModel) -> None:
    for ext in model.externals:
        if ext.category is ExternalCategory.APPLICATION:
            out.line(f"external {_q(ext.name)}")
        else:
            out.line(f"external {_q(ext.name)} {{ category {ext.category.value} }}")
    for i in model.interactions:
        out.line("interaction {")
        out.indent += 1
        out.line(f"interface {_q(i.self_interface)}")
        out.line(f"external {_q(i.external)}")
        if i.external_interface is not None:
            out.line(f"external-interface {_q(i.external_interface)}")
        out.line(f"kind {i.kind.value}")
        if i.data_direction is not None:
            out.line(f"data-direction {i.data_direction.value}")
        if i.protocol is not None:
            out.line(f"protocol {_q(i.protocol)}")
        out.line(f"direction {i.direction.value}")
        if i.required_at_startup:
            out.line("required-at-startup")
        out.indent -= 1
        out.line("}")
    if model.startup_sequence_note is not None:
        out.line(f"startup-note {_q(model.startup_sequence_note)}")
    if model.monitoring_note is not None:
        out.line(f"monitoring-note {_q(model.monitoring_note)}")


def _code_context(out: _Writer, model: CodeContextModel) -> None:
    for m in model.external_modules:
        out.line(f"module {_q(m.name)} {{")
        out.indent += 1
        out.line("depends " + " ".join(sorted(t.value for t in m.dependency_types)))
        if m.version != "unspecified":
            out.line(f"version {_q(m.version)}")
        if m.source_kind is not SourceKind.UNSPECIFIED:
            out.line(f"source {m.source_kind.value}")
        out.line(f"category {m.category.value}")
        if m.note is not None:
            out.line(f"note {_q(m.note)}")
        out.indent -= 1
        out.line("}")
    for text in model.evolution_assumptions:
        out.line(f"evolution {_q(text)}")


def _element(out: _Writer, keyword: str, elem) -> None:
    if elem.description is None and not elem.data_fields:
        out.line(f"{keyword} {_q(elem.name)}")
        return
    out.line(f"{keyword} {_q(elem.name)} {{")
    out.indent += 1
    if elem.description is not None:
        out.line(f"description {_q(elem.description)}")
    for f in elem.data_fields:
        details = [
            ("units", f.units),
            ("timeliness", f.timeliness),
            ("precision", f.precision),
            ("security-level", f.security_level),
        ]
        present = [(k, v) for k, v in details if v is not None]
        if not present:
            out.line(f"field {_q(f.name)}")
        else:
            body = " ".join(f"{k} {_q(v)}" for k, v in present)
            out.line(f"field {_q(f.name)} {{ {body} }}")
    out.indent -= 1
    out.line("}")


def _information_model(out: _Writer, model: InterfaceInformationModel) -> None:
    for elem in model.sos_elements:
        _element(out, "sos-element", elem)
    for elem in model.system_elements:
        _element(out, "element", elem)
    for r in model.relations:
        head = f"relation {r.kind.value} {_q(r.source)} -> {_q(r.target)}"
        if r.kind is RelationKind.ASSOCIATION and r.cardinality is not None:
            out.line(f"{head} {{ cardinality {r.cardinality.value} }}")
        else:
            out.line(head)
    for name in model.unrelated_sos_elements:
        out.line(f"unrelated {_q(name)}")


def _shared_resources(out: _Writer, model: SharedResourceModel) -> None:
    for r in model.resources:
        out.line(f"resource {_q(r.name)} {{")
        out.indent += 1
        out.line(f"kind {r.kind.value}")
        if r.acquisition is not Acquisition.UNSPECIFIED:
            out.line(f"acquisition {r.acquisition.value}")
        if r.insufficient_behavior is not None:
            out.line(f"insufficient {_q(r.insufficient_behavior)}")
        out.indent -= 1
        out.line("}")
    for u in model.usages:
        out.line("usage {")
        out.indent += 1
        out.line(f"resource {_q(u.resource)}")
        out.line(f"user {_q(u.user)}")
        out.line(f"scope {u.user_scope.value}")
        out.line("modes " + " ".join(sorted(m.value for m in u.modes)))
        if u.note is not None:
            out.line(f"note {_q(u.note)}")
        out.indent -= 1
        out.line("}")


def _deployment(out: _Writer, model: DeploymentModel) -> None:
    for n in model.nodes:
        out.line(f"node {_q(n.name)} {{")
        out.indent += 1
        out.line(f"kind {n.kind.value}")
        for q in n.provides:
            out.line(f"provides {_q(q.resource)} {_num(q.amount)} {_q(q.unit)}")
        out.indent -= 1
        out.line("}")
    for u in model.units:
        out.line(f"unit {_q(u.name)} {{")
        out.indent += 1
        out.line(f"kind {u.kind.value}")
        for q in u.needs:
            out.line(f"needs {_q(q.resource)} {_num(q.amount)} {_q(q.unit)}")
        if u.constraint_note is not None:
            out.line(f"constraint {_q(u.constraint_note)}")
        out.indent -= 1
        out.line("}")
    for a in model.allocations:
        out.line(f"allocate {_q(a.unit)} -> {_q(a.node)}")
