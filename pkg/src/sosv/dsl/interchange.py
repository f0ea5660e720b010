"""Structured interchange form: a JSON-compatible tree of maps/lists/scalars.

Lossless except source spans; `to_interchange` and `from_interchange` compose
to the identity on valid views. Schema violations are reported as E-IX-SCHEMA
diagnostics carrying a /slash/path into the tree. The same shape is published
as docs/interchange.schema.json.
"""

from __future__ import annotations

import math
from typing import Any, Optional

from ..diagnostics import Diagnostic, Severity, sorted_diagnostics
from ..validator import validate
from ..model import (
    Acquisition,
    Allocation,
    ArchitectureView,
    Cardinality,
    CodeContextModel,
    Concern,
    DataDirection,
    DataField,
    DependencyType,
    DeploymentModel,
    DeploymentNode,
    DeploymentUnit,
    ExecutionTimeContextModel,
    External,
    ExternalCategory,
    ExternalModule,
    InfoRelation,
    InformationElement,
    Interaction,
    InteractionDirection,
    InteractionKind,
    InterfaceInformationModel,
    ModelKind,
    ModuleCategory,
    NodeKind,
    RelationKind,
    Resource,
    ResourceKind,
    ResourceQuantity,
    ResourceUsage,
    SharedResourceModel,
    SourceKind,
    Stakeholder,
    StakeholderConcernModel,
    UnitKind,
    UsageMode,
    UserScope,
)
from .parser import ParseOutcome


def _number(amount: float):
    return int(amount) if float(amount).is_integer() else float(amount)


def _clean(mapping: dict) -> dict:
    """Drop None values and empty lists so emitted documents stay small."""
    return {k: v for k, v in mapping.items() if v is not None and v != []}


def to_interchange(view: ArchitectureView) -> dict:
    """The view as a plain tree, keys in schema order, spans dropped."""
    models: dict[str, Any] = {}

    sm = view.stakeholder_model
    if sm is not None:
        models[ModelKind.STAKEHOLDERS.value] = _clean(
            {
                "stakeholders": [
                    _clean({"name": s.name, "role_note": s.role_note}) for s in sm.stakeholders
                ],
                "concerns": [
                    _clean(
                        {
                            "id": c.id,
                            "description": c.description,
                            "source_tag": c.source_tag,
                            "catalog_ids": sorted(c.catalog_ids),
                        }
                    )
                    for c in sm.concerns
                ],
                "has_concern": [
                    {"stakeholder": s, "concern": c} for s, c in sm.has_concern
                ],
                "excluded_stakeholders": list(sm.excluded_stakeholders),
                "unaddressed_concerns": list(sm.unaddressed_concerns),
            }
        )

    ec = view.execution_context
    if ec is not None:
        models[ModelKind.EXECUTION_CONTEXT.value] = _clean(
            {
                "externals": [
                    {"name": e.name, "category": e.category.value} for e in ec.externals
                ],
                "interactions": [
                    _clean(
                        {
                            "interface": i.self_interface,
                            "external": i.external,
                            "external_interface": i.external_interface,
                            "kind": i.kind.value,
                            "data_direction": i.data_direction.value
                            if i.data_direction
                            else None,
                            "protocol": i.protocol,
                            "direction": i.direction.value,
                            "required_at_startup": True if i.required_at_startup else None,
                        }
                    )
                    for i in ec.interactions
                ],
                "startup_note": ec.startup_sequence_note,
                "monitoring_note": ec.monitoring_note,
            }
        )

    cc = view.code_context
    if cc is not None:
        models[ModelKind.CODE_CONTEXT.value] = _clean(
            {
                "modules": [
                    _clean(
                        {
                            "name": m.name,
                            "dependency_types": sorted(t.value for t in m.dependency_types),
                            "version": m.version,
                            "source": m.source_kind.value,
                            "category": m.category.value,
                            "note": m.note,
                        }
                    )
                    for m in cc.external_modules
                ],
                "evolution_assumptions": list(cc.evolution_assumptions),
            }
        )

    im = view.information_model
    if im is not None:
        models[ModelKind.INFORMATION_MODEL.value] = _clean(
            {
                "sos_elements": [_element_tree(e) for e in im.sos_elements],
                "system_elements": [_element_tree(e) for e in im.system_elements],
                "relations": [
                    _clean(
                        {
                            "kind": r.kind.value,
                            "from": r.source,
                            "to": r.target,
                            "cardinality": r.cardinality.value if r.cardinality else None,
                        }
                    )
                    for r in im.relations
                ],
                "unrelated_sos_elements": list(im.unrelated_sos_elements),
            }
        )

    sr = view.shared_resources
    if sr is not None:
        models[ModelKind.SHARED_RESOURCES.value] = _clean(
            {
                "resources": [
                    _clean(
                        {
                            "name": r.name,
                            "kind": r.kind.value,
                            "acquisition": r.acquisition.value,
                            "insufficient_behavior": r.insufficient_behavior,
                        }
                    )
                    for r in sr.resources
                ],
                "usages": [
                    _clean(
                        {
                            "resource": u.resource,
                            "user": u.user,
                            "scope": u.user_scope.value,
                            "modes": sorted(m.value for m in u.modes),
                            "note": u.note,
                        }
                    )
                    for u in sr.usages
                ],
            }
        )

    dm = view.deployment
    if dm is not None:
        models[ModelKind.DEPLOYMENT.value] = _clean(
            {
                "nodes": [
                    _clean(
                        {
                            "name": n.name,
                            "kind": n.kind.value,
                            "provides": [_quantity_tree(q) for q in n.provides],
                        }
                    )
                    for n in dm.nodes
                ],
                "units": [
                    _clean(
                        {
                            "name": u.name,
                            "kind": u.kind.value,
                            "needs": [_quantity_tree(q) for q in u.needs],
                            "constraint": u.constraint_note,
                        }
                    )
                    for u in dm.units
                ],
                "allocations": [
                    {"unit": a.unit, "node": a.node} for a in dm.allocations
                ],
            }
        )

    return {"system": view.system_name, "models": models}


def _element_tree(elem: InformationElement) -> dict:
    return _clean(
        {
            "name": elem.name,
            "description": elem.description,
            "fields": [
                _clean(
                    {
                        "name": f.name,
                        "units": f.units,
                        "timeliness": f.timeliness,
                        "precision": f.precision,
                        "security_level": f.security_level,
                    }
                )
                for f in elem.data_fields
            ],
        }
    )


def _quantity_tree(q: ResourceQuantity) -> dict:
    return {"resource": q.resource, "amount": _number(q.amount), "unit": q.unit}


# ---------------------------------------------------------------------------
# Reading


class _SchemaError(Exception):
    pass


class _Reader:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []

    def fail(self, path: str, message: str) -> _SchemaError:
        self.diagnostics.append(
            Diagnostic(Severity.ERROR, "E-IX-SCHEMA", f"at {path}: {message}")
        )
        return _SchemaError()

    def map_of(self, value: Any, path: str, allowed: set[str], required: set[str]) -> dict:
        if not isinstance(value, dict):
            raise self.fail(path, f"expected an object, got {type(value).__name__}")
        unknown = sorted(set(value) - allowed)
        if unknown:
            raise self.fail(path, f"unknown keys: {', '.join(unknown)}")
        missing = sorted(required - set(value))
        if missing:
            raise self.fail(f"{path}/{missing[0]}", "required key is missing")
        return value

    def string(self, value: Any, path: str) -> str:
        if not isinstance(value, str):
            raise self.fail(path, f"expected a string, got {type(value).__name__}")
        return value

    def opt_string(self, obj: dict, key: str, path: str) -> Optional[str]:
        if key not in obj:
            return None
        return self.string(obj[key], f"{path}/{key}")

    def boolean(self, obj: dict, key: str, path: str) -> bool:
        if key not in obj:
            return False
        value = obj[key]
        if not isinstance(value, bool):
            raise self.fail(f"{path}/{key}", "expected a boolean")
        return value

    def number(self, value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(path, f"expected a number, got {type(value).__name__}")
        if not math.isfinite(value):
            raise self.fail(path, "expected a finite number")
        return float(value)

    def array(self, obj: dict, key: str, path: str) -> list[tuple[Any, str]]:
        if key not in obj:
            return []
        value = obj[key]
        if not isinstance(value, list):
            raise self.fail(f"{path}/{key}", "expected an array")
        return [(item, f"{path}/{key}/{i}") for i, item in enumerate(value)]

    def enum(self, enum_cls, value: Any, path: str):
        text = self.string(value, path)
        for member in enum_cls:
            if member.value == text:
                return member
        options = ", ".join(m.value for m in enum_cls)
        raise self.fail(path, f"bad value {text!r}; expected one of: {options}")

    def opt_enum(self, enum_cls, obj: dict, key: str, path: str, default=None):
        if key not in obj:
            return default
        return self.enum(enum_cls, obj[key], f"{path}/{key}")

    def string_list(self, obj: dict, key: str, path: str) -> list[str]:
        return [self.string(item, p) for item, p in self.array(obj, key, path)]


def from_interchange(tree: Any, origin: str = "<interchange>") -> ParseOutcome:
    """Build a view from an interchange tree; schema and invariant
    violations are returned as diagnostics, never raised."""
    reader = _Reader()
    view: Optional[ArchitectureView] = None
    try:
        view = _read_view(reader, tree)
    except _SchemaError:
        view = None

    diags = reader.diagnostics
    if view is not None:
        diags = diags + validate(view)
    diags = sorted_diagnostics(diags)
    if any(d.severity is Severity.ERROR for d in diags):
        return ParseOutcome(None, tuple(diags))
    return ParseOutcome(view, tuple(diags))


def _read_view(r: _Reader, tree: Any) -> ArchitectureView:
    root = r.map_of(tree, "/", {"system", "models"}, {"system"})
    system = r.string(root["system"], "/system")
    if not system.strip():
        raise r.fail("/system", "system name is empty")

    kind_values = {k.value for k in ModelKind}
    models_raw = root.get("models", {})
    models_obj = r.map_of(models_raw, "/models", kind_values, set())

    readers = {
        ModelKind.STAKEHOLDERS: _read_stakeholders,
        ModelKind.EXECUTION_CONTEXT: _read_execution_context,
        ModelKind.CODE_CONTEXT: _read_code_context,
        ModelKind.INFORMATION_MODEL: _read_information_model,
        ModelKind.SHARED_RESOURCES: _read_shared_resources,
        ModelKind.DEPLOYMENT: _read_deployment,
    }
    built: dict[ModelKind, Any] = {}
    for kind, read in readers.items():
        if kind.value in models_obj:
            # one bad model should not hide problems in the others
            try:
                built[kind] = read(r, models_obj[kind.value], f"/models/{kind.value}")
            except _SchemaError:
                continue

    return ArchitectureView(
        system_name=system,
        stakeholder_model=built.get(ModelKind.STAKEHOLDERS),
        execution_context=built.get(ModelKind.EXECUTION_CONTEXT),
        code_context=built.get(ModelKind.CODE_CONTEXT),
        information_model=built.get(ModelKind.INFORMATION_MODEL),
        shared_resources=built.get(ModelKind.SHARED_RESOURCES),
        deployment=built.get(ModelKind.DEPLOYMENT),
    )


def _read_stakeholders(r: _Reader, tree: Any, path: str) -> StakeholderConcernModel:
    obj = r.map_of(
        tree,
        path,
        {"stakeholders", "concerns", "has_concern", "excluded_stakeholders", "unaddressed_concerns"},
        set(),
    )
    stakeholders = []
    for item, p in r.array(obj, "stakeholders", path):
        entry = r.map_of(item, p, {"name", "role_note"}, {"name"})
        stakeholders.append(Stakeholder(r.string(entry["name"], f"{p}/name"), r.opt_string(entry, "role_note", p)))
    concerns = []
    for item, p in r.array(obj, "concerns", path):
        entry = r.map_of(item, p, {"id", "description", "source_tag", "catalog_ids"}, {"id", "description"})
        concerns.append(
            Concern(
                r.string(entry["id"], f"{p}/id"),
                r.string(entry["description"], f"{p}/description"),
                r.opt_string(entry, "source_tag", p),
                frozenset(r.string_list(entry, "catalog_ids", p)),
            )
        )
    has_pairs = []
    for item, p in r.array(obj, "has_concern", path):
        entry = r.map_of(item, p, {"stakeholder", "concern"}, {"stakeholder", "concern"})
        has_pairs.append(
            (r.string(entry["stakeholder"], f"{p}/stakeholder"), r.string(entry["concern"], f"{p}/concern"))
        )
    return StakeholderConcernModel(
        tuple(stakeholders),
        tuple(concerns),
        tuple(has_pairs),
        tuple(r.string_list(obj, "excluded_stakeholders", path)),
        tuple(r.string_list(obj, "unaddressed_concerns", path)),
    )


def _read_execution_context(r: _Reader, tree: Any, path: str) -> ExecutionTimeContextModel:
    obj = r.map_of(
        tree, path, {"externals", "interactions", "startup_note", "monitoring_note"}, set()
    )
    externals = []
    for item, p in r.array(obj, "externals", path):
        entry = r.map_of(item, p, {"name", "category"}, {"name"})
        externals.append(
            External(
                r.string(entry["name"], f"{p}/name"),
                r.opt_enum(ExternalCategory, entry, "category", p, ExternalCategory.APPLICATION),
            )
        )
    interactions = []
    for item, p in r.array(obj, "interactions", path):
        entry = r.map_of(
            item,
            p,
            {
                "interface",
                "external",
                "external_interface",
                "kind",
                "data_direction",
                "protocol",
                "direction",
                "required_at_startup",
            },
            {"interface", "external", "kind", "direction"},
        )
        interactions.append(
            Interaction(
                self_interface=r.string(entry["interface"], f"{p}/interface"),
                external=r.string(entry["external"], f"{p}/external"),
                external_interface=r.opt_string(entry, "external_interface", p),
                kind=r.enum(InteractionKind, entry["kind"], f"{p}/kind"),
                data_direction=r.opt_enum(DataDirection, entry, "data_direction", p),
                protocol=r.opt_string(entry, "protocol", p),
                direction=r.enum(InteractionDirection, entry["direction"], f"{p}/direction"),
                required_at_startup=r.boolean(entry, "required_at_startup", p),
            )
        )
    return ExecutionTimeContextModel(
        tuple(externals),
        tuple(interactions),
        r.opt_string(obj, "startup_note", path),
        r.opt_string(obj, "monitoring_note", path),
    )


def _read_code_context(r: _Reader, tree: Any, path: str) -> CodeContextModel:
    obj = r.map_of(tree, path, {"modules", "evolution_assumptions"}, set())
    modules = []
    for item, p in r.array(obj, "modules", path):
        entry = r.map_of(
            item,
            p,
            {"name", "dependency_types", "version", "source", "category", "note"},
            {"name", "dependency_types", "category"},
        )
        deps = [
            r.enum(DependencyType, value, vp)
            for value, vp in r.array(entry, "dependency_types", p)
        ]
        modules.append(
            ExternalModule(
                name=r.string(entry["name"], f"{p}/name"),
                dependency_types=frozenset(deps),
                category=r.enum(ModuleCategory, entry["category"], f"{p}/category"),
                version=r.opt_string(entry, "version", p) or "unspecified",
                source_kind=r.opt_enum(SourceKind, entry, "source", p, SourceKind.UNSPECIFIED),
                note=r.opt_string(entry, "note", p),
            )
        )
    return CodeContextModel(tuple(modules), tuple(r.string_list(obj, "evolution_assumptions", path)))


def _read_element(r: _Reader, item: Any, p: str) -> InformationElement:
    entry = r.map_of(item, p, {"name", "description", "fields"}, {"name"})
    fields = []
    for f_item, fp in r.array(entry, "fields", p):
        f_entry = r.map_of(
            f_item, fp, {"name", "units", "timeliness", "precision", "security_level"}, {"name"}
        )
        fields.append(
            DataField(
                r.string(f_entry["name"], f"{fp}/name"),
                r.opt_string(f_entry, "units", fp),
                r.opt_string(f_entry, "timeliness", fp),
                r.opt_string(f_entry, "precision", fp),
                r.opt_string(f_entry, "security_level", fp),
            )
        )
    return InformationElement(
        r.string(entry["name"], f"{p}/name"), r.opt_string(entry, "description", p), tuple(fields)
    )


def _read_information_model(r: _Reader, tree: Any, path: str) -> InterfaceInformationModel:
    obj = r.map_of(
        tree, path, {"sos_elements", "system_elements", "relations", "unrelated_sos_elements"}, set()
    )
    sos = [_read_element(r, item, p) for item, p in r.array(obj, "sos_elements", path)]
    system = [_read_element(r, item, p) for item, p in r.array(obj, "system_elements", path)]
    relations = []
    for item, p in r.array(obj, "relations", path):
        entry = r.map_of(item, p, {"kind", "from", "to", "cardinality"}, {"kind", "from", "to"})
        relations.append(
            InfoRelation(
                r.enum(RelationKind, entry["kind"], f"{p}/kind"),
                r.string(entry["from"], f"{p}/from"),
                r.string(entry["to"], f"{p}/to"),
                r.opt_enum(Cardinality, entry, "cardinality", p),
            )
        )
    return InterfaceInformationModel(
        tuple(sos),
        tuple(system),
        tuple(relations),
        tuple(r.string_list(obj, "unrelated_sos_elements", path)),
    )


def _read_shared_resources(r: _Reader, tree: Any, path: str) -> SharedResourceModel:
    obj = r.map_of(tree, path, {"resources", "usages"}, set())
    resources = []
    for item, p in r.array(obj, "resources", path):
        entry = r.map_of(
            item, p, {"name", "kind", "acquisition", "insufficient_behavior"}, {"name", "kind"}
        )
        resources.append(
            Resource(
                r.string(entry["name"], f"{p}/name"),
                r.enum(ResourceKind, entry["kind"], f"{p}/kind"),
                r.opt_enum(Acquisition, entry, "acquisition", p, Acquisition.UNSPECIFIED),
                r.opt_string(entry, "insufficient_behavior", p),
            )
        )
    usages = []
    for item, p in r.array(obj, "usages", path):
        entry = r.map_of(item, p, {"resource", "user", "scope", "modes", "note"}, {"resource", "user", "scope", "modes"})
        modes = [r.enum(UsageMode, value, vp) for value, vp in r.array(entry, "modes", p)]
        usages.append(
            ResourceUsage(
                r.string(entry["resource"], f"{p}/resource"),
                r.string(entry["user"], f"{p}/user"),
                r.enum(UserScope, entry["scope"], f"{p}/scope"),
                frozenset(modes),
                r.opt_string(entry, "note", p),
            )
        )
    return SharedResourceModel(tuple(resources), tuple(usages))


def _read_quantity(r: _Reader, item: Any, p: str) -> ResourceQuantity:
    entry = r.map_of(item, p, {"resource", "amount", "unit"}, {"resource", "amount", "unit"})
    return ResourceQuantity(
        r.string(entry["resource"], f"{p}/resource"),
        r.number(entry["amount"], f"{p}/amount"),
        r.string(entry["unit"], f"{p}/unit"),
    )


def _read_deployment(r: _Reader, tree: Any, path: str) -> DeploymentModel:
    obj = r.map_of(tree, path, {"nodes", "units", "allocations"}, set())
    nodes = []
    for item, p in r.array(obj, "nodes", path):
        entry = r.map_of(item, p, {"name", "kind", "provides"}, {"name", "kind"})
        provides = [_read_quantity(r, q, qp) for q, qp in r.array(entry, "provides", p)]
        nodes.append(
            DeploymentNode(
                r.string(entry["name"], f"{p}/name"),
                r.enum(NodeKind, entry["kind"], f"{p}/kind"),
                tuple(provides),
            )
        )
    units = []
    for item, p in r.array(obj, "units", path):
        entry = r.map_of(item, p, {"name", "kind", "needs", "constraint"}, {"name", "kind"})
        needs = [_read_quantity(r, q, qp) for q, qp in r.array(entry, "needs", p)]
        units.append(
            DeploymentUnit(
                r.string(entry["name"], f"{p}/name"),
                r.enum(UnitKind, entry["kind"], f"{p}/kind"),
                tuple(needs),
                r.opt_string(entry, "constraint", p),
            )
        )
    allocations = []
    for item, p in r.array(obj, "allocations", path):
        entry = r.map_of(item, p, {"unit", "node"}, {"unit", "node"})
        allocations.append(
            Allocation(r.string(entry["unit"], f"{p}/unit"), r.string(entry["node"], f"{p}/node"))
        )
    return DeploymentModel(tuple(nodes), tuple(units), tuple(allocations))
