"""Domain types for the six model kinds and the per-system view container.

Every type is an immutable value: collections are canonically ordered at
construction (sorted by stable keys), so two views built from the same
declarations compare equal regardless of input order, and equality ignores
source spans (which live only in the view's ``origin``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .diagnostics import SourceSpan


class ModelKind(Enum):
    STAKEHOLDERS = "stakeholders"
    EXECUTION_CONTEXT = "execution-context"
    CODE_CONTEXT = "code-context"
    INFORMATION_MODEL = "information-model"
    SHARED_RESOURCES = "shared-resources"
    DEPLOYMENT = "deployment"


MODEL_KIND_ORDER: tuple[ModelKind, ...] = (
    ModelKind.STAKEHOLDERS,
    ModelKind.EXECUTION_CONTEXT,
    ModelKind.CODE_CONTEXT,
    ModelKind.INFORMATION_MODEL,
    ModelKind.SHARED_RESOURCES,
    ModelKind.DEPLOYMENT,
)


class ExternalCategory(Enum):
    APPLICATION = "application"
    PLATFORM = "platform"


class InteractionKind(Enum):
    MESSAGE = "message"
    CALL_RETURN = "call-return"
    DATA_EXCHANGE = "data-exchange"
    INTERRUPT = "interrupt"
    SYNCHRONIZATION = "synchronization"


class DataDirection(Enum):
    READ = "read"
    WRITE = "write"
    READ_WRITE = "read-write"


class InteractionDirection(Enum):
    CONSTITUENT_INITIATED = "constituent-initiated"
    EXTERNAL_INITIATED = "external-initiated"


class DependencyType(Enum):
    CODE_GENERATION = "code-generation"
    BUILD = "build"
    UNIT_TEST = "unit-test"
    INTEGRATION_TEST = "integration-test"


class SourceKind(Enum):
    FOSS = "FOSS"
    COTS = "COTS"
    GOTS = "GOTS"
    INTERNAL = "internal"
    UNSPECIFIED = "unspecified"


class ModuleCategory(Enum):
    LIBRARY = "library"
    PACKAGE = "package"
    TOOL = "tool"
    PLATFORM = "platform"


class RelationKind(Enum):
    ASSOCIATION = "association"
    SPECIALIZATION = "specialization"
    AGGREGATION = "aggregation"


class Cardinality(Enum):
    ONE_ONE = "one-one"
    ONE_MANY = "one-many"
    MANY_MANY = "many-many"


class ResourceKind(Enum):
    CPU = "cpu"
    MEMORY = "memory"
    DISK = "disk"
    NETWORK_INTERFACE = "network-interface"
    NETWORK_BANDWIDTH = "network-bandwidth"
    FILE = "file"
    DATABASE = "database"
    VIRTUAL_INFRASTRUCTURE = "virtual-infrastructure"
    DISPLAY = "display"
    RADIO_FREQUENCY = "radio-frequency"
    ANTENNA = "antenna"
    OTHER = "other"


class Acquisition(Enum):
    EXPLICIT = "explicit"
    IMPLICIT = "implicit"
    UNSPECIFIED = "unspecified"


class UsageMode(Enum):
    ACQUIRES = "acquires"
    RELEASES = "releases"
    CONSUMES = "consumes"
    READS = "reads"
    WRITES = "writes"


class UserScope(Enum):
    CONSTITUENT = "constituent"
    EXTERNAL = "external"


class NodeKind(Enum):
    COMPUTER = "computer"
    NETWORK = "network"


class UnitKind(Enum):
    PROCESS = "process"
    SERVICE = "service"
    APPLICATION = "application"
    TASK = "task"
    OTHER = "other"


class Quality(Enum):
    PERFORMANCE = "performance"
    SECURITY = "security"
    TESTABILITY = "testability"
    MODIFIABILITY = "modifiability"
    AVAILABILITY = "availability"
    USABILITY = "usability"
    CONTEXT = "context"


class StakeholderRole(Enum):
    SOS_ARCHITECT = "sos-architect"
    PROGRAM_MANAGER = "program-manager"
    DEVELOPER = "developer"
    TESTER_INTEGRATOR = "tester-integrator"


def _tup(items: Iterable, key=None) -> tuple:
    return tuple(sorted(items, key=key))


# --------------------------------------------------------------------------
# Stakeholders / concerns


@dataclass(frozen=True)
class Stakeholder:
    name: str
    role_note: Optional[str] = None


@dataclass(frozen=True)
class Concern:
    """One stakeholder concern, optionally cross-referenced to the catalog."""

    id: str
    description: str
    source_tag: Optional[str] = None
    catalog_ids: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "catalog_ids", frozenset(self.catalog_ids))


@dataclass(frozen=True)
class StakeholderConcernModel:
    stakeholders: tuple[Stakeholder, ...] = ()
    concerns: tuple[Concern, ...] = ()
    has_concern: tuple[tuple[str, str], ...] = ()
    excluded_stakeholders: tuple[str, ...] = ()
    unaddressed_concerns: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "stakeholders", _tup(self.stakeholders, key=lambda s: s.name))
        object.__setattr__(self, "concerns", _tup(self.concerns, key=lambda c: c.id))
        object.__setattr__(self, "has_concern", _tup(tuple(p) for p in self.has_concern))
        object.__setattr__(self, "excluded_stakeholders", _tup(self.excluded_stakeholders))
        object.__setattr__(self, "unaddressed_concerns", _tup(self.unaddressed_concerns))

    def is_empty(self) -> bool:
        return not self.stakeholders

    def concerns_of(self, stakeholder: str) -> tuple[str, ...]:
        return tuple(c for s, c in self.has_concern if s == stakeholder)


# --------------------------------------------------------------------------
# Execution-time context


@dataclass(frozen=True)
class External:
    name: str
    category: ExternalCategory = ExternalCategory.APPLICATION


@dataclass(frozen=True)
class Interaction:
    """One execution-time interaction between a constituent interface and an
    external system. The same interface may interact with many externals and
    vice versa; exact duplicates are rejected at validation."""

    self_interface: str
    external: str
    kind: InteractionKind
    direction: InteractionDirection
    external_interface: Optional[str] = None
    data_direction: Optional[DataDirection] = None
    protocol: Optional[str] = None
    required_at_startup: bool = False

    def identity(self) -> tuple:
        return (
            self.self_interface,
            self.external,
            self.external_interface or "",
            self.kind.value,
            self.direction.value,
            self.data_direction.value if self.data_direction else "",
            self.protocol or "",
            self.required_at_startup,
        )


@dataclass(frozen=True)
class ExecutionTimeContextModel:
    externals: tuple[External, ...] = ()
    interactions: tuple[Interaction, ...] = ()
    startup_sequence_note: Optional[str] = None
    monitoring_note: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "externals", _tup(self.externals, key=lambda e: e.name))
        object.__setattr__(self, "interactions", _tup(self.interactions, key=lambda i: i.identity()))

    def is_empty(self) -> bool:
        return not self.externals


# --------------------------------------------------------------------------
# Code context


@dataclass(frozen=True)
class ExternalModule:
    name: str
    dependency_types: frozenset[DependencyType]
    category: ModuleCategory
    version: str = "unspecified"
    source_kind: SourceKind = SourceKind.UNSPECIFIED
    note: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "dependency_types", frozenset(self.dependency_types))


@dataclass(frozen=True)
class CodeContextModel:
    external_modules: tuple[ExternalModule, ...] = ()
    evolution_assumptions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "external_modules", _tup(self.external_modules, key=lambda m: m.name))
        object.__setattr__(self, "evolution_assumptions", _tup(self.evolution_assumptions))

    def is_empty(self) -> bool:
        return not self.external_modules


# --------------------------------------------------------------------------
# Interface information model


@dataclass(frozen=True)
class DataField:
    name: str
    units: Optional[str] = None
    timeliness: Optional[str] = None
    precision: Optional[str] = None
    security_level: Optional[str] = None


@dataclass(frozen=True)
class InformationElement:
    name: str
    description: Optional[str] = None
    data_fields: tuple[DataField, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "data_fields", _tup(self.data_fields, key=lambda f: f.name))

    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.data_fields)


@dataclass(frozen=True)
class InfoRelation:
    kind: RelationKind
    source: str
    target: str
    cardinality: Optional[Cardinality] = None

    def identity(self) -> tuple:
        return (
            self.kind.value,
            self.source,
            self.target,
            self.cardinality.value if self.cardinality else "",
        )


@dataclass(frozen=True)
class InterfaceInformationModel:
    sos_elements: tuple[InformationElement, ...] = ()
    system_elements: tuple[InformationElement, ...] = ()
    relations: tuple[InfoRelation, ...] = ()
    unrelated_sos_elements: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sos_elements", _tup(self.sos_elements, key=lambda e: e.name))
        object.__setattr__(self, "system_elements", _tup(self.system_elements, key=lambda e: e.name))
        object.__setattr__(self, "relations", _tup(self.relations, key=lambda r: r.identity()))
        object.__setattr__(self, "unrelated_sos_elements", _tup(self.unrelated_sos_elements))

    def is_empty(self) -> bool:
        return not self.sos_elements and not self.system_elements

    def find_element(self, name: str) -> Optional[InformationElement]:
        """System-scope elements shadow same-named SoS-scope elements."""
        for elem in self.system_elements:
            if elem.name == name:
                return elem
        for elem in self.sos_elements:
            if elem.name == name:
                return elem
        return None


# --------------------------------------------------------------------------
# Shared resources


@dataclass(frozen=True)
class Resource:
    name: str
    kind: ResourceKind
    acquisition: Acquisition = Acquisition.UNSPECIFIED
    insufficient_behavior: Optional[str] = None


@dataclass(frozen=True)
class ResourceUsage:
    resource: str
    user: str
    user_scope: UserScope
    modes: frozenset[UsageMode]
    note: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", frozenset(self.modes))

    def identity(self) -> tuple:
        return (
            self.resource,
            self.user,
            self.user_scope.value,
            tuple(sorted(m.value for m in self.modes)),
            self.note or "",
        )


@dataclass(frozen=True)
class SharedResourceModel:
    resources: tuple[Resource, ...] = ()
    usages: tuple[ResourceUsage, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "resources", _tup(self.resources, key=lambda r: r.name))
        object.__setattr__(self, "usages", _tup(self.usages, key=lambda u: u.identity()))

    def is_empty(self) -> bool:
        return not self.resources


# --------------------------------------------------------------------------
# Deployment


@dataclass(frozen=True)
class ResourceQuantity:
    """An amount of a named execution resource; unit text is free-form and
    compared only for exact equality (no unit conversion)."""

    resource: str
    amount: float
    unit: str

    def __post_init__(self) -> None:
        value = float(self.amount)
        if not math.isfinite(value):
            raise ValueError("quantity amounts must be finite")
        object.__setattr__(self, "amount", value)


@dataclass(frozen=True)
class DeploymentNode:
    name: str
    kind: NodeKind
    provides: tuple[ResourceQuantity, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "provides", _tup(self.provides, key=lambda q: q.resource))


@dataclass(frozen=True)
class DeploymentUnit:
    name: str
    kind: UnitKind
    needs: tuple[ResourceQuantity, ...] = ()
    constraint_note: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "needs", _tup(self.needs, key=lambda q: q.resource))


@dataclass(frozen=True)
class Allocation:
    unit: str
    node: str


@dataclass(frozen=True)
class DeploymentModel:
    nodes: tuple[DeploymentNode, ...] = ()
    units: tuple[DeploymentUnit, ...] = ()
    allocations: tuple[Allocation, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", _tup(self.nodes, key=lambda n: n.name))
        object.__setattr__(self, "units", _tup(self.units, key=lambda u: u.name))
        object.__setattr__(self, "allocations", _tup(self.allocations, key=lambda a: (a.unit, a.node)))

    def is_empty(self) -> bool:
        return not self.nodes


AnyModel = Union[
    StakeholderConcernModel,
    ExecutionTimeContextModel,
    CodeContextModel,
    InterfaceInformationModel,
    SharedResourceModel,
    DeploymentModel,
]


# --------------------------------------------------------------------------
# View container


SpanKey = tuple[str, ...]


@dataclass(frozen=True)
class ViewOrigin:
    """Where a view came from: file path plus a span table keyed by
    declaration identity. Programmatically built views have no origin."""

    file: str
    spans: Mapping[SpanKey, SourceSpan] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "spans", MappingProxyType(dict(self.spans)))


@dataclass(frozen=True)
class ArchitectureView:
    """One constituent system's documentation: up to six typed models."""

    system_name: str
    stakeholder_model: Optional[StakeholderConcernModel] = None
    execution_context: Optional[ExecutionTimeContextModel] = None
    code_context: Optional[CodeContextModel] = None
    information_model: Optional[InterfaceInformationModel] = None
    shared_resources: Optional[SharedResourceModel] = None
    deployment: Optional[DeploymentModel] = None
    origin: Optional[ViewOrigin] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.system_name.strip():
            raise ValueError("system_name must be non-empty")

    def model(self, kind: ModelKind) -> Optional[AnyModel]:
        return {
            ModelKind.STAKEHOLDERS: self.stakeholder_model,
            ModelKind.EXECUTION_CONTEXT: self.execution_context,
            ModelKind.CODE_CONTEXT: self.code_context,
            ModelKind.INFORMATION_MODEL: self.information_model,
            ModelKind.SHARED_RESOURCES: self.shared_resources,
            ModelKind.DEPLOYMENT: self.deployment,
        }[kind]

    @property
    def models_present(self) -> frozenset[ModelKind]:
        return frozenset(k for k in MODEL_KIND_ORDER if self.model(k) is not None)

    @property
    def non_empty_kinds(self) -> frozenset[ModelKind]:
        """Kinds whose model is present and has at least one primary element
        (stakeholder, external, module, information element, resource, node)."""
        present = []
        for kind in MODEL_KIND_ORDER:
            model = self.model(kind)
            if model is not None and not model.is_empty():
                present.append(kind)
        return frozenset(present)

    def with_model(self, kind: ModelKind, model: Optional[AnyModel]) -> "ArchitectureView":
        slots = {
            ModelKind.STAKEHOLDERS: "stakeholder_model",
            ModelKind.EXECUTION_CONTEXT: "execution_context",
            ModelKind.CODE_CONTEXT: "code_context",
            ModelKind.INFORMATION_MODEL: "information_model",
            ModelKind.SHARED_RESOURCES: "shared_resources",
            ModelKind.DEPLOYMENT: "deployment",
        }
        kwargs = {slot: self.model(k) for k, slot in slots.items()}
        kwargs[slots[kind]] = model
        return ArchitectureView(system_name=self.system_name, origin=self.origin, **kwargs)


def empty_view(system_name: str) -> ArchitectureView:
    """A view with all six model slots absent; rejects blank names."""
    return ArchitectureView(system_name=system_name)
