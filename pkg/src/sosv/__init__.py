"""Tooling for documenting constituent systems of a system of systems.

A textual modeling language (`.sosv`) for six model kinds, a validator for
every metamodel constraint, concern-coverage computation, SoS-level analyses,
deterministic renderers (Markdown, matrices, DOT, review instruments), and
scaffolding from Views-and-Beyond / DoDAF source inventories.
"""

from .analysis import (
    Conflict,
    ContentionMatrix,
    GapReport,
    MatchedField,
    UserRef,
    Workspace,
    deployment_capacity,
    information_gap,
    resource_contention,
    startup_order,
)
from .catalog import ConcernCatalog, ConcernEntry, catalog
from .diagnostics import Diagnostic, Location, Severity, SourceSpan
from .dsl import ParseOutcome, from_interchange, parse, serialize, to_interchange
from .errors import CycleError, SosvError
from .mappings import (
    Framework,
    KindTrace,
    SourceGap,
    SourceInventory,
    TraceabilityReport,
    registry,
    registry_ids,
    scaffold,
    source_gaps,
)
from .model import (
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
    Quality,
    RelationKind,
    Resource,
    ResourceKind,
    ResourceQuantity,
    ResourceUsage,
    SharedResourceModel,
    SourceKind,
    Stakeholder,
    StakeholderConcernModel,
    StakeholderRole,
    UnitKind,
    UsageMode,
    UserScope,
    ViewOrigin,
    empty_view,
)
from .render import (
    Matrix,
    Notation,
    ReviewStyle,
    contention_to_matrix,
    matrix_to_markdown,
    render_contention_markdown,
    render_dot,
    render_gap_markdown,
    render_markdown,
    render_review_instrument,
    render_sr_matrix,
    stakeholder_matrix,
)
from .validator import (
    CoverageEntry,
    CoverageReport,
    CoverageStatus,
    LINT_CODES,
    LintConfig,
    assumption_gaps,
    concern_coverage,
    correspondence_lints,
    coverage_findings,
    validate,
)

__version__ = "0.1.0"
