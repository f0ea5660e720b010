"""The built-in 16-entry concern catalog.

Each entry maps one SoS-level concern about a constituent system to the model
kinds that answer it, to the quality attribute it traces to, and to the
stakeholder roles impacted. Ids are stable slugs; the entry order is the
canonical catalog order used by coverage reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SosvError
from .model import ModelKind, Quality, StakeholderRole

_K = ModelKind
_Q = Quality
_R = StakeholderRole

# Stakeholder roles impacted, per quality attribute. The SoS architect is
# concerned with every quality; context concerns reach all four roles.
QUALITY_STAKEHOLDERS: dict[Quality, frozenset[StakeholderRole]] = {
    _Q.PERFORMANCE: frozenset({_R.SOS_ARCHITECT, _R.PROGRAM_MANAGER}),
    _Q.SECURITY: frozenset({_R.SOS_ARCHITECT, _R.TESTER_INTEGRATOR, _R.PROGRAM_MANAGER}),
    _Q.TESTABILITY: frozenset({_R.SOS_ARCHITECT, _R.TESTER_INTEGRATOR}),
    _Q.MODIFIABILITY: frozenset({_R.SOS_ARCHITECT, _R.DEVELOPER}),
    _Q.AVAILABILITY: frozenset({_R.SOS_ARCHITECT, _R.TESTER_INTEGRATOR, _R.PROGRAM_MANAGER}),
    _Q.USABILITY: frozenset({_R.SOS_ARCHITECT}),
    _Q.CONTEXT: frozenset(StakeholderRole),
}


@dataclass(frozen=True)
class ConcernEntry:
    id: str
    description: str
    model_kinds: frozenset[ModelKind]
    quality: Quality

    @property
    def stakeholders(self) -> frozenset[StakeholderRole]:
        return QUALITY_STAKEHOLDERS[self.quality]


@dataclass(frozen=True)
class ConcernCatalog:
    entries: tuple[ConcernEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entries)

    def entry(self, concern_id: str) -> ConcernEntry:
        for e in self.entries:
            if e.id == concern_id:
                return e
        raise SosvError("E-COV-UNKNOWN-ID", f"unknown concern id: {concern_id!r}")

    def __contains__(self, concern_id: str) -> bool:
        return any(e.id == concern_id for e in self.entries)


def _entry(cid: str, desc: str, kinds: set[ModelKind], quality: Quality) -> ConcernEntry:
    return ConcernEntry(cid, desc, frozenset(kinds), quality)


_ENTRIES: tuple[ConcernEntry, ...] = (
    _entry(
        "shared-resources",
        "Shared resources: what is shared and how its use is shared",
        {_K.SHARED_RESOURCES, _K.EXECUTION_CONTEXT, _K.DEPLOYMENT},
        _Q.PERFORMANCE,
    ),
    _entry(
        "insufficient-resource-behavior",
        "Behavior when insufficient resources are available",
        {_K.SHARED_RESOURCES, _K.INFORMATION_MODEL, _K.EXECUTION_CONTEXT},
        _Q.PERFORMANCE,
    ),
    _entry(
        "authentication",
        "Authentication: where identities are validated and stored",
        {_K.INFORMATION_MODEL, _K.SHARED_RESOURCES, _K.EXECUTION_CONTEXT},
        _Q.SECURITY,
    ),
    _entry(
        "authorization",
        "Authorization: remote access to the system and its resources",
        {_K.INFORMATION_MODEL, _K.SHARED_RESOURCES, _K.EXECUTION_CONTEXT},
        _Q.SECURITY,
    ),
    _entry(
        "encryption",
        "Encryption: algorithms and key management",
        {_K.INFORMATION_MODEL, _K.SHARED_RESOURCES, _K.EXECUTION_CONTEXT},
        _Q.SECURITY,
    ),
    _entry(
        "startup-sequencing",
        "Execution-time dependencies: startup sequencing",
        {_K.EXECUTION_CONTEXT, _K.DEPLOYMENT},
        _Q.TESTABILITY,
    ),
    _entry(
        "fault-detection-logging",
        "Internal fault detection and logging",
        {_K.INFORMATION_MODEL, _K.EXECUTION_CONTEXT},
        _Q.TESTABILITY,
    ),
    _entry(
        "fault-recovery",
        "Fault recovery behavior visible to the rest of the SoS",
        {_K.EXECUTION_CONTEXT, _K.DEPLOYMENT},
        _Q.AVAILABILITY,
    ),
    _entry(
        "build-dependencies",
        "Build-time dependencies: COTS and FOSS assumptions",
        {_K.CODE_CONTEXT},
        _Q.MODIFIABILITY,
    ),
    _entry(
        "dev-environment-deps",
        "Development environment dependencies and working practices",
        {_K.CODE_CONTEXT, _K.DEPLOYMENT, _K.STAKEHOLDERS},
        _Q.MODIFIABILITY,
    ),
    _entry(
        "interface-variabilities",
        "Variabilities affecting interfaces",
        {_K.INFORMATION_MODEL},
        _Q.MODIFIABILITY,
    ),
    _entry(
        "decision-model",
        "Decision model: evolution and built-in variabilities",
        {_K.CODE_CONTEXT, _K.INFORMATION_MODEL},
        _Q.MODIFIABILITY,
    ),
    _entry(
        "configuration-dependencies",
        "Configuration dependencies among constituent systems",
        {_K.CODE_CONTEXT, _K.EXECUTION_CONTEXT, _K.INFORMATION_MODEL},
        _Q.USABILITY,
    ),
    _entry(
        "perceived-needs",
        "Perceived needs and constraints of the constituent system",
        {_K.STAKEHOLDERS},
        _Q.CONTEXT,
    ),
    _entry(
        "processes-cultures",
        "Processes, cultures, and working practices across organizations",
        {_K.STAKEHOLDERS},
        _Q.CONTEXT,
    ),
    _entry(
        "constituent-stakeholders",
        "Who the constituent system's stakeholders are",
        {_K.STAKEHOLDERS},
        _Q.CONTEXT,
    ),
)

_CATALOG = ConcernCatalog(_ENTRIES)


def catalog() -> ConcernCatalog:
    """The immutable built-in catalog (always the same instance)."""
    return _CATALOG
