"""Diagnostics: severities, source locations, and the stable code registry."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True, order=True)
class Location:
    """A 1-based (file, line, column) position."""

    file: str
    line: int
    column: int


@dataclass(frozen=True)
class SourceSpan:
    """A contiguous region of one source file, 1-based and inclusive."""

    file: str
    start_line: int
    start_column: int
    end_line: int
    end_column: int

    def __post_init__(self) -> None:
        if (self.end_line, self.end_column) < (self.start_line, self.start_column):
            raise ValueError("span end precedes its start")

    @property
    def start(self) -> Location:
        return Location(self.file, self.start_line, self.start_column)


@dataclass(frozen=True)
class Diagnostic:
    """One validation/analysis finding with a stable machine-readable code."""

    severity: Severity
    code: str
    message: str
    location: Location | None = None
    related: tuple[Location, ...] = ()

    def __post_init__(self) -> None:
        if self.code not in CODE_REGISTRY:
            raise ValueError(f"unregistered diagnostic code: {self.code}")
        object.__setattr__(self, "related", tuple(self.related))

    def render(self) -> str:
        head = f"{self.severity.value}[{self.code}] {self.message}"
        if self.location is None:
            return head
        loc = self.location
        return f"{loc.file}:{loc.line}:{loc.column}: {head}"


def sort_key(diag: Diagnostic) -> tuple:
    """Deterministic ordering: location first, then code, then message."""
    if diag.location is None:
        return (0, "", 0, 0, diag.code, diag.message)
    loc = diag.location
    return (1, loc.file, loc.line, loc.column, diag.code, diag.message)


def sorted_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=sort_key)


# Registry of every code this package may emit, whether as a Diagnostic or as
# a SosvError. Constructing a Diagnostic with an unknown code raises, which
# keeps this table exhaustive by construction. Also published as
# docs/diagnostics.md.
CODE_REGISTRY: dict[str, str] = {
    # parse / structural errors
    "E-PARSE-SYNTAX": "Grammar violation: unexpected token, ill-formed string, "
    "unknown or duplicate property, missing required property, or a bad "
    "enumeration word.",
    "E-PARSE-DUP-SECTION": "The same model section is declared more than once "
    "in a view.",
    "E-DUP-NAME": "A name, id, or identical declaration row is declared more "
    "than once in its category.",
    "E-REF-UNDECLARED": "A declaration refers to a name that is not declared "
    "in its section.",
    "E-CATALOG-UNKNOWN": "A concern cross-reference names an id outside the "
    "built-in concern catalog.",
    "E-EMPTY-NAME": "A declared name is empty after trimming whitespace.",
    "E-EMPTY-SET": "A set that must be non-empty (dependency types, usage "
    "modes) is empty.",
    "E-DATA-DIRECTION": "data-direction is only meaningful on data-exchange "
    "interactions, and is required there.",
    "E-CARDINALITY": "cardinality is only meaningful on association "
    "relations, and is required there.",
    "E-INFO-CYCLE": "Specialization or aggregation relations form a cycle.",
    "E-INFO-UNRELATED": "An element is declared unrelated but participates in "
    "a relation with a system element.",
    "E-QTY-NEGATIVE": "A provided or needed resource quantity is negative.",
    "E-IX-SCHEMA": "An interchange document violates the interchange schema; "
    "the message carries a path into the tree.",
    # request errors (raised as SosvError, surfaced by the CLI)
    "E-COV-UNKNOWN-ID": "A coverage filter id is not in the concern catalog.",
    "E-LINT-UNKNOWN": "A lint configuration enables an unknown lint code.",
    "E-GAP-NO-ELEMENT": "Information-gap analysis was asked about an element "
    "the information model does not declare.",
    "E-RND-ABSENT": "Rendering was requested for a model that is absent (or, "
    "for Markdown notations, empty).",
    "E-RND-NOTATION": "The requested notation is not legal for the model kind.",
    "E-MAP-UNKNOWN-SOURCE": "A source inventory id is not in the framework's "
    "registry.",
    "E-STARTUP-CYCLE": "The startup dependency graph contains a cycle.",
    "E-WS-DUP-SYSTEM": "Two views in one workspace share a system name.",
    "E-DEP-ABSENT": "Capacity analysis requires a deployment model.",
    "E-IO": "An input file could not be read.",
    # warnings
    "W-COV-PARTIAL": "A concern is addressed by some but not all of the model "
    "kinds mapped to it.",
    "W-COV-UNCOVERED": "No model kind mapped to this concern is present and "
    "non-empty.",
    "W-XM-SR-UNDEPLOYED": "A constituent-scope shared-resource user component "
    "is not declared as a deployment unit.",
    "W-XM-STARTUP-UNDOC": "An interaction is required at startup but the "
    "execution context carries no startup sequence note.",
    "W-XM-MULTIWRITER": "Two or more external-scope users write one shared "
    "resource.",
    "W-DEP-OVERCOMMIT": "Allocated units need more of a resource than the "
    "node provides.",
    "W-DEP-UNPROVIDED": "An allocated unit needs a resource its node does not "
    "provide.",
    "W-DEP-UNIT-MISMATCH": "A need's unit text differs from the node's "
    "provided unit text; the need is excluded from capacity sums.",
    # info findings
    "I-ASSUME-INSUFFICIENT": "A shared resource does not document behavior "
    "when the resource is insufficient.",
    "I-ASSUME-EVOLUTION": "The code context lists no evolution assumptions "
    "for its external modules.",
    "I-ASSUME-MONITORING": "The execution context carries no monitoring note.",
}
