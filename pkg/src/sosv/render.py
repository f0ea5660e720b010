"""Renderers for the prescribed notations: Markdown lists/tables, matrices
(including the send/receive matrix), DOT diagrams, and review instruments.

Every renderer is deterministic: identical views yield byte-identical text.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .analysis import ContentionMatrix, GapReport
from .errors import SosvError
from .model import (
    ArchitectureView,
    ExternalCategory,
    InteractionDirection,
    ModelKind,
    UserScope,
)


class Notation(Enum):
    LIST = "list"
    TABLE = "table"
    MATRIX = "matrix"


class ReviewStyle(Enum):
    QUESTIONNAIRE = "questionnaire"
    CHECKLIST = "checklist"
    SUBJECTIVE = "subjective"
    ACTIVE = "active"


_NOTATIONS_BY_KIND: dict[Notation, frozenset[ModelKind]] = {
    Notation.TABLE: frozenset(ModelKind),
    Notation.LIST: frozenset(
        {ModelKind.STAKEHOLDERS, ModelKind.EXECUTION_CONTEXT, ModelKind.CODE_CONTEXT}
    ),
    Notation.MATRIX: frozenset({ModelKind.STAKEHOLDERS, ModelKind.EXECUTION_CONTEXT}),
}

_DOT_KINDS = frozenset(
    {
        ModelKind.EXECUTION_CONTEXT,
        ModelKind.CODE_CONTEXT,
        ModelKind.DEPLOYMENT,
        ModelKind.SHARED_RESOURCES,
    }
)

_TITLES = {
    ModelKind.STAKEHOLDERS: "Stakeholders and concerns",
    ModelKind.EXECUTION_CONTEXT: "Execution-time context",
    ModelKind.CODE_CONTEXT: "Code context",
    ModelKind.INFORMATION_MODEL: "Interface information model",
    ModelKind.SHARED_RESOURCES: "Shared resources",
    ModelKind.DEPLOYMENT: "Deployment",
}


@dataclass(frozen=True)
class Matrix:
    """A rectangular notation: row labels, column labels, text cells."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]  # row-major

    def __post_init__(self) -> None:
        if len(self.cells) != len(self.row_labels):
            raise ValueError("cell row count must equal row label count")
        for row in self.cells:
            if len(row) != len(self.col_labels):
                raise ValueError("cell column count must equal column label count")

    def cell(self, row: str, col: str) -> str:
        return self.cells[self.row_labels.index(row)][self.col_labels.index(col)]

    def non_empty(self) -> set[tuple[str, str, str]]:
        return {
            (r, c, self.cells[i][j])
            for i, r in enumerate(self.row_labels)
            for j, c in enumerate(self.col_labels)
            if self.cells[i][j]
        }


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ").replace("\r", " ")


def _md_table(headers: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(_md_escape(h) for h in headers) + " |"]
    lines.append("|" + "---|" * len(headers))
    for row in rows:
        lines.append("| " + " | ".join(_md_escape(cell) for cell in row) + " |")
    return lines


def matrix_to_markdown(matrix: Matrix, corner: str = "") -> str:
    headers = [corner] + list(matrix.col_labels)
    rows = [
        [label] + list(matrix.cells[i]) for i, label in enumerate(matrix.row_labels)
    ]
    return "\n".join(_md_table(headers, rows)) + "\n"


def _require_model(view: ArchitectureView, kind: ModelKind, allow_empty: bool):
    model = view.model(kind)
    if model is None:
        raise SosvError(
            "E-RND-ABSENT", f"view {view.system_name!r} has no {kind.value} model"
        )
    if not allow_empty and model.is_empty():
        raise SosvError(
            "E-RND-ABSENT", f"the {kind.value} model of {view.system_name!r} is empty"
        )
    return model


# ---------------------------------------------------------------------------
# Markdown


def render_markdown(view: ArchitectureView, kind: ModelKind, notation: Notation) -> str:
    """The named model in the requested notation. Markdown needs content, so
    an empty model is reported like an absent one."""
    if kind not in _NOTATIONS_BY_KIND[notation]:
        raise SosvError(
            "E-RND-NOTATION",
            f"notation {notation.value!r} is not defined for model kind {kind.value!r}",
        )
    model = _require_model(view, kind, allow_empty=False)

    title = f"# {view.system_name}: {_TITLES[kind]}"
    if notation is Notation.MATRIX:
        if kind is ModelKind.STAKEHOLDERS:
            body = matrix_to_markdown(stakeholder_matrix(view), corner="Stakeholder")
        else:
            body = matrix_to_markdown(render_sr_matrix(view), corner="Interface")
        return f"{title}\n\n{body}"

    emitters = {
        ModelKind.STAKEHOLDERS: _md_stakeholders,
        ModelKind.EXECUTION_CONTEXT: _md_execution_context,
        ModelKind.CODE_CONTEXT: _md_code_context,
        ModelKind.INFORMATION_MODEL: _md_information_model,
        ModelKind.SHARED_RESOURCES: _md_shared_resources,
        ModelKind.DEPLOYMENT: _md_deployment,
    }
    lines = emitters[kind](model, notation)
    return title + "\n\n" + "\n".join(lines) + "\n"


def _md_stakeholders(model, notation: Notation) -> list[str]:
    if notation is Notation.LIST:
        lines = []
        for s in model.stakeholders:
            concerns = ", ".join(model.concerns_of(s.name))
            suffix = f": {concerns}" if concerns else ""
            lines.append(f"- {_md_escape(s.name)}{suffix}")
        for name in model.excluded_stakeholders:
            lines.append(f"- excluded: {_md_escape(name)}")
        for text in model.unaddressed_concerns:
            lines.append(f"- unaddressed: {_md_escape(text)}")
        return lines

    lines = _md_table(
        ["Stakeholder", "Concerns"],
        [[s.name, ", ".join(model.concerns_of(s.name))] for s in model.stakeholders],
    )
    if model.concerns:
        lines += [""] + _md_table(
            ["Concern", "Description", "Source"],
            [[c.id, c.description, c.source_tag or ""] for c in model.concerns],
        )
    if model.excluded_stakeholders:
        lines += ["", "Considered but excluded: " + ", ".join(
            _md_escape(n) for n in model.excluded_stakeholders
        )]
    if model.unaddressed_concerns:
        lines += ["", "Identified but not addressed: " + ", ".join(
            _md_escape(n) for n in model.unaddressed_concerns
        )]
    return lines


def _md_execution_context(model, notation: Notation) -> list[str]:
    if notation is Notation.LIST:
        by_interface: dict[str, list[str]] = {}
        for i in model.interactions:
            target = i.external if not i.external_interface else f"{i.external} / {i.external_interface}"
            details = [i.kind.value, i.direction.value]
            if i.protocol:
                details.insert(0, i.protocol)
            by_interface.setdefault(i.self_interface, []).append(
                f"{target} ({', '.join(details)})"
            )
        lines = []
        for interface in sorted(by_interface):
            lines.append(f"- {_md_escape(interface)}:")
            for entry in by_interface[interface]:
                lines.append(f"  - {_md_escape(entry)}")
        isolated = sorted(
            {e.name for e in model.externals}
            - {i.external for i in model.interactions}
        )
        for name in isolated:
            lines.append(f"- (no interactions) {_md_escape(name)}")
        return lines

    rows = []
    for i in model.interactions:
        rows.append(
            [
                i.self_interface,
                i.external,
                i.external_interface or "",
                i.kind.value,
                i.direction.value,
                i.protocol or "",
                "yes" if i.required_at_startup else "",
            ]
        )
    lines = _md_table(
        ["Interface", "External system", "External interface", "Kind", "Direction", "Protocol", "Startup"],
        rows,
    )
    platform = [e.name for e in model.externals if e.category is ExternalCategory.PLATFORM]
    if platform:
        lines += ["", "Platform externals: " + ", ".join(_md_escape(n) for n in platform)]
    if model.startup_sequence_note:
        lines += ["", f"Startup: {_md_escape(model.startup_sequence_note)}"]
    if model.monitoring_note:
        lines += ["", f"Monitoring: {_md_escape(model.monitoring_note)}"]
    return lines


def _md_code_context(model, notation: Notation) -> list[str]:
    if notation is Notation.LIST:
        lines = []
        for m in model.external_modules:
            deps = ", ".join(sorted(t.value for t in m.dependency_types))
            lines.append(
                f"- {_md_escape(m.name)} ({m.category.value}, {m.source_kind.value}): {deps}"
            )
        for text in model.evolution_assumptions:
            lines.append(f"- evolution: {_md_escape(text)}")
        return lines

    lines = _md_table(
        ["Module", "Dependency types", "Version", "Source", "Category", "Note"],
        [
            [
                m.name,
                ", ".join(sorted(t.value for t in m.dependency_types)),
                m.version,
                m.source_kind.value,
                m.category.value,
                m.note or "",
            ]
            for m in model.external_modules
        ],
    )
    if model.evolution_assumptions:
        lines.append("")
        lines.append("Evolution assumptions:")
        for text in model.evolution_assumptions:
            lines.append(f"- {_md_escape(text)}")
    return lines


def _md_information_model(model, notation: Notation) -> list[str]:
    lines: list[str] = []

    def element_rows(elements) -> list[list[str]]:
        return [
            [e.name, e.description or "", ", ".join(e.field_names())] for e in elements
        ]

    if model.sos_elements:
        lines.append("## SoS elements")
        lines.append("")
        lines += _md_table(["Element", "Description", "Fields"], element_rows(model.sos_elements))
        lines.append("")
    if model.system_elements:
        lines.append("## System elements")
        lines.append("")
        lines += _md_table(["Element", "Description", "Fields"], element_rows(model.system_elements))
    if model.relations:
        lines.append("")
        lines.append("## Relations")
        lines.append("")
        lines += _md_table(
            ["Kind", "From", "To", "Cardinality"],
            [
                [r.kind.value, r.source, r.target, r.cardinality.value if r.cardinality else ""]
                for r in model.relations
            ],
        )
    if model.unrelated_sos_elements:
        lines.append("")
        lines.append(
            "SoS elements with no counterpart here: "
            + ", ".join(_md_escape(n) for n in model.unrelated_sos_elements)
        )
    return lines


def _md_shared_resources(model, notation: Notation) -> list[str]:
    lines = _md_table(
        ["Resource", "Kind", "Acquisition", "If insufficient"],
        [
            [r.name, r.kind.value, r.acquisition.value, r.insufficient_behavior or ""]
            for r in model.resources
        ],
    )
    if model.usages:
        lines.append("")
        lines += _md_table(
            ["Resource", "User", "Scope", "Modes", "Note"],
            [
                [
                    u.resource,
                    u.user,
                    u.user_scope.value,
                    ", ".join(sorted(m.value for m in u.modes)),
                    u.note or "",
                ]
                for u in model.usages
            ],
        )
    return lines


def _md_deployment(model, notation: Notation) -> list[str]:
    def quantities(qs) -> str:
        return "; ".join(
            f"{q.resource} {int(q.amount) if q.amount.is_integer() else q.amount} {q.unit}"
            for q in qs
        )

    lines = _md_table(
        ["Node", "Kind", "Provides"],
        [[n.name, n.kind.value, quantities(n.provides)] for n in model.nodes],
    )
    if model.units:
        lines.append("")
        lines += _md_table(
            ["Unit", "Kind", "Needs", "Constraint"],
            [
                [u.name, u.kind.value, quantities(u.needs), u.constraint_note or ""]
                for u in model.units
            ],
        )
    if model.allocations:
        lines.append("")
        lines += _md_table(
            ["Unit", "Executes on"],
            [[a.unit, a.node] for a in model.allocations],
        )
    return lines


# ---------------------------------------------------------------------------
# Matrices


def stakeholder_matrix(view: ArchitectureView) -> Matrix:
    """Rows per stakeholder, one column per concern, "x" where held."""
    model = _require_model(view, ModelKind.STAKEHOLDERS, allow_empty=True)
    rows = tuple(s.name for s in model.stakeholders)
    cols = tuple(c.id for c in model.concerns)
    held = set(model.has_concern)
    cells = tuple(
        tuple("x" if (row, col) in held else "" for col in cols) for row in rows
    )
    return Matrix(rows, cols, cells)


def render_sr_matrix(view: ArchitectureView) -> Matrix:
    """Send/receive matrix: rows are constituent interfaces, columns are
    (external system, external interface) pairs. "S" marks an interaction the
    constituent system initiates, "R" one it receives, "SR" both."""
    model = _require_model(view, ModelKind.EXECUTION_CONTEXT, allow_empty=True)

    def col_label(external: str, external_interface) -> str:
        return external if not external_interface else f"{external} / {external_interface}"

    sends: set[tuple[str, str]] = set()
    receives: set[tuple[str, str]] = set()
    rows_set: set[str] = set()
    cols_set: set[str] = set()
    for i in model.interactions:
        col = col_label(i.external, i.external_interface)
        rows_set.add(i.self_interface)
        cols_set.add(col)
        if i.direction is InteractionDirection.CONSTITUENT_INITIATED:
            sends.add((i.self_interface, col))
        else:
            receives.add((i.self_interface, col))

    rows = tuple(sorted(rows_set))
    cols = tuple(sorted(cols_set))
    cells = []
    for row in rows:
        line = []
        for col in cols:
            mark = ""
            if (row, col) in sends:
                mark += "S"
            if (row, col) in receives:
                mark += "R"
            line.append(mark)
        cells.append(tuple(line))
    return Matrix(rows, cols, tuple(cells))


def contention_to_matrix(contention: ContentionMatrix) -> Matrix:
    """A contention result as a renderable matrix: resource rows, user
    columns, mode abbreviations (first letters, e.g. "rw") in the cells."""
    cols = tuple(u.label() for u in contention.users)
    cells = []
    for resource in contention.resources:
        row = []
        for user in contention.users:
            modes = contention.modes(resource, user)
            row.append("".join(sorted(m.value[0] for m in modes)))
        cells.append(tuple(row))
    return Matrix(contention.resources, cols, tuple(cells))


def render_contention_markdown(contention: ContentionMatrix) -> str:
    lines = [matrix_to_markdown(contention_to_matrix(contention), corner="Resource").rstrip()]
    if contention.conflicts:
        lines += ["", "Conflicts:", ""]
        for conflict in contention.conflicts:
            users = ", ".join(u.label() for u in conflict.users)
            lines.append(f"- {_md_escape(conflict.resource)}: {users} ({conflict.reason})")
    return "\n".join(lines) + "\n"


def render_gap_markdown(report: GapReport) -> str:
    lines = [f"# Field coverage of element: {report.element}", ""]
    lines += _md_table(
        ["Required field", "Provided as", "Match"],
        [[m.required, m.matched, m.via] for m in report.matched]
        + [[name, "", "missing"] for name in report.missing],
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT


def _dq(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(view: ArchitectureView, kind: ModelKind) -> str:
    """A graphviz digraph for the context, code, deployment, or shared
    resource model, with the constituent system as a distinguished node.
    Node and edge statements are emitted in sorted order."""
    if kind not in _DOT_KINDS:
        raise SosvError(
            "E-RND-NOTATION", f"no DOT rendering is defined for model kind {kind.value!r}"
        )
    model = _require_model(view, kind, allow_empty=True)
    system = view.system_name

    nodes: list[str] = [f"{_dq(system)} [shape=box, style=bold];"]
    edges: list[str] = []

    if kind is ModelKind.EXECUTION_CONTEXT:
        for e in model.externals:
            attrs = " [shape=box, style=dashed]" if e.category is ExternalCategory.PLATFORM else ""
            nodes.append(f"{_dq(e.name)}{attrs};")
        for i in model.interactions:
            label = i.protocol or i.kind.value
            if i.direction is InteractionDirection.CONSTITUENT_INITIATED:
                src, dst = system, i.external
            else:
                src, dst = i.external, system
            edges.append(f"{_dq(src)} -> {_dq(dst)} [label={_dq(label)}];")
    elif kind is ModelKind.CODE_CONTEXT:
        for m in model.external_modules:
            nodes.append(f"{_dq(m.name)};")
            deps = ", ".join(sorted(t.value for t in m.dependency_types))
            edges.append(f"{_dq(system)} -> {_dq(m.name)} [label={_dq(deps)}];")
    elif kind is ModelKind.DEPLOYMENT:
        for n in model.nodes:
            nodes.append(f"{_dq(n.name)} [shape=box3d];")
        for u in model.units:
            nodes.append(f"{_dq(u.name)};")
            edges.append(f"{_dq(system)} -> {_dq(u.name)} [style=dotted];")
        for a in model.allocations:
            edges.append(f"{_dq(a.unit)} -> {_dq(a.node)} [label=\"executes on\"];")
    else:  # shared resources
        for r in model.resources:
            nodes.append(f"{_dq(r.name)} [shape=cylinder];")
        users = sorted({(u.user, u.user_scope) for u in model.usages}, key=lambda p: (p[0], p[1].value))
        for user, scope in users:
            nodes.append(f"{_dq(user)} [shape=box];")
            if scope is UserScope.CONSTITUENT:
                edges.append(f"{_dq(system)} -> {_dq(user)} [style=dotted];")
        for u in model.usages:
            modes = ", ".join(sorted(m.value for m in u.modes))
            edges.append(f"{_dq(u.user)} -> {_dq(u.resource)} [label={_dq(modes)}];")

    title = f"{view.system_name} {kind.value}"
    body = [f"  {line}" for line in sorted(set(nodes)) + sorted(set(edges))]
    return "\n".join([f"digraph {_dq(title)} {{", "  rankdir=LR;"] + body + ["}"]) + "\n"


# ---------------------------------------------------------------------------
# Review instruments


_PURPOSE_QUESTIONS = {
    ModelKind.STAKEHOLDERS: [
        "Who will be impacted by changes made so this system can join the SoS?",
        "Which concerns were identified but not addressed by the architecture?",
    ],
    ModelKind.EXECUTION_CONTEXT: [
        "Which runtime interactions constrain the order in which systems can be "
        "integrated or started?",
        "Which interactions would a change to this system's interfaces disturb?",
    ],
    ModelKind.CODE_CONTEXT: [
        "Which external modules constrain deployment or interoperation choices?",
        "What happens when an external module evolves ahead of this system?",
    ],
    ModelKind.INFORMATION_MODEL: [
        "Where do representations of shared concepts mismatch across systems?",
        "Which SoS information elements have no counterpart in this system?",
    ],
    ModelKind.SHARED_RESOURCES: [
        "Where could resource sharing degrade capacity, performance, or availability?",
        "Which resource-sharing approaches of this system could clash with others?",
    ],
    ModelKind.DEPLOYMENT: [
        "Which parts of the execution environment could be shared or virtualized?",
        "What does operating this system cost in hardware, software, and skills?",
    ],
}

_CHECKLIST_ITEMS = {
    ModelKind.STAKEHOLDERS: [
        "Every stakeholder has at least one concern recorded.",
        "Intentionally excluded stakeholders are listed.",
        "Unaddressed concerns are listed.",
    ],
    ModelKind.EXECUTION_CONTEXT: [
        "Every interaction names its interfaces on both sides where known.",
        "Every interaction records who initiates it.",
        "Startup behavior is documented.",
        "Monitoring and measurement behavior is documented.",
    ],
    ModelKind.CODE_CONTEXT: [
        "Every external module records its dependency types.",
        "Every external module records a version or key features.",
        "Evolution assumptions for external modules are recorded.",
    ],
    ModelKind.INFORMATION_MODEL: [
        "Element fields record units, timeliness, precision, and security level "
        "where applicable.",
        "SoS elements with no relationship to the system are explicitly identified.",
    ],
    ModelKind.SHARED_RESOURCES: [
        "Each resource records whether acquisition is explicit or implicit.",
        "Each resource records behavior when insufficient resources are available.",
    ],
    ModelKind.DEPLOYMENT: [
        "Every unit of execution is allocated to a node.",
        "Provided and needed quantities use comparable units.",
    ],
}


def render_review_instrument(view: ArchitectureView, styles: set[ReviewStyle]) -> str:
    """A Markdown review instrument over the present (non-empty) models.

    Active questions are instantiated with the view's own element names so a
    reviewer must consult the artifact to answer; the subjective style always
    emits exactly three blank numbered slots.
    """
    lines = [f"# Review instrument: {view.system_name}", ""]
    present = [k for k in _TITLES if k in view.non_empty_kinds]

    if ReviewStyle.QUESTIONNAIRE in styles:
        lines += ["## Questionnaire", ""]
        for kind in present:
            lines.append(f"### {_TITLES[kind]}")
            for q in _PURPOSE_QUESTIONS[kind]:
                lines.append(f"- {q}")
            lines.append("")

    if ReviewStyle.CHECKLIST in styles:
        lines += ["## Checklist", ""]
        for kind in present:
            lines.append(f"### {_TITLES[kind]}")
            for item in _CHECKLIST_ITEMS[kind]:
                lines.append(f"- [ ] {item}")
            lines.append("")

    if ReviewStyle.ACTIVE in styles:
        lines += ["## Active review", ""]
        number = 0

        def ask(question: str) -> None:
            nonlocal number
            number += 1
            lines.append(f"{number}. {question}")

        for kind in present:
            lines.append(f"### {_TITLES[kind]}")
            _active_questions(view, kind, ask)
            lines.append("")

    if ReviewStyle.SUBJECTIVE in styles:
        lines += [
            "## Subjective review",
            "",
            "Before reading further, record three questions you have about this "
            "system's architecture; answer them using the models afterwards.",
            "",
            "1. ________________________________________",
            "2. ________________________________________",
            "3. ________________________________________",
            "",
        ]

    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def _active_questions(view: ArchitectureView, kind: ModelKind, ask) -> None:
    model = view.model(kind)
    if kind is ModelKind.STAKEHOLDERS:
        for s in model.stakeholders:
            ask(f"Which concerns does stakeholder '{s.name}' hold, and which quality "
                "attributes do they trace to?")
    elif kind is ModelKind.EXECUTION_CONTEXT:
        seen = set()
        for i in model.interactions:
            pair = (i.self_interface, i.external)
            if pair in seen:
                continue
            seen.add(pair)
            ask(f"Which protocol is used on interface '{i.self_interface}' to interact "
                f"with '{i.external}', and who initiates the interaction?")
        named = {i.external for i in model.interactions}
        for e in model.externals:
            if e.name not in named:
                ask(f"How does the system interact with '{e.name}' at execution time?")
    elif kind is ModelKind.CODE_CONTEXT:
        for m in model.external_modules:
            ask(f"Which version of '{m.name}' does the system depend on, and for "
                "which dependency types?")
    elif kind is ModelKind.INFORMATION_MODEL:
        for e in list(model.system_elements) + list(model.sos_elements):
            ask(f"Which data fields does element '{e.name}' carry, and what are their "
                "units, timeliness, precision, and security levels?")
    elif kind is ModelKind.SHARED_RESOURCES:
        for r in model.resources:
            ask(f"Who shares resource '{r.name}', in which modes, and what happens "
                "when it is insufficient?")
    elif kind is ModelKind.DEPLOYMENT:
        for n in model.nodes:
            ask(f"Which units execute on node '{n.name}', and does their need fit "
                "what it provides?")
