"""SoS-level computations over one or more validated views.

Startup ordering, cross-system resource contention, interface-information
gap detection, and deployment capacity checks. All functions are pure;
callers are expected to validate views first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .diagnostics import Diagnostic, Location, Severity, sorted_diagnostics
from .errors import CycleError, SosvError
from .graphs import find_shortest_cycle
from .model import ArchitectureView, UsageMode


@dataclass(frozen=True)
class Workspace:
    """A named set of views standing for the SoS; system names are unique."""

    views: tuple[ArchitectureView, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "views", tuple(self.views))
        seen: set[str] = set()
        for view in self.views:
            if view.system_name in seen:
                raise SosvError(
                    "E-WS-DUP-SYSTEM",
                    f"duplicate system name in workspace: {view.system_name!r}",
                )
            seen.add(view.system_name)


# ---------------------------------------------------------------------------
# startup ordering


def startup_order(workspace: Workspace) -> list[str]:
    """Dependency-first startup order over systems and startup-required
    externals; ties broken by name. Raises CycleError on a cycle, reporting
    the shortest one.

    Every view contributes an edge system -> external for each interaction
    flagged required-at-startup (and only those); externals are matched to
    other systems by exact name.
    """
    nodes: set[str] = {v.system_name for v in workspace.views}
    edges: set[tuple[str, str]] = set()
    for view in workspace.views:
        if view.execution_context is None:
            continue
        for i in view.execution_context.interactions:
            if i.required_at_startup:
                nodes.add(i.external)
                edges.add((view.system_name, i.external))

    cycle = find_shortest_cycle(nodes, edges)
    if cycle is not None:
        raise CycleError(cycle)

    # Kahn with a min-heap: a node is ready once everything it depends on
    # (its outgoing edges) has been emitted
    dependents: dict[str, set[str]] = {n: set() for n in nodes}
    pending: dict[str, int] = {n: 0 for n in nodes}
    for depender, dependee in edges:
        dependents[dependee].add(depender)
        pending[depender] += 1

    ready = [n for n, count in pending.items() if count == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        current = heapq.heappop(ready)
        order.append(current)
        for depender in dependents[current]:
            pending[depender] -= 1
            if pending[depender] == 0:
                heapq.heappush(ready, depender)
    return order


# ---------------------------------------------------------------------------
# resource contention


@dataclass(frozen=True, order=True)
class UserRef:
    """A using component together with the system whose view declared it."""

    user: str
    system: str

    def label(self) -> str:
        return f"{self.user} ({self.system})"


@dataclass(frozen=True)
class Conflict:
    resource: str
    users: tuple[UserRef, ...]
    reason: str


@dataclass(frozen=True)
class ContentionMatrix:
    """Rows are resource names, columns are user components; each cell is
    the union of declared usage modes (lossless aggregation)."""

    resources: tuple[str, ...]
    users: tuple[UserRef, ...]
    cells: Mapping[tuple[str, UserRef], frozenset[UsageMode]]
    conflicts: tuple[Conflict, ...]

    def modes(self, resource: str, user: UserRef) -> frozenset[UsageMode]:
        return self.cells.get((resource, user), frozenset())

    def to_interchange(self) -> dict:
        return {
            "resources": list(self.resources),
            "users": [{"user": u.user, "system": u.system} for u in self.users],
            "cells": [
                {
                    "resource": resource,
                    "user": user.user,
                    "system": user.system,
                    "modes": sorted(m.value for m in self.modes(resource, user)),
                }
                for resource in self.resources
                for user in self.users
                if self.modes(resource, user)
            ],
            "conflicts": [
                {
                    "resource": c.resource,
                    "users": [u.label() for u in c.users],
                    "reason": c.reason,
                }
                for c in self.conflicts
            ],
        }


def resource_contention(workspace: Workspace) -> ContentionMatrix:
    """Resources matched across views by exact name; a conflict is two or
    more distinct users writing or acquiring one resource."""
    resources: set[str] = set()
    cells: dict[tuple[str, UserRef], set[UsageMode]] = {}
    for view in workspace.views:
        if view.shared_resources is None:
            continue
        for r in view.shared_resources.resources:
            resources.add(r.name)
        for usage in view.shared_resources.usages:
            user = UserRef(usage.user, view.system_name)
            cells.setdefault((usage.resource, user), set()).update(usage.modes)
            resources.add(usage.resource)

    users = tuple(sorted({user for _, user in cells}))
    conflicts = []
    hazard = {UsageMode.WRITES, UsageMode.ACQUIRES}
    for resource in sorted(resources):
        contenders = tuple(
            sorted(u for (res, u) in cells if res == resource and cells[(res, u)] & hazard)
        )
        if len(contenders) >= 2:
            conflicts.append(
                Conflict(
                    resource,
                    contenders,
                    f"{len(contenders)} users write or acquire this resource",
                )
            )

    return ContentionMatrix(
        resources=tuple(sorted(resources)),
        users=users,
        cells={key: frozenset(modes) for key, modes in cells.items()},
        conflicts=tuple(conflicts),
    )


# ---------------------------------------------------------------------------
# information gaps


@dataclass(frozen=True)
class MatchedField:
    required: str
    matched: str
    via: str  # "exact" | "normalized" | "alias"


@dataclass(frozen=True)
class GapReport:
    element: str
    required_fields: tuple[str, ...]
    matched: tuple[MatchedField, ...]
    missing: tuple[str, ...]

    def to_interchange(self) -> dict:
        return {
            "element": self.element,
            "required_fields": list(self.required_fields),
            "matched": [
                {"required": m.required, "matched": m.matched, "via": m.via}
                for m in self.matched
            ],
            "missing": list(self.missing),
        }


def _normalize(text: str) -> str:
    return "".join(ch for ch in text.casefold() if ch.isalnum())


def information_gap(
    view: ArchitectureView,
    element: str,
    required_fields: Iterable[str],
    aliases: Optional[Mapping[str, str]] = None,
) -> GapReport:
    """Which required fields the element provides, matching exact, then
    normalized (case-folded alphanumeric projection), then via the alias map.
    Matching is per-field and order-independent."""
    info = view.information_model
    declared = info.find_element(element) if info is not None else None
    if declared is None:
        raise SosvError("E-GAP-NO-ELEMENT", f"no information element named {element!r}")

    aliases = dict(aliases or {})
    field_names = list(declared.field_names())
    by_norm: dict[str, list[str]] = {}
    for name in field_names:
        by_norm.setdefault(_normalize(name), []).append(name)

    required: list[str] = []
    for item in required_fields:
        if item not in required:  # dedupe, keeping first occurrence
            required.append(item)

    matched: list[MatchedField] = []
    missing: list[str] = []
    for req in required:
        if req in field_names:
            matched.append(MatchedField(req, req, "exact"))
            continue
        candidates = by_norm.get(_normalize(req), [])
        if candidates:
            matched.append(MatchedField(req, sorted(candidates)[0], "normalized"))
            continue
        alias_target = aliases.get(req)
        if alias_target is not None and alias_target in field_names:
            matched.append(MatchedField(req, alias_target, "alias"))
            continue
        missing.append(req)

    return GapReport(declared.name, tuple(required), tuple(matched), tuple(missing))


# ---------------------------------------------------------------------------
# deployment capacity


def _fmt_amount(amount: float) -> str:
    return str(int(amount)) if float(amount).is_integer() else repr(float(amount))


def deployment_capacity(view: ArchitectureView) -> list[Diagnostic]:
    """Per node and provided resource, allocated needs must fit within the
    provided quantity; unit texts must match exactly to be summed."""
    dm = view.deployment
    if dm is None:
        raise SosvError(
            "E-DEP-ABSENT", f"view {view.system_name!r} has no deployment model"
        )

    def loc(key: tuple[str, ...]) -> Optional[Location]:
        if view.origin is None:
            return None
        span = view.origin.spans.get(key)
        return span.start if span is not None else None

    units_by_name = {u.name: u for u in dm.units}
    diags: list[Diagnostic] = []
    for node in dm.nodes:
        provided = {q.resource: q for q in node.provides}
        allocated = sorted(a.unit for a in dm.allocations if a.node == node.name)
        unprovided: dict[str, list[str]] = {}
        totals: dict[str, float] = {}
        contributors: dict[str, list[str]] = {}
        for unit_name in allocated:
            unit = units_by_name.get(unit_name)
            if unit is None:
                continue  # dangling allocation; validate() reports it
            for need in unit.needs:
                supply = provided.get(need.resource)
                if supply is None:
                    unprovided.setdefault(need.resource, []).append(unit_name)
                    continue
                if need.unit != supply.unit:
                    diags.append(
                        Diagnostic(
                            Severity.WARNING,
                            "W-DEP-UNIT-MISMATCH",
                            f"unit {unit_name!r} needs {need.resource!r} in "
                            f"{need.unit!r} but node {node.name!r} provides it in "
                            f"{supply.unit!r}; excluded from the capacity sum",
                            loc(("deployment", "unit", unit_name)),
                        )
                    )
                    continue
                totals[need.resource] = totals.get(need.resource, 0.0) + need.amount
                contributors.setdefault(need.resource, []).append(unit_name)
        for resource in sorted(unprovided):
            units_list = ", ".join(unprovided[resource])
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    "W-DEP-UNPROVIDED",
                    f"node {node.name!r} does not provide {resource!r} needed by: {units_list}",
                    loc(("deployment", "node", node.name)),
                )
            )
        for resource in sorted(totals):
            supply = provided[resource]
            if totals[resource] > supply.amount:
                units_list = ", ".join(contributors[resource])
                diags.append(
                    Diagnostic(
                        Severity.WARNING,
                        "W-DEP-OVERCOMMIT",
                        f"node {node.name!r} overcommits {resource!r}: allocated units "
                        f"({units_list}) need {_fmt_amount(totals[resource])} "
                        f"{supply.unit} but it provides {_fmt_amount(supply.amount)} "
                        f"{supply.unit}",
                        loc(("deployment", "node", node.name)),
                    )
                )
    return sorted_diagnostics(diags)
