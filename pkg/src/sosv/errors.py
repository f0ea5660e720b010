"""Exception types raised for caller errors (bad requests, not bad data)."""

from __future__ import annotations


class SosvError(Exception):
    """A request the library cannot satisfy, carrying a stable mnemonic code.

    Findings *about the data* are returned as diagnostics; this exception is
    reserved for misuse of the API itself (unknown ids, absent models, and
    the like) and for structural failures such as dependency cycles.
"""

    def __init__(self, code: str, message: str):
        super().__init__(f"[{code}] {message}")
        self.code = code
        self.message = message


class CycleError(SosvError):
    """Raised when the startup dependency graph contains a cycle.

    ``cycle`` holds the shortest cycle found, as a list of names in edge
    order; the last name depends on the first.
    """

    def __init__(self, cycle: list[str]):
        pretty = " -> ".join(cycle + cycle[:1])
        super().__init__("E-STARTUP-CYCLE", f"startup dependency cycle: {pretty}")
        self.cycle = list(cycle)
