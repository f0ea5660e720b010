"""Small digraph helpers shared by validation and analysis."""

from __future__ import annotations

from typing import Iterable, Optional


def find_shortest_cycle(
    nodes: Iterable[str], edges: Iterable[tuple[str, str]]
) -> Optional[list[str]]:
    """The shortest cycle as a node list in edge order, or None.

    Deterministic: among equal-length cycles the lexicographically smallest
    start (and path) wins. Edges whose endpoints are not in ``nodes`` are
    ignored.
    """
    node_set = set(nodes)
    adjacency: dict[str, set[str]] = {n: set() for n in node_set}
    for src, dst in edges:
        if src in node_set and dst in node_set:
            adjacency[src].add(dst)

    best: Optional[list[str]] = None
    for start in sorted(node_set):
        # BFS from `start`; the first path returning to it is the shortest
        # cycle through it
        parents: dict[str, Optional[str]] = {start: None}
        queue = [start]
        closing: Optional[str] = None
        while queue and closing is None:
            current = queue.pop(0)
            for nxt in sorted(adjacency[current]):
                if nxt == start:
                    closing = current
                    break
                if nxt not in parents:
                    parents[nxt] = current
                    queue.append(nxt)
        if closing is None:
            continue
        cycle = [closing]
        while parents[cycle[-1]] is not None:
            cycle.append(parents[cycle[-1]])
        cycle.reverse()
        if best is None or len(cycle) < len(best) or (len(cycle) == len(best) and cycle < best):
            best = cycle
    return best
