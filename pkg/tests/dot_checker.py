"""Independent syntax checker for the DOT digraph subset.

Written against the DOT language reference (graph, node and edge statements,
attribute lists, quoted ids with backslash escapes), not against the
renderer, so it can serve as an oracle for generated diagrams.
"""

from __future__ import annotations

import re

_ID_QUOTED = re.compile(r'"(?:[^"\\]|\\.)*"')
_ID_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?\d+(?:\.\d+)?")


class DotSyntaxError(Exception):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "{}[];=,":
            tokens.append(ch)
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append("->")
            i += 2
            continue
        if ch == '"':
            match = _ID_QUOTED.match(text, i)
            if not match:
                raise DotSyntaxError(f"unterminated quoted id at offset {i}")
            tokens.append(match.group(0))
            i = match.end()
            continue
        match = _ID_BARE.match(text, i)
        if match:
            tokens.append(match.group(0))
            i = match.end()
            continue
        raise DotSyntaxError(f"unexpected character {ch!r} at offset {i}")
    return tokens


def check_digraph(text: str) -> None:
    """Raise DotSyntaxError unless `text` is a well-formed digraph."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str:
        return tokens[pos] if pos < len(tokens) else ""

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise DotSyntaxError("unexpected end of input")
        token = tokens[pos]
        if expected is not None and token != expected:
            raise DotSyntaxError(f"expected {expected!r}, got {token!r}")
        pos += 1
        return token

    def is_id(token: str) -> bool:
        return bool(token) and (
            _ID_QUOTED.fullmatch(token) is not None or _ID_BARE.fullmatch(token) is not None
        )

    def take_id() -> str:
        token = take()
        if not is_id(token):
            raise DotSyntaxError(f"expected an id, got {token!r}")
        return token

    def attr_list() -> None:
        take("[")
        while peek() != "]":
            take_id()
            take("=")
            take_id()
            if peek() == ",":
                take(",")
        take("]")

    if take() != "digraph":
        raise DotSyntaxError("graph must be a digraph")
    if peek() != "{":
        take_id()  # optional graph name
    take("{")
    while peek() != "}":
        first = take_id()
        if peek() == "=":  # graph-level attribute like rankdir=LR
            take("=")
            take_id()
        elif peek() == "->":
            take("->")
            take_id()
            if peek() == "[":
                attr_list()
        elif peek() == "[":
            attr_list()
        # else: a bare node statement
        if peek() == ";":
            take(";")
    take("}")
    if pos != len(tokens):
        raise DotSyntaxError("trailing tokens after closing brace")
