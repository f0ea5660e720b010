"""Tokenizer for `.sosv` sources.

Newlines are insignificant, `//` starts a line comment, strings are
double-quoted with backslash escapes, and bare words carry keywords and
enumeration values. LF and CRLF are both accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    WORD = "word"
    STRING = "string"
    NUMBER = "number"
    LBRACE = "{"
    RBRACE = "}"
    ARROW = "->"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: object  # decoded str for WORD/STRING, float for NUMBER
    line: int
    column: int
    end_line: int
    end_column: int

    def describe(self) -> str:
        if self.kind in (TokenKind.WORD, TokenKind.STRING):
            return f"{self.kind.value} {self.value!r}"
        if self.kind is TokenKind.NUMBER:
            return f"number {self.value}"
        return repr(self.kind.value) if self.kind is not TokenKind.EOF else self.kind.value


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column


_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}

_WORD_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_WORD_BODY = _WORD_START | set("0123456789-_")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        elif ch == "\r":
            # CRLF counts as one newline; lone CR is also a line break
            if self.peek() != "\n":
                self.line += 1
                self.column = 1
        else:
            self.column += 1
        return ch


def tokenize(source: str) -> list[Token]:
    """Full-source tokenization; raises LexError on the first bad character."""
    cur = _Cursor(source)
    tokens: list[Token] = []

    while True:
        # skip whitespace and comments
        while not cur.eof():
            ch = cur.peek()
            if ch in " \t\r\n":
                cur.advance()
            elif ch == "/" and cur.peek(1) == "/":
                while not cur.eof() and cur.peek() not in "\r\n":
                    cur.advance()
            else:
                break
        if cur.eof():
            tokens.append(Token(TokenKind.EOF, None, cur.line, cur.column, cur.line, cur.column))
            return tokens

        line, column = cur.line, cur.column
        ch = cur.peek()

        if ch == "{":
            cur.advance()
            tokens.append(Token(TokenKind.LBRACE, "{", line, column, line, column))
        elif ch == "}":
            cur.advance()
            tokens.append(Token(TokenKind.RBRACE, "}", line, column, line, column))
        elif ch == "-":
            cur.advance()
            if cur.peek() != ">":
                raise LexError("expected '->'", line, column)
            cur.advance()
            tokens.append(Token(TokenKind.ARROW, "->", line, column, line, column + 1))
        elif ch == '"':
            tokens.append(_string(cur, line, column))
        elif ch.isdigit():
            tokens.append(_number(cur, line, column))
        elif ch in _WORD_START:
            chars = [cur.advance()]
            while not cur.eof() and cur.peek() in _WORD_BODY:
                chars.append(cur.advance())
            word = "".join(chars)
            tokens.append(Token(TokenKind.WORD, word, line, column, line, column + len(word) - 1))
        else:
            raise LexError(f"unexpected character {ch!r}", line, column)


def _string(cur: _Cursor, line: int, column: int) -> Token:
    cur.advance()  # opening quote
    chars: list[str] = []
    while True:
        if cur.eof():
            raise LexError("unterminated string", line, column)
        ch = cur.peek()
        if ch in "\r\n":
            raise LexError("unterminated string (newline in literal)", line, column)
        if ch == '"':
            end_line, end_column = cur.line, cur.column
            cur.advance()
            return Token(TokenKind.STRING, "".join(chars), line, column, end_line, end_column)
        if ch == "\\":
            cur.advance()
            esc = cur.peek()
            if esc not in _ESCAPES:
                raise LexError(f"unknown escape '\\{esc}'", cur.line, cur.column)
            chars.append(_ESCAPES[esc])
            cur.advance()
        else:
            chars.append(cur.advance())


def _number(cur: _Cursor, line: int, column: int) -> Token:
    chars = [cur.advance()]
    while not cur.eof() and cur.peek().isdigit():
        chars.append(cur.advance())
    if cur.peek() == "." and cur.peek(1).isdigit():
        chars.append(cur.advance())
        while not cur.eof() and cur.peek().isdigit():
            chars.append(cur.advance())
    if cur.peek() in "eE" and (cur.peek(1).isdigit() or (cur.peek(1) in "+-" and cur.peek(2).isdigit())):
        chars.append(cur.advance())
        if cur.peek() in "+-":
            chars.append(cur.advance())
        while not cur.eof() and cur.peek().isdigit():
            chars.append(cur.advance())
    text = "".join(chars)
    return Token(TokenKind.NUMBER, float(text), line, column, line, column + len(text) - 1)
