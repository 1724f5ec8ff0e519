"""Lexers and token-level utilities for the two built-in toy languages.

MiniJ is the statically typed, brace-delimited language; MiniP is the
dynamically typed, indentation-delimited one.  Both lexers produce a flat
list of :class:`Lexeme` with character spans, which every other layer
(checker, parser, tokenizer, backends) consumes.  MiniP lexing inserts the
structure tokens NEW_LINE / INDENT / DEDENT.
"""

from __future__ import annotations

from dataclasses import dataclass

MINIJ = "minij"
MINIP = "minip"

NEW_LINE = "NEW_LINE"
INDENT = "INDENT"
DEDENT = "DEDENT"
STRUCT_TOKENS = (NEW_LINE, INDENT, DEDENT)

MINIJ_KEYWORDS = (
    "int", "bool", "true", "false", "if", "else", "while",
    "main", "print", "read", "return",
)
MINIJ_OPERATORS = (
    "==", "!=", "<=", ">=", "&&", "||",
    "+", "-", "*", "/", "%", "<", ">", "!", "=",
    "(", ")", "{", "}", ";", ",",
)
MINIP_KEYWORDS = (
    "def", "if", "else", "while", "print", "read", "return",
    "pass", "and", "or", "not", "True", "False",
)
MINIP_OPERATORS = (
    "==", "!=", "<=", ">=", "//",
    "+", "-", "*", "%", "<", ">", "=",
    "(", ")", ":", ",",
)

# Identifiers may not collide with either language's reserved words: the
# gold transpiler and the translation policies rename on collision, and the
# program generator simply never emits them.
RESERVED_EVERYWHERE = frozenset(MINIJ_KEYWORDS) | frozenset(MINIP_KEYWORDS) | frozenset(STRUCT_TOKENS)

KIND_KW = "kw"
KIND_OP = "op"
KIND_IDENT = "ident"
KIND_INT = "int"
KIND_STRUCT = "struct"


@dataclass(frozen=True)
class Lexeme:
    surface: str
    kind: str
    start: int  # char offset, inclusive
    end: int    # char offset, exclusive


class LexError(Exception):
    """Illegal character or indentation fault; carries the byte offset."""

    def __init__(self, message: str, offset: int, token_index: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
        self.token_index = token_index  # 1-based index of the failing token


def terminal_surfaces(lang: str) -> list[str]:
    """All terminal keyword/operator/special surfaces of one language."""
    if lang == MINIJ:
        return list(MINIJ_KEYWORDS) + list(MINIJ_OPERATORS)
    if lang == MINIP:
        return list(MINIP_KEYWORDS) + list(MINIP_OPERATORS) + list(STRUCT_TOKENS)
    raise ValueError(f"unknown language {lang!r}")


def _lex_line(code: str, pos: int, stop: int, ops: tuple[str, ...],
              keywords: frozenset, out: list[Lexeme], allow_tab_ws: bool) -> None:
    two_char = tuple(o for o in ops if len(o) == 2)
    one_char = frozenset(o for o in ops if len(o) == 1)
    while pos < stop:
        ch = code[pos]
        if ch == " " or (allow_tab_ws and ch in "\t\r"):
            pos += 1
            continue
        if code.startswith(two_char, pos):
            for op in two_char:
                if code.startswith(op, pos):
                    out.append(Lexeme(op, KIND_OP, pos, pos + 2))
                    pos += 2
                    break
            continue
        if ch in one_char:
            out.append(Lexeme(ch, KIND_OP, pos, pos + 1))
            pos += 1
            continue
        if ch.isdigit():
            end = pos
            while end < stop and code[end].isdigit():
                end += 1
            out.append(Lexeme(code[pos:end], KIND_INT, pos, end))
            pos = end
            continue
        if ch.isalpha() or ch == "_":
            end = pos
            while end < stop and (code[end].isalnum() or code[end] == "_"):
                end += 1
            word = code[pos:end]
            kind = KIND_KW if word in keywords else KIND_IDENT
            out.append(Lexeme(word, kind, pos, end))
            pos = end
            continue
        raise LexError(f"illegal character {ch!r}", pos, len(out) + 1)


def lex_minij(code: str) -> list[Lexeme]:
    out: list[Lexeme] = []
    kw = frozenset(MINIJ_KEYWORDS)
    pos = 0
    n = len(code)
    while pos < n:
        if code[pos] in " \t\r\n":
            pos += 1
            continue
        nl = code.find("\n", pos)
        stop = n if nl < 0 else nl
        _lex_line(code, pos, stop, MINIJ_OPERATORS, kw, out, allow_tab_ws=True)
        pos = stop
    return out


def lex_minip(code: str) -> list[Lexeme]:
    out: list[Lexeme] = []
    kw = frozenset(MINIP_KEYWORDS)
    indents = [0]
    pos = 0
    n = len(code)
    while pos < n:
        line_start = pos
        nl = code.find("\n", pos)
        stop = n if nl < 0 else nl
        if stop > pos and code[stop - 1] == "\r":
            stop -= 1
        # Leading indentation: spaces only.
        col = pos
        while col < stop and code[col] == " ":
            col += 1
        if col < stop and code[col] == "\t":
            raise LexError("tab in indentation", col, len(out) + 1)
        if col >= stop:  # blank line
            pos = stop + 1 if nl >= 0 else n
            continue
        width = col - line_start
        if width > indents[-1]:
            indents.append(width)
            out.append(Lexeme(INDENT, KIND_STRUCT, line_start, col))
        else:
            while width < indents[-1]:
                indents.pop()
                out.append(Lexeme(DEDENT, KIND_STRUCT, line_start, line_start))
            if width != indents[-1]:
                raise LexError("inconsistent dedent", line_start, len(out) + 1)
        if "\t" in code[col:stop]:
            raise LexError("tab character", code.index("\t", col, stop), len(out) + 1)
        _lex_line(code, col, stop, MINIP_OPERATORS, kw, out, allow_tab_ws=False)
        out.append(Lexeme(NEW_LINE, KIND_STRUCT, stop, min(stop + 1, n)))
        pos = stop + 1 if nl >= 0 else n
    while len(indents) > 1:
        indents.pop()
        out.append(Lexeme(DEDENT, KIND_STRUCT, n, n))
    return out


def lex(code: str, lang: str) -> list[Lexeme]:
    if lang == MINIJ:
        return lex_minij(code)
    if lang == MINIP:
        return lex_minip(code)
    raise ValueError(f"unknown language {lang!r}")


_NOSPACE_BEFORE = frozenset({";", ",", ")", "(", ":"})
_NOSPACE_AFTER = frozenset({"("})


def _join_line(tokens: list[str]) -> str:
    parts: list[str] = []
    prev = None
    for tok in tokens:
        if parts and tok not in _NOSPACE_BEFORE and prev not in _NOSPACE_AFTER:
            parts.append(" ")
        parts.append(tok)
        prev = tok
    return "".join(parts)


def join_surfaces(surfaces: list[str], lang: str, indent_unit: str = "  ") -> str:
    """Canonical rendering of a surface-token stream back to program text.

    Single space between tokens except before statement terminators and
    after opening delimiters.  MiniJ breaks lines after ';', '{' and '}';
    MiniP realizes NEW_LINE/INDENT/DEDENT as lines and indentation.
    The output re-lexes to the identical surface stream.
    """
    lines: list[str] = []
    buf: list[str] = []
    depth = 0

    def flush():
        if buf:
            lines.append(indent_unit * depth + _join_line(buf))
            buf.clear()

    if lang == MINIP:
        for tok in surfaces:
            if tok == NEW_LINE:
                flush()
            elif tok == INDENT:
                flush()
                depth += 1
            elif tok == DEDENT:
                flush()
                depth = max(0, depth - 1)
            else:
                buf.append(tok)
        flush()
        return "\n".join(lines) + ("\n" if lines else "")

    for tok in surfaces:
        if tok == "}":
            flush()
            depth = max(0, depth - 1)
            lines.append(indent_unit * depth + "}")
        elif tok == "{":
            buf.append(tok)
            flush()
            depth += 1
        elif tok == ";":
            buf.append(tok)
            flush()
        else:
            buf.append(tok)
    flush()
    return "\n".join(lines) + ("\n" if lines else "")
