"""Two built-in toy languages with a shared AST and aligned semantics.

MiniJ: statically typed (int/bool), brace blocks, declarations, functions
with typed parameters, IO (``read()``/``print``) restricted to the main
block, no statement after a terminating statement.  MiniP: dynamically
typed, indentation blocks, the same expression and statement inventory
with Python-flavored surface forms (``and``/``or``/``not``, ``//``,
``True``/``False``, ``pass``).  Integer semantics are identical across the
pair (unbounded ints, floored division), which is what makes the gold
transpiler exactly IO-preserving.

``check`` reports longest-valid-prefix diagnostics; ``parse`` builds ASTs;
``interpret`` runs programs under a fuel budget; ``gen_program`` samples
valid programs; ``gold_transpile`` produces reference translations.
"""

from .astnodes import Program
from .checker import Diagnostic, check, complete_prefix, viable_prefix_length
from .corpus import (
    CorpusFormatError, CorpusRecord, load_corpus, make_corpus, make_record,
    save_corpus,
)
from .generate import GenConfig, gen_program
from .interp import (
    DIV_BY_ZERO, FUEL_EXHAUSTED, READ_PAST_END, RunResult, call_function,
    eval_expr, interpret,
)
from .parser import FAIL, INCOMPLETE, OK, ParseFail, parse, parse_prefix, parse_surfaces
from .render import render
from .tokens import (
    DEDENT, INDENT, MINIJ, MINIP, NEW_LINE, LexError, Lexeme, join_surfaces,
    lex, terminal_surfaces,
)
from .transpile import TranspileError, gold_transpile, transpile_ast

__all__ = [
    "Program", "Diagnostic", "check", "complete_prefix",
    "viable_prefix_length", "CorpusFormatError", "CorpusRecord",
    "load_corpus", "make_corpus", "make_record", "save_corpus", "GenConfig",
    "gen_program", "DIV_BY_ZERO", "FUEL_EXHAUSTED", "READ_PAST_END",
    "RunResult", "call_function", "eval_expr", "interpret", "FAIL",
    "INCOMPLETE", "OK", "ParseFail", "parse", "parse_prefix",
    "parse_surfaces", "render", "DEDENT", "INDENT", "MINIJ", "MINIP",
    "NEW_LINE", "LexError", "Lexeme", "join_surfaces", "lex",
    "terminal_surfaces", "TranspileError", "gold_transpile", "transpile_ast",
]
