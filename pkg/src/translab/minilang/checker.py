"""Streaming compile check with exact longest-valid-prefix semantics.

``check`` consumes a token-surface sequence left to right while maintaining
the set of all parser configurations that could still extend to a valid
program (a beam; MiniJ needs at most a handful of configurations because
the grammar's only ambiguity is an opening parenthesis where a boolean
expression is expected).  The first token at which every configuration
dies is, by construction, the first token with no valid continuation --
the quantity Diagnostic.first_error_token reports.

Each configuration is (stack, scopes, fns, fnret, vals):

* stack   -- grammar items still to match (top = last element),
* scopes  -- lexical scopes, name -> declared type (MiniJ),
* fns     -- registered function signatures (MiniJ),
* fnret   -- return type of the enclosing function, None in main,
* vals    -- value stack for captures and termination flags.

Items are tagged tuples: ``("tok", s)`` literal terminal, ``("int",)`` /
``("ident", mode)`` terminal classes, ``("nt", name, *args)`` nonterminals
expanded against the lookahead, and ``("act", name, *args)`` semantic
actions.  A statement that must not be followed by further statements
(return, or if/else whose branches both return) pushes a termination flag
that the statement-list item checks, which makes unreachable code invalid
exactly at its first token.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import astnodes as A
from .tokens import DEDENT, INDENT, MINIJ, MINIP, NEW_LINE, Lexeme

_CMP = ("==", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Diagnostic:
    """Outcome of a compile check.

    ``ok`` means the sequence is a complete valid program.  Otherwise
    ``first_error_token`` is the 1-based index of the leftmost token at
    which no valid continuation exists; a sequence that is a viable prefix
    but ends early reports its last token (clamped), and an empty invalid
    sequence reports 1.
    """

    ok: bool
    first_error_token: int | None = None
    message: str = ""


def _is_ident(s: str, reserved: frozenset) -> bool:
    if not s or s in reserved:
        return False
    if not (s[0].isalpha() or s[0] == "_"):
        return False
    return all(ch.isalnum() or ch == "_" for ch in s)


class _Config:
    __slots__ = ("stack", "scopes", "fns", "fnret", "vals")

    def __init__(self, stack, scopes, fns, fnret, vals):
        self.stack = stack
        self.scopes = scopes
        self.fns = fns
        self.fnret = fnret
        self.vals = vals

    def pop_push(self, items):
        return _Config(self.stack[:-1] + tuple(reversed(items)),
                       self.scopes, self.fns, self.fnret, self.vals)


# Stacks store items in reverse (top = last); expansions list items in
# grammar order and pop_push reverses them.


class _Machine:
    """Language-specific grammar tables; subclassed per language."""

    reserved: frozenset = frozenset()

    def initial(self) -> _Config:
        raise NotImplementedError

    def expand(self, cfg: _Config, item, tok: str | None):
        raise NotImplementedError

    def act(self, cfg: _Config, item) -> _Config:
        raise NotImplementedError

    def canonical(self, cfg: _Config, item, fresh):
        """Lookahead-free expansion/surface used to complete a prefix."""
        raise NotImplementedError

    # -- driving ------------------------------------------------------

    def advance(self, cfg: _Config, tok: str):
        """All configurations reachable from cfg after consuming tok."""
        out = []
        work = [cfg]
        while work:
            c = work.pop()
            if not c.stack:
                continue  # program already complete; no consumer for tok
            item = c.stack[-1]
            tag = item[0]
            if tag == "act":
                work.append(self.act(c, item))
                continue
            if tag == "nt":
                for items in self.expand(c, item, tok):
                    work.append(c.pop_push(items))
                continue
            # terminal
            if tag == "tok":
                if tok == item[1]:
                    out.append(_Config(c.stack[:-1], c.scopes, c.fns,
                                       c.fnret, c.vals))
                continue
            if tag == "int":
                if tok.isdigit():
                    out.append(_Config(c.stack[:-1], c.scopes, c.fns,
                                       c.fnret, c.vals))
                continue
            if tag == "ident":
                nxt = self.consume_ident(c, item, tok)
                if nxt is not None:
                    out.append(nxt)
                continue
            raise AssertionError(f"unknown item {item!r}")
        return out

    def is_complete(self, cfg: _Config) -> bool:
        work = [cfg]
        while work:
            c = work.pop()
            if not c.stack:
                return True
            item = c.stack[-1]
            tag = item[0]
            if tag == "act":
                work.append(self.act(c, item))
            elif tag == "nt":
                for items in self.expand(c, item, None):
                    work.append(c.pop_push(items))
            # terminals block completion
        return False

    def consume_ident(self, cfg: _Config, item, tok: str):
        raise NotImplementedError


# ---------------------------------------------------------------------
# MiniJ grammar machine
# ---------------------------------------------------------------------

class _MiniJMachine(_Machine):
    reserved = frozenset(
        {"int", "bool", "true", "false", "if", "else", "while", "main",
         "print", "read", "return"})

    def initial(self) -> _Config:
        return _Config((("nt", "Program"),), (), {}, None, ())

    def _lookup(self, cfg, name):
        for scope in reversed(cfg.scopes):
            if name in scope:
                return scope[name]
        return None

    # -- expansions ---------------------------------------------------
    def expand(self, cfg, item, tok):
        name = item[1]
        method = getattr(self, "_nt_" + name)
        return method(cfg, item, tok)

    def _nt_Program(self, cfg, item, tok):
        if tok in (A.INT, A.BOOL):
            return [[("nt", "FnDef"), ("nt", "Program")]]
        if tok == "main":
            return [[("tok", "main"), ("nt", "Block"), ("act", "drop_val")]]
        return []

    def _nt_FnDef(self, cfg, item, tok):
        return [[("act", "mark"), ("ident", "type"), ("ident", "fresh_fn"),
                 ("tok", "("), ("nt", "Params"), ("tok", ")"),
                 ("act", "reg_fn"), ("nt", "Block"), ("act", "end_fn")]]

    def _nt_Params(self, cfg, item, tok):
        if tok in (A.INT, A.BOOL):
            return [[("ident", "type"), ("ident", "fresh_param"),
                     ("nt", "ParamsTail")]]
        if tok == ")" or tok is None:
            return [[]]
        return []

    def _nt_ParamsTail(self, cfg, item, tok):
        if tok == ",":
            return [[("tok", ","), ("ident", "type"), ("ident", "fresh_param"),
                     ("nt", "ParamsTail")]]
        if tok == ")" or tok is None:
            return [[]]
        return []

    def _nt_Block(self, cfg, item, tok):
        return [[("tok", "{"), ("act", "push_scope"),
                 ("nt", "Stmts", False), ("tok", "}"), ("act", "pop_scope")]]

    def _nt_Stmts(self, cfg, item, tok):
        prev_terminated = item[2]
        if tok == "}" or tok is None:
            branches = [[("act", "push_val", prev_terminated)]]
            if tok is None and not prev_terminated:
                branches.append([("nt", "Stmt"), ("act", "stmts_cont")])
            return branches
        if prev_terminated:
            return []
        return [[("nt", "Stmt"), ("act", "stmts_cont")]]

    def _nt_Stmt(self, cfg, item, tok):
        if tok in (A.INT, A.BOOL):
            return [[("ident", "type"), ("ident", "fresh_var"), ("tok", "="),
                     ("nt", "Expr", tok), ("tok", ";"), ("act", "declare"),
                     ("act", "push_val", False)]]
        if tok == "if":
            return [[("tok", "if"), ("tok", "("), ("nt", "BExpr"),
                     ("tok", ")"), ("nt", "Block"), ("nt", "IfTail")]]
        if tok == "while":
            return [[("tok", "while"), ("tok", "("), ("nt", "BExpr"),
                     ("tok", ")"), ("nt", "Block"), ("act", "drop_val"),
                     ("act", "push_val", False)]]
        if tok == "print":
            if cfg.fnret is not None:
                return []
            return [[("tok", "print"), ("tok", "("), ("nt", "IExpr"),
                     ("tok", ")"), ("tok", ";"), ("act", "push_val", False)]]
        if tok == "return":
            if cfg.fnret is None:
                return []
            return [[("tok", "return"), ("nt", "Expr", cfg.fnret),
                     ("tok", ";"), ("act", "push_val", True)]]
        if tok is None:
            return [[("tok", ";")]]  # any statement needs more input
        if _is_ident(tok, self.reserved):
            typ = self._lookup(cfg, tok)
            if typ is None:
                return []
            return [[("tok", tok), ("tok", "="), ("nt", "Expr", typ),
                     ("tok", ";"), ("act", "push_val", False)]]
        return []

    def _nt_IfTail(self, cfg, item, tok):
        if tok == "else":
            return [[("tok", "else"), ("nt", "Block"), ("act", "if_combine")]]
        branches = [[("act", "if_noelse")]]
        if tok is None:
            branches.append([("tok", "else"), ("nt", "Block"),
                             ("act", "if_combine")])
        return branches

    def _nt_Expr(self, cfg, item, tok):
        return [[("nt", "IExpr" if item[2] == A.INT else "BExpr")]]

    def _nt_IExpr(self, cfg, item, tok):
        return [[("nt", "IMul"), ("nt", "IAddTail")]]

    def _nt_IAddTail(self, cfg, item, tok):
        if tok in ("+", "-"):
            return [[("tok", tok), ("nt", "IMul"), ("nt", "IAddTail")]]
        return [[]]

    def _nt_IMul(self, cfg, item, tok):
        return [[("nt", "IUnary"), ("nt", "IMulTail")]]

    def _nt_IMulTail(self, cfg, item, tok):
        if tok in ("*", "/", "%"):
            return [[("tok", tok), ("nt", "IUnary"), ("nt", "IMulTail")]]
        return [[]]

    def _nt_IUnary(self, cfg, item, tok):
        if tok == "-":
            return [[("tok", "-"), ("nt", "IUnary")]]
        return [[("nt", "IAtom")]]

    def _nt_IAtom(self, cfg, item, tok):
        if tok is None:
            return [[("int",)]]
        if tok.isdigit():
            return [[("int",)]]
        if tok == "read":
            if cfg.fnret is not None:
                return []
            return [[("tok", "read"), ("tok", "("), ("tok", ")")]]
        if tok == "(":
            return [[("tok", "("), ("nt", "IExpr"), ("tok", ")")]]
        if _is_ident(tok, self.reserved):
            if tok in cfg.fns:
                params, ret = cfg.fns[tok]
                if ret != A.INT:
                    return []
                return [[("tok", tok), ("tok", "("), ("nt", "Args", params),
                         ("tok", ")")]]
            if self._lookup(cfg, tok) == A.INT:
                return [[("tok", tok)]]
        return []

    def _nt_Args(self, cfg, item, tok):
        sig = item[2]
        if not sig:
            return [[]]
        return [[("nt", "Expr", sig[0]), ("nt", "ArgsTail", sig[1:])]]

    def _nt_ArgsTail(self, cfg, item, tok):
        sig = item[2]
        if not sig:
            return [[]]
        return [[("tok", ","), ("nt", "Expr", sig[0]),
                 ("nt", "ArgsTail", sig[1:])]]

    def _nt_BExpr(self, cfg, item, tok):
        return [[("nt", "BAnd"), ("nt", "BOrTail")]]

    def _nt_BOrTail(self, cfg, item, tok):
        if tok == "||":
            return [[("tok", "||"), ("nt", "BAnd"), ("nt", "BOrTail")]]
        return [[]]

    def _nt_BAnd(self, cfg, item, tok):
        return [[("nt", "BUnit"), ("nt", "BAndTail")]]

    def _nt_BAndTail(self, cfg, item, tok):
        if tok == "&&":
            return [[("tok", "&&"), ("nt", "BUnit"), ("nt", "BAndTail")]]
        return [[]]

    def _nt_BUnit(self, cfg, item, tok):
        cmp_chain = [("nt", "IExpr"), ("nt", "CmpOp"), ("nt", "IExpr")]
        if tok is None:
            return [[("tok", "true")]]
        if tok in ("true", "false"):
            return [[("tok", tok)]]
        if tok == "!":
            return [[("tok", "!"), ("nt", "BUnit")]]
        if tok == "(":
            # bool paren or int-paren opening a comparison: keep both.
            return [[("tok", "("), ("nt", "BExpr"), ("tok", ")")],
                    [("tok", "("), ("nt", "IExpr"), ("tok", ")"),
                     ("nt", "IMulTail"), ("nt", "IAddTail"),
                     ("nt", "CmpOp"), ("nt", "IExpr")]]
        if tok.isdigit() or tok in ("-", "read"):
            return [cmp_chain]
        if _is_ident(tok, self.reserved):
            if tok in cfg.fns:
                params, ret = cfg.fns[tok]
                if ret == A.BOOL:
                    return [[("tok", tok), ("tok", "("), ("nt", "Args", params),
                             ("tok", ")")]]
                return [cmp_chain]
            typ = self._lookup(cfg, tok)
            if typ == A.BOOL:
                return [[("tok", tok)]]
            if typ == A.INT:
                return [cmp_chain]
        return []

    def _nt_CmpOp(self, cfg, item, tok):
        if tok in _CMP:
            return [[("tok", tok)]]
        if tok is None:
            return [[("tok", "<")]]
        return []

    # -- ident terminals ----------------------------------------------
    def consume_ident(self, cfg, item, tok):
        mode = item[1]
        if mode == "type":
            if tok in (A.INT, A.BOOL):
                return _Config(cfg.stack[:-1], cfg.scopes, cfg.fns, cfg.fnret,
                               cfg.vals + (tok,))
            return None
        if not _is_ident(tok, self.reserved):
            return None
        if mode == "fresh_fn":
            if tok in cfg.fns:
                return None
        elif mode == "fresh_param":
            # vals since the mark: ret-type, fn-name, then type/name pairs
            names = _vals_since_mark(cfg.vals)[3::2]
            if tok in cfg.fns or tok in names:
                return None
        elif mode == "fresh_var":
            if tok in cfg.fns or (cfg.scopes and tok in cfg.scopes[-1]):
                return None
        return _Config(cfg.stack[:-1], cfg.scopes, cfg.fns, cfg.fnret,
                       cfg.vals + (tok,))

    # -- actions -------------------------------------------------------
    def act(self, cfg, item):
        name = item[1]
        stack = cfg.stack[:-1]
        if name == "mark":
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals + (_MARK,))
        if name == "push_val":
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals + (item[2],))
        if name == "drop_val":
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals[:-1])
        if name == "push_scope":
            return _Config(stack, cfg.scopes + ({},), cfg.fns, cfg.fnret,
                           cfg.vals)
        if name == "pop_scope":
            return _Config(stack, cfg.scopes[:-1], cfg.fns, cfg.fnret,
                           cfg.vals)
        if name == "declare":
            # vals tail: ..., type, name
            typ, vname = cfg.vals[-2], cfg.vals[-1]
            scope = dict(cfg.scopes[-1])
            scope[vname] = typ
            return _Config(stack, cfg.scopes[:-1] + (scope,), cfg.fns,
                           cfg.fnret, cfg.vals[:-2])
        if name == "reg_fn":
            tail = _vals_since_mark(cfg.vals)
            ret, fname = tail[0], tail[1]
            ptypes = tuple(tail[2::2])
            pnames = tuple(tail[3::2])
            fns = dict(cfg.fns)
            fns[fname] = (ptypes, ret)
            scope = dict(zip(pnames, ptypes))
            vals = cfg.vals[:len(cfg.vals) - len(tail) - 1]
            return _Config(stack, cfg.scopes + (scope,), fns, ret, vals)
        if name == "end_fn":
            # drop body termination flag, params scope, leave function
            return _Config(stack, cfg.scopes[:-1], cfg.fns, None,
                           cfg.vals[:-1])
        if name == "stmts_cont":
            term = cfg.vals[-1]
            return _Config(stack + (("nt", "Stmts", term),), cfg.scopes,
                           cfg.fns, cfg.fnret, cfg.vals[:-1])
        if name == "if_noelse":
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals[:-1] + (False,))
        if name == "if_combine":
            then_t, else_t = cfg.vals[-2], cfg.vals[-1]
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals[:-2] + (then_t and else_t,))
        raise AssertionError(f"unknown action {name!r}")

    # -- canonical completion ------------------------------------------
    def canonical(self, cfg, item, fresh):
        tag = item[0]
        if tag == "tok":
            return item[1]
        if tag == "int":
            return "1"
        if tag == "ident":
            return {"type": "int"}.get(item[1]) or fresh()
        name = item[1]
        if name in ("Program",):
            return [("tok", "main"), ("nt", "Block"), ("act", "drop_val")]
        if name in ("IAtom",):
            return [("int",)]
        if name == "BUnit":
            return [("tok", "true")]
        if name == "CmpOp":
            return [("tok", "<")]
        if name == "Expr":
            return [("nt", "IExpr" if item[2] == A.INT else "BExpr")]
        if name in ("IExpr",):
            return [("nt", "IMul"), ("nt", "IAddTail")]
        if name == "IMul":
            return [("nt", "IUnary"), ("nt", "IMulTail")]
        if name == "IUnary":
            return [("nt", "IAtom")]
        if name == "BExpr":
            return [("nt", "BAnd"), ("nt", "BOrTail")]
        if name == "BAnd":
            return [("nt", "BUnit"), ("nt", "BAndTail")]
        if name == "Block":
            return [("tok", "{"), ("act", "push_scope"),
                    ("nt", "Stmts", False), ("tok", "}"), ("act", "pop_scope")]
        if name == "Stmts":
            return [("act", "push_val", item[2])]
        if name == "IfTail":
            return [("act", "if_noelse")]
        if name == "Stmt":
            return [("tok", "print"), ("tok", "("), ("nt", "IExpr"),
                    ("tok", ")"), ("tok", ";"), ("act", "push_val", False)]
        if name == "Args":
            sig = item[2]
            if not sig:
                return []
            return [("nt", "Expr", sig[0]), ("nt", "ArgsTail", sig[1:])]
        if name == "ArgsTail":
            sig = item[2]
            if not sig:
                return []
            return [("tok", ","), ("nt", "Expr", sig[0]),
                    ("nt", "ArgsTail", sig[1:])]
        # tails default to epsilon
        return []


_MARK = object()


def _vals_since_mark(vals):
    for i in range(len(vals) - 1, -1, -1):
        if vals[i] is _MARK:
            return vals[i + 1:]
    return vals


# ---------------------------------------------------------------------
# MiniP grammar machine (syntax only)
# ---------------------------------------------------------------------

class _MiniPMachine(_Machine):
    reserved = frozenset(
        {"def", "if", "else", "while", "print", "read", "return", "pass",
         "and", "or", "not", "True", "False", NEW_LINE, INDENT, DEDENT})

    _STMT_FIRST = ("if", "while", "print", "pass", "return")

    def initial(self) -> _Config:
        return _Config((("nt", "PProgram"),), (), {}, None, ())

    def expand(self, cfg, item, tok):
        return getattr(self, "_nt_" + item[1])(cfg, item, tok)

    def _nt_PProgram(self, cfg, item, tok):
        if tok is None:
            return [[]]
        if tok == "def":
            return [[("nt", "PFnDef"), ("nt", "PProgram")]]
        return [[("nt", "PStmt", False), ("nt", "PProgram")]]

    def _nt_PFnDef(self, cfg, item, tok):
        return [[("tok", "def"), ("act", "mark"), ("ident", "any"),
                 ("tok", "("), ("nt", "PParams"), ("tok", ")"),
                 ("act", "unmark"), ("nt", "PSuite", True)]]

    def _nt_PParams(self, cfg, item, tok):
        if tok == ")" or tok is None:
            return [[]]
        return [[("ident", "param"), ("nt", "PParamsTail")]]

    def _nt_PParamsTail(self, cfg, item, tok):
        if tok == ",":
            return [[("tok", ","), ("ident", "param"), ("nt", "PParamsTail")]]
        return [[]]

    def _nt_PSuite(self, cfg, item, tok):
        in_fn = item[2]
        return [[("tok", ":"), ("tok", NEW_LINE), ("tok", INDENT),
                 ("nt", "PStmt", in_fn), ("nt", "PStmts", in_fn),
                 ("tok", DEDENT)]]

    def _nt_PStmts(self, cfg, item, tok):
        in_fn = item[2]
        if tok == DEDENT:
            return [[]]
        if tok is None:
            return [[], [("nt", "PStmt", in_fn), ("nt", "PStmts", in_fn)]]
        return [[("nt", "PStmt", in_fn), ("nt", "PStmts", in_fn)]]

    def _nt_PStmt(self, cfg, item, tok):
        in_fn = item[2]
        if tok == "if":
            return [[("tok", "if"), ("nt", "PExpr"), ("nt", "PSuite", in_fn),
                     ("nt", "PElse", in_fn)]]
        if tok == "while":
            return [[("tok", "while"), ("nt", "PExpr"),
                     ("nt", "PSuite", in_fn)]]
        if tok == "print":
            return [[("tok", "print"), ("tok", "("), ("nt", "PExpr"),
                     ("tok", ")"), ("tok", NEW_LINE)]]
        if tok == "pass":
            return [[("tok", "pass"), ("tok", NEW_LINE)]]
        if tok == "return":
            if not in_fn:
                return []
            return [[("tok", "return"), ("nt", "PExpr"), ("tok", NEW_LINE)]]
        if tok is None:
            return [[("tok", "pass"), ("tok", NEW_LINE)]]
        if _is_ident(tok, self.reserved):
            return [[("tok", tok), ("tok", "="), ("nt", "PExpr"),
                     ("tok", NEW_LINE)]]
        return []

    def _nt_PElse(self, cfg, item, tok):
        in_fn = item[2]
        if tok == "else":
            return [[("tok", "else"), ("nt", "PSuite", in_fn)]]
        if tok is None:
            return [[], [("tok", "else"), ("nt", "PSuite", in_fn)]]
        return [[]]

    def _nt_PExpr(self, cfg, item, tok):
        return [[("nt", "PConj"), ("nt", "POrTail")]]

    def _nt_POrTail(self, cfg, item, tok):
        if tok == "or":
            return [[("tok", "or"), ("nt", "PConj"), ("nt", "POrTail")]]
        return [[]]

    def _nt_PConj(self, cfg, item, tok):
        return [[("nt", "PNot"), ("nt", "PAndTail")]]

    def _nt_PAndTail(self, cfg, item, tok):
        if tok == "and":
            return [[("tok", "and"), ("nt", "PNot"), ("nt", "PAndTail")]]
        return [[]]

    def _nt_PNot(self, cfg, item, tok):
        if tok == "not":
            return [[("tok", "not"), ("nt", "PNot")]]
        return [[("nt", "PArith"), ("nt", "PCmpTail")]]

    def _nt_PCmpTail(self, cfg, item, tok):
        if tok in _CMP:
            return [[("tok", tok), ("nt", "PArith")]]
        return [[]]

    def _nt_PArith(self, cfg, item, tok):
        return [[("nt", "PTerm"), ("nt", "PAddTail")]]

    def _nt_PAddTail(self, cfg, item, tok):
        if tok in ("+", "-"):
            return [[("tok", tok), ("nt", "PTerm"), ("nt", "PAddTail")]]
        return [[]]

    def _nt_PTerm(self, cfg, item, tok):
        return [[("nt", "PUnary"), ("nt", "PMulTail")]]

    def _nt_PMulTail(self, cfg, item, tok):
        if tok in ("*", "//", "%"):
            return [[("tok", tok), ("nt", "PUnary"), ("nt", "PMulTail")]]
        return [[]]

    def _nt_PUnary(self, cfg, item, tok):
        if tok == "-":
            return [[("tok", "-"), ("nt", "PUnary")]]
        return [[("nt", "PAtom")]]

    def _nt_PAtom(self, cfg, item, tok):
        if tok is None:
            return [[("int",)]]
        if tok.isdigit():
            return [[("int",)]]
        if tok in ("True", "False"):
            return [[("tok", tok)]]
        if tok == "read":
            return [[("tok", "read"), ("tok", "("), ("tok", ")")]]
        if tok == "(":
            return [[("tok", "("), ("nt", "PExpr"), ("tok", ")")]]
        if _is_ident(tok, self.reserved):
            return [[("tok", tok), ("nt", "PCallTail")]]
        return []

    def _nt_PCallTail(self, cfg, item, tok):
        if tok == "(":
            return [[("tok", "("), ("nt", "PArgs"), ("tok", ")")]]
        return [[]]

    def _nt_PArgs(self, cfg, item, tok):
        if tok == ")" or tok is None:
            return [[]]
        return [[("nt", "PExpr"), ("nt", "PArgsTail")]]

    def _nt_PArgsTail(self, cfg, item, tok):
        if tok == ",":
            return [[("tok", ","), ("nt", "PExpr"), ("nt", "PArgsTail")]]
        return [[]]

    def consume_ident(self, cfg, item, tok):
        if not _is_ident(tok, self.reserved):
            return None
        if item[1] == "param":
            if tok in _vals_since_mark(cfg.vals):
                return None  # duplicate parameter
            return _Config(cfg.stack[:-1], cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals + (tok,))
        return _Config(cfg.stack[:-1], cfg.scopes, cfg.fns, cfg.fnret,
                       cfg.vals)

    def act(self, cfg, item):
        name = item[1]
        stack = cfg.stack[:-1]
        if name == "mark":
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals + (_MARK,))
        if name == "unmark":
            tail = _vals_since_mark(cfg.vals)
            return _Config(stack, cfg.scopes, cfg.fns, cfg.fnret,
                           cfg.vals[:len(cfg.vals) - len(tail) - 1])
        raise AssertionError(f"unknown action {name!r}")

    def canonical(self, cfg, item, fresh):
        tag = item[0]
        if tag == "tok":
            return item[1]
        if tag == "int":
            return "1"
        if tag == "ident":
            return fresh()
        name = item[1]
        table = {
            "PProgram": [],
            "PStmt": [("tok", "pass"), ("tok", NEW_LINE)],
            "PSuite": [("tok", ":"), ("tok", NEW_LINE), ("tok", INDENT),
                       ("nt", "PStmt", item[2] if len(item) > 2 else False),
                       ("tok", DEDENT)],
            "PExpr": [("nt", "PAtom")],
            "PConj": [("nt", "PAtom")],
            "PNot": [("nt", "PAtom")],
            "PArith": [("nt", "PAtom")],
            "PTerm": [("nt", "PAtom")],
            "PUnary": [("nt", "PAtom")],
            "PAtom": [("int",)],
        }
        return table.get(name, [])


_MACHINES = {MINIJ: _MiniJMachine(), MINIP: _MiniPMachine()}


def _surfaces_of(tokens) -> list[str]:
    out = []
    for t in tokens:
        if isinstance(t, Lexeme):
            out.append(t.surface)
        elif isinstance(t, str):
            out.append(t)
        else:
            out.append(t.surface if hasattr(t, "surface") else str(t))
    return out


def check(tokens, lang: str) -> Diagnostic:
    """Compile-check a token sequence; see Diagnostic for semantics."""
    surfaces = _surfaces_of(tokens)
    machine = _MACHINES[lang]
    configs = [machine.initial()]
    for i, tok in enumerate(surfaces):
        nxt = []
        for cfg in configs:
            nxt.extend(machine.advance(cfg, tok))
        if not nxt:
            return Diagnostic(False, i + 1, f"no valid continuation at {tok!r}")
        configs = nxt
    if any(machine.is_complete(c) for c in configs):
        return Diagnostic(True)
    return Diagnostic(False, max(1, len(surfaces)),
                      "incomplete program" if surfaces else "empty program")


def viable_prefix_length(tokens, lang: str) -> int:
    """Length of the longest prefix that extends to some valid program."""
    surfaces = _surfaces_of(tokens)
    machine = _MACHINES[lang]
    configs = [machine.initial()]
    for i, tok in enumerate(surfaces):
        nxt = []
        for cfg in configs:
            nxt.extend(machine.advance(cfg, tok))
        if not nxt:
            return i
        configs = nxt
    return len(surfaces)


def complete_prefix(tokens, lang: str, max_items: int = 100_000) -> list[str] | None:
    """Extend a viable prefix to a complete valid program, deterministically.

    Returns the full surface list, or None when the prefix is not viable.
    Used to repair truncated programs for the structural-match baselines.
    """
    surfaces = _surfaces_of(tokens)
    machine = _MACHINES[lang]
    configs = [machine.initial()]
    for tok in surfaces:
        nxt = []
        for cfg in configs:
            nxt.extend(machine.advance(cfg, tok))
        if not nxt:
            return None
        configs = nxt
    cfg = configs[0]
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"zz{counter[0]}"

    out = list(surfaces)
    budget = max_items
    while cfg.stack:
        budget -= 1
        if budget <= 0:
            return None
        item = cfg.stack[-1]
        tag = item[0]
        if tag == "act":
            cfg = machine.act(cfg, item)
            continue
        if tag == "nt":
            cfg = cfg.pop_push(machine.canonical(cfg, item, fresh))
            continue
        surface = machine.canonical(cfg, item, fresh)
        out.append(surface)
        advanced = machine.advance(cfg, surface)
        if not advanced:
            return None
        cfg = advanced[0]
    return out
