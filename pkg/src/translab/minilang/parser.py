"""Recursive-descent parsers for MiniJ and MiniP.

The MiniJ parser enforces the full static semantics while it parses:
stratified expression typing (int and bool expressions are distinct
grammatical categories), declare-before-use with block scoping, a single
namespace for functions and variables, exact call arity/argument types,
IO restricted to the main block, and no statement after a terminating
statement.  MiniP parses an untyped, indentation-structured grammar.

``parse_prefix`` classifies an arbitrary token-surface sequence as

* ``OK``          -- a complete valid program,
* ``INCOMPLETE``  -- a proper prefix of at least one valid program,
* ``FAIL``        -- no completion exists.

The classification is exact: the only non-LL(1) spot in MiniJ (an opening
parenthesis where a boolean expression is expected) is resolved by local
backtracking over both readings.  ``parse_prefix`` is the reference
implementation of prefix viability that the streaming checker is tested
against.
"""

from __future__ import annotations

from . import astnodes as A
from .tokens import (
    DEDENT, INDENT, KIND_IDENT, KIND_INT, MINIJ, MINIP, NEW_LINE, Lexeme, lex,
)

OK = "ok"
INCOMPLETE = "incomplete"
FAIL = "fail"

_CMP_SURFACES = ("==", "!=", "<", "<=", ">", ">=")


class ParseFail(Exception):
    def __init__(self, index: int, message: str):
        super().__init__(f"token {index}: {message}")
        self.index = index  # 1-based token index
        self.message = message


class ParseIncomplete(Exception):
    pass


class Outcome:
    __slots__ = ("status", "fail_index", "message", "program")

    def __init__(self, status, fail_index=None, message="", program=None):
        self.status = status
        self.fail_index = fail_index
        self.message = message
        self.program = program

    def __repr__(self):
        return f"Outcome({self.status}, {self.fail_index})"


def _surfaces_of(tokens) -> list[str]:
    return [t.surface if isinstance(t, Lexeme) else str(t) for t in tokens]


def _is_ident(s: str, reserved: frozenset) -> bool:
    return (s not in reserved and s[:1].isalpha() or s[:1] == "_") and \
        s.replace("_", "a").isalnum() and not s[:1].isdigit() and s not in reserved


class _Cursor:
    def __init__(self, surfaces: list[str]):
        self.toks = surfaces
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, surface: str) -> int:
        tok = self.peek()
        if tok is None:
            raise ParseIncomplete()
        if tok != surface:
            raise ParseFail(self.i + 1, f"expected {surface!r}, found {tok!r}")
        self.i += 1
        return self.i

    def pos(self) -> int:
        return self.i + 1  # 1-based index of the next token


class _MiniJParser:
    RESERVED = frozenset(
        {"int", "bool", "true", "false", "if", "else", "while", "main",
         "print", "read", "return"})

    def __init__(self, surfaces: list[str]):
        self.c = _Cursor(surfaces)
        self.scopes: list[dict] = []
        self.fns: dict[str, tuple[tuple, str]] = {}

    # -- helpers ------------------------------------------------------
    def _ident(self) -> str:
        tok = self.c.peek()
        if tok is None:
            raise ParseIncomplete()
        if not _is_ident(tok, self.RESERVED):
            raise ParseFail(self.c.pos(), f"expected identifier, found {tok!r}")
        self.c.i += 1
        return tok

    def _lookup(self, name: str) -> str | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def _declare(self, name: str, typ: str):
        self.scopes[-1][name] = typ

    def _check_fresh(self, name: str):
        if name in self.fns or name in self.scopes[-1]:
            raise ParseFail(self.c.i, f"{name!r} already declared")

    # -- program ------------------------------------------------------
    def program(self) -> A.Program:
        fns: list[A.FnDef] = []
        while True:
            tok = self.c.peek()
            if tok is None:
                raise ParseIncomplete()
            if tok in (A.INT, A.BOOL):
                fns.append(self.fndef())
            elif tok == "main":
                break
            else:
                raise ParseFail(self.c.pos(), f"expected function or main, found {tok!r}")
        start = self.c.pos()
        self.c.take("main")
        self.scopes.append({})
        body, _ = self.block(in_fn=None)
        self.scopes.pop()
        if self.c.peek() is not None:
            raise ParseFail(self.c.pos(), "tokens after main block")
        return A.Program(fns, body, lang=MINIJ, span=(1, self.c.i))

    def fndef(self) -> A.FnDef:
        start = self.c.pos()
        ret = self.c.peek()
        self.c.i += 1
        name = self._ident()
        if name in self.fns:
            raise ParseFail(self.c.i, f"function {name!r} already defined")
        self.c.take("(")
        params: list[A.Param] = []
        if self.c.peek() in (A.INT, A.BOOL):
            while True:
                ptyp = self.c.peek()
                if ptyp not in (A.INT, A.BOOL):
                    if ptyp is None:
                        raise ParseIncomplete()
                    raise ParseFail(self.c.pos(), "expected parameter type")
                self.c.i += 1
                pname = self._ident()
                if any(p.name == pname for p in params) or pname in self.fns:
                    raise ParseFail(self.c.i, f"duplicate parameter {pname!r}")
                params.append(A.Param(pname, ptyp, span=(self.c.i - 1, self.c.i)))
                if self.c.peek() == ",":
                    self.c.take(",")
                    continue
                break
        self.c.take(")")
        # Signature is visible inside the body: self-recursion is legal.
        self.fns[name] = (tuple(p.type for p in params), ret)
        self.scopes.append({p.name: p.type for p in params})
        body, _ = self.block(in_fn=ret)
        self.scopes.pop()
        return A.FnDef(name, params, ret, body, span=(start, self.c.i))

    def block(self, in_fn: str | None) -> tuple[list, bool]:
        """Parse '{ stmts }'; returns (statements, terminates)."""
        self.c.take("{")
        self.scopes.append({})
        stmts: list = []
        terminated = False
        while True:
            tok = self.c.peek()
            if tok is None:
                raise ParseIncomplete()
            if tok == "}":
                break
            if terminated:
                raise ParseFail(self.c.pos(), "unreachable statement")
            stmt, term = self.statement(in_fn)
            stmts.append(stmt)
            terminated = term
        self.c.take("}")
        self.scopes.pop()
        return stmts, terminated

    def statement(self, in_fn: str | None) -> tuple[A.Node, bool]:
        tok = self.c.peek()
        start = self.c.pos()
        if tok in (A.INT, A.BOOL):
            self.c.i += 1
            name = self._ident()
            self._check_fresh(name)
            self.c.take("=")
            value = self.expr(tok, in_fn)
            self.c.take(";")
            self._declare(name, tok)
            return A.Decl(tok, name, value, span=(start, self.c.i)), False
        if tok == "if":
            return self.if_stmt(in_fn)
        if tok == "while":
            self.c.i += 1
            self.c.take("(")
            cond = self.expr(A.BOOL, in_fn)
            self.c.take(")")
            body, _ = self.block(in_fn)
            return A.While(cond, body, span=(start, self.c.i)), False
        if tok == "print":
            if in_fn is not None:
                raise ParseFail(start, "print is only allowed in main")
            self.c.i += 1
            self.c.take("(")
            value = self.expr(A.INT, in_fn)
            self.c.take(")")
            self.c.take(";")
            return A.Print(value, span=(start, self.c.i)), False
        if tok == "return":
            if in_fn is None:
                raise ParseFail(start, "return outside function")
            self.c.i += 1
            value = self.expr(in_fn, in_fn)
            self.c.take(";")
            return A.Return(value, span=(start, self.c.i)), True
        if tok is None:
            raise ParseIncomplete()
        if _is_ident(tok, self.RESERVED):
            typ = self._lookup(tok)
            if typ is None:
                raise ParseFail(start, f"assignment to undeclared {tok!r}")
            self.c.i += 1
            self.c.take("=")
            value = self.expr(typ, in_fn)
            self.c.take(";")
            return A.Assign(tok, value, span=(start, self.c.i)), False
        raise ParseFail(start, f"expected statement, found {tok!r}")

    def if_stmt(self, in_fn) -> tuple[A.Node, bool]:
        start = self.c.pos()
        self.c.take("if")
        self.c.take("(")
        cond = self.expr(A.BOOL, in_fn)
        self.c.take(")")
        then, t_term = self.block(in_fn)
        orelse = None
        term = False
        if self.c.peek() == "else":
            self.c.take("else")
            orelse, e_term = self.block(in_fn)
            term = t_term and e_term
        return A.If(cond, then, orelse, span=(start, self.c.i)), term

    # -- expressions --------------------------------------------------
    def expr(self, typ: str, in_fn) -> A.Node:
        return self.iexpr(in_fn) if typ == A.INT else self.bexpr(in_fn)

    def iexpr(self, in_fn) -> A.Node:
        node = self.imul(in_fn)
        while self.c.peek() in ("+", "-"):
            op = self.c.peek()
            start = node.span[0]
            self.c.i += 1
            rhs = self.imul(in_fn)
            node = A.BinOp(A.MINIJ_BINOPS[op], node, rhs, span=(start, self.c.i))
        return node

    def imul(self, in_fn) -> A.Node:
        node = self.iunary(in_fn)
        while self.c.peek() in ("*", "/", "%"):
            op = self.c.peek()
            start = node.span[0]
            self.c.i += 1
            rhs = self.iunary(in_fn)
            node = A.BinOp(A.MINIJ_BINOPS[op], node, rhs, span=(start, self.c.i))
        return node

    def iunary(self, in_fn) -> A.Node:
        start = self.c.pos()
        if self.c.peek() == "-":
            self.c.i += 1
            operand = self.iunary(in_fn)
            return A.UnOp("neg", operand, span=(start, self.c.i))
        return self.iatom(in_fn)

    def iatom(self, in_fn) -> A.Node:
        tok = self.c.peek()
        start = self.c.pos()
        if tok is None:
            raise ParseIncomplete()
        if tok.isdigit():
            self.c.i += 1
            return A.IntLit(int(tok), span=(start, start))
        if tok == "read":
            if in_fn is not None:
                raise ParseFail(start, "read is only allowed in main")
            self.c.i += 1
            self.c.take("(")
            self.c.take(")")
            return A.Read(span=(start, self.c.i))
        if tok == "(":
            self.c.i += 1
            node = self.iexpr(in_fn)
            self.c.take(")")
            node.span = (start, self.c.i)
            return node
        if _is_ident(tok, self.RESERVED):
            if tok in self.fns:
                params, ret = self.fns[tok]
                if ret != A.INT:
                    raise ParseFail(start, f"{tok!r} does not return int")
                return self.call(tok, params, in_fn)
            typ = self._lookup(tok)
            if typ == A.INT:
                self.c.i += 1
                return A.Var(tok, span=(start, start))
            if typ == A.BOOL:
                raise ParseFail(start, f"{tok!r} is bool, int expected")
            raise ParseFail(start, f"undeclared identifier {tok!r}")
        raise ParseFail(start, f"expected int expression, found {tok!r}")

    def call(self, name: str, param_types: tuple, in_fn) -> A.Node:
        start = self.c.pos()
        self.c.i += 1
        self.c.take("(")
        args = []
        for k, ptyp in enumerate(param_types):
            if k:
                self.c.take(",")
            args.append(self.expr(ptyp, in_fn))
        self.c.take(")")
        return A.Call(name, args, span=(start, self.c.i))

    def bexpr(self, in_fn) -> A.Node:
        node = self.band(in_fn)
        while self.c.peek() == "||":
            start = node.span[0]
            self.c.i += 1
            rhs = self.band(in_fn)
            node = A.BinOp("or", node, rhs, span=(start, self.c.i))
        return node

    def band(self, in_fn) -> A.Node:
        node = self.bunit(in_fn)
        while self.c.peek() == "&&":
            start = node.span[0]
            self.c.i += 1
            rhs = self.bunit(in_fn)
            node = A.BinOp("and", node, rhs, span=(start, self.c.i))
        return node

    def _cmp_tail(self, left: A.Node, in_fn) -> A.Node:
        tok = self.c.peek()
        if tok is None:
            raise ParseIncomplete()
        if tok not in _CMP_SURFACES:
            raise ParseFail(self.c.pos(), f"expected comparison, found {tok!r}")
        self.c.i += 1
        right = self.iexpr(in_fn)
        return A.BinOp(A.MINIJ_BINOPS[tok], left, right,
                       span=(left.span[0], self.c.i))

    def bunit(self, in_fn) -> A.Node:
        tok = self.c.peek()
        start = self.c.pos()
        if tok is None:
            raise ParseIncomplete()
        if tok in ("true", "false"):
            self.c.i += 1
            return A.BoolLit(tok == "true", span=(start, start))
        if tok == "!":
            self.c.i += 1
            operand = self.bunit(in_fn)
            return A.UnOp("not", operand, span=(start, self.c.i))
        if tok == "(":
            # Ambiguous: '(bool-expr)' or a comparison whose left int
            # operand starts with '('.  Try both readings.
            saved = self.c.i
            try:
                self.c.i += 1
                inner = self.bexpr(in_fn)
                self.c.take(")")
                inner.span = (start, self.c.i)
                return inner
            except ParseFail as first:
                self.c.i = saved
                try:
                    left = self.iexpr(in_fn)
                except ParseIncomplete:
                    raise
                except ParseFail as second:
                    raise ParseFail(max(first.index, second.index),
                                    first.message) from None
                try:
                    return self._cmp_tail(left, in_fn)
                except ParseFail as second:
                    raise ParseFail(max(first.index, second.index),
                                    second.message) from None
            # ParseIncomplete from the first reading propagates: some
            # completion exists along that reading.
        if tok.isdigit() or tok in ("-", "read"):
            left = self.iexpr(in_fn)
            return self._cmp_tail(left, in_fn)
        if _is_ident(tok, self.RESERVED):
            if tok in self.fns:
                params, ret = self.fns[tok]
                if ret == A.BOOL:
                    return self.call(tok, params, in_fn)
                left = self.iexpr(in_fn)
                return self._cmp_tail(left, in_fn)
            typ = self._lookup(tok)
            if typ == A.BOOL:
                self.c.i += 1
                return A.Var(tok, span=(start, start))
            if typ == A.INT:
                left = self.iexpr(in_fn)
                return self._cmp_tail(left, in_fn)
            raise ParseFail(start, f"undeclared identifier {tok!r}")
        raise ParseFail(start, f"expected bool expression, found {tok!r}")


class _MiniPParser:
    RESERVED = frozenset(
        {"def", "if", "else", "while", "print", "read", "return", "pass",
         "and", "or", "not", "True", "False", NEW_LINE, INDENT, DEDENT})

    def __init__(self, surfaces: list[str]):
        self.c = _Cursor(surfaces)

    def _ident(self) -> str:
        tok = self.c.peek()
        if tok is None:
            raise ParseIncomplete()
        if not _is_ident(tok, self.RESERVED):
            raise ParseFail(self.c.pos(), f"expected identifier, found {tok!r}")
        self.c.i += 1
        return tok

    def program(self) -> A.Program:
        fns, main = [], []
        while self.c.peek() is not None:
            if self.c.peek() == "def":
                fns.append(self.fndef())
            else:
                main.append(self.statement(in_fn=False))
        return A.Program(fns, main, lang=MINIP, span=(1, self.c.i))

    def fndef(self) -> A.FnDef:
        start = self.c.pos()
        self.c.take("def")
        name = self._ident()
        self.c.take("(")
        params = []
        if self.c.peek() != ")":
            while True:
                pstart = self.c.pos()
                pname = self._ident()
                if any(p.name == pname for p in params):
                    raise ParseFail(self.c.i, f"duplicate parameter {pname!r}")
                params.append(A.Param(pname, None, span=(pstart, self.c.i)))
                if self.c.peek() == ",":
                    self.c.take(",")
                    continue
                break
        self.c.take(")")
        body = self.suite(in_fn=True)
        return A.FnDef(name, params, None, body, span=(start, self.c.i))

    def suite(self, in_fn: bool) -> list:
        self.c.take(":")
        self.c.take(NEW_LINE)
        self.c.take(INDENT)
        stmts = [self.statement(in_fn)]
        while self.c.peek() != DEDENT:
            if self.c.peek() is None:
                raise ParseIncomplete()
            stmts.append(self.statement(in_fn))
        self.c.take(DEDENT)
        return stmts

    def statement(self, in_fn: bool) -> A.Node:
        tok = self.c.peek()
        start = self.c.pos()
        if tok is None:
            raise ParseIncomplete()
        if tok == "if":
            self.c.i += 1
            cond = self.expr()
            then = self.suite(in_fn)
            orelse = None
            if self.c.peek() == "else":
                self.c.take("else")
                orelse = self.suite(in_fn)
            return A.If(cond, then, orelse, span=(start, self.c.i))
        if tok == "while":
            self.c.i += 1
            cond = self.expr()
            body = self.suite(in_fn)
            return A.While(cond, body, span=(start, self.c.i))
        if tok == "print":
            self.c.i += 1
            self.c.take("(")
            value = self.expr()
            self.c.take(")")
            self.c.take(NEW_LINE)
            return A.Print(value, span=(start, self.c.i))
        if tok == "return":
            if not in_fn:
                raise ParseFail(start, "return outside function")
            self.c.i += 1
            value = self.expr()
            self.c.take(NEW_LINE)
            return A.Return(value, span=(start, self.c.i))
        if tok == "pass":
            self.c.i += 1
            self.c.take(NEW_LINE)
            return A.Pass(span=(start, start))
        if _is_ident(tok, self.RESERVED):
            self.c.i += 1
            self.c.take("=")
            value = self.expr()
            self.c.take(NEW_LINE)
            return A.Assign(tok, value, span=(start, self.c.i))
        raise ParseFail(start, f"expected statement, found {tok!r}")

    # precedence: or < and < not < comparison < additive < multiplicative
    def expr(self) -> A.Node:
        node = self.conj()
        while self.c.peek() == "or":
            start = node.span[0]
            self.c.i += 1
            node = A.BinOp("or", node, self.conj(), span=(start, self.c.i))
        return node

    def conj(self) -> A.Node:
        node = self.negation()
        while self.c.peek() == "and":
            start = node.span[0]
            self.c.i += 1
            node = A.BinOp("and", node, self.negation(), span=(start, self.c.i))
        return node

    def negation(self) -> A.Node:
        start = self.c.pos()
        if self.c.peek() == "not":
            self.c.i += 1
            return A.UnOp("not", self.negation(), span=(start, self.c.i))
        return self.comparison()

    def comparison(self) -> A.Node:
        node = self.arith()
        if self.c.peek() in _CMP_SURFACES:
            op = self.c.peek()
            start = node.span[0]
            self.c.i += 1
            node = A.BinOp(A.MINIP_BINOPS[op], node, self.arith(),
                           span=(start, self.c.i))
        return node

    def arith(self) -> A.Node:
        node = self.term()
        while self.c.peek() in ("+", "-"):
            op = self.c.peek()
            start = node.span[0]
            self.c.i += 1
            node = A.BinOp(A.MINIP_BINOPS[op], node, self.term(),
                           span=(start, self.c.i))
        return node

    def term(self) -> A.Node:
        node = self.unary()
        while self.c.peek() in ("*", "//", "%"):
            op = self.c.peek()
            start = node.span[0]
            self.c.i += 1
            node = A.BinOp(A.MINIP_BINOPS[op], node, self.unary(),
                           span=(start, self.c.i))
        return node

    def unary(self) -> A.Node:
        start = self.c.pos()
        if self.c.peek() == "-":
            self.c.i += 1
            return A.UnOp("neg", self.unary(), span=(start, self.c.i))
        return self.atom()

    def atom(self) -> A.Node:
        tok = self.c.peek()
        start = self.c.pos()
        if tok is None:
            raise ParseIncomplete()
        if tok.isdigit():
            self.c.i += 1
            return A.IntLit(int(tok), span=(start, start))
        if tok in ("True", "False"):
            self.c.i += 1
            return A.BoolLit(tok == "True", span=(start, start))
        if tok == "read":
            self.c.i += 1
            self.c.take("(")
            self.c.take(")")
            return A.Read(span=(start, self.c.i))
        if tok == "(":
            self.c.i += 1
            node = self.expr()
            self.c.take(")")
            node.span = (start, self.c.i)
            return node
        if _is_ident(tok, self.RESERVED):
            self.c.i += 1
            if self.c.peek() == "(":
                self.c.take("(")
                args = []
                if self.c.peek() != ")":
                    while True:
                        args.append(self.expr())
                        if self.c.peek() == ",":
                            self.c.take(",")
                            continue
                        break
                self.c.take(")")
                return A.Call(tok, args, span=(start, self.c.i))
            return A.Var(tok, span=(start, start))
        raise ParseFail(start, f"expected expression, found {tok!r}")


def parse_prefix(tokens, lang: str) -> Outcome:
    """Classify a surface sequence as OK / INCOMPLETE / FAIL (see module doc)."""
    surfaces = _surfaces_of(tokens)
    parser = _MiniJParser(surfaces) if lang == MINIJ else _MiniPParser(surfaces)
    try:
        program = parser.program()
    except ParseIncomplete:
        return Outcome(INCOMPLETE)
    except ParseFail as exc:
        return Outcome(FAIL, fail_index=exc.index, message=exc.message)
    return Outcome(OK, program=program)


def parse_surfaces(tokens, lang: str) -> A.Program:
    out = parse_prefix(tokens, lang)
    if out.status == OK:
        return out.program
    if out.status == INCOMPLETE:
        raise ParseFail(len(_surfaces_of(tokens)) or 1, "unexpected end of input")
    raise ParseFail(out.fail_index, out.message)


def parse(code: str, lang: str) -> A.Program:
    """Lex and parse complete program text; raises LexError/ParseFail."""
    return parse_surfaces(lex(code, lang), lang)
