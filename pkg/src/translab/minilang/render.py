"""Render shared-AST programs back to canonical source text.

Rendering goes through the flat surface-token form so that one joiner
(:func:`..minilang.tokens.join_surfaces`) defines the canonical layout for
every producer: parsed programs, generated programs, gold translations and
policy outputs all print identically.
"""

from __future__ import annotations

from . import astnodes as A
from .tokens import DEDENT, INDENT, MINIJ, MINIP, NEW_LINE, join_surfaces

# binding strength of the abstract ops, shared by both languages
_PREC = {
    "or": 1, "and": 2,
    "eq": 4, "ne": 4, "lt": 4, "le": 4, "gt": 4, "ge": 4,
    "add": 5, "sub": 5,
    "mul": 6, "div": 6, "mod": 6,
}
_NOT_PREC = 3
_NEG_PREC = 7


def expr_surfaces(node, lang: str, out: list[str], parent_prec: int = 0,
                  right_side: bool = False) -> None:
    opmap = A.MINIJ_OP_SURFACE if lang == MINIJ else A.MINIP_OP_SURFACE
    if isinstance(node, A.IntLit):
        out.append(str(node.value))
    elif isinstance(node, A.BoolLit):
        if lang == MINIJ:
            out.append("true" if node.value else "false")
        else:
            out.append("True" if node.value else "False")
    elif isinstance(node, A.Var):
        out.append(node.name)
    elif isinstance(node, A.Read):
        out.extend(("read", "(", ")"))
    elif isinstance(node, A.Call):
        out.append(node.name)
        out.append("(")
        for i, arg in enumerate(node.args):
            if i:
                out.append(",")
            expr_surfaces(arg, lang, out)
        out.append(")")
    elif isinstance(node, A.UnOp):
        prec = _NOT_PREC if node.op == "not" else _NEG_PREC
        wrap = prec < parent_prec
        if wrap:
            out.append("(")
        out.append("!" if node.op == "not" and lang == MINIJ
                   else "not" if node.op == "not" else "-")
        expr_surfaces(node.operand, lang, out, prec)
        if wrap:
            out.append(")")
    elif isinstance(node, A.BinOp):
        prec = _PREC[node.op]
        # left-associative chains; comparisons do not chain
        wrap = prec < parent_prec or (prec == parent_prec and right_side) \
            or (node.op in A.CMP_OPS and parent_prec == prec)
        if wrap:
            out.append("(")
        expr_surfaces(node.left, lang, out, prec)
        out.append(opmap[node.op])
        expr_surfaces(node.right, lang, out, prec + 0, right_side=True)
        if wrap:
            out.append(")")
    else:
        raise AssertionError(f"unknown expression {node!r}")


def _stmt_surfaces_minij(stmt, out: list[str]) -> None:
    if isinstance(stmt, A.Decl):
        out.extend((stmt.type, stmt.name, "="))
        expr_surfaces(stmt.value, MINIJ, out)
        out.append(";")
    elif isinstance(stmt, A.Assign):
        out.extend((stmt.name, "="))
        expr_surfaces(stmt.value, MINIJ, out)
        out.append(";")
    elif isinstance(stmt, A.Print):
        out.extend(("print", "("))
        expr_surfaces(stmt.value, MINIJ, out)
        out.extend((")", ";"))
    elif isinstance(stmt, A.Return):
        out.append("return")
        expr_surfaces(stmt.value, MINIJ, out)
        out.append(";")
    elif isinstance(stmt, A.If):
        out.extend(("if", "("))
        expr_surfaces(stmt.cond, MINIJ, out)
        out.extend((")", "{"))
        for s in stmt.then:
            _stmt_surfaces_minij(s, out)
        out.append("}")
        if stmt.orelse is not None:
            out.extend(("else", "{"))
            for s in stmt.orelse:
                _stmt_surfaces_minij(s, out)
            out.append("}")
    elif isinstance(stmt, A.While):
        out.extend(("while", "("))
        expr_surfaces(stmt.cond, MINIJ, out)
        out.extend((")", "{"))
        for s in stmt.body:
            _stmt_surfaces_minij(s, out)
        out.append("}")
    elif isinstance(stmt, A.Pass):
        pass  # MiniJ blocks may simply be empty
    else:
        raise AssertionError(f"unknown statement {stmt!r}")


def _block_surfaces_minip(stmts, out: list[str]) -> None:
    out.extend((":", NEW_LINE, INDENT))
    if not stmts:
        out.extend(("pass", NEW_LINE))
    for s in stmts:
        _stmt_surfaces_minip(s, out)
    out.append(DEDENT)


def _stmt_surfaces_minip(stmt, out: list[str]) -> None:
    if isinstance(stmt, (A.Decl, A.Assign)):
        out.extend((stmt.name, "="))
        expr_surfaces(stmt.value, MINIP, out)
        out.append(NEW_LINE)
    elif isinstance(stmt, A.Print):
        out.extend(("print", "("))
        expr_surfaces(stmt.value, MINIP, out)
        out.extend((")", NEW_LINE))
    elif isinstance(stmt, A.Return):
        out.append("return")
        expr_surfaces(stmt.value, MINIP, out)
        out.append(NEW_LINE)
    elif isinstance(stmt, A.If):
        out.append("if")
        expr_surfaces(stmt.cond, MINIP, out)
        _block_surfaces_minip(stmt.then, out)
        if stmt.orelse is not None:
            out.append("else")
            _block_surfaces_minip(stmt.orelse, out)
    elif isinstance(stmt, A.While):
        out.append("while")
        expr_surfaces(stmt.cond, MINIP, out)
        _block_surfaces_minip(stmt.body, out)
    elif isinstance(stmt, A.Pass):
        out.extend(("pass", NEW_LINE))
    else:
        raise AssertionError(f"unknown statement {stmt!r}")


def program_surfaces(program: A.Program) -> list[str]:
    out: list[str] = []
    if program.lang == MINIJ:
        for fn in program.functions:
            out.extend((fn.ret_type, fn.name, "("))
            for i, p in enumerate(fn.params):
                if i:
                    out.append(",")
                out.extend((p.type, p.name))
            out.extend((")", "{"))
            for s in fn.body:
                _stmt_surfaces_minij(s, out)
            out.append("}")
        out.extend(("main", "{"))
        for s in program.main:
            _stmt_surfaces_minij(s, out)
        out.append("}")
        return out
    for fn in program.functions:
        out.extend(("def", fn.name, "("))
        for i, p in enumerate(fn.params):
            if i:
                out.append(",")
            out.append(p.name)
        out.append(")")
        _block_surfaces_minip(fn.body, out)
    for s in program.main:
        _stmt_surfaces_minip(s, out)
    return out


def render(program: A.Program) -> str:
    """Program text in canonical layout; re-parses to the same AST shape."""
    return join_surfaces(program_surfaces(program), program.lang)
