"""Rule-based gold transpiler: MiniJ programs to equivalent MiniP text.

The structural mapping is nearly the identity on the shared AST (types are
dropped, declarations become assignments, operators and literals change
surface form at render time).  The real work is name hygiene: MiniJ has
block scoping while a MiniP function body is one flat namespace, so a
declaration that shadows a live outer variable is alpha-renamed; names
that collide with MiniP reserved words are renamed as well.
"""

from __future__ import annotations

from . import astnodes as A
from .render import render
from .tokens import MINIP, RESERVED_EVERYWHERE


class TranspileError(Exception):
    def __init__(self, kind: str):
        super().__init__(f"unsupported construct: {kind}")
        self.kind = kind


class _Renamer:
    def __init__(self, taken: set[str]):
        self.taken = set(taken)

    def safe(self, name: str) -> str:
        if name not in RESERVED_EVERYWHERE:
            return name
        return self.fresh(name)

    def fresh(self, base: str) -> str:
        k = 2
        while f"{base}_{k}" in self.taken or f"{base}_{k}" in RESERVED_EVERYWHERE:
            k += 1
        new = f"{base}_{k}"
        self.taken.add(new)
        return new


class _Transpiler:
    def __init__(self, program: A.Program):
        self.program = program
        names = {n.name for n in A.walk(program)
                 if isinstance(n, (A.Decl, A.Assign, A.Var, A.Call, A.FnDef,
                                   A.Param))}
        self.renamer = _Renamer(names)
        self.fn_names = {f.name: self.renamer.safe(f.name)
                         for f in program.functions}

    def run(self) -> A.Program:
        fns = [self.fndef(f) for f in self.program.functions]
        main = self.block(self.program.main, [{}])
        return A.Program(fns, main, lang=MINIP)

    def fndef(self, fn: A.FnDef) -> A.FnDef:
        scope = {}
        params = []
        for p in fn.params:
            new = self.renamer.safe(p.name)
            scope[p.name] = new
            params.append(A.Param(new, None))
        body = self.block(fn.body, [scope])
        return A.FnDef(self.fn_names[fn.name], params, None, body)

    def block(self, stmts, scopes) -> list:
        out = []
        for stmt in stmts:
            out.append(self.stmt(stmt, scopes))
        return out

    def _bind(self, name: str, scopes) -> str:
        shadowed = any(name in scope for scope in scopes[:-1])
        if shadowed or name in RESERVED_EVERYWHERE:
            new = self.renamer.fresh(name) if shadowed else self.renamer.safe(name)
        else:
            new = name
        scopes[-1][name] = new
        return new

    def _resolve(self, name: str, scopes) -> str:
        for scope in reversed(scopes):
            if name in scope:
                return scope[name]
        raise TranspileError(f"unbound variable {name!r}")

    def stmt(self, stmt, scopes):
        if isinstance(stmt, A.Decl):
            value = self.expr(stmt.value, scopes)
            return A.Assign(self._bind(stmt.name, scopes), value)
        if isinstance(stmt, A.Assign):
            return A.Assign(self._resolve(stmt.name, scopes),
                            self.expr(stmt.value, scopes))
        if isinstance(stmt, A.Print):
            return A.Print(self.expr(stmt.value, scopes))
        if isinstance(stmt, A.Return):
            return A.Return(self.expr(stmt.value, scopes))
        if isinstance(stmt, A.If):
            cond = self.expr(stmt.cond, scopes)
            scopes.append({})
            then = self.block(stmt.then, scopes)
            scopes.pop()
            orelse = None
            if stmt.orelse is not None:
                scopes.append({})
                orelse = self.block(stmt.orelse, scopes)
                scopes.pop()
            return A.If(cond, then, orelse)
        if isinstance(stmt, A.While):
            cond = self.expr(stmt.cond, scopes)
            scopes.append({})
            body = self.block(stmt.body, scopes)
            scopes.pop()
            return A.While(cond, body)
        if isinstance(stmt, A.Pass):
            return A.Pass()
        raise TranspileError(type(stmt).__name__)

    def expr(self, node, scopes):
        if isinstance(node, A.IntLit):
            return A.IntLit(node.value)
        if isinstance(node, A.BoolLit):
            return A.BoolLit(node.value)
        if isinstance(node, A.Read):
            return A.Read()
        if isinstance(node, A.Var):
            return A.Var(self._resolve(node.name, scopes))
        if isinstance(node, A.Call):
            if node.name not in self.fn_names:
                raise TranspileError(f"call to unknown {node.name!r}")
            return A.Call(self.fn_names[node.name],
                          [self.expr(a, scopes) for a in node.args])
        if isinstance(node, A.UnOp):
            return A.UnOp(node.op, self.expr(node.operand, scopes))
        if isinstance(node, A.BinOp):
            return A.BinOp(node.op, self.expr(node.left, scopes),
                           self.expr(node.right, scopes))
        raise TranspileError(type(node).__name__)


def transpile_ast(program: A.Program) -> A.Program:
    """MiniJ AST to an equivalent MiniP AST (callers render it)."""
    return _Transpiler(program).run()


def gold_transpile(program: A.Program) -> str:
    """Reference MiniP translation of a checked MiniJ program."""
    return render(transpile_ast(program))
