"""Tree-walking interpreter shared by MiniJ and MiniP.

Semantics are aligned across the pair so that gold translation preserves
behavior exactly: integers are unbounded, division and modulo are floored
(``//`` / ``%`` in Python), ``print`` accepts ints only, ``read`` consumes
the next whitespace-separated integer from stdin, and a function that
falls off its end is a runtime failure (there is no implicit return).

MiniJ declarations are block-scoped; MiniP assignments live in a single
frame per function (plus the top-level frame).  Runtime failures carry
distinct codes and never turn into compile diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import astnodes as A
from .tokens import MINIJ

# failure codes
READ_PAST_END = "read-past-end"
DIV_BY_ZERO = "div-by-zero"
FUEL_EXHAUSTED = "fuel-exhausted"
TYPE_ERROR = "type-error"
UNBOUND_NAME = "unbound-name"
MISSING_RETURN = "missing-return"
BAD_CALL = "bad-call"
BAD_READ_VALUE = "bad-read-value"


class RuntimeFailure(Exception):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(code if not detail else f"{code}: {detail}")
        self.code = code
        self.detail = detail


@dataclass
class RunResult:
    stdout: str
    failure: str | None  # failure code, None on clean termination
    steps: int


class _Return(Exception):
    def __init__(self, value):
        self.value = value


class _Machine:
    def __init__(self, program: A.Program, stdin: str, fuel: int):
        self.program = program
        self.blocked = program.lang == MINIJ  # block-scoped locals
        self.fns = {f.name: f for f in program.functions}
        self.inputs = stdin.split()
        self.next_input = 0
        self.out: list[str] = []
        self.fuel = fuel
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.fuel:
            raise RuntimeFailure(FUEL_EXHAUSTED)

    # -- environments: list of frames; MiniP uses a single mutable frame
    def lookup(self, frames, name):
        for frame in reversed(frames):
            if name in frame:
                return frame[name]
        raise RuntimeFailure(UNBOUND_NAME, name)

    def assign(self, frames, name, value):
        for frame in reversed(frames):
            if name in frame:
                frame[name] = value
                return
        # MiniP binds on first assignment; MiniJ cannot reach this (the
        # checker rejects assignments to undeclared names).
        frames[-1][name] = value

    def run_block(self, stmts, frames):
        for stmt in stmts:
            self.exec_stmt(stmt, frames)

    def exec_stmt(self, stmt, frames):
        self.tick()
        if isinstance(stmt, A.Decl):
            frames[-1][stmt.name] = self.eval(stmt.value, frames)
        elif isinstance(stmt, A.Assign):
            self.assign(frames, stmt.name, self.eval(stmt.value, frames))
        elif isinstance(stmt, A.Print):
            value = self.eval(stmt.value, frames)
            self._want_int(value, "print")
            self.out.append(str(value))
        elif isinstance(stmt, A.If):
            cond = self._want_bool(self.eval(stmt.cond, frames), "if")
            branch = stmt.then if cond else stmt.orelse
            if branch is not None:
                self.scoped(branch, frames)
        elif isinstance(stmt, A.While):
            while True:
                self.tick()
                if not self._want_bool(self.eval(stmt.cond, frames), "while"):
                    break
                self.scoped(stmt.body, frames)
        elif isinstance(stmt, A.Return):
            raise _Return(self.eval(stmt.value, frames))
        elif isinstance(stmt, A.Pass):
            pass
        else:
            raise AssertionError(f"unknown statement {stmt!r}")

    def scoped(self, stmts, frames):
        if self.blocked:
            frames.append({})
            try:
                self.run_block(stmts, frames)
            finally:
                frames.pop()
        else:
            self.run_block(stmts, frames)

    def eval(self, node, frames):
        self.tick()
        if isinstance(node, A.IntLit):
            return node.value
        if isinstance(node, A.BoolLit):
            return node.value
        if isinstance(node, A.Var):
            return self.lookup(frames, node.name)
        if isinstance(node, A.Read):
            if self.next_input >= len(self.inputs):
                raise RuntimeFailure(READ_PAST_END)
            raw = self.inputs[self.next_input]
            self.next_input += 1
            try:
                return int(raw)
            except ValueError:
                raise RuntimeFailure(BAD_READ_VALUE, raw) from None
        if isinstance(node, A.Call):
            fn = self.fns.get(node.name)
            if fn is None:
                raise RuntimeFailure(UNBOUND_NAME, node.name)
            args = [self.eval(a, frames) for a in node.args]
            return self.call(fn, args)
        if isinstance(node, A.UnOp):
            value = self.eval(node.operand, frames)
            if node.op == "neg":
                return -self._want_int(value, "-")
            return not self._want_bool(value, "not")
        if isinstance(node, A.BinOp):
            left = self.eval(node.left, frames)
            op = node.op
            if op in A.BOOL_OPS:  # short-circuit, both languages
                lb = self._want_bool(left, op)
                if op == "and" and not lb:
                    return False
                if op == "or" and lb:
                    return True
                return self._want_bool(self.eval(node.right, frames), op)
            right = self.eval(node.right, frames)
            if op in A.ARITH_OPS:
                li = self._want_int(left, op)
                ri = self._want_int(right, op)
                if op == "add":
                    return li + ri
                if op == "sub":
                    return li - ri
                if op == "mul":
                    return li * ri
                if ri == 0:
                    raise RuntimeFailure(DIV_BY_ZERO)
                return li // ri if op == "div" else li % ri
            # comparisons are int-only, mirroring the static language
            li = self._want_int(left, op)
            ri = self._want_int(right, op)
            return {"eq": li == ri, "ne": li != ri, "lt": li < ri,
                    "le": li <= ri, "gt": li > ri, "ge": li >= ri}[op]
        raise AssertionError(f"unknown expression {node!r}")

    def call(self, fn: A.FnDef, args: list):
        if len(args) != len(fn.params):
            raise RuntimeFailure(BAD_CALL, f"{fn.name} arity")
        frame = {}
        for param, value in zip(fn.params, args):
            if param.type == A.INT:
                self._want_int(value, fn.name)
            elif param.type == A.BOOL:
                self._want_bool(value, fn.name)
            frame[param.name] = value
        try:
            self.run_block(fn.body, [frame])
        except _Return as ret:
            return ret.value
        raise RuntimeFailure(MISSING_RETURN, fn.name)

    def _want_int(self, value, where) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise RuntimeFailure(TYPE_ERROR, f"int expected in {where}")
        return value

    def _want_bool(self, value, where) -> bool:
        if not isinstance(value, bool):
            raise RuntimeFailure(TYPE_ERROR, f"bool expected in {where}")
        return value


def interpret(program: A.Program, stdin: str = "", fuel: int = 1_000_000) -> RunResult:
    """Run a program's main block; returns captured stdout and failure code."""
    machine = _Machine(program, stdin, fuel)
    try:
        machine.run_block(program.main, [{}])
    except RuntimeFailure as failure:
        return RunResult("".join(f"{line}\n" for line in machine.out),
                         failure.code, machine.steps)
    except _Return:  # cannot happen: parser rejects return in main
        raise AssertionError("return escaped main")
    return RunResult("".join(f"{line}\n" for line in machine.out), None,
                     machine.steps)


def call_function(program: A.Program, name: str, args: list,
                  fuel: int = 100_000):
    """Invoke one function; returns (value, None) or (None, failure code)."""
    machine = _Machine(program, "", fuel)
    fn = machine.fns.get(name)
    if fn is None:
        return None, UNBOUND_NAME
    try:
        return machine.call(fn, list(args)), None
    except RuntimeFailure as failure:
        return None, failure.code


def eval_expr(program: A.Program, expr, env: dict, fuel: int = 100_000):
    """Evaluate an expression against a fixed environment.

    Used by the test generator to decide path constraints; function calls
    resolve against ``program``.  Returns (value, None) or (None, code).
    """
    machine = _Machine(program, "", fuel)
    try:
        return machine.eval(expr, [dict(env)]), None
    except RuntimeFailure as failure:
        return None, failure.code
