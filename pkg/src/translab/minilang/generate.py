"""Random MiniJ program generator.

Programs are valid by construction (the test suite re-checks every sample)
and always terminate: loops follow a bounded counter pattern, functions
only call strictly earlier functions, and division/modulo use nonzero
literal divisors.  ``read()`` appears only in the main block's initial
declarations so the number of inputs a program consumes is fixed, and
``print`` only in main, which keeps every function a pure candidate for
test generation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import astnodes as A
from .tokens import MINIJ, RESERVED_EVERYWHERE

_VAR_POOL = [c for c in "abcdeghkmnpqrstuvwxyz" if c not in RESERVED_EVERYWHERE]


@dataclass
class GenConfig:
    p_branch_fn: float = 0.95  # chance that some function has a branch
    p_else: float = 0.5
    p_bool_var: float = 0.25
    p_while: float = 0.22
    p_if: float = 0.3
    p_shadow: float = 0.15
    p_early_return: float = 0.25
    max_functions: int = 3
    max_params: int = 3
    max_expr_depth: int = 3
    max_reads: int = 3
    loop_bound_range: tuple[int, int] = (1, 6)


@dataclass
class _Scope:
    names: dict = field(default_factory=dict)  # name -> type, this block only


class _Gen:
    def __init__(self, seed: int, budget: int, config: GenConfig):
        self.rng = random.Random(seed)
        self.budget = max(1, budget)
        self.cfg = config
        self.fns: list[A.FnDef] = []
        self.sigs: dict[str, tuple[tuple, str]] = {}
        self.fresh_counter = 0

    # -- names ----------------------------------------------------------
    def fresh_name(self, scopes: list[_Scope], frozen: frozenset) -> str:
        taken = set(self.sigs) | frozen
        for scope in scopes:
            taken.update(scope.names)
        pool = [n for n in _VAR_POOL if n not in taken]
        if pool and self.rng.random() < 0.9:
            return self.rng.choice(pool)
        while True:
            self.fresh_counter += 1
            name = f"v{self.fresh_counter}"
            if name not in taken:
                return name

    def visible(self, scopes: list[_Scope], typ: str) -> list[str]:
        seen: dict[str, str] = {}
        for scope in scopes:
            seen.update(scope.names)
        return [n for n, t in seen.items() if t == typ]

    # -- expressions ------------------------------------------------------
    def int_expr(self, scopes, depth: int) -> A.Node:
        rng = self.rng
        ints = self.visible(scopes, A.INT)
        if depth <= 0 or rng.random() < 0.3:
            if ints and rng.random() < 0.7:
                return A.Var(rng.choice(ints))
            return A.IntLit(rng.randrange(0, 10))
        roll = rng.random()
        int_fns = [n for n, (_, ret) in self.sigs.items() if ret == A.INT]
        if roll < 0.15 and int_fns:
            return self.call_expr(rng.choice(int_fns), scopes, depth)
        if roll < 0.25:
            return A.UnOp("neg", self.int_expr(scopes, depth - 1))
        op = rng.choice(("add", "add", "sub", "mul", "div", "mod"))
        left = self.int_expr(scopes, depth - 1)
        if op in ("div", "mod"):
            right = A.IntLit(rng.randrange(1, 9))
        else:
            right = self.int_expr(scopes, depth - 1)
        return A.BinOp(op, left, right)

    def bool_expr(self, scopes, depth: int) -> A.Node:
        rng = self.rng
        bools = self.visible(scopes, A.BOOL)
        roll = rng.random()
        if depth <= 0 or roll < 0.45:
            if bools and rng.random() < 0.4:
                return A.Var(rng.choice(bools))
            op = rng.choice(("lt", "le", "gt", "ge", "eq", "ne"))
            return A.BinOp(op, self.int_expr(scopes, depth - 1),
                           self.int_expr(scopes, depth - 1))
        bool_fns = [n for n, (_, ret) in self.sigs.items() if ret == A.BOOL]
        if roll < 0.55 and bool_fns:
            return self.call_expr(rng.choice(bool_fns), scopes, depth)
        if roll < 0.65:
            return A.UnOp("not", self.bool_expr(scopes, depth - 1))
        op = rng.choice(("and", "or"))
        return A.BinOp(op, self.bool_expr(scopes, depth - 1),
                       self.bool_expr(scopes, depth - 1))

    def call_expr(self, name: str, scopes, depth: int) -> A.Node:
        ptypes, _ = self.sigs[name]
        args = [self.int_expr(scopes, depth - 1) if t == A.INT
                else self.bool_expr(scopes, depth - 1) for t in ptypes]
        return A.Call(name, args)

    def typed_expr(self, typ, scopes, depth):
        return self.int_expr(scopes, depth) if typ == A.INT \
            else self.bool_expr(scopes, depth)

    # -- statements -------------------------------------------------------
    def decl(self, scopes, frozen) -> A.Decl:
        typ = A.BOOL if self.rng.random() < self.cfg.p_bool_var else A.INT
        outer = [n for s in scopes[:-1] for n, t in s.names.items() if t == typ
                 and n not in scopes[-1].names and n not in frozen]
        if outer and len(scopes) > 1 and self.rng.random() < self.cfg.p_shadow:
            name = self.rng.choice(outer)  # deliberate shadowing
        else:
            name = self.fresh_name(scopes, frozen)
        value = self.typed_expr(typ, scopes, self.cfg.max_expr_depth - 1)
        scopes[-1].names[name] = typ
        return A.Decl(typ, name, value)

    def statements(self, scopes, frozen, count: int, in_fn: str | None,
                   depth: int = 0) -> list:
        out = []
        for _ in range(count):
            if self.budget <= 0:
                break
            self.budget -= 1
            out.extend(self.statement(scopes, frozen, in_fn, depth))
        return out

    def statement(self, scopes, frozen, in_fn, depth) -> list:
        rng, cfg = self.rng, self.cfg
        roll = rng.random()
        assignable = [(n, t) for s in scopes for n, t in s.names.items()
                      if n not in frozen]
        if roll < cfg.p_if and depth < 2:
            cond = self.bool_expr(scopes, 1)
            scopes.append(_Scope())
            then = self.statements(scopes, frozen, rng.randrange(1, 3),
                                   in_fn, depth + 1)
            if in_fn is not None and rng.random() < cfg.p_early_return:
                then.append(A.Return(self.typed_expr(in_fn, scopes, 1)))
            scopes.pop()
            orelse = None
            if rng.random() < cfg.p_else:
                scopes.append(_Scope())
                orelse = self.statements(scopes, frozen,
                                         rng.randrange(1, 3), in_fn, depth + 1)
                scopes.pop()
                if not orelse:
                    orelse = None
            return [A.If(cond, then, orelse)]
        if roll < cfg.p_if + cfg.p_while and depth < 2:
            counter = self.fresh_name(scopes, frozen)
            scopes[-1].names[counter] = A.INT
            # Inside functions the bound is an existing int variable when
            # possible, so basis paths through the loop stay satisfiable
            # in terms of the arguments; main uses literal bounds.
            bound_names = [n for n, t in ((n, t) for s in scopes
                                          for n, t in s.names.items())
                           if t == A.INT and n != counter and n not in frozen]
            if in_fn is not None and bound_names and rng.random() < 0.85:
                bound_name = rng.choice(bound_names)
                bound: A.Node = A.Var(bound_name)
                body_frozen = frozen | {counter, bound_name}
            else:
                bound = A.IntLit(rng.randrange(*cfg.loop_bound_range))
                body_frozen = frozen | {counter}
            scopes.append(_Scope())
            body = self.statements(scopes, body_frozen,
                                   rng.randrange(1, 3), in_fn, depth + 1)
            scopes.pop()
            body.append(A.Assign(counter, A.BinOp("add", A.Var(counter),
                                                  A.IntLit(1))))
            return [A.Decl(A.INT, counter, A.IntLit(0)),
                    A.While(A.BinOp("lt", A.Var(counter), bound), body)]
        if roll < 0.75 and assignable:
            name, typ = rng.choice(assignable)
            return [A.Assign(name, self.typed_expr(typ, scopes,
                                                   cfg.max_expr_depth - 1))]
        return [self.decl(scopes, frozen)]

    # -- top level --------------------------------------------------------
    def function(self, index: int, force_branch: bool) -> A.FnDef:
        rng, cfg = self.rng, self.cfg
        name = f"f{index}"
        ret = A.INT if rng.random() < 0.75 else A.BOOL
        n_params = rng.randrange(1, cfg.max_params + 1)
        params = []
        scope = _Scope()
        for k in range(n_params):
            ptyp = A.INT if rng.random() < 0.8 else A.BOOL
            pname = self.fresh_name([scope], frozenset())
            scope.names[pname] = ptyp
            params.append(A.Param(pname, ptyp))
        scopes = [scope, _Scope()]
        n_stmts = rng.randrange(1, 4)
        body = self.statements(scopes, frozenset(), n_stmts, ret)
        if force_branch and not any(isinstance(s, (A.If, A.While))
                                    for s in body):
            cond = self.bool_expr(scopes, 1)
            scopes.append(_Scope())
            then = [self.decl(scopes, frozenset())]
            then.append(A.Return(self.typed_expr(ret, scopes, 1)))
            scopes.pop()
            body.append(A.If(cond, then, None))
        body.append(A.Return(self.typed_expr(ret, scopes, 2)))
        self.sigs[name] = (tuple(p.type for p in params), ret)
        return A.FnDef(name, params, ret, body)

    def main(self) -> list:
        rng, cfg = self.rng, self.cfg
        scopes = [_Scope()]
        stmts = []
        for _ in range(rng.randrange(1, cfg.max_reads + 1)):
            name = self.fresh_name(scopes, frozenset())
            scopes[-1].names[name] = A.INT
            stmts.append(A.Decl(A.INT, name, A.Read()))
        n_stmts = max(1, self.budget)
        stmts.extend(self.statements(scopes, frozenset(), n_stmts, None))
        # Guaranteed observable output: print every function at least once
        # via int expressions, and always end with a print.
        int_fns = [n for n, (_, ret) in self.sigs.items() if ret == A.INT]
        if int_fns and rng.random() < 0.9:
            stmts.append(A.Print(self.call_expr(rng.choice(int_fns),
                                                scopes, 2)))
        stmts.append(A.Print(self.int_expr(scopes, 2)))
        return stmts

    def program(self) -> A.Program:
        cfg = self.cfg
        n_fns = 1 if self.budget < 8 else self.rng.randrange(
            1, min(cfg.max_functions, 1 + self.budget // 6) + 1)
        branch_at = self.rng.randrange(n_fns) \
            if self.rng.random() < cfg.p_branch_fn else -1
        fn_budget = max(1, self.budget // (n_fns + 1))
        for i in range(n_fns):
            self.budget -= fn_budget // 2
            self.fns.append(self.function(i, force_branch=(i == branch_at)))
        main = self.main()
        return A.Program(self.fns, main, lang=MINIJ)


def gen_program(seed: int, size_budget: int,
                config: GenConfig | None = None) -> A.Program:
    """Deterministic random MiniJ program; always passes check."""
    return _Gen(seed, size_budget, config or GenConfig()).program()
