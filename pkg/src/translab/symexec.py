"""Basis-path unit-test generation for MiniJ functions.

``enumerate_basis_paths`` walks a function once per linearly independent
control-flow path: the baseline path takes every branch false and exits
every loop immediately; each further path flips exactly one not-yet-flipped
decision site of an existing path and continues with baseline choices.
Loops contribute their 0-iteration and 1-iteration unrollings only.  The
number of paths equals the cyclomatic complexity E - N + 2 of the CFG,
which ``cyclomatic_complexity`` computes independently by counting edges
and nodes.

Path conditions are conjunctions of branch constraints over the function's
parameters, obtained by forward substitution of assignments into the
branch conditions (function calls stay opaque and are evaluated by the
interpreter).  ``solve_inputs`` is a bounded exhaustive search returning
the lexicographically smallest satisfying argument tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .minilang import astnodes as A
from .minilang import check, parse_surfaces
from .minilang.interp import call_function, eval_expr
from .minilang.parser import ParseFail
from .minilang.tokens import MINIJ

DEFAULT_BOUND = 8

# run_suite verdicts
PASS = "pass"
WRONG_VALUE = "wrong-value"
RUNTIME_FAILURE = "runtime-failure"
NO_FUNCTION = "no-function"
NO_COMPILE = "no-compile"


@dataclass
class TestCase:
    function: str
    args: list
    expected: object
    covered_path: list = field(default_factory=list)  # [(site, taken)]


@dataclass
class SuiteStats:
    paths_found: int = 0
    paths_unsatisfiable: int = 0


@dataclass
class TestSuite:
    source_id: str
    cases: list = field(default_factory=list)
    stats: SuiteStats = field(default_factory=SuiteStats)


@dataclass
class Constraint:
    expr: A.Node  # over parameters; may contain opaque calls
    expected: bool


@dataclass
class PathCondition:
    function: str
    params: list  # [(name, type)]
    decisions: list  # [(site index, taken)]
    constraints: list  # [Constraint]
    returned: bool
    program: A.Program | None = None


def _subst(node: A.Node, env: dict) -> A.Node:
    """Substitute symbolic values for variables; shares subtrees."""
    if isinstance(node, A.Var):
        return env[node.name]
    if isinstance(node, A.IntLit) or isinstance(node, A.BoolLit):
        return node
    if isinstance(node, A.UnOp):
        return A.UnOp(node.op, _subst(node.operand, env))
    if isinstance(node, A.BinOp):
        return A.BinOp(node.op, _subst(node.left, env), _subst(node.right, env))
    if isinstance(node, A.Call):
        return A.Call(node.name, [_subst(a, env) for a in node.args])
    if isinstance(node, A.Read):
        raise ValueError("read() inside a function")
    raise ValueError(f"unsupported expression {type(node).__name__}")


def _site_index(fn: A.FnDef) -> dict[int, int]:
    sites: dict[int, int] = {}
    for node in A.walk(fn):
        if isinstance(node, (A.If, A.While)):
            sites[id(node)] = len(sites)
    return sites


def _trace_path(fn: A.FnDef, forced: list[bool],
                sites: dict[int, int]) -> PathCondition:
    env = {p.name: A.Var(p.name) for p in fn.params}
    decisions: list[tuple[int, bool]] = []
    constraints: list[Constraint] = []
    cursor = 0

    def decide(node, sym_cond) -> bool:
        nonlocal cursor
        taken = forced[cursor] if cursor < len(forced) else False
        cursor += 1
        decisions.append((sites[id(node)], taken))
        constraints.append(Constraint(sym_cond, taken))
        return taken

    def walk(stmts) -> bool:
        for stmt in stmts:
            if isinstance(stmt, (A.Decl, A.Assign)):
                env[stmt.name] = _subst(stmt.value, env)
            elif isinstance(stmt, A.Return):
                return True
            elif isinstance(stmt, A.If):
                if decide(stmt, _subst(stmt.cond, env)):
                    if walk(stmt.then):
                        return True
                elif stmt.orelse is not None:
                    if walk(stmt.orelse):
                        return True
            elif isinstance(stmt, A.While):
                if decide(stmt, _subst(stmt.cond, env)):
                    if walk(stmt.body):
                        return True
                    constraints.append(
                        Constraint(_subst(stmt.cond, env), False))
            elif isinstance(stmt, A.Pass):
                pass
            else:
                raise ValueError(f"unsupported statement {type(stmt).__name__}")
        return False

    returned = walk(fn.body)
    return PathCondition(fn.name, [(p.name, p.type) for p in fn.params],
                         decisions, constraints, returned)


def enumerate_basis_paths(fn: A.FnDef,
                          program: A.Program | None = None) -> list[PathCondition]:
    """One path condition per basis path; count == cyclomatic complexity."""
    sites = _site_index(fn)
    paths = [_trace_path(fn, [], sites)]
    flipped: set[int] = set()
    i = 0
    while i < len(paths):
        path = paths[i]
        for k, (site, taken) in enumerate(path.decisions):
            if site not in flipped:
                flipped.add(site)
                forced = [d for _, d in path.decisions[:k]] + [not taken]
                paths.append(_trace_path(fn, forced, sites))
        i += 1
    for path in paths:
        path.program = program
    return paths


def cyclomatic_complexity(fn: A.FnDef) -> int:
    """E - N + 2 over an explicitly constructed control-flow graph."""
    nodes: list[int] = []
    edges: list[tuple[int, int]] = []

    def new_node() -> int:
        nodes.append(len(nodes))
        return nodes[-1]

    entry = new_node()
    exit_node = new_node()

    def seq(stmts, cur):
        for stmt in stmts:
            cur = one(stmt, cur)
            if cur is None:
                break
        return cur

    def one(stmt, cur):
        if isinstance(stmt, (A.Decl, A.Assign, A.Print, A.Pass)):
            n = new_node()
            edges.append((cur, n))
            return n
        if isinstance(stmt, A.Return):
            n = new_node()
            edges.append((cur, n))
            edges.append((n, exit_node))
            return None
        if isinstance(stmt, A.If):
            cond = new_node()
            edges.append((cur, cond))
            then_end = seq(stmt.then, cond)
            else_end = seq(stmt.orelse, cond) if stmt.orelse is not None else None
            if stmt.orelse is None:
                join = new_node()
                if then_end is not None:
                    edges.append((then_end, join))
                edges.append((cond, join))
                return join
            if then_end is None and else_end is None:
                return None
            join = new_node()
            if then_end is not None:
                edges.append((then_end, join))
            if else_end is not None:
                edges.append((else_end, join))
            return join
        if isinstance(stmt, A.While):
            guard = new_node()
            edges.append((cur, guard))
            body_end = seq(stmt.body, guard)
            if body_end is not None:
                edges.append((body_end, guard))
            out = new_node()
            edges.append((guard, out))
            return out
        raise ValueError(f"unsupported statement {type(stmt).__name__}")

    end = seq(fn.body, entry)
    if end is not None:
        edges.append((end, exit_node))
    return len(edges) - len(nodes) + 2


@dataclass
class SymexecConfig:
    bound: int = DEFAULT_BOUND
    solve_fuel: int = 20_000
    run_fuel: int = 100_000


def _domains(params, bound: int):
    for name, typ in params:
        if typ == A.BOOL:
            yield (False, True)
        else:
            yield tuple(range(-bound, bound + 1))


def solve_inputs(condition: PathCondition, bound: int = DEFAULT_BOUND,
                 program: A.Program | None = None,
                 fuel: int = 20_000) -> dict | None:
    """Lexicographically smallest satisfying assignment, or None (unsat)."""
    program = program if program is not None else condition.program
    if program is None:
        program = A.Program([], [], lang=MINIJ)
    names = [name for name, _ in condition.params]
    for values in product(*_domains(condition.params, bound)):
        env = dict(zip(names, values))
        ok = True
        for constraint in condition.constraints:
            value, failure = eval_expr(program, constraint.expr, env, fuel)
            if failure is not None or value is not constraint.expected:
                ok = False
                break
        if ok:
            return env
    return None


def generate_tests(program: A.Program, config: SymexecConfig | None = None,
                   source_id: str = "") -> TestSuite:
    """A TestCase per satisfiable basis path of every function.

    Expected values come from interpreting the function on the solved
    arguments; paths that are unsatisfiable in the bounded domain (or whose
    run fails at runtime) are recorded in the stats.
    """
    config = config or SymexecConfig()
    suite = TestSuite(source_id)
    for fn in program.functions:
        paths = enumerate_basis_paths(fn, program)
        suite.stats.paths_found += len(paths)
        for path in paths:
            args_env = solve_inputs(path, config.bound, program,
                                    config.solve_fuel)
            if args_env is None:
                suite.stats.paths_unsatisfiable += 1
                continue
            args = [args_env[name] for name, _ in path.params]
            value, failure = call_function(program, fn.name, args,
                                           config.run_fuel)
            if failure is not None:
                suite.stats.paths_unsatisfiable += 1
                continue
            suite.cases.append(TestCase(fn.name, args, value,
                                        list(path.decisions)))
    return suite


def _bigrams(name: str) -> set[str]:
    low = name.lower()
    return {low[i:i + 2] for i in range(len(low) - 1)}


def jaccard_similarity(a: str, b: str) -> float:
    """Jaccard over case-folded character bigrams of two names."""
    ba, bb = _bigrams(a), _bigrams(b)
    if not ba and not bb:
        return 1.0 if a.lower() == b.lower() else 0.0
    union = ba | bb
    return len(ba & bb) / len(union)


def match_function(name: str, candidate: A.Program) -> A.FnDef | None:
    """Candidate function with the most similar name; earlier wins ties."""
    best = None
    best_score = -1.0
    for fn in candidate.functions:
        score = jaccard_similarity(name, fn.name)
        if score > best_score:
            best, best_score = fn, score
    return best


@dataclass
class SuiteResult:
    verdicts: list
    passes: int


def run_suite(suite: TestSuite, candidate, fuel: int = 100_000) -> SuiteResult:
    """Run every case against the matched candidate function.

    ``candidate`` may be a parsed program, a token-surface list, or raw
    MiniJ text; anything that fails the compile check yields a
    ``no-compile`` verdict for every case.
    """
    program = None
    if isinstance(candidate, A.Program):
        program = candidate
    else:
        if isinstance(candidate, str):
            from .minilang.tokens import LexError, lex
            try:
                surfaces = [t.surface for t in lex(candidate, MINIJ)]
            except LexError:
                surfaces = None
        else:
            surfaces = [getattr(t, "surface", t) for t in candidate]
        if surfaces is not None and check(surfaces, MINIJ).ok:
            program = parse_surfaces(surfaces, MINIJ)
    if program is None:
        verdicts = [NO_COMPILE] * len(suite.cases)
        return SuiteResult(verdicts, 0)

    verdicts = []
    passes = 0
    for case in suite.cases:
        fn = match_function(case.function, program)
        if fn is None:
            verdicts.append(NO_FUNCTION)
            continue
        value, failure = call_function(program, fn.name, list(case.args), fuel)
        if failure is not None:
            verdicts.append(RUNTIME_FAILURE)
        elif value == case.expected and isinstance(value, type(case.expected)):
            verdicts.append(PASS)
            passes += 1
        else:
            verdicts.append(WRONG_VALUE)
    return SuiteResult(verdicts, passes)


# -- suite file format --------------------------------------------------

def save_suites(suites: list[TestSuite], path) -> None:
    lines = []
    for suite in suites:
        for case in suite.cases:
            lines.append(json.dumps({
                "source_id": suite.source_id, "function": case.function,
                "args": case.args, "expected": case.expected}))
    Path(path).write_text("".join(line + "\n" for line in lines),
                          encoding="utf-8")


def load_suites(path) -> dict[str, TestSuite]:
    suites: dict[str, TestSuite] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        suite = suites.setdefault(obj["source_id"], TestSuite(obj["source_id"]))
        suite.cases.append(TestCase(obj["function"], obj["args"],
                                    obj["expected"]))
    return suites
