"""Shared AST for MiniJ and MiniP.

Both languages parse into the same node classes; MiniJ nodes carry declared
types while MiniP leaves them ``None``.  Operators are stored under abstract
names (``add``, ``div``, ``and``, ...) so that interpreters, transpilers and
translation policies work structurally; renderers map them back to each
language's surface forms.

Every node records the 1-based token span ``(start, end)`` (inclusive) of
the lexemes it covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

INT = "int"
BOOL = "bool"

# surface -> abstract op, per language
MINIJ_BINOPS = {
    "+": "add", "-": "sub", "*": "mul", "/": "div", "%": "mod",
    "==": "eq", "!=": "ne", "<": "lt", "<=": "le", ">": "gt", ">=": "ge",
    "&&": "and", "||": "or",
}
MINIP_BINOPS = {
    "+": "add", "-": "sub", "*": "mul", "//": "div", "%": "mod",
    "==": "eq", "!=": "ne", "<": "lt", "<=": "le", ">": "gt", ">=": "ge",
    "and": "and", "or": "or",
}
MINIJ_OP_SURFACE = {v: k for k, v in MINIJ_BINOPS.items()}
MINIP_OP_SURFACE = {v: k for k, v in MINIP_BINOPS.items()}

ARITH_OPS = frozenset({"add", "sub", "mul", "div", "mod"})
CMP_OPS = frozenset({"eq", "ne", "lt", "le", "gt", "ge"})
BOOL_OPS = frozenset({"and", "or"})


@dataclass
class Node:
    span: tuple[int, int] = field(default=(0, 0), kw_only=True)


# --- expressions ---

@dataclass
class IntLit(Node):
    value: int


@dataclass
class BoolLit(Node):
    value: bool


@dataclass
class Var(Node):
    name: str


@dataclass
class Read(Node):
    pass


@dataclass
class Call(Node):
    name: str
    args: list


@dataclass
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass
class UnOp(Node):
    op: str  # "neg" | "not"
    operand: Node


# --- statements ---

@dataclass
class Decl(Node):
    type: str  # INT | BOOL (MiniJ only)
    name: str
    value: Node


@dataclass
class Assign(Node):
    name: str
    value: Node


@dataclass
class If(Node):
    cond: Node
    then: list
    orelse: list | None  # None: no else clause


@dataclass
class While(Node):
    cond: Node
    body: list


@dataclass
class Print(Node):
    value: Node


@dataclass
class Return(Node):
    value: Node


@dataclass
class Pass(Node):
    pass


@dataclass
class Param(Node):
    name: str
    type: str | None


@dataclass
class FnDef(Node):
    name: str
    params: list
    ret_type: str | None
    body: list


@dataclass
class Program(Node):
    functions: list
    main: list
    lang: str = "minij"


def walk(node):
    """Yield node and all descendants in preorder."""
    yield node
    for child in children(node):
        yield from walk(child)


def children(node):
    if isinstance(node, Program):
        yield from node.functions
        yield from node.main
    elif isinstance(node, FnDef):
        yield from node.params
        yield from node.body
    elif isinstance(node, (Decl, Assign, Print, Return)):
        yield node.value
    elif isinstance(node, If):
        yield node.cond
        yield from node.then
        if node.orelse is not None:
            yield from node.orelse
    elif isinstance(node, While):
        yield node.cond
        yield from node.body
    elif isinstance(node, BinOp):
        yield node.left
        yield node.right
    elif isinstance(node, UnOp):
        yield node.operand
    elif isinstance(node, Call):
        yield from node.args
