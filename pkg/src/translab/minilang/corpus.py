"""Parallel-corpus synthesis and the line-delimited corpus file format.

A corpus record pairs a generated MiniJ program with its gold MiniP
translation and a handful of whole-program IO cases (stdin, expected
stdout) produced by running the MiniJ source.  Records serialize one JSON
object per line: {"id", "minij", "minip", "cases": [[stdin, stdout], ...]}.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import astnodes as A
from .checker import check
from .generate import GenConfig, gen_program
from .interp import interpret
from .parser import parse
from .render import render
from .tokens import MINIJ, MINIP, lex
from .transpile import gold_transpile


@dataclass
class CorpusRecord:
    id: str
    minij: str
    minip: str
    cases: list = field(default_factory=list)  # [(stdin, expected stdout)]

    def to_json(self) -> str:
        return json.dumps({"id": self.id, "minij": self.minij,
                           "minip": self.minip,
                           "cases": [list(c) for c in self.cases]})

    @classmethod
    def from_json(cls, line: str) -> "CorpusRecord":
        obj = json.loads(line)
        return cls(obj["id"], obj["minij"], obj["minip"],
                   [tuple(c) for c in obj["cases"]])


def _read_count(program: A.Program) -> int:
    return sum(1 for n in A.walk(program) if isinstance(n, A.Read))


def make_record(seed: int, size_budget: int, n_cases: int = 3,
                gen_config: GenConfig | None = None,
                fuel: int = 200_000) -> CorpusRecord | None:
    """One corpus record, or None when the sampled program is unusable
    (e.g. a run exhausts fuel or fails at runtime on the sampled inputs)."""
    program = gen_program(seed, size_budget, gen_config)
    src = render(program)
    if not check(lex(src, MINIJ), MINIJ).ok:
        return None
    reads = _read_count(program)
    rng = random.Random(seed ^ 0x5EED)
    cases = []
    for _ in range(n_cases):
        stdin = " ".join(str(rng.randrange(-9, 10)) for _ in range(reads))
        result = interpret(program, stdin, fuel=fuel)
        if result.failure is not None:
            return None
        cases.append((stdin, result.stdout))
    tgt = gold_transpile(program)
    if not check(lex(tgt, MINIP), MINIP).ok:
        return None
    return CorpusRecord(f"g{seed}", src, tgt, cases)


def make_corpus(seed: int, count: int, size_budget: int = 12,
                n_cases: int = 3, gen_config: GenConfig | None = None) -> list[CorpusRecord]:
    """Deterministic corpus of ``count`` gold pairs."""
    records = []
    sub = seed
    while len(records) < count:
        record = make_record(sub, size_budget, n_cases, gen_config)
        sub += 1
        if record is not None:
            records.append(record)
    return records


def save_corpus(records, path) -> None:
    text = "".join(r.to_json() + "\n" for r in records)
    Path(path).write_text(text, encoding="utf-8")


def load_corpus(path) -> list[CorpusRecord]:
    records = []
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        if not line.strip():
            continue
        try:
            records.append(CorpusRecord.from_json(line))
        except (json.JSONDecodeError, KeyError) as exc:
            raise CorpusFormatError(i + 1, str(exc)) from None
    return records


class CorpusFormatError(Exception):
    def __init__(self, line_number: int, detail: str):
        super().__init__(f"corpus line {line_number}: {detail}")
        self.line_number = line_number


def parse_record_side(record: CorpusRecord, side: str) -> A.Program:
    """Parse one side of a record; side is 'minij' or 'minip'."""
    if side == MINIJ:
        return parse(record.minij, MINIJ)
    return parse(record.minip, MINIP)
