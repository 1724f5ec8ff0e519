"""Keyword-aware subword tokenizer.

Every keyword, operator and structural special token of both configured
languages is *atomic*: it always encodes to exactly one token id.  All
remaining lexemes (identifiers, integer literals) are split by greedy
byte-pair merges learned from a training corpus.  Non-initial subword
pieces carry a ``##`` continuation marker so decoding can reassemble
lexemes before canonical rendering.

The vocabulary file format is versioned plain text: one ``id<TAB>surface
<TAB>atomic-flag`` line per entry, then a separator line, then one merge
rule per line.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .minilang import tokens as T
from .minilang.tokens import MINIJ, MINIP, Lexeme, join_surfaces, lex

VOCAB_FORMAT_VERSION = 1
_CONT = "##"
_BASE_ALPHABET = tuple(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class KwTokError(Exception):
    pass


class EncodeError(KwTokError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


@dataclass
class TokenSeq:
    """A token-id sequence with its parallel surface forms.

    Surfaces of non-initial subword pieces are ``##``-prefixed; atomic
    tokens are always whole.  ``len(ids) == len(surfaces)`` always holds.
    """

    ids: list[int]
    surfaces: list[str]
    lang: str

    def __post_init__(self):
        if len(self.ids) != len(self.surfaces):
            raise KwTokError("ids and surfaces must have equal length")

    def __len__(self) -> int:
        return len(self.ids)

    def lexemes(self) -> list[str]:
        """Glue continuation pieces back into whole lexeme surfaces."""
        out: list[str] = []
        for s in self.surfaces:
            if s.startswith(_CONT) and out:
                out[-1] += s[len(_CONT):]
            else:
                out.append(s)
        return out


def default_keyword_lists() -> dict[str, list[str]]:
    return {MINIJ: T.terminal_surfaces(MINIJ), MINIP: T.terminal_surfaces(MINIP)}


@dataclass
class Vocabulary:
    entries: dict[str, int] = field(default_factory=dict)
    atomic_set: frozenset = frozenset()
    base_merges: list[tuple[str, str]] = field(default_factory=list)
    langs: tuple = ()

    def id_of(self, surface: str) -> int:
        return self.entries[surface]

    @property
    def surfaces_by_id(self) -> dict[int, str]:
        return {i: s for s, i in self.entries.items()}

    # -- persistence ----------------------------------------------------
    def save(self, path) -> None:
        lines = [f"kwtok-vocab v{VOCAB_FORMAT_VERSION} langs={','.join(self.langs)}"]
        for surface, idx in sorted(self.entries.items(), key=lambda kv: kv[1]):
            flag = "1" if surface in self.atomic_set else "0"
            lines.append(f"{idx}\t{surface}\t{flag}")
        lines.append("#merges")
        for a, b in self.base_merges:
            lines.append(f"{a}\t{b}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("kwtok-vocab v"):
            raise KwTokError("not a vocabulary file")
        head = lines[0].split()
        if head[1] != f"v{VOCAB_FORMAT_VERSION}":
            raise KwTokError(f"unsupported vocabulary version {head[1]}")
        langs = tuple(head[2].split("=", 1)[1].split(",")) if len(head) > 2 else ()
        entries: dict[str, int] = {}
        atomic = set()
        merges: list[tuple[str, str]] = []
        in_merges = False
        for line in lines[1:]:
            if line == "#merges":
                in_merges = True
                continue
            if not line:
                continue
            if in_merges:
                a, b = line.split("\t")
                merges.append((a, b))
            else:
                idx, surface, flag = line.split("\t")
                entries[surface] = int(idx)
                if flag == "1":
                    atomic.add(surface)
        return cls(entries, frozenset(atomic), merges, langs)


def _learn_merges(words: Counter, alphabet: set, max_merges: int) -> list[tuple[str, str]]:
    """Greedy byte-pair merges over lexeme character sequences."""
    seqs = {w: [tuple(w), n] for w, n in words.items()}
    merges: list[tuple[str, str]] = []
    for _ in range(max_merges):
        pairs: Counter = Counter()
        for seq, n in seqs.values():
            for a, b in zip(seq, seq[1:]):
                pairs[(a, b)] += n
        if not pairs:
            break
        best_count = max(pairs.values())
        if best_count < 2:
            break
        best = min(p for p, n in pairs.items() if n == best_count)
        merges.append(best)
        merged = best[0] + best[1]
        alphabet.add(merged)
        for key, (seq, n) in seqs.items():
            out = []
            i = 0
            while i < len(seq):
                if i + 1 < len(seq) and (seq[i], seq[i + 1]) == best:
                    out.append(merged)
                    i += 2
                else:
                    out.append(seq[i])
                    i += 1
            seqs[key] = [tuple(out), n]
    return merges


def _pre_lex(code: str, lang: str, atomic_set: frozenset) -> list[str]:
    """Lexeme surfaces for merge learning; built-in languages use their own
    lexers, anything else gets a whitespace split with atomics masked."""
    if lang in (MINIJ, MINIP):
        return [lx.surface for lx in lex(code, lang)]
    ordered = sorted(atomic_set, key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(code):
        if code[i].isspace():
            i += 1
            continue
        for a in ordered:
            if code.startswith(a, i):
                out.append(a)
                i += len(a)
                break
        else:
            j = i
            while j < len(code) and not code[j].isspace() and \
                    not any(code.startswith(a, j) for a in ordered):
                j += 1
            out.append(code[i:j])
            i = j
    return out


def _apply_merges(word: str, merges: list[tuple[str, str]]) -> list[str]:
    seq = list(word)
    for a, b in merges:
        out = []
        i = 0
        while i < len(seq):
            if i + 1 < len(seq) and seq[i] == a and seq[i + 1] == b:
                out.append(a + b)
                i += 2
            else:
                out.append(seq[i])
                i += 1
        seq = out
    return seq


def build_vocab(corpus: list[tuple[str, str] | str],
                keyword_lists: dict[str, list] | None = None,
                max_merges: int = 200) -> Vocabulary:
    """Learn a vocabulary from (code, lang) pairs.

    ``keyword_lists`` maps language -> terminal surfaces; entries may also
    be (surface, id) pairs to pin ids, and pinning the same surface to two
    different ids is an error.  Merge rules are learned from the corpus by
    pair frequency after masking atomic strings.
    """
    if keyword_lists is None:
        keyword_lists = default_keyword_lists()
    if not keyword_lists or any(not kws for kws in keyword_lists.values()):
        raise KwTokError("empty keyword list")
    if not corpus:
        raise KwTokError("insufficient corpus")

    pinned: dict[str, int] = {}
    atomic: list[str] = []
    for lang, kws in keyword_lists.items():
        for entry in kws:
            if isinstance(entry, tuple):
                surface, idx = entry
                if surface in pinned and pinned[surface] != idx:
                    raise KwTokError(
                        f"duplicate keyword {surface!r} with conflicting id")
                pinned[surface] = idx
            else:
                surface = entry
            if surface not in atomic:
                atomic.append(surface)
    if pinned and sorted(pinned.values()) != list(range(len(pinned))):
        raise KwTokError("pinned ids must be dense from 0")

    # Count non-atomic lexemes across the corpus.
    words: Counter = Counter()
    atomic_set = frozenset(atomic)
    for item in corpus:
        code, lang = item if isinstance(item, tuple) else (item, None)
        if lang is None:
            lang = next(iter(keyword_lists))
        for surface in _pre_lex(code, lang, atomic_set):
            if surface not in atomic_set:
                words[surface] += 1

    alphabet = set(_BASE_ALPHABET)
    for w in words:
        alphabet.update(w)
    merges = _learn_merges(words, alphabet, max_merges)

    entries: dict[str, int] = dict(pinned)
    next_id = len(pinned)

    def add(surface: str):
        nonlocal next_id
        if surface not in entries:
            entries[surface] = next_id
            next_id += 1

    for surface in atomic:
        add(surface)
    for ch in sorted(alphabet, key=lambda s: (len(s), s)):
        add(ch)
        add(_CONT + ch)
    return Vocabulary(entries, atomic_set, merges, tuple(keyword_lists))


def encode(code: str, lang: str, vocab: Vocabulary) -> TokenSeq:
    """Tokenize code and map to ids; atomic terminals become single ids."""
    if vocab.langs and lang not in vocab.langs:
        raise KwTokError(f"vocabulary was not built for language {lang!r}")
    try:
        lexemes = lex(code, lang)
    except T.LexError as exc:
        raise EncodeError(str(exc), exc.offset) from None
    ids: list[int] = []
    surfaces: list[str] = []
    for lx in lexemes:
        if lx.surface in vocab.atomic_set:
            ids.append(vocab.entries[lx.surface])
            surfaces.append(lx.surface)
            continue
        pieces = _apply_merges(lx.surface, vocab.base_merges)
        for j, piece in enumerate(pieces):
            marked = piece if j == 0 else _CONT + piece
            if marked not in vocab.entries:
                raise EncodeError(f"piece {marked!r} not in vocabulary",
                                  lx.start)
            ids.append(vocab.entries[marked])
            surfaces.append(marked)
    return TokenSeq(ids, surfaces, lang)


def decode(seq: TokenSeq, vocab: Vocabulary) -> str:
    """Render a token sequence back to canonical program text."""
    by_id = vocab.surfaces_by_id
    for index, idx in enumerate(seq.ids):
        if idx not in by_id:
            raise KwTokError(f"unknown id {idx} at index {index}")
    return join_surfaces(seq.lexemes(), seq.lang)


def encode_surfaces(surfaces: list[str], lang: str, vocab: Vocabulary) -> TokenSeq:
    """Encode an already-lexed surface stream (one entry per lexeme)."""
    return encode(join_surfaces(surfaces, lang), lang, vocab)
