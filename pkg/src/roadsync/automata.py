"""Complete deterministic finite automata over dense integer states and letters.

States are 0..t-1, letters are 0..alphabet_size-1.  Words are tuples of letter
indices.  State sets are frozensets; images under words shrink monotonically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInputError

Word = tuple[int, ...]
StateSet = frozenset[int]

LETTER_CHARS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Dfa:
    """Transition table of a complete DFA; delta[state][letter] is a state."""

    t: int
    alphabet_size: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.t < 1 or self.alphabet_size < 1:
            raise InvalidInputError("automaton needs t >= 1 and alphabet_size >= 1")
        if len(self.delta) != self.t:
            raise InvalidInputError("delta needs exactly one row per state")
        for row in self.delta:
            if len(row) != self.alphabet_size:
                raise InvalidInputError("delta row width must equal alphabet_size")
            for q in row:
                if not 0 <= q < self.t:
                    raise InvalidInputError(f"transition target {q} out of range")

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def full_set(self) -> StateSet:
        return frozenset(range(self.t))

    def check_word(self, w: Sequence[int]) -> None:
        for x in w:
            if not 0 <= x < self.alphabet_size:
                raise InvalidInputError(f"letter {x} out of range for alphabet_size {self.alphabet_size}")


def make_dfa(rows: Sequence[Sequence[int]]) -> Dfa:
    rows = tuple(tuple(r) for r in rows)
    if not rows:
        raise InvalidInputError("empty transition table")
    return Dfa(len(rows), len(rows[0]), rows)


def apply_word(a: Dfa, s: Iterable[int], w: Sequence[int]) -> StateSet:
    """Image of the state set s under w, applied left to right."""
    a.check_word(w)
    cur = frozenset(s)
    for q in cur:
        if not 0 <= q < a.t:
            raise InvalidInputError(f"state {q} out of range")
    for x in w:
        cur = frozenset(a.delta[q][x] for q in cur)
    return cur


def activity_trace(a: Dfa, w: Sequence[int]) -> list[StateSet]:
    """Images of the full state set under every prefix of w (prefix 0 first)."""
    a.check_word(w)
    cur = a.full_set()
    trace = [cur]
    for x in w:
        cur = frozenset(a.delta[q][x] for q in cur)
        trace.append(cur)
    return trace


def cerny_automaton(n: int) -> Dfa:
    """Two-letter slowly synchronizing family with shortest reset length (n-1)^2.

    Letter 0 sends state 0 to 1 and fixes every other state; letter 1 is the
    cyclic shift i -> i+1 mod n.
    """
    if n < 2:
        raise InvalidInputError("cerny_automaton needs n >= 2")
    rows = []
    for i in range(n):
        rows.append((1 if i == 0 else i, (i + 1) % n))
    return Dfa(n, 2, tuple(rows))


def word_to_str(w: Sequence[int], alphabet_size: int) -> str:
    """Render letters as a..z when the alphabet allows it, else as integers."""
    if alphabet_size <= len(LETTER_CHARS):
        return "".join(LETTER_CHARS[x] for x in w)
    return " ".join(str(x) for x in w)


def word_from_str(text: str, alphabet_size: int) -> Word:
    """Parse either letter form (abba) or integer form (0 1 1 0)."""
    text = text.strip()
    if not text:
        return ()
    if any(ch.isdigit() for ch in text):
        letters = tuple(int(tok) for tok in text.split())
    else:
        letters = tuple(LETTER_CHARS.index(ch) for ch in text)
    for x in letters:
        if not 0 <= x < alphabet_size:
            raise InvalidInputError(f"letter {x} out of range")
    return letters


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_dfa(text: str) -> Dfa:
    """Parse the "dfa" text format: header `dfa <t> <alphabet_size>`, then t rows."""
    lines = _content_lines(text)
    if not lines or not lines[0].startswith("dfa"):
        raise InvalidInputError("expected `dfa <t> <alphabet_size>` header")
    head = lines[0].split()
    if len(head) != 3:
        raise InvalidInputError("malformed dfa header")
    t, k = int(head[1]), int(head[2])
    if len(lines) != 1 + t:
        raise InvalidInputError(f"expected {t} transition rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = tuple(int(tok) for tok in line.split())
        if len(row) != k:
            raise InvalidInputError("row width must equal alphabet_size")
        rows.append(row)
    return Dfa(t, k, tuple(rows))


def write_dfa(a: Dfa) -> str:
    lines = [f"dfa {a.t} {a.alphabet_size}"]
    for row in a.delta:
        lines.append(" ".join(str(q) for q in row))
    return "\n".join(lines) + "\n"
