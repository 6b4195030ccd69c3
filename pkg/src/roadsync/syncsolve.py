"""Synchronization tests and exact shortest reset words.

The polynomial decision uses backward closure over state pairs; the exact
search is a breadth-first walk over images of the full state set, packed as
bitmasks.  The two are algorithmically independent, so they cross-validate.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .automata import Dfa, Word
from .errors import InvalidInputError

# Subset search is exact for any t, but the frontier can reach 2^t; callers
# wanting guarantees should stay at t <= 20 or pass a limit.
PRACTICAL_EXACT_STATES = 20


def pin_bound(t: int) -> int:
    """Upper bound (t^3 - t) / 6 on shortest reset length; exact integer."""
    if t < 1:
        raise InvalidInputError("pin_bound needs t >= 1")
    return (t ** 3 - t) // 6


def is_synchronizing(a: Dfa) -> bool:
    """Pair-merging criterion: every state pair can reach a diagonal pair.

    Runs backward closure from the diagonal in the pair automaton; polynomial
    in t and alphabet size.
    """
    t = a.t
    if t == 1:
        return True

    def pair_id(p: int, q: int) -> int:
        if p > q:
            p, q = q, p
        return p * t + q

    preds: list[list[int]] = [[] for _ in range(t * t)]
    for p in range(t):
        for q in range(p + 1, t):
            src = pair_id(p, q)
            for x in range(a.alphabet_size):
                preds[pair_id(a.delta[p][x], a.delta[q][x])].append(src)

    reached = [False] * (t * t)
    queue = deque()
    for r in range(t):
        reached[pair_id(r, r)] = True
        queue.append(pair_id(r, r))
    while queue:
        cur = queue.popleft()
        for src in preds[cur]:
            if not reached[src]:
                reached[src] = True
                queue.append(src)
    return all(reached[pair_id(p, q)] for p in range(t) for q in range(p + 1, t))


def _image_masks(a: Dfa) -> list[list[int]]:
    return [[1 << a.delta[v][x] for v in range(a.t)] for x in range(a.alphabet_size)]


def shortest_reset_word(a: Dfa, limit: Optional[int] = None) -> Optional[Word]:
    """Shortest reset word by subset BFS, or None if none exists (within limit).

    Letters are expanded in increasing order, so among equal-length reset words
    the lexicographically least is returned; repeated calls are identical.
    """
    t = a.t
    full = (1 << t) - 1
    if t == 1:
        return ()
    bits = _image_masks(a)
    parent: dict[int, tuple[int, int]] = {full: (-1, -1)}
    depth = {full: 0}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        d = depth[cur]
        if limit is not None and d >= limit:
            continue
        for x in range(a.alphabet_size):
            row = bits[x]
            nxt = 0
            rem = cur
            while rem:
                low = rem & -rem
                nxt |= row[low.bit_length() - 1]
                rem ^= low
            if nxt in parent:
                continue
            parent[nxt] = (cur, x)
            depth[nxt] = d + 1
            if nxt & (nxt - 1) == 0:
                word = []
                node = nxt
                while parent[node][1] != -1:
                    node, letter = parent[node]
                    word.append(letter)
                word.reverse()
                return tuple(word)
            queue.append(nxt)
    return None


def syn_decide(a: Dfa, k: int) -> bool:
    """Does a reset word of length <= k exist?

    When k reaches the pin bound, synchronizability alone settles the answer,
    so the subset search is skipped.
    """
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    if k >= pin_bound(a.t):
        return is_synchronizing(a)
    return shortest_reset_word(a, limit=k) is not None
