"""Shared brute-force helpers for the test suite.

Everything here is deliberately independent of the library's clever paths:
plain enumeration over words, colorings, and graphs.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, permutations, product

from roadsync.automata import Dfa, apply_word
from roadsync.graphs import Multigraph


def random_dfa(rng: random.Random, t: int, k: int) -> Dfa:
    return Dfa(t, k, tuple(tuple(rng.randrange(t) for _ in range(k))
                           for _ in range(t)))


def random_multigraph(rng: random.Random, t: int, d: int) -> Multigraph:
    return Multigraph(t, tuple(tuple(rng.randrange(t) for _ in range(d))
                               for _ in range(t)))


def outdeg2_graphs_exhaustive(t: int):
    """All out-degree-2 multigraphs on t vertices with unordered slot pairs.

    Slot order never changes any decision in this library (colorings range
    over both orders), so (u, v) with u <= v per vertex is a complete set.
    """
    pairs = list(combinations_with_replacement(range(t), 2))
    for rows in product(pairs, repeat=t):
        yield Multigraph(t, rows)


def canonical_iso_form(g: Multigraph) -> tuple:
    """Minimal relabeling of an out-degree-2 graph over all vertex bijections."""
    best = None
    for perm in permutations(range(g.t)):
        rows = [None] * g.t
        for v in range(g.t):
            ts = tuple(sorted(perm[u] for u in g.out_edges[v]))
            rows[perm[v]] = ts
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def brute_shortest_reset(a: Dfa, max_len: int):
    """Word enumeration in length-then-lex order; None if nothing found."""
    full = a.full_set()
    if a.t == 1:
        return ()
    for length in range(1, max_len + 1):
        for word in product(range(a.alphabet_size), repeat=length):
            if len(apply_word(a, full, word)) == 1:
                return word
    return None


def all_reset_words_upto(a: Dfa, max_len: int):
    full = a.full_set()
    out = []
    for length in range(max_len + 1):
        for word in product(range(a.alphabet_size), repeat=length):
            if len(apply_word(a, full, word)) == 1:
                out.append(word)
    return out


def oracle_word_memberships(g: Multigraph, words) -> dict:
    """For each word, does SOME coloring synchronize by it?  One bitmask pass."""
    t = g.t
    e0 = [1 << ts[0] for ts in g.out_edges]
    e1 = [1 << ts[1] for ts in g.out_edges]
    full = (1 << t) - 1
    found = {w: False for w in words}
    remaining = len(found)
    for c in range(1 << t):
        ta = [0] * t
        tb = [0] * t
        for v in range(t):
            if (c >> (t - 1 - v)) & 1:
                ta[v], tb[v] = e1[v], e0[v]
            else:
                ta[v], tb[v] = e0[v], e1[v]
        for w in words:
            if found[w]:
                continue
            img = full
            for x in w:
                tab = ta if x == 0 else tb
                nxt = 0
                m = img
                while m:
                    low = m & -m
                    nxt |= tab[low.bit_length() - 1]
                    m ^= low
                img = nxt
            if img & (img - 1) == 0:
                found[w] = True
                remaining -= 1
        if not remaining:
            break
    return found


def enumerate_simple_cycle_lengths(g: Multigraph) -> set[int]:
    """All simple cycle lengths (vertices distinct except endpoints)."""
    lengths = set()
    t = g.t

    def walk(start: int, v: int, visited: frozenset, depth: int):
        for u in set(g.out_edges[v]):
            if u == start:
                lengths.add(depth + 1)
            elif u not in visited and depth + 1 < t:
                walk(start, u, visited | {u}, depth + 1)

    for s in range(t):
        walk(s, s, frozenset({s}), 0)
    return lengths
