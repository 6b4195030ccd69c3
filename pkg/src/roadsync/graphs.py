"""Directed multigraphs with ordered out-edge slots, and colorings into DFAs.

Slot order is part of a graph's identity: colorings assign letters to slots,
and edge deletion removes individual slots.  Parallel edges are repeated
targets, never collapsed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .automata import Dfa, LETTER_CHARS
from .errors import InvalidInputError


@dataclass(frozen=True)
class Multigraph:
    t: int
    out_edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.t < 1:
            raise InvalidInputError("graph needs t >= 1")
        if len(self.out_edges) != self.t:
            raise InvalidInputError("out_edges needs one slot list per vertex")
        for targets in self.out_edges:
            for v in targets:
                if not 0 <= v < self.t:
                    raise InvalidInputError(f"edge target {v} out of range")

    def edge_count(self) -> int:
        return sum(len(ts) for ts in self.out_edges)


@dataclass(frozen=True)
class Coloring:
    """Per-vertex bijection from out-edge slots to letters 0..d-1."""

    slot_letters: tuple[tuple[int, ...], ...]

    def letter_slot(self, v: int, letter: int) -> int:
        return self.slot_letters[v].index(letter)


def make_graph(out_edges: Sequence[Sequence[int]]) -> Multigraph:
    return Multigraph(len(out_edges), tuple(tuple(ts) for ts in out_edges))


def out_degree_uniform(g: Multigraph) -> Optional[int]:
    degrees = {len(ts) for ts in g.out_edges}
    if len(degrees) == 1:
        return degrees.pop()
    return None


def strongly_connected_components(g: Multigraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative to survive deep graphs."""
    index = [-1] * g.t
    low = [0] * g.t
    on_stack = [False] * g.t
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(g.t):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            targets = g.out_edges[v]
            while ei < len(targets):
                w = targets[ei]
                ei += 1
                if index[w] == -1:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return components


def is_strongly_connected(g: Multigraph) -> bool:
    return len(strongly_connected_components(g)) == 1


def is_aperiodic(g: Multigraph) -> bool:
    """True iff the gcd of all cycle lengths is 1.

    Per strongly connected component with at least one internal edge, take BFS
    levels from any root and fold gcd(level(u)+1-level(v)) over internal edges;
    the overall gcd across components is the graph's period.
    """
    overall = 0
    saw_cycle = False
    for comp in strongly_connected_components(g):
        members = set(comp)
        internal = [
            (u, v) for u in comp for v in g.out_edges[u] if v in members
        ]
        if not internal:
            continue
        saw_cycle = True
        root = comp[0]
        level = {root: 0}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in g.out_edges[u]:
                    if v in members and v not in level:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        for u, v in internal:
            overall = math.gcd(overall, abs(level[u] + 1 - level[v]))
    if not saw_cycle:
        raise InvalidInputError("graph has no cycles; period undefined")
    return overall == 1


def is_admissible(g: Multigraph) -> bool:
    """Uniform out-degree and aperiodic."""
    d = out_degree_uniform(g)
    if d is None:
        return False
    if d == 0:
        return False
    return is_aperiodic(g)


def distance_layers(g: Multigraph, q: int) -> list[Optional[int]]:
    """Shortest directed path length from each vertex to q (None if unreachable)."""
    if not 0 <= q < g.t:
        raise InvalidInputError(f"vertex {q} out of range")
    preds: list[list[int]] = [[] for _ in range(g.t)]
    for u in range(g.t):
        for v in g.out_edges[u]:
            preds[v].append(u)
    dist: list[Optional[int]] = [None] * g.t
    dist[q] = 0
    frontier = [q]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in preds[v]:
                if dist[u] is None:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def vertices_at_distance(g: Multigraph, q: int, i: int) -> frozenset[int]:
    dist = distance_layers(g, q)
    return frozenset(v for v in range(g.t) if dist[v] == i)


def apply_coloring(g: Multigraph, c: Coloring) -> Dfa:
    """Turn g into a DFA: delta(v, letter) follows the slot carrying that letter."""
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("coloring needs uniform out-degree")
    if len(c.slot_letters) != g.t:
        raise InvalidInputError("coloring must cover every vertex")
    rows = []
    for v in range(g.t):
        assignment = c.slot_letters[v]
        if sorted(assignment) != list(range(d)):
            raise InvalidInputError(f"coloring at vertex {v} is not a bijection")
        row = [0] * d
        for slot, letter in enumerate(assignment):
            row[letter] = g.out_edges[v][slot]
        rows.append(tuple(row))
    return Dfa(g.t, d, tuple(rows))


def coloring_count(g: Multigraph) -> int:
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("coloring count needs uniform out-degree")
    return math.factorial(d) ** g.t


def coloring_from_index(g: Multigraph, index: int) -> Coloring:
    """Reconstruct the index-th coloring of the enumeration order.

    The order is lexicographic over vertices (vertex 0 is the most significant
    digit), with per-vertex permutations ranked lexicographically; this makes
    the stream reproducible from an index for partitioned enumeration.
    """
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("coloring needs uniform out-degree")
    total = coloring_count(g)
    if not 0 <= index < total:
        raise InvalidInputError(f"coloring index {index} out of range")
    perms = list(permutations(range(d)))
    base = len(perms)
    digits = []
    for _ in range(g.t):
        index, digit = divmod(index, base)
        digits.append(digit)
    digits.reverse()
    return Coloring(tuple(perms[digit] for digit in digits))


def enumerate_colorings(g: Multigraph) -> Iterator[Coloring]:
    """All per-vertex slot->letter bijections, in the documented index order."""
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("coloring needs uniform out-degree")
    perms = list(permutations(range(d)))

    def rec(v: int, acc: list[tuple[int, ...]]) -> Iterator[Coloring]:
        if v == g.t:
            yield Coloring(tuple(acc))
            return
        for p in perms:
            acc.append(p)
            yield from rec(v + 1, acc)
            acc.pop()

    yield from rec(0, [])


def parse_graph(text: str) -> Multigraph:
    """Parse the "graph" text format: header `graph <t> <d>`, then t slot rows."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("graph"):
        raise InvalidInputError("expected `graph <t> <d>` header")
    head = lines[0].split()
    if len(head) != 3:
        raise InvalidInputError("malformed graph header")
    t, d = int(head[1]), int(head[2])
    if len(lines) != 1 + t:
        raise InvalidInputError(f"expected {t} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = tuple(int(tok) for tok in line.split())
        if len(row) != d:
            raise InvalidInputError("row width must equal out-degree")
        rows.append(row)
    return Multigraph(t, tuple(rows))


def write_graph(g: Multigraph) -> str:
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("graph text format needs uniform out-degree")
    lines = [f"graph {g.t} {d}"]
    for ts in g.out_edges:
        lines.append(" ".join(str(v) for v in ts))
    return "\n".join(lines) + "\n"


def write_graph_with_colors(g: Multigraph, c: Coloring) -> str:
    """Graph format followed by a parallel per-slot letter table."""
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("graph text format needs uniform out-degree")
    text = write_graph(g)
    lines = ["colors"]
    for v in range(g.t):
        lines.append(" ".join(LETTER_CHARS[c.slot_letters[v][s]] for s in range(d)))
    return text + "\n".join(lines) + "\n"


def to_dot(g: Multigraph, coloring: Optional[Coloring] = None,
           names: Optional[Sequence[str]] = None) -> str:
    """DOT export: one edge per slot, labeled with its letter when colored."""
    out = ["digraph g {"]
    for v in range(g.t):
        label = names[v] if names else str(v)
        out.append(f'  n{v} [label="{label}"];')
    for v in range(g.t):
        for slot, w in enumerate(g.out_edges[v]):
            if coloring is not None:
                letter = coloring.slot_letters[v][slot]
                out.append(f'  n{v} -> n{w} [label="{LETTER_CHARS[letter]}"];')
            else:
                out.append(f"  n{v} -> n{w};")
    out.append("}")
    return "\n".join(out) + "\n"
