"""Synchronizing-road-coloring decisions: brute-force oracle, shortcuts, kernel.

srcp_oracle is the ground truth everything else is validated against: it walks
every coloring in enumeration order and asks for a reset word of length <= k.
A numpy sweep accelerates the out-degree-2 case without changing the sequential
first-witness semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

import numpy as np

from .automata import Word
from .errors import InvalidInputError, SizeLimitError
from .graphs import (
    Coloring,
    Multigraph,
    apply_coloring,
    coloring_count,
    coloring_from_index,
    enumerate_colorings,
    is_admissible,
    is_aperiodic,
    out_degree_uniform,
)
from .syncsolve import pin_bound, shortest_reset_word

# Full coloring enumeration is refused beyond this many colorings.
ORACLE_COLORING_CAP = 1 << 26
# Pattern-based decision enumerates t^t letter-target maps.
PATTERN_STATE_CAP = 4
_SWEEP_CHUNK = 1 << 16
# The vectorized sweep evolves one image per word, so 2^(k+1) arrays; the
# per-coloring BFS path takes over beyond this depth.
_SWEEP_WORD_DEPTH_CAP = 8


def _sync_mask_chunk(e0: np.ndarray, e1: np.ndarray, t: int, k: int,
                     idx: np.ndarray) -> np.ndarray:
    """Boolean array: which coloring indices admit a reset word of length <= k.

    Colorings are packed into idx with vertex 0 as the most significant bit;
    bit 0 means slot 0 carries letter a.  Images of the full state set are
    evolved for every word of length <= k in parallel across the chunk.
    """
    digits = [(idx >> (t - 1 - v)) & 1 for v in range(t)]
    full = np.full(idx.shape, (1 << t) - 1, dtype=np.uint64)
    ok = np.zeros(idx.shape, dtype=bool)
    one = np.uint64(1)

    def step(active: np.ndarray, letter: int) -> np.ndarray:
        new = np.zeros_like(active)
        for v in range(t):
            m = (active >> np.uint64(v)) & one
            if letter == 0:
                tgt = np.where(digits[v] == 0, e0[v], e1[v]).astype(np.uint64)
            else:
                tgt = np.where(digits[v] == 0, e1[v], e0[v]).astype(np.uint64)
            new |= m << tgt
        return new

    if t == 1:
        return np.ones(idx.shape, dtype=bool)
    frontier = [full]
    for _ in range(k):
        nxt = []
        for active in frontier:
            for letter in (0, 1):
                img = step(active, letter)
                ok |= (img & (img - one)) == 0
                nxt.append(img)
        frontier = nxt
    return ok


def sweep_sync_indices(g: Multigraph, k: int,
                       chunk: int = _SWEEP_CHUNK) -> Iterator[int]:
    """Ascending enumeration indices of colorings synchronizable within k letters.

    Out-degree 2 only; the order matches enumerate_colorings exactly.
    """
    d = out_degree_uniform(g)
    if d != 2:
        raise InvalidInputError("sweep_sync_indices needs out-degree 2")
    if k > _SWEEP_WORD_DEPTH_CAP:
        raise SizeLimitError(
            f"sweep explores 2^(k+1) word nodes; capped at k={_SWEEP_WORD_DEPTH_CAP}"
        )
    t = g.t
    total = 1 << t
    e0 = np.array([g.out_edges[v][0] for v in range(t)], dtype=np.uint64)
    e1 = np.array([g.out_edges[v][1] for v in range(t)], dtype=np.uint64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        ok = _sync_mask_chunk(e0, e1, t, k, idx)
        for i in np.nonzero(ok)[0]:
            yield start + int(i)


def srcp_oracle(g: Multigraph, k: int,
                coloring_cap: int = ORACLE_COLORING_CAP,
                fast: bool = True) -> Optional[tuple[Coloring, Word]]:
    """First coloring (in enumeration order) with a reset word of length <= k.

    Returns that coloring and its shortest reset word, or None.  Exhaustive:
    this is the oracle the polynomial paths are validated against.
    """
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("srcp_oracle needs uniform out-degree")
    if coloring_count(g) > coloring_cap:
        raise SizeLimitError(
            f"srcp_oracle capped at {coloring_cap} colorings; "
            f"this graph has {coloring_count(g)}"
        )
    if fast and d == 2 and g.t <= 64 and k <= _SWEEP_WORD_DEPTH_CAP:
        for index in sweep_sync_indices(g, k):
            coloring = coloring_from_index(g, index)
            word = shortest_reset_word(apply_coloring(g, coloring), limit=k)
            assert word is not None
            return coloring, word
        return None
    for coloring in enumerate_colorings(g):
        word = shortest_reset_word(apply_coloring(g, coloring), limit=k)
        if word is not None:
            return coloring, word
    return None


def srcp_decide(g: Multigraph, k: int,
                coloring_cap: int = ORACLE_COLORING_CAP) -> bool:
    """Decide SRCP on an admissible graph.

    k >= pin_bound(t) is an immediate yes: every admissible graph has a
    synchronizing coloring and the bound caps its shortest reset word.
    """
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    if not is_admissible(g):
        raise InvalidInputError("srcp_decide is defined on admissible graphs")
    if k >= pin_bound(g.t):
        return True
    d = out_degree_uniform(g)
    if d == 2 and k == 3:
        from .srcpw import srcp_k3_decide

        return srcp_k3_decide(g)
    if coloring_count(g) > coloring_cap:
        if k <= 3:
            return srcp_exists_small_k(g, k)
        raise SizeLimitError("instance too large for srcp_oracle and no fast path applies")
    return srcp_oracle(g, k, coloring_cap=coloring_cap) is not None


@dataclass(frozen=True)
class KernelResult:
    graph: Multigraph
    k: int
    trivially_yes: bool
    aperiodicity_preserved: Optional[bool]


def kernelize(g: Multigraph, k: int) -> KernelResult:
    """Reduce out-degree to at most t*(pin_bound(t)-1), preserving the answer.

    For k >= pin_bound(t) the instance is already a yes; a fixed trivial yes
    instance (single vertex, all self-loops, k'=0) is returned.  Otherwise one
    edge is deleted per vertex and pass, always from a maximum-multiplicity
    multiedge (ties to the smallest target, deleting the highest slot), until
    the out-degree bound holds.  The vertex set never changes.
    """
    d = out_degree_uniform(g)
    if d is None or not is_admissible(g):
        raise InvalidInputError("kernelize is defined on admissible graphs")
    z = pin_bound(g.t)
    if k >= z:
        trivial = Multigraph(1, (tuple([0] * d),))
        return KernelResult(trivial, 0, True, True)
    threshold = g.t * (z - 1)
    edges = [list(ts) for ts in g.out_edges]
    degree = d
    while degree > threshold:
        for v in range(g.t):
            counts: dict[int, int] = {}
            for u in edges[v]:
                counts[u] = counts.get(u, 0) + 1
            best = max(counts.items(), key=lambda item: (item[1], -item[0]))
            target, multiplicity = best
            # Pigeonhole: degree > t*(z-1) over <= t targets forces >= z copies.
            assert multiplicity >= z
            for slot in range(len(edges[v]) - 1, -1, -1):
                if edges[v][slot] == target:
                    del edges[v][slot]
                    break
        degree -= 1
    result = Multigraph(g.t, tuple(tuple(ts) for ts in edges))
    preserved: Optional[bool]
    if degree == 0:
        preserved = None
    else:
        try:
            preserved = is_aperiodic(result)
        except InvalidInputError:
            preserved = None
    return KernelResult(result, k, False, preserved)


def _pattern_words(k: int) -> list[tuple[int, ...]]:
    # Words over abstract letters 0,1,2 in first-occurrence order.
    patterns = []
    if k >= 1:
        patterns.append((0,))
    if k >= 2:
        patterns.extend([(0, 0), (0, 1)])
    if k >= 3:
        patterns.extend([(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)])
    return patterns


def srcp_exists_small_k(g: Multigraph, k: int) -> bool:
    """Complete SRCP decision for k <= 3 that never enumerates full colorings.

    A word of length <= 3 uses at most 3 distinct letters, and a coloring is
    per-vertex injective on them, so only the chosen targets (with edge
    multiplicities) matter.  Letter-target maps are enumerated per abstract
    word pattern; t is capped because the first letter ranges over t^t maps.
    """
    d = out_degree_uniform(g)
    if d is None:
        raise InvalidInputError("needs uniform out-degree")
    if k > 3:
        raise InvalidInputError("pattern decision only covers k <= 3")
    if g.t > PATTERN_STATE_CAP:
        raise SizeLimitError(f"pattern decision capped at t={PATTERN_STATE_CAP}")
    if g.t == 1:
        return True
    if k == 0:
        return False
    counts = [{u: ts.count(u) for u in set(ts)} for ts in g.out_edges]
    supports = [sorted(c) for c in counts]
    t = g.t

    def has_slot(v: int, target: int, used: list[int]) -> bool:
        # A free slot v->target after the used targets consumed one slot each.
        need = 1 + sum(1 for u in used if u == target)
        return counts[v].get(target, 0) >= need

    for pattern in _pattern_words(k):
        distinct = max(pattern) + 1
        if distinct > d:
            continue
        if distinct == 1:
            length = len(pattern)
            for amap in product(*(supports[v] for v in range(t))):
                image = set(range(t))
                for _ in range(length):
                    image = {amap[v] for v in image}
                if len(image) == 1:
                    return True
            continue
        # Two or three distinct letters; first letter fixed as an a-map.
        for amap in product(*(supports[v] for v in range(t))):
            if _pattern_rest_feasible(g, counts, amap, pattern):
                return True
    return False


def _pattern_rest_feasible(g: Multigraph, counts, amap, pattern) -> bool:
    t = g.t
    length = len(pattern)

    def options(v: int, used: list[int]) -> list[int]:
        out = []
        for target, c in counts[v].items():
            need = 1 + sum(1 for u in used if u == target)
            if c >= need:
                out.append(target)
        return out

    # Evolve the image, branching per-vertex only on letters beyond the first.
    def walk(pos: int, image: frozenset[int], assign: dict[tuple[int, int], int]) -> bool:
        if len(image) == 1:
            return True
        if pos == length:
            return False
        letter = pattern[pos]
        if letter == 0:
            nxt = frozenset(amap[v] for v in image)
            return walk(pos + 1, nxt, assign)
        todo = sorted(image)

        def choose(i: int, acc: dict[tuple[int, int], int]) -> bool:
            if i == len(todo):
                nxt = frozenset(acc[(v, letter)] for v in todo)
                return walk(pos + 1, nxt, acc)
            v = todo[i]
            if (v, letter) in acc:
                return choose(i + 1, acc)
            used = [amap[v]] + [acc[(v, l)] for l in range(1, letter)
                                if (v, l) in acc]
            for target in options(v, used):
                acc2 = dict(acc)
                acc2[(v, letter)] = target
                if choose(i + 1, acc2):
                    return True
            return False

        return choose(0, dict(assign))

    return walk(0, frozenset(range(t)), {})
