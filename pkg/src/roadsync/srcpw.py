"""Fixed-word road colorings on out-degree-2 graphs.

G_w is the set of out-degree-2 multigraphs admitting a coloring delta with
|delta(Q, w)| = 1.  Membership for the length-3 words is decided by a duty
fixpoint plus propagation-guided selection (derived here, exact, and validated
exhaustively against the brute-force oracle; the propagation leaves almost
nothing for the backtracking fallback to do).  The abb class additionally has
the distance-layer characterization, which doubles as a witness construction,
and the aaa class reduces to a self-loop plus three backward layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import Word, apply_word, word_from_str, word_to_str
from .errors import InvalidInputError
from .graphs import (
    Coloring,
    Multigraph,
    apply_coloring,
    coloring_from_index,
    distance_layers,
    is_admissible,
    out_degree_uniform,
)

CANONICAL_WORDS = ("aaa", "aab", "aba", "abb")


@dataclass(frozen=True)
class FixedWordClass:
    """One of the four canonical length-3 words over a two-letter alphabet."""

    word: str

    def __post_init__(self) -> None:
        if self.word not in CANONICAL_WORDS:
            raise InvalidInputError(f"word must be one of {CANONICAL_WORDS}")

    @classmethod
    def canonicalize(cls, text: str) -> "FixedWordClass":
        """Normalize the first letter to `a` using the color-swap symmetry."""
        letters = word_from_str(text, 2)
        if len(letters) != 3:
            raise InvalidInputError("fixed-word classes cover length-3 words")
        if letters[0] == 1:
            letters = tuple(1 - x for x in letters)
        return cls(word_to_str(letters, 2))

    @property
    def letters(self) -> Word:
        return word_from_str(self.word, 2)


def _require_outdeg2(g: Multigraph) -> None:
    if out_degree_uniform(g) != 2:
        raise InvalidInputError("fixed-word machinery needs out-degree 2")


def in_class_oracle(g: Multigraph, w: Sequence[int]) -> Optional[Coloring]:
    """Brute force over all colorings: first one with |delta(Q, w)| = 1.

    Walks the full coloring space in enumeration order (bitmask images keep
    this fast for t around 20); independent of the polynomial deciders.
    """
    _require_outdeg2(g)
    index = _oracle_first_index(g, w)
    return None if index is None else coloring_from_index(g, index)


def _oracle_first_index(g: Multigraph, w: Sequence[int]) -> Optional[int]:
    t = g.t
    e0 = [1 << ts[0] for ts in g.out_edges]
    e1 = [1 << ts[1] for ts in g.out_edges]
    full = (1 << t) - 1
    word = tuple(w)
    for c in range(1 << t):
        ta = [0] * t
        tb = [0] * t
        for v in range(t):
            if (c >> (t - 1 - v)) & 1:
                ta[v], tb[v] = e1[v], e0[v]
            else:
                ta[v], tb[v] = e0[v], e1[v]
        img = full
        for x in word:
            tab = ta if x == 0 else tb
            nxt = 0
            m = img
            while m:
                low = m & -m
                nxt |= tab[low.bit_length() - 1]
                m ^= low
            img = nxt
        if img & (img - 1) == 0:
            return c
    return None


def fixed_word_coloring(g: Multigraph, w: Sequence[int]) -> Optional[Coloring]:
    """Exact search for a coloring with |delta(Q, w)| = 1.

    Per target q, a state active after i letters owes a duty: the edge it
    assigns to letter w_i must land in the level-(i+1) hit set (level 0 binds
    every state, level |w| is {q}).  A greatest fixpoint over per-state duty
    viability prunes the hit sets, then the residual per-state binary slot
    choices are resolved by demand propagation with backtracking.  The
    propagation discharges almost every instance without branching; returned
    colorings are always verified.
    """
    _require_outdeg2(g)
    for x in w:
        if x not in (0, 1):
            raise InvalidInputError("fixed-word search covers two-letter words")
    if len(w) == 0:
        return _trivial_coloring(g) if g.t == 1 else None
    dist = _min_edge_distance_to(g)
    for q in range(g.t):
        # Every state needs a path of length exactly |w| to q, hence an edge
        # into the (|w|-1)-step backward cone; cheap necessary filter.
        if not _cone_filter(g, q, len(w), dist):
            continue
        coloring = _fixed_word_at(g, tuple(w), q)
        if coloring is not None:
            return coloring
    return None


def _trivial_coloring(g: Multigraph) -> Coloring:
    return Coloring(tuple((0, 1) for _ in range(g.t)))


def _min_edge_distance_to(g: Multigraph) -> list[list[int]]:
    # dist[q][v]: shortest path length v -> q, or a large sentinel.
    big = g.t + 10
    preds: list[list[int]] = [[] for _ in range(g.t)]
    for u in range(g.t):
        for v in g.out_edges[u]:
            preds[v].append(u)
    out = []
    for q in range(g.t):
        dist = [big] * g.t
        dist[q] = 0
        frontier = [q]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                for u in preds[v]:
                    if dist[u] > d:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        out.append(dist)
    return out


def _cone_filter(g: Multigraph, q: int, length: int, dist: list[list[int]]) -> bool:
    dq = dist[q]
    for v in range(g.t):
        if not any(dq[u] <= length - 1 for u in g.out_edges[v]):
            return False
    return True


def _fixed_word_at(g: Multigraph, w: Word, q: int) -> Optional[Coloring]:
    t, L = g.t, len(w)
    tgt = g.out_edges
    levels = range(1, L)

    def duty_ok(v: int, sigma: int, i: int, hit: list[set[int]]) -> bool:
        slot = sigma if w[i] == 0 else 1 - sigma
        target = tgt[v][slot]
        if i + 1 == L:
            return target == q
        return target in hit[i + 1]

    hit: list[set[int]] = [set() for _ in range(L)]
    for i in levels:
        hit[i] = set(range(t))
    while True:
        changed = False
        for i in levels:
            keep = {
                v for v in hit[i]
                if any(duty_ok(v, s, 0, hit) and duty_ok(v, s, i, hit)
                       for s in (0, 1))
            }
            if keep != hit[i]:
                hit[i] = keep
                changed = True
        if not changed:
            break
    if any(not duty_ok(v, 0, 0, hit) and not duty_ok(v, 1, 0, hit)
           for v in range(t)):
        return None

    # Exact selection: sigma per state plus the duty levels demanded of it by
    # already-made choices.  Unassigned duty targets are judged optimistically
    # through the hit sets, assigned ones exactly via requeueing.
    sigma: list[Optional[int]] = [None] * t
    demand: list[set[int]] = [{0} for _ in range(t)]

    def options(v: int) -> list[int]:
        out = []
        for s in (0, 1):
            if all(duty_ok(v, s, i, hit) for i in demand[v]):
                out.append(s)
        return out

    def propagate(queue: list[int], trail: list) -> bool:
        while queue:
            v = queue.pop()
            if sigma[v] is None:
                opts = options(v)
                if not opts:
                    return False
                if len(opts) == 2:
                    continue
                sigma[v] = opts[0]
                trail.append(("sigma", v, None))
            s = sigma[v]
            if not all(duty_ok(v, s, i, hit) for i in demand[v]):
                return False
            for i in list(demand[v]):
                if i + 1 == L:
                    continue
                slot = s if w[i] == 0 else 1 - s
                u = tgt[v][slot]
                if i + 1 not in demand[u]:
                    demand[u].add(i + 1)
                    trail.append(("demand", u, i + 1))
                    queue.append(u)
        return True

    def undo(trail: list, mark: int) -> None:
        while len(trail) > mark:
            kind, v, payload = trail.pop()
            if kind == "sigma":
                sigma[v] = None
            else:
                demand[v].discard(payload)

    def search(v: int, trail: list) -> bool:
        while v < t and sigma[v] is not None:
            v += 1
        if v == t:
            return True
        for s in options(v):
            mark = len(trail)
            sigma[v] = s
            trail.append(("sigma", v, None))
            if propagate([v], trail) and search(v + 1, trail):
                return True
            undo(trail, mark)
        return False

    trail: list = []
    if not propagate(list(range(t)), trail):
        return None
    if not search(0, trail):
        return None
    slots = tuple((0, 1) if s == 0 else (1, 0) for s in sigma)
    coloring = Coloring(slots)
    dfa = apply_coloring(g, coloring)
    if len(apply_word(dfa, dfa.full_set(), w)) == 1:
        return coloring
    return None


def decide_aaa(g: Multigraph) -> bool:
    """Membership in G_aaa.

    Equivalent direct form: some q with a self-loop edge whose backward layers
    cover every vertex within 3 steps; the fixpoint machinery reduces to that.
    """
    return fixed_word_coloring(g, (0, 0, 0)) is not None


def decide_aab(g: Multigraph) -> bool:
    """Membership in G_aab minus G_aaa."""
    return (fixed_word_coloring(g, (0, 0, 1)) is not None) and not decide_aaa(g)


def decide_aba(g: Multigraph) -> bool:
    """Membership in G_aba minus G_aaa."""
    return (fixed_word_coloring(g, (0, 1, 0)) is not None) and not decide_aaa(g)


def abb_witness_target(g: Multigraph) -> Optional[int]:
    """A vertex q such that every vertex has an out-edge into V_2(q), if any."""
    _require_outdeg2(g)
    for q in range(g.t):
        dist = distance_layers(g, q)
        v2 = {v for v in range(g.t) if dist[v] == 2}
        if all(any(u in v2 for u in g.out_edges[v]) for v in range(g.t)):
            return q
    return None


def abb_coloring_from_target(g: Multigraph, q: int) -> Coloring:
    """Label edges into V_2(q) with a (lower slot wins ties), the rest with b."""
    _require_outdeg2(g)
    dist = distance_layers(g, q)
    v2 = {v for v in range(g.t) if dist[v] == 2}
    slots = []
    for v in range(g.t):
        t0, t1 = g.out_edges[v]
        if t0 in v2:
            slots.append((0, 1))
        elif t1 in v2:
            slots.append((1, 0))
        else:
            raise InvalidInputError(f"vertex {v} has no edge into V_2({q})")
    return Coloring(tuple(slots))


def decide_abb(g: Multigraph) -> bool:
    """Membership in G_abb minus (G_aba union G_aaa).

    Characterization: outside those classes, membership holds iff some q has
    every vertex sending an out-edge into V_2(q); the constructed coloring
    labels V_2(q)-bound edges with a and synchronizes by abb at q.
    """
    _require_outdeg2(g)
    if decide_aaa(g) or (fixed_word_coloring(g, (0, 1, 0)) is not None):
        return False
    return abb_witness_target(g) is not None


def recolor_abb_to_aba(g: Multigraph, c: Coloring) -> Coloring:
    """Swap the two edge colors at every state whose b-edge enters the abb target.

    Preconditions: c synchronizes g by abb at some q, q is in the image of
    letter a, and g is not in G_aaa.  The result synchronizes by aba at q.
    """
    _require_outdeg2(g)
    dfa = apply_coloring(g, c)
    image = apply_word(dfa, dfa.full_set(), (0, 1, 1))
    if len(image) != 1:
        raise InvalidInputError("precondition violated: coloring does not synchronize by abb")
    (q,) = image
    if q not in apply_word(dfa, dfa.full_set(), (0,)):
        raise InvalidInputError("precondition violated: target not in the image of letter a")
    if decide_aaa(g):
        raise InvalidInputError("precondition violated: graph lies in G_aaa")
    slots = []
    for v in range(g.t):
        b_slot = c.letter_slot(v, 1)
        if g.out_edges[v][b_slot] == q:
            a, b = c.slot_letters[v]
            slots.append((1 - a, 1 - b))
        else:
            slots.append(c.slot_letters[v])
    return Coloring(tuple(slots))


def srcp_k3_decide(g: Multigraph) -> bool:
    """SRCP with out-degree 2 and k = 3, via the four fixed-word classes."""
    if not is_admissible(g):
        raise InvalidInputError("srcp_k3_decide is defined on admissible graphs")
    _require_outdeg2(g)
    return (decide_aaa(g) or decide_aab(g) or decide_aba(g) or decide_abb(g))


def srcp_k3_decide_unchecked(g: Multigraph) -> bool:
    """Class-union decision without the admissibility guard (oracle comparisons)."""
    _require_outdeg2(g)
    return any(
        fixed_word_coloring(g, w) is not None
        for w in ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1))
    )
