"""Composition of synchronization instances into one automaton.

Given t-state automata A_1..A_m with length budgets d_1..d_m (all below the
cubic bound z(t)), the composed automaton A' answers the disjunction: A' has a
reset word of length at most z(t)+1 iff some A_i has one of length at most
d_i.  A guard table of (z(t)+1) x (q(m)+1) x {T,F} states enforces that every
short reset word of A' has the shape

    alpha_i  y_1 ... y_{d_i}  kappa^{z(t)-1-d_i}  omega_s

with y_1..y_{d_i} a reset word of A_i: the selector alpha_i stamps the binary
activity pattern of i onto the table rows, letters of other instances scramble
the pattern back to row 0 (a dead end for short words), and only the bottom
row escapes to the absorbing state via the omega letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .automata import Dfa, apply_word
from .errors import InvalidInputError, SizeLimitError
from .syncsolve import is_synchronizing, pin_bound, shortest_reset_word, syn_decide

# verify_c1_c2_c3 enumerates every word of length z(t)+1.
C2_WORD_CAP = 10 ** 8
VERIFY_STATE_CAP = 3
VERIFY_ITEM_CAP = 2


@dataclass(frozen=True)
class BatchItem:
    """One composed instance: its automaton (kappa as letter 0) and budget."""

    dfa: Dfa
    d: int


@dataclass(frozen=True)
class CompositionBatch:
    t: int
    items: tuple[BatchItem, ...]

    def __post_init__(self) -> None:
        z = pin_bound(self.t)
        for item in self.items:
            if item.dfa.t != self.t:
                raise InvalidInputError("all batch items need the shared state count")
            if not all(item.dfa.delta[s][0] == s for s in range(self.t)):
                raise InvalidInputError("letter 0 of every item must be the identity")
            if item.d >= z:
                raise InvalidInputError("preprocessed budgets must be below the bound")

    @property
    def m(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class PreprocessResult:
    answer: Optional[bool]
    batch: Optional[CompositionBatch]


def add_identity_letter(a: Dfa) -> Dfa:
    """Prefix a fresh identity letter (kappa) as letter 0."""
    rows = tuple((s,) + row for s, row in enumerate(a.delta))
    return Dfa(a.t, a.alphabet_size + 1, rows)


def preprocess(raw: Sequence[tuple[Dfa, int]], t: int) -> PreprocessResult:
    """Resolve large budgets polynomially, then add kappa to the survivors.

    An item with d_i >= z(t) is decided by the synchronizability test alone:
    a yes short-circuits the whole batch, a no deletes the item.  An empty
    remainder short-circuits to false.
    """
    z = pin_bound(t)
    kept: list[BatchItem] = []
    for dfa, d in raw:
        if dfa.t != t:
            raise InvalidInputError("state count mismatch in composition input")
        if d < 0:
            raise InvalidInputError("budgets must be >= 0")
        if d >= z:
            if is_synchronizing(dfa):
                return PreprocessResult(True, None)
            continue
        kept.append(BatchItem(add_identity_letter(dfa), d))
    if not kept:
        return PreprocessResult(False, None)
    return PreprocessResult(None, CompositionBatch(t, tuple(kept)))


def big_m_branch(batch: CompositionBatch) -> Optional[bool]:
    """For m >= 2^t, decide every item directly and return the disjunction."""
    if batch.m < 2 ** batch.t:
        return None
    return any(syn_decide(item.dfa, item.d) for item in batch.items)


def pattern_width(m: int) -> int:
    """q(m) = floor(log2(m+1)); the guard table has q(m)+1 columns per flag."""
    if m < 1:
        raise InvalidInputError("need m >= 1")
    return (m + 1).bit_length() - 1


def pattern_subset(i: int, m: int) -> frozenset[int]:
    """Positions of the 1-bits of i inside R = {0..q(m)}; nonempty and proper."""
    if not 1 <= i <= m:
        raise InvalidInputError(f"pattern index {i} out of range 1..{m}")
    q = pattern_width(m)
    bits = frozenset(k for k in range(q + 1) if (i >> k) & 1)
    assert bits and len(bits) <= q
    return bits


def pattern_functions(i: int, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Concrete pattern functions (pi_T, pi_F) on R, as target tuples.

    The required ranges are the bit subset of i and its complement; listing a
    range ascending as b_0 < ... < b_{r-1}, we use pi(k) = b_{k mod r}.
    """
    q = pattern_width(m)
    inside = sorted(pattern_subset(i, m))
    outside = sorted(set(range(q + 1)) - set(inside))
    assert inside and outside

    def cyclic(targets: list[int]) -> tuple[int, ...]:
        return tuple(targets[k % len(targets)] for k in range(q + 1))

    return cyclic(inside), cyclic(outside)


@dataclass(frozen=True)
class ComposedAutomaton:
    dfa: Dfa
    t: int
    m: int
    d_prime: int
    z: int
    q: int
    state_names: tuple[str, ...]
    letter_names: tuple[str, ...]
    item_letter_offsets: tuple[int, ...]  # first non-kappa letter of each item
    item_alphabet_sizes: tuple[int, ...]  # including kappa

    # State layout: base states 0..t-1, then D, then guard cells.
    @property
    def dead(self) -> int:
        return self.t

    def guard_state(self, h: int, col: int, flag: int) -> int:
        return self.t + 1 + ((h * (self.q + 1) + col) * 2 + flag)

    def guard_cell_of(self, state: int) -> Optional[tuple[int, int, str]]:
        if state <= self.t:
            return None
        raw = state - self.t - 1
        flag = raw & 1
        raw >>= 1
        h, col = divmod(raw, self.q + 1)
        return (h, col, "TF"[flag])

    @property
    def kappa(self) -> int:
        return 0

    def x_letter(self, i: int, j: int) -> int:
        # j >= 1 indexes the non-kappa letters of item i (1-based item index).
        return self.item_letter_offsets[i - 1] + (j - 1)

    def alpha(self, i: int) -> int:
        return 1 + sum(k - 1 for k in self.item_alphabet_sizes) + (i - 1)

    def omega(self, s: int) -> int:
        return self.alpha(self.m) + 1 + s

    def letters_of_item(self, i: int) -> frozenset[int]:
        base = self.item_letter_offsets[i - 1]
        width = self.item_alphabet_sizes[i - 1] - 1
        return frozenset({0}) | frozenset(range(base, base + width))


def compose(batch: CompositionBatch) -> ComposedAutomaton:
    """Build the composed automaton A' with d' = z(t)+1.

    Letters: the shared identity kappa, the non-kappa letters of every item,
    one selector alpha_i per item, and one omega_s per base state.
    """
    t, m = batch.t, batch.m
    if m >= 2 ** t:
        raise InvalidInputError("compose needs m < 2^t; use big_m_branch instead")
    z = pin_bound(t)
    q = pattern_width(m)
    n_guard = 2 * (z + 1) * (q + 1)
    n_states = t + 1 + n_guard

    sizes = tuple(item.dfa.alphabet_size for item in batch.items)
    offsets = []
    cursor = 1
    for size in sizes:
        offsets.append(cursor)
        cursor += size - 1
    n_letters = cursor + m + t

    subsets = [pattern_subset(i, m) for i in range(1, m + 1)]
    pis = [pattern_functions(i, m) for i in range(1, m + 1)]

    dead = t

    def guard(h: int, col: int, flag: int) -> int:
        return t + 1 + ((h * (q + 1) + col) * 2 + flag)

    delta = [[0] * n_letters for _ in range(n_states)]

    def set_letter(letter: int, mapping) -> None:
        for s in range(n_states):
            delta[s][letter] = mapping(s)

    def base_case(state: int, on_base, on_guard):
        if state == dead:
            return dead
        if state < t:
            return on_base(state)
        h, col, flag = _unpack_guard(state, t, q)
        return on_guard(h, col, flag)

    # kappa: identity on base states, one row down on the guard table with
    # row 0 fixed and row z wrapping to row 0.
    def kappa_map(state: int) -> int:
        def on_guard(h, col, flag):
            if 1 <= h <= z - 1:
                return guard(h + 1, col, flag)
            return guard(0, col, flag)
        return base_case(state, lambda s: s, on_guard)

    set_letter(0, kappa_map)

    # x_{i,j}: the item's action on base states; on the guard table the rows
    # 1..d_i step down inside the activity pattern and betray it otherwise.
    for i in range(1, m + 1):
        item = batch.items[i - 1]
        inside = subsets[i - 1]

        def x_map_factory(j: int):
            def x_map(state: int) -> int:
                def on_guard(h, col, flag):
                    if 1 <= h <= item.d:
                        if flag == 0:  # T
                            if col in inside:
                                return guard(h + 1, col, 0)
                            return guard(0, col, 0)
                        if col not in inside:
                            return guard(h + 1, col, 1)
                        return guard(0, col, 0)
                    return guard(0, col, flag)
                return base_case(state, lambda s: item.dfa.delta[s][j], on_guard)
            return x_map

        for j in range(1, item.dfa.alphabet_size):
            set_letter(offsets[i - 1] + (j - 1), x_map_factory(j))

    # alpha_i: fixes base states and stamps row 1 with the pattern of i.
    alpha_base = cursor
    for i in range(1, m + 1):
        pi_t, pi_f = pis[i - 1]

        def alpha_map(state: int, pi_t=pi_t, pi_f=pi_f) -> int:
            def on_guard(h, col, flag):
                if flag == 0:
                    return guard(1, pi_t[col], 0)
                return guard(1, pi_f[col], 1)
            return base_case(state, lambda s: s, on_guard)

        set_letter(alpha_base + (i - 1), alpha_map)

    # omega_s: sends s and the bottom row to the absorbing state.
    omega_base = alpha_base + m
    for s_bar in range(t):
        def omega_map(state: int, s_bar=s_bar) -> int:
            def on_guard(h, col, flag):
                if h == z:
                    return dead
                return guard(0, col, flag)
            return base_case(state, lambda s: dead if s == s_bar else s, on_guard)

        set_letter(omega_base + s_bar, omega_map)

    dfa = Dfa(n_states, n_letters, tuple(tuple(row) for row in delta))

    state_names = [f"s{s + 1}" for s in range(t)] + ["D"]
    for h in range(z + 1):
        for col in range(q + 1):
            for flag in range(2):
                state_names.append(f"({h},{col},{'TF'[flag]})")
    state_names_ordered = [""] * n_states
    state_names_ordered[: t + 1] = state_names[: t + 1]
    for h in range(z + 1):
        for col in range(q + 1):
            for flag in range(2):
                state_names_ordered[guard(h, col, flag)] = f"({h},{col},{'TF'[flag]})"

    letter_names = ["kappa"]
    for i in range(1, m + 1):
        for j in range(1, sizes[i - 1]):
            letter_names.append(f"x{i},{j}")
    letter_names += [f"alpha{i}" for i in range(1, m + 1)]
    letter_names += [f"omega{s + 1}" for s in range(t)]

    return ComposedAutomaton(
        dfa=dfa,
        t=t,
        m=m,
        d_prime=z + 1,
        z=z,
        q=q,
        state_names=tuple(state_names_ordered),
        letter_names=tuple(letter_names),
        item_letter_offsets=tuple(offsets),
        item_alphabet_sizes=sizes,
    )


def _unpack_guard(state: int, t: int, q: int) -> tuple[int, int, int]:
    raw = state - t - 1
    flag = raw & 1
    raw >>= 1
    h, col = divmod(raw, q + 1)
    return h, col, flag


def compose_or_decide(raw: Sequence[tuple[Dfa, int]], t: int):
    """Full pipeline: preprocess, big-m shortcut, else compose."""
    pre = preprocess(raw, t)
    if pre.answer is not None:
        return pre.answer
    assert pre.batch is not None
    early = big_m_branch(pre.batch)
    if early is not None:
        return early
    return compose(pre.batch)


@dataclass(frozen=True)
class C123Report:
    c1_no_short_reset: bool
    c2_all_shaped: bool
    c3_assembled_words_reset: bool
    reset_word_count: int
    assembled_count: int

    @property
    def all_pass(self) -> bool:
        return (self.c1_no_short_reset and self.c2_all_shaped
                and self.c3_assembled_words_reset)


def _word_matches_form(composed: ComposedAutomaton, batch: CompositionBatch,
                       word: Sequence[int]) -> bool:
    z = composed.z
    if len(word) != z + 1:
        return False
    first = word[0]
    alpha_base = composed.alpha(1)
    if not alpha_base <= first < alpha_base + composed.m:
        return False
    i = first - alpha_base + 1
    item = batch.items[i - 1]
    letters_i = composed.letters_of_item(i)
    body = word[1:1 + item.d]
    tail = word[1 + item.d:z]
    last = word[z]
    if any(x not in letters_i for x in body):
        return False
    if any(x != composed.kappa for x in tail):
        return False
    omega_base = composed.omega(0)
    if not omega_base <= last < omega_base + composed.t:
        return False
    item_word = tuple(_to_item_letter(composed, i, x) for x in body)
    image = apply_word(item.dfa, item.dfa.full_set(), item_word)
    return len(image) == 1


def _to_item_letter(composed: ComposedAutomaton, i: int, letter: int) -> int:
    if letter == composed.kappa:
        return 0
    base = composed.item_letter_offsets[i - 1]
    return letter - base + 1


def verify_c1_c2_c3(composed: ComposedAutomaton,
                    batch: CompositionBatch,
                    word_cap: int = C2_WORD_CAP) -> C123Report:
    """Exhaustively check the three guard-table guarantees on a small instance.

    C1: no reset word of length <= z(t).  C2: every reset word of length
    exactly z(t)+1 has the selector/body/kappa/omega shape with a resetting
    body.  C3: every assembled word of that shape resets A'.
    """
    t, m, z = composed.t, composed.m, composed.z
    if t > VERIFY_STATE_CAP or m > VERIFY_ITEM_CAP:
        raise SizeLimitError(
            f"verify_c1_c2_c3 is exhaustive; capped at t<={VERIFY_STATE_CAP}, "
            f"m<={VERIFY_ITEM_CAP}"
        )
    n_letters = composed.dfa.alphabet_size
    if n_letters ** (z + 1) > word_cap:
        raise SizeLimitError(f"word enumeration above cap {word_cap}")

    c1 = shortest_reset_word(composed.dfa, limit=z) is None

    full = composed.dfa.full_set()
    reset_words = []
    for word in product(range(n_letters), repeat=z + 1):
        if len(apply_word(composed.dfa, full, word)) == 1:
            reset_words.append(word)
    c2 = all(_word_matches_form(composed, batch, word) for word in reset_words)

    c3 = True
    assembled = 0
    for i in range(1, m + 1):
        item = batch.items[i - 1]
        for body in product(range(item.dfa.alphabet_size), repeat=item.d):
            image = apply_word(item.dfa, item.dfa.full_set(), body)
            if len(image) != 1:
                continue
            (s,) = image
            word = ((composed.alpha(i),)
                    + tuple(composed.x_letter(i, j) if j else composed.kappa
                            for j in body)
                    + (composed.kappa,) * (z - 1 - item.d)
                    + (composed.omega(s),))
            assembled += 1
            if len(apply_word(composed.dfa, full, word)) != 1:
                c3 = False
    return C123Report(c1, c2, c3, len(reset_words), assembled)


def parse_batch(text: str) -> tuple[list[tuple[Dfa, int]], int]:
    """Parse the batch format: `batch <m> <t>`, then per item a header
    `item <d_i> <alphabet_size>` followed by t transition rows."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("batch"):
        raise InvalidInputError("expected `batch <m> <t>` header")
    head = lines[0].split()
    if len(head) != 3:
        raise InvalidInputError("malformed batch header")
    m, t = int(head[1]), int(head[2])
    raw: list[tuple[Dfa, int]] = []
    pos = 1
    for _ in range(m):
        if pos >= len(lines) or not lines[pos].startswith("item"):
            raise InvalidInputError("expected `item <d> <alphabet_size>`")
        parts = lines[pos].split()
        if len(parts) != 3:
            raise InvalidInputError("malformed item header")
        d, k = int(parts[1]), int(parts[2])
        rows = []
        for row_line in lines[pos + 1: pos + 1 + t]:
            row = tuple(int(tok) for tok in row_line.split())
            if len(row) != k:
                raise InvalidInputError("item row width must equal its alphabet size")
            rows.append(row)
        if len(rows) != t:
            raise InvalidInputError("item needs t transition rows")
        raw.append((Dfa(t, k, tuple(rows)), d))
        pos += 1 + t
    if pos != len(lines):
        raise InvalidInputError("trailing content after the last item")
    return raw, t


def write_batch(raw: Sequence[tuple[Dfa, int]], t: int) -> str:
    lines = [f"batch {len(raw)} {t}"]
    for dfa, d in raw:
        lines.append(f"item {d} {dfa.alphabet_size}")
        for row in dfa.delta:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def names_json(composed: ComposedAutomaton) -> dict:
    return {
        "states": {str(i): composed.state_names[i]
                   for i in range(composed.dfa.t)},
        "letters": {str(i): composed.letter_names[i]
                    for i in range(composed.dfa.alphabet_size)},
        "d_prime": composed.d_prime,
    }
