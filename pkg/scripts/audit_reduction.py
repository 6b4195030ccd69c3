#!/usr/bin/env python3
"""Exhaustive audit of the SAT-reduction gadget on desk-size formulas.

For each probe formula, sweeps every coloring and every word of length <= 4,
and reports: SAT vs SRCP agreement, the set of reset-word shapes found, the
synchronization targets, and whether the D-block coloring is rigid.
"""

import sys
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from roadsync.automata import apply_word
from roadsync.graphs import apply_coloring, coloring_from_index, is_strongly_connected
from roadsync.satreduce import (
    Cnf3,
    augment_tautologies,
    build_reduction,
    extract_coloring,
    sat_oracle,
)
from roadsync.srcp import sweep_sync_indices


def all_reset_words(dfa, max_len):
    full = dfa.full_set()
    found = []
    for length in range(max_len + 1):
        for w in product(range(dfa.alphabet_size), repeat=length):
            if len(apply_word(dfa, full, w)) == 1:
                found.append(w)
    return found


def audit(f, label):
    aug = augment_tautologies(f)
    rg = build_reduction(aug)
    g = rg.graph
    t = g.t
    sat = sat_oracle(f)
    print(f"== {label}: n={f.n} m={f.m} m'={aug.m} t={t} sat={sat is not None} "
          f"sc={is_strongly_connected(g)}")

    sync_indices = list(sweep_sync_indices(g, 4))
    print(f"   sync colorings (k<=4): {len(sync_indices)}")
    if (sat is not None) != bool(sync_indices):
        print("   *** EQUIVALENCE FAILURE ***")

    word_targets = {}
    d_block = set()
    short = set()
    for idx in sync_indices:
        coloring = coloring_from_index(g, idx)
        dfa = apply_coloring(g, coloring)
        for w in all_reset_words(dfa, 4):
            img = apply_word(dfa, dfa.full_set(), w)
            (q,) = img
            if len(w) < 4:
                short.add((w, q))
            else:
                word_targets.setdefault(w, set()).add(q)
        d_block.add(tuple(coloring.slot_letters[:8]))
    for w in sorted(word_targets):
        print(f"   word {w}: targets {sorted(word_targets[w])} (D4={rg.d(4)})")
    print(f"   short reset words: {sorted(short)}")
    print(f"   distinct D-block colorings among witnesses: {len(d_block)}")
    if sat is not None:
        coloring = extract_coloring(rg, sat)
        print("   canonical witness validates")
    return word_targets, short


def main():
    probes = [
        (Cnf3(1, (((1, False), (1, False), (1, False)),)), "x1 only (SAT)"),
        (Cnf3(1, (((1, True), (1, True), (1, True)),)), "~x1 only (SAT, needs augmentation)"),
        (Cnf3(1, (((1, False), (1, False), (1, False)),
                  ((1, True), (1, True), (1, True)))), "x & ~x (UNSAT)"),
        (Cnf3(2, (((1, False), (2, True), (2, False)),)), "mixed (SAT)"),
    ]
    for f, label in probes:
        audit(f, label)


if __name__ == "__main__":
    main()
