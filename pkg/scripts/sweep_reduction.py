#!/usr/bin/env python3
"""Random-formula sweep of the SAT-to-road-coloring reduction.

Samples 3-CNF formulas, verifies the SAT <=> SRCP(G, 4) equivalence by brute
force, and tallies instance sizes and witness statistics.
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from roadsync.satreduce import Cnf3, augment_tautologies, verify_reduction


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=60)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--state-cap", type=int, default=26)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    done = sat_count = 0
    sizes = {}
    while done < args.trials:
        n = rng.randint(1, 3)
        m = rng.randint(1, 2)
        clauses = tuple(
            tuple((rng.randint(1, n), rng.random() < 0.5) for _ in range(3))
            for _ in range(m)
        )
        f = Cnf3(n, clauses)
        aug = augment_tautologies(f)
        t = 5 * aug.m + 3 * f.n + 8
        if t > args.state_cap:
            continue
        rep = verify_reduction(f, state_cap=args.state_cap)
        assert rep.ok, (f, rep)
        done += 1
        sat_count += rep.satisfiable
        sizes[t] = sizes.get(t, 0) + 1
    print(f"{done} formulas verified, {sat_count} satisfiable; "
          f"state counts: {dict(sorted(sizes.items()))}")


if __name__ == "__main__":
    main()
