#!/usr/bin/env python3
"""Brute-force count of adequate models, independent of the C++ enumerator.

Generates every labelled structure (worlds 0..n-1, any relation, any
domains, any constant and relation interpretation) and filters by the
definitions: nonempty domains, transitive, inclusive, concordant, domain
union exactly {0..k-1}.
"""
import itertools
import sys


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from itertools.combinations(xs, r)


def count(max_worlds, max_domain, constants, relations):
    total = 0
    for n in range(1, max_worlds + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        for k in range(1, max_domain + 1):
            elems = range(k)
            doms = [frozenset(s) for s in subsets(elems)]
            for R in subsets(pairs):
                R = set(R)
                if any((a, d) not in R for (a, b) in R for (c, d) in R if b == c):
                    continue
                for D in itertools.product(doms, repeat=n):
                    if any(not d for d in D):
                        continue
                    if frozenset().union(*D) != frozenset(elems):
                        continue
                    if any(not D[a] <= D[b] for (a, b) in R):
                        continue
                    # constant interpretations: per constant, a value per world
                    const_choices = 1
                    for _ in constants:
                        ok = 0
                        for vals in itertools.product(elems, repeat=n):
                            if any(vals[w] not in D[w] for w in range(n)):
                                continue
                            if any(vals[a] != vals[b] for (a, b) in R):
                                continue
                            ok += 1
                        const_choices *= ok
                    rel_choices = 1
                    for arity in relations:
                        for w in range(n):
                            rel_choices *= 2 ** (len(D[w]) ** arity)
                    total += const_choices * rel_choices
    return total


CASES = [
    ("none", 1, 1, [], []),
    ("none", 2, 1, [], []),
    ("none", 2, 2, [], []),
    ("none", 3, 2, [], []),
    ("S1_c0", 1, 2, ["c0"], [1]),
    ("S1_c0", 2, 2, ["c0"], [1]),
    ("R2", 2, 2, [], [2]),
    ("S1_c0_c1", 2, 2, ["c0", "c1"], [1]),
]

if __name__ == "__main__":
    for name, w, d, cs, rs in CASES:
        print(f"{name} worlds={w} domain={d} count={count(w, d, cs, rs)}")
    sys.exit(0)
