"""Brute-force oracles shared by the unit and acceptance suites."""

import itertools


def rewriting_closure(g, word):
    """Every word reachable from `word` by adjacent commuting swaps and
    deletions of adjacent inverse pairs.  All members are equal in the
    group; the shortest members are exactly the reduced forms."""
    start = tuple(word)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for i in range(len(w) - 1):
            (u, e), (v, f) = w[i], w[i + 1]
            if u == v and e == -f:
                shrunk = w[:i] + w[i + 2:]
                if shrunk not in seen:
                    seen.add(shrunk)
                    stack.append(shrunk)
            elif u != v and g.adjacent(u, v):
                swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if swapped not in seen:
                    seen.add(swapped)
                    stack.append(swapped)
    return seen


def closure_normal_form(g, word):
    """Lex-least shortest member of the rewriting closure."""
    closure = rewriting_closure(g, word)
    shortest = min(len(w) for w in closure)
    return min(w for w in closure if len(w) == shortest)


def all_words(g, length):
    letters = sorted((v, e) for v in g.vertices for e in (1, -1))
    return itertools.product(letters, repeat=length)


def brute_force_partition_witness(members, cross_ok):
    """Try every 2-partition of `members`; return one whose cross pairs
    all satisfy cross_ok, or None."""
    members = sorted(members)
    n = len(members)
    for mask in range(1, 2 ** (n - 1)):
        side1 = [m for i, m in enumerate(members) if mask & (1 << i)]
        side2 = [m for i, m in enumerate(members) if not mask & (1 << i)]
        if not side1 or not side2:
            continue
        if all(cross_ok(x, y) for x in side1 for y in side2):
            return side1, side2
    return None
