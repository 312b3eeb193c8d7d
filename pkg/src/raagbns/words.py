"""Exact word arithmetic in a right-angled Artin group.

Words are tuples of (vertex, exponent) letters with exponent +1 or -1.
reduce() returns a canonical normal form: first a single cancellation
pass (a letter may cancel an earlier opposite letter when everything in
between commutes with it), then a greedy commuting shuffle to the
lexicographically least ordering.  Two words are equal in the group iff
their normal forms are literally equal.

Partial conjugations act letterwise: the generator with multiplier a and
component K sends x to a x a^-1 for x in K and fixes all other vertices.
"""

from .errors import MalformedInput
from .graphs import classify_pair, complement_components, is_sil_pair


def make_word(letters):
    out = []
    for v, e in letters:
        if e not in (1, -1):
            raise ValueError("letter exponents must be +1 or -1")
        out.append((str(v), e))
    return tuple(out)


def inverse(word):
    return tuple((v, -e) for v, e in reversed(word))


def parse_word(g, text):
    """Tokens "v", "v^k" separated by whitespace; k may be negative."""
    letters = []
    for tok in text.split():
        if "^" in tok:
            v, _, power = tok.partition("^")
            try:
                k = int(power)
            except ValueError as exc:
                raise MalformedInput(f"bad word token {tok!r}") from exc
        else:
            v, k = tok, 1
        if not g.has_vertex(v):
            raise MalformedInput(f"unknown vertex {v!r} in word")
        letters.extend([(v, 1 if k > 0 else -1)] * abs(k))
    return tuple(letters)


def format_word(word):
    if not word:
        return "1"
    return " ".join(v if e == 1 else f"{v}^-1" for v, e in word)


def _cancel_pass(g, word):
    out = []
    for v, e in word:
        j = len(out) - 1
        placed = False
        while j >= 0:
            u, f = out[j]
            if u == v:
                if f == -e:
                    del out[j]
                    placed = True
                break
            if not g.adjacent(u, v):
                break
            j -= 1
        if not placed:
            out.append((v, e))
    return out


def _lex_shuffle(g, letters):
    remaining = list(letters)
    result = []
    while remaining:
        best = None
        for i, (v, e) in enumerate(remaining):
            if any(not g.adjacent(u, v) for u, _ in remaining[:i]):
                continue
            if best is None or (v, e) < remaining[best]:
                best = i
        result.append(remaining.pop(best))
    return tuple(result)


def reduce(g, word):
    """Canonical normal form of a word (reduced, then shuffled lex-least)."""
    return _lex_shuffle(g, _cancel_pass(g, word))


def word_eq(g, u, v):
    return reduce(g, u) == reduce(g, v)


def support(word):
    return sorted({v for v, _ in word})


def apply_partial_conjugation(g, moves, word):
    """Apply a product of (signed) partial conjugations to a word.

    moves is a sequence of ((multiplier, component), exponent) pairs, or
    a single (multiplier, component) pair; the leftmost move is the
    outermost automorphism, so the rightmost acts first.
    """
    moves = _as_moves(moves)
    current = tuple(word)
    for (a, component), exp in reversed(moves):
        k = set(component)
        image = []
        for v, e in current:
            if v in k:
                image.extend([(a, exp), (v, e), (a, -exp)])
            else:
                image.append((v, e))
        current = tuple(image)
    return reduce(g, current)


def _as_moves(moves):
    if isinstance(moves, tuple) and len(moves) == 2 and isinstance(moves[0], str):
        return [((moves[0], tuple(moves[1])), 1)]
    out = []
    for m in moves:
        if len(m) == 2 and isinstance(m[0], str):
            out.append(((m[0], tuple(m[1])), 1))
        else:
            (a, comp), exp = m
            if exp not in (1, -1):
                raise ValueError("move exponents must be +1 or -1")
            out.append(((a, tuple(comp)), exp))
    return out


def automorphism_table(g, moves):
    """Vertex-image table of a product of partial conjugations."""
    return {v: apply_partial_conjugation(g, moves, ((v, 1),)) for v in g.vertices}


def table_is_identity(g, table):
    return all(table[v] == ((v, 1),) for v in g.vertices)


def commutator_moves(p, q):
    return [(p, 1), (q, 1), (p, -1), (q, -1)]


def commutator_trivial_in_aut(g, p, q):
    """Word-level check that the commutator of two partial conjugations
    fixes every vertex."""
    table = automorphism_table(g, commutator_moves(p, q))
    return table_is_identity(g, table)


def _component_kind(cls, side, component):
    if side == "a":
        dom, shared = cls.dominating_a, cls.shared
    else:
        dom, shared = cls.dominating_b, cls.shared
    if component == dom:
        return "dominating"
    if component in shared:
        return "shared"
    return "subordinate"


def commutator_class_aut(g, p, q):
    """Combinatorial verdict: is the commutator nontrivial in Aut?

    Nontrivial exactly for dominating-dominating, dominating-shared and
    equal-shared configurations of a nonadjacent pair.
    """
    (a, k), (b, l) = (p[0], tuple(p[1])), (q[0], tuple(q[1]))
    if a == b or g.adjacent(a, b):
        return False
    cls = classify_pair(g, a, b)
    kind_k = _component_kind(cls, "a", k)
    kind_l = _component_kind(cls, "b", l)
    if kind_k == "dominating" and kind_l == "dominating":
        return True
    if kind_k == "dominating" and kind_l == "shared":
        return True
    if kind_k == "shared" and kind_l == "dominating":
        return True
    if kind_k == "shared" and kind_l == "shared" and k == l:
        return True
    return False


def commutator_class_out(g, p, q):
    """Outer-class verdict for the commutator of two partial conjugations:
    "nontrivial" iff an Aut-nontrivial configuration occurs for an
    SIL-pair, else "trivial"."""
    a, b = p[0], q[0]
    if not commutator_class_aut(g, p, q):
        return "trivial"
    return "nontrivial" if is_sil_pair(g, a, b) else "trivial"


def enumerate_reduced_words(g, max_len):
    """All group elements of reduced length <= max_len, one normal form
    each, in a deterministic order."""
    letters = sorted((v, e) for v in g.vertices for e in (1, -1))
    seen = {(): None}
    frontier = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for letter in letters:
                grown = reduce(g, w + (letter,))
                if len(grown) == len(w) + 1 and grown not in seen:
                    seen[grown] = None
                    nxt.append(grown)
                    yield grown
        frontier = nxt


def is_inner_bounded(g, table, max_len):
    """Search for a conjugator h with table(v) = h v h^-1 for all v, over
    all reduced words of length <= max_len.  Returns the word or None;
    None is not a proof that the table is non-inner."""
    for h in enumerate_reduced_words(g, max_len):
        h_inv = inverse(h)
        if all(
            reduce(g, h + ((v, 1),) + h_inv) == table[v] for v in g.vertices
        ):
            return h
    return None


def apply_to_word_by_table(g, table, word):
    image = []
    for v, e in word:
        image.extend(table[v] if e == 1 else inverse(table[v]))
    return reduce(g, image)


def standard_generators(g):
    """All (multiplier, component) pairs, lex ordered."""
    gens = []
    for a in sorted(g.vertices):
        for k in complement_components(g, a):
            gens.append((a, k))
    return gens
