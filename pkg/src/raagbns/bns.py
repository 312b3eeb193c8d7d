"""Excluded-subspace arrangements in character space for a RAAG, its
pure symmetric automorphism group and their outer quotient, plus the
degree-one homology witness extracted from a support-graph loop.

Characters live in Q^N.  For the RAAG itself N is the vertex count and
the arrangement has one coordinate subspace per maximal vertex subset
inducing a disconnected subgraph.  For the automorphism groups N is the
number of standard generators; maximal p-sets contribute coordinate
subspaces, maximal delta-p-sets contribute difference subspaces, and the
outer quotient lives in the subspace W where each multiplier's
coordinates sum to zero.
"""

import itertools
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, InvariantViolation
from .graphs import complement_components, support_graph
from .homology import Arrangement, build_chain_complex, betti_numbers, maximal_filter
from .linalg import QMatrix, Subspace, intersect, kernel_basis
from .words import standard_generators

DEFAULT_CAP = 10 ** 6


def enumeration_cap():
    raw = os.environ.get("RAAGBNS_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_CAP


def generator_symbol(gen):
    a, comp = gen
    return f"{a}[{','.join(comp)}]"


@dataclass(frozen=True)
class CharacterBasis:
    """Coordinate order for Q^N: one axis per standard generator (or per
    vertex, for the RAAG itself)."""

    labels: tuple

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def unit(self, label):
        v = [Fraction(0)] * self.dim
        v[self.index(label)] = Fraction(1)
        return v


def generator_basis(g):
    return CharacterBasis(tuple(standard_generators(g)))


def _connected(g, subset):
    subset = set(subset)
    if not subset:
        return True
    root = next(iter(sorted(subset)))
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g._adj[u]:
            if w in subset and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == subset


def maximal_disconnected_subsets(g):
    """All vertex subsets inducing a disconnected subgraph and maximal
    with that property.  A subset fails maximality iff some single added
    vertex keeps it disconnected."""
    vs = sorted(g.vertices)
    out = []
    for r in range(2, len(vs) + 1):
        for subset in itertools.combinations(vs, r):
            if _connected(g, subset):
                continue
            rest = [v for v in vs if v not in subset]
            if any(not _connected(g, subset + (v,)) for v in rest):
                continue
            out.append(subset)
    return sorted(out)


def raag_arrangement(g):
    vs = sorted(g.vertices)
    basis = CharacterBasis(tuple(vs))
    subs = []
    for subset in maximal_disconnected_subsets(g):
        subs.append(Subspace.from_vectors(basis.dim, [basis.unit(v) for v in subset]))
    return Arrangement(basis.dim, tuple(subs))


@dataclass(frozen=True)
class PSet:
    members: tuple
    partition: tuple


@dataclass(frozen=True)
class DeltaPSet:
    members: tuple
    partition: tuple


def _pset_cross_ok(x, y):
    (a, k), (b, l) = x, y
    return a in l and b in k


def _delta_cross_ok(x, y):
    (a, k), (b, l) = x, y
    return a in l or b in k or k == l


def _partition_witness(members, cross_ok):
    """Split the failure graph's components in two; None when it is
    connected (then no valid 2-partition exists)."""
    members = sorted(members)
    if len(members) < 2:
        return None
    adj = {m: [] for m in members}
    for x, y in itertools.combinations(members, 2):
        if not cross_ok(x, y):
            adj[x].append(y)
            adj[y].append(x)
    seen = set()
    components = []
    for root in members:
        if root in seen:
            continue
        comp = []
        queue = deque([root])
        seen.add(root)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(sorted(comp))
    if len(components) < 2:
        return None
    side1 = tuple(components[0])
    side2 = tuple(m for comp in components[1:] for m in comp)
    return side1, tuple(sorted(side2))


def is_pset(s):
    """Partition witness for the one-per-multiplier family, or None."""
    members = sorted(tuple((a, tuple(k)) for a, k in s))
    counts = {}
    for a, _ in members:
        counts[a] = counts.get(a, 0) + 1
    if any(c > 1 for c in counts.values()):
        return None
    return _partition_witness(members, _pset_cross_ok)


def is_delta_pset(s):
    """Partition witness for the two-per-multiplier family, or None."""
    members = sorted(tuple((a, tuple(k)) for a, k in s))
    counts = {}
    for a, _ in members:
        counts[a] = counts.get(a, 0) + 1
    if any(c != 2 for c in counts.values()):
        return None
    return _partition_witness(members, _delta_cross_ok)


def _per_multiplier_options(g, arity):
    """For each vertex: the ways to pick no, one, or a pair of its
    components, per the requested arity set."""
    options = []
    for a in sorted(g.vertices):
        comps = complement_components(g, a)
        choices = [()]
        if 1 in arity:
            choices.extend(((a, k),) for k in comps)
        if 2 in arity:
            choices.extend(
                ((a, k1), (a, k2)) for k1, k2 in itertools.combinations(comps, 2)
            )
        options.append(choices)
    return options


def _enumerate_valid(g, arity, validator, cap):
    options = _per_multiplier_options(g, arity)
    valid = []
    nodes = 0

    def walk(i, chosen):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded(
                f"(delta-)p-set enumeration passed {cap} nodes; "
                "raise RAAGBNS_CAP to insist"
            )
        if i == len(options):
            if len(chosen) >= 2:
                witness = validator(chosen)
                if witness is not None:
                    valid.append((tuple(chosen), witness))
            return
        for choice in options[i]:
            walk(i + 1, chosen + list(choice))

    walk(0, [])
    return valid


def _maximal_only(valid):
    keyed = {frozenset(members): (members, witness) for members, witness in valid}
    out = []
    for key, (members, witness) in keyed.items():
        if any(other > key for other in keyed):
            continue
        out.append((members, witness))
    out.sort(key=lambda mw: mw[0])
    return out


def maximal_psets(g, cap=None):
    cap = enumeration_cap() if cap is None else cap
    valid = _enumerate_valid(g, {1}, is_pset, cap)
    return [PSet(m, w) for m, w in _maximal_only(valid)]


def maximal_delta_psets(g, cap=None):
    cap = enumeration_cap() if cap is None else cap
    valid = _enumerate_valid(g, {2}, is_delta_pset, cap)
    return [DeltaPSet(m, w) for m, w in _maximal_only(valid)]


def _pset_subspace(basis, members):
    return Subspace.from_vectors(basis.dim, [basis.unit(m) for m in members])


def _delta_subspace(basis, members):
    by_multiplier = {}
    for a, k in members:
        by_multiplier.setdefault(a, []).append((a, k))
    vectors = []
    for a in sorted(by_multiplier):
        first, second = sorted(by_multiplier[a])
        v = basis.unit(first)
        w = basis.unit(second)
        vectors.append([x - y for x, y in zip(v, w)])
    return Subspace.from_vectors(basis.dim, vectors)


def psa_arrangement(g, cap=None):
    basis = generator_basis(g)
    subs = [_pset_subspace(basis, p.members) for p in maximal_psets(g, cap)]
    subs += [_delta_subspace(basis, d.members) for d in maximal_delta_psets(g, cap)]
    return Arrangement(basis.dim, tuple(subs))


def pso_relator_matrix(g):
    basis = generator_basis(g)
    rows = []
    for a in sorted(g.vertices):
        comps = complement_components(g, a)
        if not comps:
            continue
        row = [Fraction(0)] * basis.dim
        for k in comps:
            row[basis.index((a, k))] = Fraction(1)
        rows.append(row)
    return QMatrix(rows, cols=basis.dim)


def pso_hom_space(g):
    """Characters of the outer group: each multiplier's coordinates sum
    to zero."""
    return kernel_basis(pso_relator_matrix(g))


def pso_arrangement(g, cap=None):
    """(W, arrangement in W coordinates, delta-p-sets in matching order).

    The arrangement is deliberately unfiltered so that subspace indices
    line up with the delta-p-set list; homology callers apply
    maximal_filter themselves.
    """
    basis = generator_basis(g)
    w = pso_hom_space(g)
    deltas = maximal_delta_psets(g, cap)
    subs = []
    for d in deltas:
        ambient_sub = _delta_subspace(basis, d.members)
        rows = []
        for v in ambient_sub.basis.entries:
            coords = w.coordinates(v)
            if coords is None:
                raise InvariantViolation("delta-p-set subspace escapes the outer character space")
            rows.append(coords)
        subs.append(Subspace.from_vectors(w.dim, rows))
    return w, Arrangement(w.dim, tuple(subs)), deltas


@dataclass(frozen=True)
class H1Witness:
    loop: object
    chain: tuple  # (arrangement index, ambient character vector) pairs
    cocycle_support: tuple
    pairing_value: Fraction


def h1_witness(g, loop, cap=None):
    """Build the degree-one homology certificate attached to a loop in a
    support graph: a 1-cycle supported on one delta-p-set per loop edge,
    plus a cocycle pairing nontrivially with it."""
    a = loop.owner
    nodes = list(loop.nodes)
    n = len(nodes)
    if n < 3 or len(set(nodes)) != n:
        raise InvariantViolation("loop witness must have >= 3 distinct nodes")
    basis = generator_basis(g)
    w, arrangement, deltas = pso_arrangement(g, cap)
    member_sets = [frozenset(d.members) for d in deltas]

    chosen = []
    for i in range(n):
        pair = {(a, nodes[i]), (a, nodes[(i + 1) % n])}
        containing = [j for j, s in enumerate(member_sets) if pair <= s]
        if not containing:
            raise InvariantViolation(
                f"no maximal delta-p-set contains the consecutive pair {sorted(pair)}"
            )
        chosen.append(containing[0])

    # the 1-chain: difference character on each chosen summand
    chain = []
    for i, j in enumerate(chosen):
        v1 = basis.unit((a, nodes[i]))
        v2 = basis.unit((a, nodes[(i + 1) % n]))
        chain.append((j, tuple(x - y for x, y in zip(v1, v2))))

    total = [Fraction(0)] * basis.dim
    for _, vec in chain:
        total = [x + y for x, y in zip(total, vec)]
    if any(x != 0 for x in total):
        raise InvariantViolation("witness chain components do not sum to zero")

    complex_data = build_chain_complex(arrangement)
    offsets = {}
    run = 0
    for idx, d in complex_data.index_sets[0] if complex_data.index_sets else ():
        offsets[idx[0]] = run
        run += d
    coords = [Fraction(0)] * complex_data.dims[1] if len(complex_data.dims) > 1 else []
    for j, vec in chain:
        sub = arrangement.subspaces[j]
        in_w = w.coordinates(list(vec))
        if in_w is None:
            raise InvariantViolation("chain component escapes the outer character space")
        local = sub.coordinates(in_w)
        if local is None:
            raise InvariantViolation("chain component escapes its summand")
        base = offsets[j]
        for r, x in enumerate(local):
            coords[base + r] += x
    column = QMatrix([[x] for x in coords], cols=1)
    image = complex_data.boundaries[1].mul(column)
    if not image.is_zero():
        raise InvariantViolation("witness chain is not a cycle of the complex")

    # cocycle: the (a, K_1) coordinate functional on every delta-p-set
    # containing the first consecutive pair, zero elsewhere
    first_pair = {(a, nodes[0]), (a, nodes[1])}
    support = tuple(j for j, s in enumerate(member_sets) if first_pair <= s)
    functional_index = basis.index((a, nodes[0]))
    for i, j in itertools.combinations(range(len(deltas)), 2):
        in_i, in_j = i in support, j in support
        if in_i == in_j:
            continue
        meet = intersect([arrangement.subspaces[i], arrangement.subspaces[j]])
        for row in meet.basis.entries:
            ambient = _w_to_ambient(w, row)
            if ambient[functional_index] != 0:
                raise InvariantViolation("cocycle patching fails on a pairwise intersection")

    pairing = Fraction(0)
    for j, vec in chain:
        if j in support:
            pairing += vec[functional_index]
    if pairing != 1:
        raise InvariantViolation(f"witness pairing is {pairing}, expected 1")
    return H1Witness(loop, tuple(chain), support, pairing)


def _w_to_ambient(w, coords):
    out = [Fraction(0)] * w.ambient_dim
    for c, row in zip(coords, w.basis.entries):
        if c:
            out = [x + c * y for x, y in zip(out, row)]
    return out


def euler_report(g, cap=None):
    """Betti profiles for the three groups' arrangements."""
    raag = betti_numbers(build_chain_complex(maximal_filter(raag_arrangement(g))))
    psa = betti_numbers(build_chain_complex(maximal_filter(psa_arrangement(g, cap))))
    _, pso_arr, _ = pso_arrangement(g, cap)
    pso = betti_numbers(build_chain_complex(maximal_filter(pso_arr)))
    return {"raag": raag, "psa": psa, "pso": pso}


def has_sil(g):
    return any(not support_graph(g, a).is_discrete() for a in g.vertices)
