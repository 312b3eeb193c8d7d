"""Finite presentations for the pure symmetric automorphism group of a
RAAG and its outer quotient, and the graphical presentation of the outer
quotient available when every support graph is a forest.

Relator schemas for the automorphism group (commutators stored expanded):

  R1  [pi^a_K, pi^b_L] = 1 when a = b or a, b adjacent
  R2  [pi^a_K, pi^b_L] = 1 when K and L are disjoint, b not in K, a not in L
  R3  [pi^a_K, pi^b_L] = 1 when {a} u K lies inside L, or {b} u L inside K
  R4  [pi^a_K pi^a_L, pi^b_L] = 1 when b in K and a not in L

The outer quotient adds, per vertex a, the product of all partial
conjugations with multiplier a (R5).

When each support graph is a forest the outer quotient is a RAAG.  Its
defining graph has a vertex per support-graph edge plus a vertex per
non-preferred maximal subtree, and the two generator dictionaries
translate between this generating set and the standard one.
"""

from dataclasses import dataclass
from fractions import Fraction

from .bns import h1_witness
from .errors import InvariantViolation, MalformedInput, RaagBnsError
from .graphs import (
    LoopWitness,
    SimpleGraph,
    center_rank,
    classify_pair,
    complement_components,
    forest_certificate,
    support_graph,
)
from .linalg import QMatrix
from .words import inverse, reduce, standard_generators


class NotAForest(RaagBnsError):
    """Some support graph contains a loop, so no graphical presentation
    of the outer quotient exists along this route."""

    def __init__(self, owner, loop):
        super().__init__(f"the support graph of {owner!r} contains a loop")
        self.owner = owner
        self.loop = loop


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple  # words over the generators, exponents +1/-1
    kind: str  # psa, pso or raag

    def __post_init__(self):
        declared = set(self.generators)
        for word in self.relators:
            for sym, exp in word:
                if sym not in declared:
                    raise InvariantViolation(f"relator uses undeclared generator {sym!r}")
                if exp not in (1, -1):
                    raise InvariantViolation("relator exponents must be +1 or -1")


def _commutator(x, y):
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def _commuting_schema(g, x, y):
    (a, k), (b, l) = x, y
    if a == b or g.adjacent(a, b):
        return True
    if not set(k) & set(l) and b not in k and a not in l:
        return True
    return set((a,) + k) <= set(l) or set((b,) + l) <= set(k)


def psa_presentation(g):
    gens = standard_generators(g)
    relators = []
    seen = set()

    def emit(word):
        if word not in seen:
            seen.add(word)
            relators.append(word)

    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            if _commuting_schema(g, x, y):
                emit(_commutator(x, y))
    vs = sorted(g.vertices)
    for a in vs:
        for b in vs:
            if a == b or g.adjacent(a, b):
                continue
            cls = classify_pair(g, a, b)
            k = cls.dominating_a
            for l in cls.shared:
                emit((
                    ((a, k), 1), ((a, l), 1), ((b, l), 1),
                    ((a, l), -1), ((a, k), -1), ((b, l), -1),
                ))
    return GroupPresentation(tuple(gens), tuple(relators), "psa")


def pso_presentation(g):
    base = psa_presentation(g)
    relators = list(base.relators)
    for a in sorted(g.vertices):
        comps = complement_components(g, a)
        if comps:
            relators.append(tuple(((a, k), 1) for k in comps))
    return GroupPresentation(base.generators, tuple(relators), "pso")


def raag_presentation(graph):
    """Graphical presentation: one generator per vertex, one expanded
    commutator per edge."""
    gens = tuple(graph.vertices)
    relators = tuple(
        _commutator(u, w) for u, w in sorted(graph.edges)
    )
    return GroupPresentation(gens, relators, "raag")


@dataclass(frozen=True)
class EdgeGen:
    owner: str
    edge: tuple  # sorted pair of support-graph nodes

    @property
    def symbol(self):
        return self.owner + "[" + "|".join(",".join(n) for n in self.edge) + "]"


@dataclass(frozen=True)
class TreeGen:
    owner: str
    tree: tuple  # sorted tuple of support-graph nodes

    @property
    def symbol(self):
        return self.owner + "{" + ";".join(",".join(n) for n in self.tree) + "}"


@dataclass(frozen=True)
class PresentationGraph:
    """Defining graph of the outer quotient's graphical presentation.

    Vertices are the symbols of the tree generators (one per maximal
    subtree of a support graph other than the preferred one) followed by
    the edge generators (one per support-graph edge).  Tree generators
    are adjacent to everything; two edge generators are non-adjacent
    exactly when their owners form an SIL-pair and the edges are the
    dominating-shared pairs of one common shared component.
    """

    graph: SimpleGraph
    tree_gens: tuple
    edge_gens: tuple
    basepoints: tuple  # (owner, tree, basepoint node) rows
    preferred: tuple  # (owner, preferred basepoint node) rows

    def records(self):
        return self.tree_gens + self.edge_gens

    def basepoint(self, owner, tree):
        for o, t, node in self.basepoints:
            if o == owner and t == tree:
                return node
        raise KeyError((owner, tree))

    def preferred_node(self, owner):
        for o, node in self.preferred:
            if o == owner:
                return node
        return None

    def trees_of(self, owner):
        return tuple(t for o, t, _ in self.basepoints if o == owner)

    def edges_of(self, owner):
        return tuple(r.edge for r in self.edge_gens if r.owner == owner)


def _resolve_basepoints(owner, trees, override):
    chosen = {}
    for raw in override:
        node = tuple(raw)
        home = next((t for t in trees if node in t), None)
        if home is None:
            raise MalformedInput(
                f"{node!r} is not a component left by removing the star of {owner!r}"
            )
        if home in chosen:
            raise MalformedInput(
                f"two basepoints requested in one subtree of the support graph of {owner!r}"
            )
        chosen[home] = node
    return chosen


def presentation_graph(g, basepoints=None):
    """Build the defining graph, or raise NotAForest carrying a shortest
    loop of the offending support graph.

    `basepoints` optionally maps a vertex to a list of support-graph
    nodes; each named node becomes the basepoint of its subtree and the
    first one marks the preferred subtree.  The default picks the
    lexicographically least node of each subtree, preferring the subtree
    holding the least node overall.
    """
    overrides = dict(basepoints or {})
    tree_gens = []
    edge_gens = []
    basepoint_rows = []
    preferred_rows = []
    for a in sorted(g.vertices):
        sg = support_graph(g, a)
        cert = forest_certificate(sg)
        if isinstance(cert, LoopWitness):
            raise NotAForest(a, cert)
        trees = cert.trees
        if not trees:
            continue
        chosen = _resolve_basepoints(a, trees, overrides.get(a, ()))
        for t in trees:
            basepoint_rows.append((a, t, chosen.get(t, t[0])))
        if a in overrides and overrides[a]:
            first = tuple(overrides[a][0])
            pref_tree = next(t for t in trees if first in t)
        else:
            pref_tree = min(trees, key=lambda t: t[0])
        preferred_rows.append((a, chosen.get(pref_tree, pref_tree[0])))
        tree_gens.extend(TreeGen(a, t) for t in trees if t != pref_tree)
        edge_gens.extend(EdgeGen(a, e) for e in sorted(sg.edges))
    tree_gens.sort(key=lambda r: (r.owner, r.tree))
    edge_gens.sort(key=lambda r: (r.owner, r.edge))
    records = tree_gens + edge_gens
    edges = []
    for i, x in enumerate(records):
        for y in records[i + 1:]:
            if isinstance(x, TreeGen) or isinstance(y, TreeGen):
                edges.append((x.symbol, y.symbol))
            elif _edge_gens_commute(g, x, y):
                edges.append((x.symbol, y.symbol))
    graph = SimpleGraph(tuple(r.symbol for r in records), edges)
    return PresentationGraph(
        graph,
        tuple(tree_gens),
        tuple(edge_gens),
        tuple(basepoint_rows),
        tuple(preferred_rows),
    )


def _edge_gens_commute(g, x, y):
    a, b = x.owner, y.owner
    if a == b or g.adjacent(a, b):
        return True
    cls = classify_pair(g, a, b)
    for l in cls.shared:
        e = tuple(sorted((cls.dominating_a, l)))
        f = tuple(sorted((cls.dominating_b, l)))
        if x.edge == e and y.edge == f:
            return False
    return True


def _tree_of(th, owner, node):
    for t in th.trees_of(owner):
        if node in t:
            return t
    raise KeyError((owner, node))


def _side_components(th, owner, tree, cut):
    """Node sets of the two pieces a subtree splits into at edge `cut`."""
    adjacency = {n: set() for n in tree}
    for u, w in th.edges_of(owner):
        if u in adjacency and (u, w) != cut:
            adjacency[u].add(w)
            adjacency[w].add(u)
    sides = []
    for root in cut:
        seen = {root}
        stack = [root]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        sides.append(tuple(sorted(seen)))
    return sides


def edge_far_side(th, edge_gen):
    """Nodes of the subtree piece cut off by the edge that misses the
    basepoint; the product of their partial conjugations is the element
    the edge generator names."""
    tree = _tree_of(th, edge_gen.owner, edge_gen.edge[0])
    base = th.basepoint(edge_gen.owner, tree)
    for side in _side_components(th, edge_gen.owner, tree, edge_gen.edge):
        if base not in side:
            return side
    raise InvariantViolation("edge does not separate its subtree")


def _toward_basepoint(th, owner, tree, node, base):
    adjacency = {n: set() for n in tree}
    for u, w in th.edges_of(owner):
        if u in adjacency:
            adjacency[u].add(w)
            adjacency[w].add(u)
    parent = {base: None}
    stack = [base]
    while stack:
        u = stack.pop()
        for w in sorted(adjacency[u]):
            if w not in parent:
                parent[w] = u
                stack.append(w)
    return tuple(sorted((node, parent[node])))


def _psi_word(th, gen):
    a, k = gen
    tree = _tree_of(th, a, k)
    base = th.basepoint(a, tree)
    pref = th.preferred_node(a)
    incident = sorted(e for e in th.edges_of(a) if k in e)
    word = []
    if k != base:
        toward = _toward_basepoint(th, a, tree, k, base)
        word.append((EdgeGen(a, toward).symbol, 1))
        word.extend((EdgeGen(a, e).symbol, -1) for e in incident if e != toward)
    elif k != pref:
        word.append((TreeGen(a, tree).symbol, 1))
        word.extend((EdgeGen(a, e).symbol, -1) for e in incident)
    else:
        word.extend((t.symbol, -1) for t in th.tree_gens if t.owner == a)
        word.extend((EdgeGen(a, e).symbol, -1) for e in incident)
    return tuple(word)


@dataclass(frozen=True)
class GeneratorDictionary:
    """Both translation tables between the standard generating set and
    the graphical one, with their abelianizations."""

    to_standard: tuple  # (symbol, word in standard generators) rows
    from_standard: tuple  # (standard generator, word in symbols) rows
    to_standard_matrix: QMatrix  # standard x symbol exponent sums
    from_standard_matrix: QMatrix  # symbol x standard exponent sums


def _exponent_matrix(row_labels, columns):
    index = {label: i for i, label in enumerate(row_labels)}
    cols = []
    for _, word in columns:
        col = [0] * len(row_labels)
        for sym, exp in word:
            col[index[sym]] += exp
        cols.append(col)
    return QMatrix(
        tuple(
            tuple(Fraction(col[i]) for col in cols) for i in range(len(row_labels))
        ),
        cols=len(cols),
    )


def generator_dictionary(g, th):
    gens = standard_generators(g)
    records = th.records()
    to_standard = []
    for r in records:
        if isinstance(r, TreeGen):
            members = r.tree
        else:
            members = edge_far_side(th, r)
        to_standard.append((r.symbol, tuple(((r.owner, k), 1) for k in members)))
    from_standard = [(gen, _psi_word(th, gen)) for gen in gens]
    symbols = [r.symbol for r in records]
    d = GeneratorDictionary(
        tuple(to_standard),
        tuple(from_standard),
        _exponent_matrix(gens, to_standard),
        _exponent_matrix(symbols, from_standard),
    )
    _check_round_trips(gens, symbols, d)
    return d


def _check_round_trips(gens, symbols, d):
    m_phi = d.to_standard_matrix
    m_psi = d.from_standard_matrix
    if m_psi.mul(m_phi) != QMatrix.identity(len(symbols)):
        raise InvariantViolation("abelianized round trip on symbols is not the identity")
    back = m_phi.mul(m_psi)
    for j, gen in enumerate(gens):
        residue = {}
        for i, other in enumerate(gens):
            value = back.entries[i][j] - (1 if i == j else 0)
            residue.setdefault(other[0], set()).add(value)
        if any(len(vals) != 1 for vals in residue.values()):
            raise InvariantViolation(
                "abelianized round trip on standard generators is not the identity "
                "modulo the per-multiplier product relations"
            )


def verify_relators_killed(g, th, d):
    """True iff the image of every relator of the outer quotient reduces
    to the empty word in the graphical group."""
    table = dict(d.from_standard)
    for relator in pso_presentation(g).relators:
        image = []
        for gen, exp in relator:
            part = table[gen]
            image.extend(part if exp == 1 else inverse(part))
        if reduce(th.graph, tuple(image)):
            return False
    return True


@dataclass(frozen=True)
class RaagVerdict:
    presentation_graph: PresentationGraph
    dictionary: GeneratorDictionary
    center_rank: int


@dataclass(frozen=True)
class ObstructionVerdict:
    owner: str
    loop: LoopWitness
    homology_witness: object


def classify_pso(g, basepoints=None, cap=None):
    """Decide whether the outer quotient is a RAAG.  Forest case: the
    defining graph with its generator dictionary.  Loop case: the vertex
    owning the loop, a shortest loop, and the degree-one homology
    certificate it produces."""
    try:
        th = presentation_graph(g, basepoints)
    except NotAForest as err:
        return ObstructionVerdict(err.owner, err.loop, h1_witness(g, err.loop, cap))
    return RaagVerdict(th, generator_dictionary(g, th), center_rank(th.graph))
