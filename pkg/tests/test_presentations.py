import dataclasses
from collections import Counter

import pytest

from raagbns.errors import MalformedInput
from raagbns.graphs import SimpleGraph, support_components, support_graph
from raagbns.linalg import QMatrix
from raagbns.presentations import (
    EdgeGen,
    NotAForest,
    ObstructionVerdict,
    RaagVerdict,
    TreeGen,
    classify_pso,
    edge_far_side,
    generator_dictionary,
    presentation_graph,
    psa_presentation,
    pso_presentation,
    raag_presentation,
    verify_relators_killed,
)
from raagbns.words import (
    automorphism_table,
    inverse,
    is_inner_bounded,
    standard_generators,
)


def edgeless(n):
    return SimpleGraph("abcde"[:n], [])


def complete(n):
    vs = "abcde"[:n]
    return SimpleGraph(vs, [(u, w) for i, u in enumerate(vs) for w in vs[i + 1:]])


F3, F4 = edgeless(3), edgeless(4)
PATH3 = SimpleGraph("axb", [("a", "x"), ("x", "b")])
PATH5 = SimpleGraph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])
STAR3 = SimpleGraph("abcx", [("a", "x"), ("b", "x"), ("c", "x")])
K33 = SimpleGraph("abcxyz", [(u, w) for u in "abc" for w in "xyz"])


def gen(a, *comp):
    return (a, tuple(sorted(comp)))


def test_psa_f3_relator_census():
    p = psa_presentation(F3)
    assert len(p.generators) == 6
    assert p.kind == "psa"
    by_len = Counter(len(r) for r in p.relators)
    # same-multiplier commutators for each vertex, one SIL relator per
    # ordered nonadjacent pair
    assert by_len == {4: 3, 6: 6}
    assert (
        (gen("a", "b"), 1), (gen("a", "c"), 1), (gen("b", "c"), 1),
        (gen("a", "c"), -1), (gen("a", "b"), -1), (gen("b", "c"), -1),
    ) in p.relators


def test_psa_complete_empty():
    p = psa_presentation(complete(4))
    assert p.generators == ()
    assert p.relators == ()


def test_psa_no_sil_graph_has_only_commutators():
    for g in (PATH3, PATH5):
        p = psa_presentation(g)
        assert all(len(r) == 4 for r in p.relators)


def test_pso_f3_adds_three_product_relators():
    p = pso_presentation(F3)
    assert p.kind == "pso"
    extras = [r for r in p.relators if r not in psa_presentation(F3).relators]
    assert extras == [
        ((gen("a", "b"), 1), (gen("a", "c"), 1)),
        ((gen("b", "a"), 1), (gen("b", "c"), 1)),
        ((gen("c", "a"), 1), (gen("c", "b"), 1)),
    ]


def test_pso_path_product_relators_skip_the_star_vertex():
    p = pso_presentation(PATH3)
    products = [r for r in p.relators if len(r) != 4]
    # the middle vertex dominates the whole graph, so it owns no generators
    assert products == [((gen("a", "b"), 1),), ((gen("b", "a"), 1),)]


def test_raag_presentation():
    p = raag_presentation(PATH3)
    assert p.kind == "raag"
    assert p.generators == ("a", "x", "b")
    assert len(p.relators) == 2


def test_presentation_graph_f3():
    th = presentation_graph(F3)
    assert th.tree_gens == ()
    assert [r.symbol for r in th.edge_gens] == ["a[b|c]", "b[a|c]", "c[a|b]"]
    assert th.graph.edges == frozenset()
    assert th.preferred == (("a", ("b",)), ("b", ("a",)), ("c", ("a",)))


def test_presentation_graph_f4_raises():
    with pytest.raises(NotAForest) as info:
        presentation_graph(F4)
    assert info.value.owner == "a"
    assert info.value.loop.nodes == (("b",), ("c",), ("d",))


def test_presentation_graph_path5():
    th = presentation_graph(PATH5)
    assert th.edge_gens == ()
    assert [r.symbol for r in th.tree_gens] == ["c{e}"]
    assert th.graph.vertices == ("c{e}",)
    assert th.basepoint("c", (("a",),)) == ("a",)


def test_presentation_graph_complete():
    th = presentation_graph(complete(3))
    assert th.graph.vertices == ()
    assert th.records() == ()


def test_basepoint_override_swaps_psi_cases():
    default = generator_dictionary(F3, presentation_graph(F3))
    assert dict(default.from_standard)[gen("a", "b")] == (("a[b|c]", -1),)
    assert dict(default.from_standard)[gen("a", "c")] == (("a[b|c]", 1),)
    th = presentation_graph(F3, {"a": [("c",)]})
    moved = generator_dictionary(F3, th)
    assert dict(moved.from_standard)[gen("a", "c")] == (("a[b|c]", -1),)
    assert dict(moved.from_standard)[gen("a", "b")] == (("a[b|c]", 1),)
    assert dict(moved.to_standard)["a[b|c]"] == ((gen("a", "b"), 1),)


def test_basepoint_override_rejects_strangers():
    with pytest.raises(MalformedInput):
        presentation_graph(F3, {"a": [("a",)]})
    with pytest.raises(MalformedInput):
        presentation_graph(F3, {"a": [("b",), ("c",)]})


def test_dictionary_f3():
    th = presentation_graph(F3)
    d = generator_dictionary(F3, th)
    assert dict(d.to_standard)["a[b|c]"] == ((gen("a", "c"), 1),)
    assert d.from_standard_matrix.mul(d.to_standard_matrix) == QMatrix.identity(3)


def test_dictionary_empty_theta():
    path4 = SimpleGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    th = presentation_graph(path4)
    assert th.records() == ()
    d = generator_dictionary(path4, th)
    assert all(word == () for _, word in d.from_standard)
    assert verify_relators_killed(path4, th, d)


def test_psi_multiplier_columns_sum_to_zero():
    for g in (F3, PATH5, STAR3, K33):
        th = presentation_graph(g)
        d = generator_dictionary(g, th)
        gens = standard_generators(g)
        for a in sorted(g.vertices):
            cols = [j for j, x in enumerate(gens) if x[0] == a]
            if not cols:
                continue
            for row in d.from_standard_matrix.entries:
                assert sum(row[j] for j in cols) == 0


def test_verify_relators_killed_corpus():
    for g in (F3, PATH3, PATH5, STAR3, K33, complete(4)):
        th = presentation_graph(g)
        d = generator_dictionary(g, th)
        assert verify_relators_killed(g, th, d)


def test_corrupted_dictionary_fails_verification():
    th = presentation_graph(F3)
    d = generator_dictionary(F3, th)
    rows = list(d.from_standard)
    target, word = rows[0]
    rows[0] = (target, tuple((sym, -exp) for sym, exp in word))
    bad = dataclasses.replace(d, from_standard=tuple(rows))
    assert not verify_relators_killed(F3, th, bad)


def test_round_trip_single_letters():
    # feeding a symbol through both tables lands back on the
    # same symbol once reduced in the graphical group
    for g in (F3, PATH5, STAR3, K33):
        th = presentation_graph(g)
        d = generator_dictionary(g, th)
        psi = dict(d.from_standard)
        from raagbns.words import reduce

        for sym, word in d.to_standard:
            image = []
            for x, exp in word:
                part = psi[x]
                image.extend(part if exp == 1 else inverse(part))
            assert reduce(th.graph, tuple(image)) == ((sym, 1),)


def test_edge_far_and_near_sides_partition_the_tree():
    for g in (F3, STAR3, K33):
        th = presentation_graph(g)
        for r in th.edge_gens:
            far = edge_far_side(th, r)
            tree = next(t for t in th.trees_of(r.owner) if r.edge[0] in t)
            near = tuple(n for n in tree if n not in far)
            assert sorted(far + near) == list(tree)
            assert r.edge[0] in far or r.edge[1] in far


def test_tree_generator_words_are_central():
    # word-level: the commutator of a whole-subtree product with any
    # standard generator is a bounded conjugation
    for g in (F3, PATH3, STAR3, PATH5):
        gens = standard_generators(g)
        for a in sorted(g.vertices):
            for tree in support_components(support_graph(g, a)):
                zeta = [((a, k), 1) for k in tree]
                for other in gens:
                    moves = (
                        zeta + [(other, 1)]
                        + [(m, -e) for m, e in reversed(zeta)]
                        + [(other, -1)]
                    )
                    table = automorphism_table(g, moves)
                    assert is_inner_bounded(g, table, 4) is not None


def test_edge_generator_commutators_match_adjacency():
    # word-level: adjacent edge generators commute up to a bounded inner
    # factor, and the excluded pairs are genuinely nontrivial
    for g in (F3, STAR3):
        th = presentation_graph(g)
        d = generator_dictionary(g, th)
        phi = dict(d.to_standard)
        recs = list(th.edge_gens)
        for i, x in enumerate(recs):
            for y in recs[i + 1:]:
                u, w = phi[x.symbol], phi[y.symbol]
                moves = (
                    list(u) + list(w)
                    + [(m, -e) for m, e in reversed(u)]
                    + [(m, -e) for m, e in reversed(w)]
                )
                table = automorphism_table(g, moves)
                inner = is_inner_bounded(g, table, 4)
                if th.graph.adjacent(x.symbol, y.symbol):
                    assert inner is not None
                else:
                    assert inner is None


def test_classify_f3():
    verdict = classify_pso(F3)
    assert isinstance(verdict, RaagVerdict)
    assert len(verdict.presentation_graph.graph.vertices) == 3
    assert verdict.presentation_graph.graph.edges == frozenset()
    assert verdict.center_rank == 0


def test_classify_f4():
    verdict = classify_pso(F4)
    assert isinstance(verdict, ObstructionVerdict)
    assert verdict.owner == "a"
    assert verdict.loop.nodes == (("b",), ("c",), ("d",))
    assert verdict.homology_witness.pairing_value == 1


def test_classify_complete():
    verdict = classify_pso(complete(4))
    assert isinstance(verdict, RaagVerdict)
    assert verdict.presentation_graph.graph.vertices == ()
    assert verdict.center_rank == 0


def test_classify_path5():
    verdict = classify_pso(PATH5)
    assert isinstance(verdict, RaagVerdict)
    assert verdict.center_rank == 1
    assert [r.symbol for r in verdict.presentation_graph.tree_gens] == ["c{e}"]


def test_k33_defining_graph_is_k33_again():
    th = presentation_graph(K33)
    assert len(th.edge_gens) == 6
    assert th.tree_gens == ()
    missing = {
        frozenset(pair)
        for pair in [
            ("a[b|c]", "b[a|c]"), ("a[b|c]", "c[a|b]"), ("b[a|c]", "c[a|b]"),
            ("x[y|z]", "y[x|z]"), ("x[y|z]", "z[x|y]"), ("y[x|z]", "z[x|y]"),
        ]
    }
    for i, u in enumerate(th.graph.vertices):
        for w in th.graph.vertices[i + 1:]:
            assert th.graph.adjacent(u, w) == (frozenset((u, w)) not in missing)
