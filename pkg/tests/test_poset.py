from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metriforge.config import DomainError
from metriforge.core import BlockCode, check_metric_axioms, check_weight_properties, lee, packing_radius
from metriforge.poset import (
    EC,
    EH,
    ES,
    Digraph,
    Pomset,
    Poset,
    PosetBlock,
    antichain,
    chain,
    complement_condition,
    hierarchical_equivalents_check,
    ideal_classes,
    is_mset_relation,
    is_pomset,
    is_ultrametric,
    isometry_orbits,
    macwilliams_equivalence_test,
    nrt_poset,
    posets_up_to_isomorphism,
    spectrum,
    verify_poset_isometries,
)

ONLY_13 = Poset.from_relations(3, [[1, 3]])


def closure_oracle(P, X):
    return frozenset(i for i in range(P.n) for j in X if (i, j) in P.leq)


def all_posets(n):
    """Every labelled poset on [n], by filtering all relations."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in range(2 ** len(pairs)):
        rel = {(i, i) for i in range(n)} | {p for k, p in enumerate(pairs) if bits >> k & 1}
        try:
            out.append(Poset(n, rel))
        except DomainError:
            pass
    return out


def vectors(q, n):
    return list(itertools.product(range(q), repeat=n))


def test_labelled_poset_counts():
    # 1, 3, 19, 219 labelled posets on 1..4 points
    assert [len(all_posets(n)) for n in range(1, 5)] == [1, 3, 19, 219]
    assert [len(posets_up_to_isomorphism(n)) for n in range(1, 5)] == [1, 2, 5, 16]


def test_poset_rejects_bad_orders():
    with pytest.raises(DomainError):
        Poset(2, {(0, 0), (1, 1), (0, 1), (1, 0)})
    with pytest.raises(DomainError):
        Poset(2, {(0, 0)})
    with pytest.raises(DomainError):
        Poset.from_relations(2, [[1, 3]])


def test_examples():
    P = chain(2)
    assert P.metric(2).dist((0, 0), (0, 1)) == 2
    assert P.weight((1, 0)) == 1 and P.weight((1, 1)) == 2
    nrt = nrt_poset(2, 2)
    assert nrt.weight((0, 1, 0, 0)) == 2
    assert nrt.weight((0, 0, 1, 0)) == 1


@pytest.mark.parametrize("P", all_posets(3), ids=repr)
def test_closure_is_a_closure_operator(P):
    subsets = [frozenset(s) for k in range(4) for s in itertools.combinations(range(3), k)]
    for X in subsets:
        C = P.ideal_closure(X)
        assert C == closure_oracle(P, X)
        assert X <= C and P.ideal_closure(C) == C and P.is_ideal(C)
        for Y in subsets:
            if X <= Y:
                assert C <= P.ideal_closure(Y)


@pytest.mark.parametrize("P", all_posets(3), ids=repr)
def test_weight_properties_and_ap_iff_antichain(P):
    wp = check_weight_properties(P.metric(2))
    assert wp.wd and wp.rs
    assert wp.ap == P.is_antichain()


def test_chain_is_not_additive_witness():
    P = chain(2)
    assert P.weight((1, 1)) != P.weight((1, 0)) + P.weight((0, 1))


def test_antichain_is_hamming():
    for q, n in ((2, 4), (3, 3)):
        P = antichain(n)
        for x in vectors(q, n):
            assert P.weight(x) == sum(1 for a in x if a)


def test_opposite():
    P = ONLY_13
    assert P.opposite().leq == {(j, i) for i, j in P.leq}
    assert P.opposite().opposite() == P


def test_hierarchical_levels():
    assert chain(3).hierarchical_levels() == [[0], [1], [2]]
    assert antichain(3).hierarchical_levels() == [[0, 1, 2]]
    assert ONLY_13.hierarchical_levels() is None
    two_below_one = Poset.from_relations(3, [[1, 3], [2, 3]])
    assert two_below_one.hierarchical_levels() == [[0, 1], [2]]


def test_ideal_equivalences_refine_all_posets_on_4():
    for P in all_posets(4):
        h, s, c = (ideal_classes(P, k) for k in (EH, ES, EC))
        for I in P.ideals():
            assert set(h.classes[h.index[I]]) <= set(s.classes[s.index[I]]) <= set(c.classes[c.index[I]])


def test_spectrum_counts_codewords():
    C = BlockCode.from_words(vectors(2, 3))
    for kind in (EC, ES, EH):
        A = spectrum(C, ONLY_13, kind)
        assert sum(A) == 8


def test_macwilliams_examples():
    assert macwilliams_equivalence_test(chain(3), EC)
    v = macwilliams_equivalence_test(ONLY_13, EC)
    assert not v and v.witness is not None
    C1, C2 = v.witness
    P, Pd = ONLY_13, ONLY_13.opposite()
    assert spectrum(C1, P, EC) == spectrum(C2, P, EC)
    from metriforge.core import dual_code

    assert spectrum(dual_code(C1), Pd, EC) != spectrum(dual_code(C2), Pd, EC)


def test_macwilliams_eh_and_es_small():
    for P in posets_up_to_isomorphism(3):
        assert macwilliams_equivalence_test(P, EH)
        assert bool(macwilliams_equivalence_test(P, ES)) == complement_condition(P)


def test_hierarchical_characterization_chain_example():
    P = chain(2)
    m = P.metric(2)
    assert packing_radius([(0, 0), (1, 0)], m) == 0
    assert packing_radius([(0, 0), (0, 1)], m) == 1
    assert hierarchical_equivalents_check(P).consistent


@pytest.mark.parametrize("P", posets_up_to_isomorphism(3), ids=repr)
def test_hierarchical_characterization_on_3(P):
    rep = hierarchical_equivalents_check(P)
    assert rep.consistent
    if not rep.hierarchical:
        assert rep.witness


def test_orbits_are_weight_classes_for_hierarchical():
    for P in (chain(3), antichain(3), Poset.from_relations(3, [[1, 3], [2, 3]])):
        orbits = isometry_orbits(P, 2)
        assert len(orbits) == len({P.weight(x) for x in vectors(2, 3)})


@pytest.mark.parametrize("P", posets_up_to_isomorphism(3), ids=repr)
@pytest.mark.parametrize("q", [2, 3])
def test_isometries_preserve_distance(P, q):
    rep = verify_poset_isometries(P, q)
    assert rep.all_preserve and rep.automorphisms >= 1


def test_ultrametric():
    assert is_ultrametric(nrt_poset(1, 3).metric(2))
    assert is_ultrametric(chain(3).metric(3))
    for n in (2, 3):
        rep = is_ultrametric(nrt_poset(n, 1).metric(2))
        assert not rep and rep.witness is not None
    x, y, z = (1, 1, 0), (1, 0, 0), (0, 0, 0)
    H = antichain(3).metric(2)
    assert H.dist(x, z) > max(H.dist(x, y), H.dist(y, z))


def test_posetblock_degenerates_and_examples():
    for P in all_posets(3):
        B = PosetBlock(P, (1, 1, 1))
        for x in vectors(2, 3):
            assert B.weight(x) == P.weight(x)
    B = PosetBlock(chain(2), (2, 1))
    assert B.weight((1, 0, 0)) == 1 and B.weight((0, 0, 1)) == 2 and B.weight((1, 1, 0)) == 1
    assert check_metric_axioms(B.metric(2)).passed
    with pytest.raises(DomainError):
        PosetBlock(chain(2), (1,))


def all_digraphs(n):
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(2 ** len(arcs)):
        yield Digraph(n, [a for k, a in enumerate(arcs) if bits >> k & 1])


def test_acyclic_digraph_is_reachability_poset():
    acyclic = 0
    for G in all_digraphs(3):
        if not G.is_acyclic():
            with pytest.raises(DomainError):
                G.to_poset()
            continue
        acyclic += 1
        P = G.to_poset()
        for x in vectors(2, 3):
            assert G.weight(x) == P.weight(x)
    assert acyclic == 25  # labelled DAGs on 3 vertices


def test_cyclic_digraph_weight_and_triangle():
    G = Digraph.from_one_based(3, [[1, 2], [2, 1]])
    assert G.weight((1, 0, 0)) == 2 and G.weight((0, 0, 1)) == 1
    assert check_metric_axioms(G.metric(2)).passed


def test_mset_relation_examples():
    M = {"a": 4, "b": 2}
    assert not is_mset_relation([(5, (4, "a"), (2, "a")), (8, (4, "a"), (2, "b"))], M)
    assert is_mset_relation([(2, (2, "a"), (1, "b")), (6, (2, "b"), (3, "a"))], M)


def test_is_pomset():
    M = {"a": 1, "b": 1}
    refl = {((1, "a"), (1, "a")), ((1, "b"), (1, "b"))}
    assert is_pomset(refl, M)
    assert is_pomset(refl | {((1, "a"), (1, "b"))}, M)
    assert not is_pomset(refl | {((1, "a"), (1, "b")), ((1, "b"), (1, "a"))}, M)
    assert not is_pomset({((1, "a"), (1, "a"))}, M)


def test_pomset_antichain_is_lee():
    assert Pomset(5, 2).weight((3, 4)) == 3
    for q, n in ((2, 3), (3, 3), (5, 3), (6, 2), (7, 2)):
        R, L = Pomset(q, n), lee(q, n)
        for x in vectors(q, n):
            assert R.weight(x) == L.weight(x)


@pytest.mark.parametrize("P", all_posets(3), ids=repr)
@pytest.mark.parametrize("q", [2, 3])
def test_pomset_with_unit_counts_is_poset(P, q):
    rel = [((1, i), (1, j)) for i, j in P.leq if i != j]
    R = Pomset(q, 3, rel)
    for x in vectors(q, 3):
        assert R.weight(x) == P.weight(x)


def test_pomset_literal_ideal_rule():
    # 2/1 R 1/2 over Z_5: any nonzero entry at position 2 pulls in the full count 2 at position 1
    R = Pomset.from_one_based(5, 2, [((2, 1), (1, 2))])
    assert R.weight((0, 1)) == 3
    assert R.weight((1, 1)) == 3
    assert R.weight((1, 0)) == 1
    with pytest.raises(DomainError):
        Pomset(5, 2, [((3, 0), (1, 1))])


@pytest.mark.parametrize(
    "metric",
    [
        Pomset.from_one_based(5, 2, [((2, 1), (1, 2))]).metric(),
        Pomset.from_one_based(4, 3, [((1, 1), (2, 2)), ((2, 2), (1, 3))]).metric(),
        Poset.from_relations(4, [[1, 2], [3, 2]]).metric(2),
        Digraph.from_one_based(3, [[1, 2], [2, 3], [3, 1]]).metric(2),
    ],
    ids=["pomset5", "pomset4", "poset4", "cycle3"],
)
def test_triangle_inequality(metric):
    assert check_metric_axioms(metric).passed


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=4), st.integers(0, 15))
@settings(max_examples=60, deadline=None)
def test_weight_is_ideal_size_of_support(rel, mask):
    rel = [(i, j) for i, j in rel if i < j]  # i < j keeps the relation acyclic
    P = Poset.from_relations(4, rel)
    x = tuple(mask >> i & 1 for i in range(4))
    assert P.weight(x) == len(closure_oracle(P, [i for i in range(4) if x[i]]))
