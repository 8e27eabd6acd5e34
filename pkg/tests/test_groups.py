from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from xclin import catalog
from xclin.catalog import (all_small_groups, id_group, ids_of_order, isoclinic_family, parse_catalog,
                           small_group)
from xclin.errors import CatalogError, CatalogFormatError, NotNormalError, PreconditionError
from xclin.groups import (Group, GroupHom, Subgroup, abelian_invariants, are_isoclinic_groups,
                          automorphism_group, center, commutative_degree, commutator_map,
                          derived_subgroup, direct_product, find_isomorphism, generated,
                          generator_image_extension, homomorphisms, is_stem_group, isomorphisms_between,
                          normal_subgroups, quotient_group, subgroups, verify_isoclinism)
from xclin.perm import Permutation, parse_cycles

C2, C3, C4, V4, S3 = (small_group(2, 1), small_group(3, 1), small_group(4, 1), small_group(4, 2),
                      small_group(6, 1))
D8, Q8, A4 = small_group(8, 3), small_group(8, 4), small_group(12, 3)
D16, Q16, C4C4 = small_group(16, 7), small_group(16, 9), small_group(16, 4)
SMALL = [G for o in range(1, 17) for G in all_small_groups(o)]
UP_TO_20 = [G for o in catalog.catalog_orders() if o <= 20 for G in all_small_groups(o)]


# ------------------------------------------------------------ permutations

def test_permutation_composes_right_to_left():
    p = Permutation.from_cycles([(0, 1)], 3)
    q = Permutation.from_cycles([(1, 2)], 3)
    assert (p * q)(1) == p(q(1)) == 2
    assert (q * p)(0) == q(p(0)) == 2
    assert (p * p).is_identity()
    assert (q * q.inverse()).is_identity()


def test_cycle_round_trip():
    p = parse_cycles("(1,2,3)(4,5)", 6)
    assert p.cycle_string() == "(1,2,3)(4,5)"
    assert parse_cycles("()", 4).is_identity()


@pytest.mark.parametrize("text", ["(1,2", "(1,2)(x)", "1,2", "(1,1)", "(0,1)", "(1,9)"])
def test_malformed_cycles_rejected(text):
    with pytest.raises(CatalogFormatError):
        parse_cycles(text, 4)


@given(st.permutations(range(6)), st.permutations(range(6)), st.permutations(range(6)))
def test_permutation_product_associative(a, b, c):
    p, q, r = Permutation(tuple(a)), Permutation(tuple(b)), Permutation(tuple(c))
    assert (p * q) * r == p * (q * r)
    assert Permutation.from_cycles(p.cycles(), 6) == p


# ----------------------------------------------------------------- catalog

def test_catalog_orders_and_closure():
    for G in UP_TO_20 + [small_group(40, 4)]:
        assert G.order == G.catalog_id[0]
        els = set(G.elements)
        assert G.elements[0].is_identity()
        assert set(G.generators) <= els
        for x in G.elements[:: max(1, G.order // 7)]:
            assert all(x * y in els for y in G.elements)
            assert x.inverse() in els


def test_catalog_groups_pairwise_non_isomorphic():
    for order in catalog.catalog_orders():
        groups = all_small_groups(order)
        for G, H in combinations(groups, 2):
            assert find_isomorphism(G, H) is None, (G, H)


def test_order_16_element_order_histograms():
    # standard small-groups numbering, checked through element orders and |Z|, |G'|
    expect = {1: (4, 16, 1), 2: (0, 16, 1), 3: (0, 4, 2), 4: (0, 4, 2), 5: (8, 16, 1),
              6: (8, 4, 2), 7: (4, 2, 4), 8: (4, 2, 4), 9: (4, 2, 4), 10: (0, 16, 1),
              11: (0, 4, 2), 12: (0, 4, 2), 13: (0, 4, 2), 14: (0, 16, 1)}
    for i, (n8, z, d) in expect.items():
        G = small_group(16, i)
        hist = Counter(oracles.order(x) for x in G.elements)
        assert (hist[8], len(oracles.center(G)), len(oracles.derived(G))) == (n8, z, d), i


def test_catalog_parser_errors():
    good = "2;1;C2;2;(1,2)\n"
    assert parse_catalog(good)[(2, 1)].name == "C2"
    with pytest.raises(CatalogFormatError):
        parse_catalog(good + good)
    with pytest.raises(CatalogFormatError):
        parse_catalog("2;1;C2;(1,2)\n")
    with pytest.raises(CatalogFormatError):
        parse_catalog("2;x;C2;2;(1,2)\n")
    with pytest.raises(CatalogFormatError):
        parse_catalog("2;1;C2;2;(1,2\n")


def test_catalog_override(tmp_path, monkeypatch):
    path = tmp_path / "cat.txt"
    path.write_text("# tiny\n1;1;1;1;\n3;1;C3;3;(1,2,3)\n", encoding="utf-8")
    monkeypatch.setenv("XCLIN_CATALOG", str(path))
    assert catalog.catalog_orders() == [1, 3]
    assert small_group(3, 1).order == 3
    with pytest.raises(CatalogError):
        ids_of_order(16)


def test_catalog_record_with_wrong_order(tmp_path, monkeypatch):
    path = tmp_path / "cat.txt"
    path.write_text("4;1;C4;4;(1,2)\n", encoding="utf-8")
    monkeypatch.setenv("XCLIN_CATALOG", str(path))
    with pytest.raises(CatalogFormatError):
        small_group(4, 1)


def test_unknown_catalog_entries():
    with pytest.raises(CatalogError):
        small_group(16, 15)
    with pytest.raises(CatalogError):
        ids_of_order(24)


# ------------------------------------------------------ center / derived

def test_center_examples():
    assert center(V4).order == 4
    assert center(S3).order == 1
    assert center(D16).order == len(oracles.center(D16)) == 2


def test_derived_examples():
    assert derived_subgroup(small_group(16, 1)).order == 1
    assert derived_subgroup(Q8).order == len(oracles.derived(Q8)) == 2
    A4d = derived_subgroup(A4)
    assert A4d.order == 4 and all(oracles.order(A4.elements[i]) <= 2 for i in A4d.indices)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: str(G.catalog_id))
def test_center_and_derived_match_brute_force(G):
    Z, D = center(G), derived_subgroup(G)
    assert {G.elements[i] for i in Z.indices} == oracles.center(G)
    assert {G.elements[i] for i in D.indices} == oracles.derived(G)
    assert Z.is_normal() and D.is_normal()


def test_commutator_map_on_d8():
    Q, table = commutator_map(D8, center(D8))
    # every choice of representatives gives the same commutator
    els = D8.elements
    proj = Q.projection.table
    for x in range(8):
        for y in range(8):
            assert table[proj[x], proj[y]] == D8.index(oracles.comm(els[x], els[y]))
    assert (table[0] == 0).all() and (table[:, 0] == 0).all()


def test_commutator_map_abelian_and_noncentral():
    Q, table = commutator_map(V4, center(V4))
    assert (table == 0).all()
    noncentral = generated(S3, [S3.index(parse_cycles("(1,2,3)", 3))])
    with pytest.raises(PreconditionError):
        commutator_map(S3, noncentral)


# -------------------------------------------------------------- quotients

def test_quotient_examples():
    G = D16
    assert quotient_group(G, G.whole()).order == 1
    assert find_isomorphism(quotient_group(G, G.trivial()).carrier, G) is not None
    assert id_group(quotient_group(D16, center(D16)).carrier) == (8, 3)


def test_quotient_rejects_non_normal():
    H = generated(S3, [S3.index(parse_cycles("(1,2)", 3))])
    with pytest.raises(NotNormalError):
        quotient_group(S3, H)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: str(G.catalog_id))
def test_quotient_orders_and_kernels(G):
    for N in normal_subgroups(G):
        Q = quotient_group(G, N)
        assert Q.order * N.order == G.order
        assert Q.projection.is_homomorphism() and Q.projection.is_surjective()
        assert np.array_equal(Q.projection.kernel().indices, N.indices)


# ------------------------------------------------------------- hom search

def test_hom_counts():
    assert len(homomorphisms(C2, C2)) == 2
    assert len(homomorphisms(C4, C2)) == 2
    assert len(homomorphisms(S3, C3)) == 1


def test_isomorphism_counts():
    assert len(isomorphisms_between(C3, C3)) == 2
    assert isomorphisms_between(C4, V4) == []
    assert len(isomorphisms_between(V4, V4)) == 6
    assert automorphism_group(V4).order == 6
    assert automorphism_group(small_group(18, 4)).order == 432


@pytest.mark.parametrize("A,B", [(C2, V4), (C4, S3), (V4, S3), (S3, D8), (C3, A4), (Q8, C4),
                                 (V4, D8), (S3, S3)])
def test_hom_counts_match_brute_force(A, B):
    homs = homomorphisms(A, B)
    assert len(homs) == oracles.all_maps_count(A, B)
    assert len({h.table.tobytes() for h in homs}) == len(homs)
    assert all(h.is_homomorphism() for h in homs)


def test_generator_image_extension_examples():
    g = C4.gen_idx
    assert (generator_image_extension(g, [0], C4, C4).table == 0).all()
    h = generator_image_extension(g, [C4.index(parse_cycles("(1,2,3,4)", 4))], C4, C4)
    assert h is not None and h.is_bijective()
    transposition = S3.index(parse_cycles("(1,2)", 3))
    three_cycle = S3.index(parse_cycles("(1,2,3)", 3))
    assert generator_image_extension(g, [transposition], C4, S3) is not None
    assert generator_image_extension(g, [three_cycle], C4, S3) is None


SMALL_8 = [G for o in range(1, 9) for G in all_small_groups(o)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_8), st.sampled_from(SMALL_8), st.data())
def test_extension_exists_iff_some_hom_has_those_images(A, B, data):
    gens = A.gen_idx
    imgs = [data.draw(st.integers(0, B.order - 1)) for _ in gens]
    ext = generator_image_extension(gens, imgs, A, B)
    matching = [h for h in homomorphisms(A, B) if list(h.table[gens]) == imgs]
    assert (ext is not None) == bool(matching)
    if ext is not None:
        assert np.array_equal(ext.table, matching[0].table)


# ------------------------------------------------------------------ degrees

def test_commutative_degree_examples():
    assert commutative_degree(A4) == Fraction(1, 3)
    assert commutative_degree(V4) == 1
    assert commutative_degree(small_group(40, 4)) == Fraction(13, 40)


@pytest.mark.parametrize("G", UP_TO_20, ids=lambda G: str(G.catalog_id))
def test_commutative_degree_brute_force_and_bound(G):
    d = commutative_degree(G)
    assert d == Fraction(oracles.commuting_pairs(G), G.order ** 2)
    if not G.is_abelian:
        assert d <= Fraction(5, 8)


# -------------------------------------------------------------- isoclinism

def test_isoclinism_examples():
    assert are_isoclinic_groups(D16, Q16) is not None
    assert are_isoclinic_groups(Q16, C4C4) is None
    w = are_isoclinic_groups(D8, D8)
    assert w is not None and verify_isoclinism(w)


def test_isoclinic_families_of_order_16():
    assert isoclinic_family(small_group(16, 1), 16) == [1, 2, 5, 10, 14]
    assert isoclinic_family(small_group(16, 7), 16) == [7, 8, 9]
    assert isoclinic_family(small_group(16, 3), 16) == [3, 4, 6, 11, 12, 13]


def test_isoclinism_is_an_equivalence_on_order_16():
    groups = all_small_groups(16)
    W = {(i, j): are_isoclinic_groups(G, H) for i, G in enumerate(groups) for j, H in enumerate(groups)}
    for i in range(14):
        assert W[i, i] is not None
    for (i, j), w in W.items():
        assert (w is None) == (W[j, i] is None)
        if w is not None:
            assert verify_isoclinism(w) and verify_isoclinism(w.inverse())
    for i in range(14):
        for j in range(14):
            for k in range(14):
                if W[i, j] is not None and W[j, k] is not None:
                    assert W[i, k] is not None
                    assert verify_isoclinism(W[i, j].then(W[j, k]))


def test_isoclinic_groups_share_commutative_degree():
    for order in (8, 12, 16, 18, 20):
        groups = all_small_groups(order)
        for G, H in combinations(groups, 2):
            if are_isoclinic_groups(G, H) is not None:
                assert commutative_degree(G) == commutative_degree(H)


def test_stem_groups():
    assert not is_stem_group(small_group(9, 2))
    assert is_stem_group(Q8)
    assert all(not is_stem_group(G) for G in UP_TO_20 if G.is_abelian and G.order > 1)
    assert [G.catalog_id[1] for G in all_small_groups(16) if is_stem_group(G)] == [7, 8, 9]


def test_id_group_and_direct_product():
    assert id_group(small_group(1, 1)) == (1, 1)
    assert id_group(D16) == (16, 7)
    assert id_group(Q16) == (16, 9)
    P = direct_product(C2, D8)
    assert id_group(P.group) == (16, 11)
    assert find_isomorphism(direct_product(S3, small_group(1, 1)).group, S3) is not None
    VV = direct_product(C2, C2).group
    assert sum(1 for x in VV.elements if oracles.order(x) == 2) == 3
    for e in P.embeddings + P.projections:
        assert e.is_homomorphism()


def test_id_group_outside_catalog():
    G = direct_product(small_group(5, 1), small_group(5, 1)).group
    with pytest.raises(CatalogError):
        id_group(G)


def test_group_hom_helpers():
    h = homomorphisms(C4, C2)[1]
    assert h.is_surjective() and not h.is_injective()
    assert h.kernel().order == 2 and h.image().order == 2
    with pytest.raises(PreconditionError):
        h.inverse()
    auto = isomorphisms_between(C4, C4)[1]
    assert np.array_equal(auto.compose(auto.inverse()).table, np.arange(4))
    with pytest.raises(PreconditionError):
        auto.compose(h)


def test_subgroup_lattice_sizes():
    # subgroup counts of S3, D8, Q8 and A4
    assert [len(subgroups(G)) for G in (S3, D8, Q8, A4)] == [6, 10, 6, 10]
    assert [len(normal_subgroups(G)) for G in (S3, D8, Q8, A4)] == [3, 6, 6, 3]
    not_closed = [0, S3.index(parse_cycles("(1,2)", 3)), S3.index(parse_cycles("(1,3)", 3))]
    with pytest.raises(PreconditionError):
        Subgroup(S3, not_closed, check=True)


def test_abelian_invariants():
    assert abelian_invariants(small_group(16, 10)) == [2, 2, 4]
    assert abelian_invariants(small_group(20, 5)) == [2, 10]
    assert abelian_invariants(S3) == [2]
    assert abelian_invariants(A4) == [3]


def test_large_group_has_no_dense_table():
    A = automorphism_group(small_group(8, 5))   # GL(3,2), order 168
    assert A.order == 168
    S7 = Group.from_cycles(["(1,2)", "(1,2,3,4,5,6,7)"], 7)
    assert S7.order == 5040
    with pytest.raises(PreconditionError):
        S7.mul
