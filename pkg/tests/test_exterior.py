from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import oracles
from xclin.catalog import all_small_groups, catalog_orders, id_group, small_group
from xclin.errors import NotFoundError, NotNormalError, PreconditionError
from xclin.exterior import (abelian_wedge_oracle, all_exterior_stem_group_ids, are_exterior_isoclinic_groups,
                            commutator_image, exterior_center, exterior_center_in_commutator_image,
                            exterior_degree, exterior_isoclinic_exterior_stem_group,
                            exterior_isoclinic_family, exterior_isoclinic_group, exterior_product,
                            exterior_square, is_exterior_stem_group, pairing_identities_hold)
from xclin.groups import (Group, abelian_invariants, are_isoclinic_groups, center, derived_subgroup,
                          generated, normal_subgroups, quotient_group, subgroups)
from xclin.perm import Permutation

UP_TO_16 = [G for o in range(1, 17) for G in all_small_groups(o)]
UP_TO_20 = [G for o in catalog_orders() if o <= 20 for G in all_small_groups(o)]
gid = lambda G: str(G.catalog_id)  # noqa: E731


def abelian(invariants):
    """Direct product of cyclic groups acting on disjoint blocks of points."""
    degree, gens, off = sum(invariants), [], 0
    for d in invariants:
        gens.append(Permutation.from_cycles([tuple(range(off, off + d))], degree))
        off += d
    return Group(gens, degree=degree)


def divisor_chains(n, least=2):
    if n == 1:
        yield []
        return
    for d in range(least, n + 1):
        if n % d == 0:
            for rest in divisor_chains(n // d, d):
                if all(r % d == 0 for r in rest):
                    yield [d] + rest


def brute_exterior_center(P):
    G = P.ambient
    return {G.elements[g] for g in range(G.order) if all(P.pair(g, x) == 0 for x in range(G.order))}


# ----------------------------------------------------------------- examples

def test_cyclic_wedges_are_trivial():
    for G in (small_group(6, 2), small_group(16, 1), small_group(1, 1)):
        assert exterior_square(G).wedge.order == 1


def test_abelian_wedge_orders():
    assert exterior_square(small_group(4, 2)).wedge.order == 2
    assert exterior_square(small_group(16, 14)).wedge.order == 64
    assert exterior_square(small_group(16, 2)).wedge.order == 4


def test_abelian_wedge_oracle_examples():
    assert abelian_wedge_oracle([7]) == []
    assert abelian_wedge_oracle([2, 2]) == [2]
    assert abelian_wedge_oracle([2, 2, 2, 2]) == [2] * 6
    assert abelian_wedge_oracle([2, 4, 8]) == [2, 2, 4]
    with pytest.raises(PreconditionError):
        abelian_wedge_oracle([4, 2])


def test_exterior_center_examples():
    assert exterior_center(small_group(16, 1)).order == 16
    assert exterior_center(small_group(16, 14)).order == 1
    assert exterior_center(small_group(6, 1)).order == 1


def test_exterior_degree_examples():
    assert exterior_degree(small_group(12, 3)) == Fraction(7, 24)
    assert exterior_degree(small_group(40, 4)) == Fraction(13, 40)
    assert exterior_degree(small_group(16, 11)) == Fraction(1, 4)


def test_commutator_image_examples():
    assert (commutator_image(exterior_square(small_group(8, 2))).table == 0).all()
    Q8 = small_group(8, 4)
    assert commutator_image(exterior_square(Q8)).image() == derived_subgroup(Q8)
    D8 = small_group(8, 3)
    P = exterior_square(D8)
    assert P.wedge.order == 4
    assert commutator_image(P).image().order == 2


def test_stem_examples():
    C3C3, C4C2, C16 = small_group(9, 2), small_group(8, 2), small_group(16, 1)
    assert is_exterior_stem_group(C3C3)
    assert not is_exterior_stem_group(C4C2)
    assert not is_exterior_stem_group(C16)
    assert all_exterior_stem_group_ids(1) == [(1, 1)]
    assert all_exterior_stem_group_ids(9) == [(9, 2)]
    assert all_exterior_stem_group_ids(16) == [(16, i) for i in (2, 3, 7, 11, 14)]


def test_containment_reading_is_weaker():
    # Z∧(G) ⊆ [G, G] also accepts groups that are not minimal in their family
    ids = [G.catalog_id[1] for G in all_small_groups(16) if exterior_center_in_commutator_image(G)]
    assert ids == [2, 3, 7, 8, 9, 11, 12, 13, 14]


def test_families_of_order_16():
    assert exterior_isoclinic_family(small_group(16, 4), 16) == [4, 8, 9]
    assert exterior_isoclinic_family(small_group(16, 5), 16) == [5, 6]
    assert exterior_isoclinic_family(small_group(16, 10), 16) == [10, 12, 13]


def test_relation_examples():
    D16, Q16, C4C4 = small_group(16, 7), small_group(16, 9), small_group(16, 4)
    assert are_exterior_isoclinic_groups(D16, Q16) is None
    assert are_exterior_isoclinic_groups(Q16, C4C4) is not None
    w = are_exterior_isoclinic_groups(small_group(6, 1), small_group(12, 1))
    assert w is not None and w.verify() and w.inverse().verify()


def test_smallest_representatives():
    assert id_group(exterior_isoclinic_group(small_group(16, 1))) == (1, 1)
    assert id_group(exterior_isoclinic_group(small_group(12, 1))) == (6, 1)
    stem = exterior_isoclinic_exterior_stem_group(small_group(8, 2))
    assert id_group(stem) == (4, 2)
    assert id_group(exterior_isoclinic_exterior_stem_group(small_group(16, 1))) == (1, 1)
    for G in all_small_groups(16):
        if is_exterior_stem_group(G):
            assert exterior_isoclinic_exterior_stem_group(G).order <= 16


def test_no_stem_match_outside_the_catalog():
    # C2^5 has trivial exterior centre, so only groups of order >= 32 qualify; 32 is not catalogued
    with pytest.raises(NotFoundError):
        exterior_isoclinic_exterior_stem_group(abelian([2, 2, 2, 2, 2]))


def test_exterior_product_of_normal_subgroups():
    S3 = small_group(6, 1)
    A3 = derived_subgroup(S3)
    P = exterior_product(S3, A3, S3.whole())
    assert pairing_identities_hold(P)
    assert commutator_image(P).image() == A3
    H = generated(S3, [S3.index(Permutation.from_cycles([(0, 1)], 3))])
    with pytest.raises(NotNormalError):
        exterior_product(S3, H, S3.whole())


@pytest.mark.parametrize("G", [small_group(8, 3), small_group(12, 3), small_group(16, 11)], ids=gid)
def test_exterior_products_over_normal_pairs(G):
    for M, N in combinations(normal_subgroups(G), 2):
        P = exterior_product(G, M, N)
        assert pairing_identities_hold(P)
        k = commutator_image(P).image()
        comms = {G.comm(m, n) for m in M.indices for n in N.indices}
        assert set(k.indices) == set(generated(G, sorted(comms)).indices)


# --------------------------------------------------------------- properties

@pytest.mark.parametrize("G", [G for G in UP_TO_20 if G.is_abelian], ids=gid)
def test_abelian_wedges_match_oracle(G):
    W = exterior_square(G).wedge
    assert abelian_invariants(W) == abelian_wedge_oracle(abelian_invariants(G))


CHAINS_21_32 = [c for n in range(21, 33) for c in divisor_chains(n)]


@pytest.mark.parametrize("chain", CHAINS_21_32, ids=str)
def test_abelian_wedges_beyond_the_catalog(chain):
    G = abelian(chain)
    assert abelian_invariants(G) == chain
    assert abelian_invariants(exterior_square(G).wedge) == abelian_wedge_oracle(chain)


@pytest.mark.parametrize("G", UP_TO_16, ids=gid)
def test_pairing_identities(G):
    assert pairing_identities_hold(exterior_square(G))


@pytest.mark.parametrize("G", UP_TO_20, ids=gid)
def test_exterior_center_is_central_and_matches_brute_force(G):
    P = exterior_square(G)
    Z = exterior_center(G)
    assert {G.elements[i] for i in Z.indices} == brute_exterior_center(P)
    assert Z.issubset(center(G))


@pytest.mark.parametrize("G", UP_TO_16, ids=gid)
def test_pairing_ignores_the_exterior_center(G):
    lam = exterior_square(G).lam
    for z in exterior_center(G).indices:
        assert (lam[G.mul[z]] == lam).all()
        assert (lam[:, G.mul[z]] == lam).all()


def test_wedge_relates_to_commutators():
    # |G∧G| = |M(G)|·|G'| with known Schur multipliers: S3 0, Q8 0, D8 C2, A4 C2
    for (o, i), schur in [((6, 1), 1), ((8, 4), 1), ((8, 3), 2), ((12, 3), 2)]:
        G = small_group(o, i)
        assert exterior_square(G).wedge.order == schur * derived_subgroup(G).order


@pytest.mark.parametrize("order", [8, 12, 16, 18, 20])
def test_exterior_isoclinism_is_an_equivalence(order):
    groups = all_small_groups(order)
    n = len(groups)
    W = {(i, j): are_exterior_isoclinic_groups(groups[i], groups[j]) for i in range(n) for j in range(n)}
    for i in range(n):
        assert W[i, i] is not None
    for (i, j), w in W.items():
        assert (w is None) == (W[j, i] is None)
        if w is not None:
            assert w.verify() and w.inverse().verify()
            assert exterior_degree(groups[i]) == exterior_degree(groups[j])
            for k in range(n):
                if W[j, k] is not None:
                    assert W[i, k] is not None and w.then(W[j, k]).verify()


@pytest.mark.parametrize("G", UP_TO_16, ids=gid)
def test_quotients_by_normal_subgroups(G):
    # G/N ≈ G exactly when N lies in the exterior centre
    Z = exterior_center(G)
    for N in normal_subgroups(G):
        Q = quotient_group(G, N).carrier
        related = are_exterior_isoclinic_groups(Q, G) is not None
        assert related == N.issubset(Z), N.indices


@pytest.mark.parametrize("G", UP_TO_16, ids=gid)
def test_supplements_of_the_exterior_center(G):
    # H·Z∧(G) = G implies H ≈ G
    Z = exterior_center(G).mask
    for H in subgroups(G):
        prods = G.mul[np.ix_(H.indices, np.flatnonzero(Z))]
        if len(np.unique(prods)) == G.order:
            assert are_exterior_isoclinic_groups(H.group, G) is not None


def test_relations_are_independent():
    D16, Q16, C4C4 = small_group(16, 7), small_group(16, 9), small_group(16, 4)
    assert are_isoclinic_groups(D16, Q16) is not None
    assert are_exterior_isoclinic_groups(D16, Q16) is None
    assert are_exterior_isoclinic_groups(Q16, C4C4) is not None
    assert are_isoclinic_groups(Q16, C4C4) is None


def test_cyclic_groups_are_all_exterior_isoclinic():
    cyclic = [small_group(n, 1) for n in (1, 2, 3, 5, 7, 16)]
    for A, B in combinations(cyclic, 2):
        assert are_exterior_isoclinic_groups(A, B) is not None


def test_stem_means_minimal_order_in_family():
    for order in (8, 12, 16, 18):
        for G in all_small_groups(order):
            smallest = exterior_isoclinic_group(G)
            assert is_exterior_stem_group(G) == (smallest.order == G.order)


def test_degree_matches_brute_force_pair_count():
    for G in (small_group(8, 3), small_group(12, 3), small_group(16, 13)):
        P = exterior_square(G)
        count = sum(1 for x in range(G.order) for y in range(G.order) if P.pair(x, y) == 0)
        assert exterior_degree(G) == Fraction(count, G.order ** 2)
        # x∧y = 1 forces [x, y] = 1
        assert count <= oracles.commuting_pairs(G)
