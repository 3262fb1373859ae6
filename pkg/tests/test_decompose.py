"""Normal-subgroup lattices and witnessed indecomposable factorizations."""

import math

import pytest

from conftest import shuffled_copy
from grpiso import catalog
from grpiso.aut_oracle import brute_iso
from grpiso.decompose import (
    Decomposition,
    decompose_indecomposable,
    is_directly_indecomposable,
    normal_subgroups,
)
from grpiso.group_core import (
    direct_product,
    is_isomorphism,
    quotient,
    subgroup_group,
)

S3 = catalog.symmetric_group(3)
D6 = catalog.dihedral_group(6)
Q8 = catalog.quaternion_group(8)
E4 = catalog.elementary_abelian_group(2, 2)


def test_normal_subgroup_counts():
    assert len(normal_subgroups(catalog.cyclic_group(5))) == 2
    assert len(normal_subgroups(catalog.cyclic_group(7))) == 2
    assert len(normal_subgroups(S3)) == 3
    assert len(normal_subgroups(E4)) == 5
    assert [len(N) for N in normal_subgroups(catalog.symmetric_group(4))] == [
        1, 4, 12, 24]
    assert [len(N) for N in normal_subgroups(Q8)] == [1, 2, 4, 4, 4, 8]


def test_normal_subgroups_are_normal_and_sorted():
    for G in (S3, D6, Q8, catalog.alternating_group(4)):
        normals = normal_subgroups(G)
        sizes = [len(N) for N in normals]
        assert sizes == sorted(sizes)
        for N in normals:
            quotient(G, N)  # raises NotNormal if the lattice lied


def test_indecomposability():
    assert is_directly_indecomposable(S3)
    assert is_directly_indecomposable(Q8)
    assert is_directly_indecomposable(catalog.cyclic_group(8))
    assert is_directly_indecomposable(catalog.alternating_group(4))
    assert not is_directly_indecomposable(E4)
    assert not is_directly_indecomposable(catalog.cyclic_group(6))
    assert not is_directly_indecomposable(D6)


def test_single_factor_decompositions():
    for G in (catalog.trivial_group(), S3, catalog.cyclic_group(9), Q8):
        dec = decompose_indecomposable(G)
        assert dec.factor_count == 1
        assert dec.external_factors[0].table == G.table
        assert dec.witness.images == tuple(range(G.n))


def test_z6_decomposition():
    dec = decompose_indecomposable(catalog.cyclic_group(6))
    assert sorted(dec.factor_orders()) == [2, 3]
    _check_decomposition(dec)


def test_d6_decomposition():
    dec = decompose_indecomposable(D6)
    assert sorted(dec.factor_orders()) == [2, 6]
    six = next(g for g in dec.external_factors if g.n == 6)
    assert brute_iso(six, S3) is not None
    _check_decomposition(dec)


def _check_decomposition(dec: Decomposition) -> None:
    G = dec.parent
    assert is_isomorphism(dec.witness)
    assert math.prod(dec.factor_orders()) == G.n
    assert dec.factor_count <= max(1, math.log2(G.n))
    for ext in dec.external_factors:
        assert is_directly_indecomposable(ext)
    # internal factors: normal, pairwise trivial intersections, elementwise
    # commuting, and isomorphic to their external counterparts
    for sub, ext in zip(dec.internal_factors, dec.external_factors):
        assert len(sub) == ext.n
        as_group, _ = subgroup_group(sub)
        assert brute_iso(as_group, ext) is not None
    for i, A in enumerate(dec.internal_factors):
        for B in dec.internal_factors[i + 1:]:
            assert len(A.element_set & B.element_set) == 1
            for a in A.elements:
                for b in B.elements:
                    assert G.table[a][b] == G.table[b][a]
    # unique factorization in internal order
    seen = set()
    for combo in _all_products(G, dec):
        assert combo not in seen
        seen.add(combo)
    assert len(seen) == G.n


def _all_products(G, dec):
    combos = [0]
    for sub in dec.internal_factors:
        combos = [G.table[c][x] for c in combos for x in sub.elements]
    return combos


def test_product_group_decompositions():
    Z4 = catalog.cyclic_group(4)
    for left, right in ((S3, Z4), (Q8, catalog.cyclic_group(3)), (E4, E4)):
        P = direct_product(left, right).group
        dec = decompose_indecomposable(P)
        _check_decomposition(dec)


def test_krull_schmidt_relabeling_invariance():
    Z4 = catalog.cyclic_group(4)
    targets = [
        D6,
        direct_product(S3, Z4).group,
        direct_product(E4, catalog.cyclic_group(3)).group,
        catalog.cyclic_group(12),
    ]
    for G in targets:
        dec = decompose_indecomposable(G)
        shuffled = shuffled_copy(G, seed=G.n * 31 + 7)
        dec2 = decompose_indecomposable(shuffled)
        assert sorted(dec.factor_orders()) == sorted(dec2.factor_orders())
        unmatched = list(dec2.external_factors)
        for F in dec.external_factors:
            hit = next(
                (i for i, F2 in enumerate(unmatched)
                 if F.n == F2.n and brute_iso(F, F2) is not None), None)
            assert hit is not None
            unmatched.pop(hit)
        assert not unmatched


def test_rank_bound_on_largest_elementary_abelian():
    P = direct_product(catalog.elementary_abelian_group(2, 4),
                       catalog.elementary_abelian_group(2, 2)).group
    assert len(normal_subgroups(P)) == 2825  # Gaussian binomial sums, rank 6
    dec = decompose_indecomposable(P)
    assert dec.factor_orders() == (2,) * 6
    assert dec.factor_count <= math.log2(P.n)
    _check_decomposition(dec)
