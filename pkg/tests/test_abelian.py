"""Cyclic decomposition, order-dividing counts and hom counting."""

import math
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_homs, naive_isos
from grpiso import catalog
from grpiso.abelian import (
    NotAbelian,
    abelian_iso,
    count_order_dividing,
    cyclic_decomposition,
    hom_count_abelian,
    hom_count_to_center,
    is_abelian,
)
from grpiso.aut_oracle import brute_iso
from grpiso.group_core import direct_product, element_orders, is_isomorphism


def _abelian_catalog():
    groups = {f"Z{n}": catalog.cyclic_group(n) for n in range(1, 17)}
    groups["E4"] = catalog.elementary_abelian_group(2, 2)
    groups["E8"] = catalog.elementary_abelian_group(2, 3)
    groups["E16"] = catalog.elementary_abelian_group(2, 4)
    groups["E9"] = catalog.elementary_abelian_group(3, 2)
    groups["Z4xZ2"] = direct_product(
        catalog.cyclic_group(4), catalog.cyclic_group(2)).group
    groups["Z4xZ4"] = direct_product(
        catalog.cyclic_group(4), catalog.cyclic_group(4)).group
    groups["Z8xZ2"] = direct_product(
        catalog.cyclic_group(8), catalog.cyclic_group(2)).group
    return groups


ABELIAN = _abelian_catalog()


def test_is_abelian():
    assert is_abelian(catalog.cyclic_group(6))
    assert is_abelian(catalog.trivial_group())
    assert not is_abelian(catalog.symmetric_group(3))
    assert not is_abelian(catalog.quaternion_group(8))


def test_cyclic_decomposition_shapes():
    assert cyclic_decomposition(catalog.cyclic_group(12)).orders == (4, 3)
    assert cyclic_decomposition(ABELIAN["E4"]).orders == (2, 2)
    assert cyclic_decomposition(catalog.trivial_group()).orders == ()
    assert cyclic_decomposition(ABELIAN["Z4xZ2"]).orders == (4, 2)
    assert cyclic_decomposition(ABELIAN["Z8xZ2"]).orders == (8, 2)
    assert cyclic_decomposition(catalog.cyclic_group(6)).orders == (2, 3)


def test_cyclic_decomposition_rejects_nonabelian():
    with pytest.raises(NotAbelian):
        cyclic_decomposition(catalog.symmetric_group(3))


def test_cyclic_decomposition_normal_form():
    for name in ("Z12", "E8", "Z4xZ2", "E9", "Z4xZ4"):
        A = ABELIAN[name]
        dec = cyclic_decomposition(A)
        assert math.prod(dec.orders) == A.n
        for d in dec.orders:
            base = min(p for p in range(2, d + 1) if d % p == 0)
            q = d
            while q % base == 0:
                q //= base
            assert q == 1  # prime power
        for x in range(A.n):
            assert dec.compose(dec.exponents[x]) == x


def test_prime_ranks():
    dec = cyclic_decomposition(catalog.cyclic_group(12))
    assert dec.prime_ranks() == {2: 1, 3: 1}
    assert cyclic_decomposition(ABELIAN["E16"]).prime_ranks() == {2: 4}


def test_count_order_dividing():
    Z4 = catalog.cyclic_group(4)
    assert count_order_dividing(Z4, 1) == 1
    assert count_order_dividing(Z4, 2) == 2
    assert count_order_dividing(ABELIAN["E4"], 2) == 4
    S3 = catalog.symmetric_group(3)
    assert count_order_dividing(S3, 2) == 4
    assert count_order_dividing(S3, 3) == 3
    with pytest.raises(ValueError):
        count_order_dividing(Z4, 0)


def test_count_order_dividing_gcd_invariance():
    for B in (catalog.cyclic_group(12), ABELIAN["E8"], ABELIAN["Z4xZ2"]):
        exponent = math.lcm(*element_orders(B))
        for t in range(1, 40):
            assert count_order_dividing(B, t) == count_order_dividing(
                B, math.gcd(t, exponent))


def test_hom_count_examples():
    assert hom_count_abelian(catalog.cyclic_group(8),
                             catalog.trivial_group()) == 1
    assert hom_count_abelian(catalog.cyclic_group(4), ABELIAN["E4"]) == 4
    assert hom_count_abelian(catalog.cyclic_group(6),
                             catalog.cyclic_group(3)) == 3
    with pytest.raises(NotAbelian):
        hom_count_abelian(catalog.symmetric_group(3), ABELIAN["E4"])


def test_hom_count_matches_enumeration_small():
    names = [n for n, g in ABELIAN.items() if g.n <= 9]
    for a in names:
        for b in names:
            A, B = ABELIAN[a], ABELIAN[b]
            assert hom_count_abelian(A, B) == len(naive_homs(A, B)), (a, b)


def test_hom_count_multiplicative_over_coprime_split():
    # Hom(A1 x A2, B) factors when |A1| and |A2| are coprime
    pairs = [(4, 3), (8, 9), (2, 15)]
    B = ABELIAN["Z12"]
    for n1, n2 in pairs:
        A1 = catalog.cyclic_group(n1)
        A2 = catalog.cyclic_group(n2)
        A = direct_product(A1, A2).group
        assert hom_count_abelian(A, B) == (
            hom_count_abelian(A1, B) * hom_count_abelian(A2, B))


def test_hom_count_to_center():
    S3 = catalog.symmetric_group(3)
    D4 = catalog.dihedral_group(4)
    assert hom_count_to_center(D4, S3) == 1  # trivial center target
    assert hom_count_to_center(D4, D4) == 4
    assert hom_count_to_center(S3, catalog.cyclic_group(4)) == 2


def test_abelian_iso_examples():
    Z1 = catalog.trivial_group()
    assert abelian_iso(Z1, Z1).images == (0,)
    Z6 = catalog.cyclic_group(6)
    Z2xZ3 = direct_product(catalog.cyclic_group(2),
                           catalog.cyclic_group(3)).group
    phi = abelian_iso(Z6, Z2xZ3)
    assert phi is not None and is_isomorphism(phi)
    assert abelian_iso(catalog.cyclic_group(4), ABELIAN["E4"]) is None
    with pytest.raises(NotAbelian):
        abelian_iso(catalog.symmetric_group(3), Z6)


def test_abelian_iso_agrees_with_brute_force():
    names = sorted(ABELIAN)
    for a, b in combinations_with_replacement(names, 2):
        A, B = ABELIAN[a], ABELIAN[b]
        if A.n * B.n > 1024 or A.n > 32 or B.n > 32:
            continue
        constructive = abelian_iso(A, B)
        brute = brute_iso(A, B)
        assert (constructive is None) == (brute is None), (a, b)
        if constructive is not None:
            assert is_isomorphism(constructive)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=24), st.integers(min_value=1, max_value=60))
def test_cyclic_hom_count_closed_form(n, t):
    # in a cyclic group the order-dividing count is gcd(n, t)
    assert count_order_dividing(catalog.cyclic_group(n), t) == math.gcd(n, t)
