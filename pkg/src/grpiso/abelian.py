"""Abelian-group structure: cyclic decomposition, order-dividing counts,
homomorphism counting and constructive isomorphism.

A finite abelian group splits as a direct product of cyclic groups of prime
power order; with generators ``a_1..a_r`` of orders ``d_1..d_r``, every
element has a unique normal form ``a_1^k_1 * ... * a_r^k_r``, and the maps
into an abelian target correspond exactly to the choices of generator
images ``b_i`` with ``b_i^{d_i} = 1``.  Counting those choices gives
``|Hom(A,B)| = N(d_1) * ... * N(d_r)`` where ``N(t)`` counts elements of
order dividing ``t`` in the target.
"""

from __future__ import annotations

from itertools import product as iter_product

from .group_core import (
    Group,
    GroupError,
    Homomorphism,
    build_hom,
    center,
    derived_subgroup,
    element_orders,
    is_isomorphism,
    quotient,
    subgroup_group,
)


class NotAbelian(GroupError):
    pass


def is_abelian(G: Group) -> bool:
    """True iff the multiplication table is symmetric."""
    cached = G._cache.get("abelian")
    if cached is None:
        table = G.table
        cached = all(
            table[i][j] == table[j][i]
            for i in range(G.n) for j in range(i + 1, G.n))
        G._cache["abelian"] = cached
    return cached


class CyclicDecomposition:
    """A basis of an abelian group by cyclic subgroups of prime power order.

    ``generators[i]`` has order ``orders[i]``; orders are grouped by
    ascending prime and non-increasing within each prime, so two
    decompositions of isomorphic groups have identical order sequences.
    ``exponents[x]`` is the unique normal-form exponent vector of element x.
    """

    __slots__ = ("parent", "generators", "orders", "exponents")

    def __init__(self, parent: Group, generators: tuple[int, ...],
                 orders: tuple[int, ...],
                 exponents: tuple[tuple[int, ...], ...]):
        self.parent = parent
        self.generators = generators
        self.orders = orders
        self.exponents = exponents

    @property
    def rank(self) -> int:
        return len(self.generators)

    def prime_ranks(self) -> dict[int, int]:
        """Number of cyclic factors per prime."""
        ranks: dict[int, int] = {}
        for d in self.orders:
            p = _prime_base(d)
            ranks[p] = ranks.get(p, 0) + 1
        return ranks

    def compose(self, ks: tuple[int, ...]) -> int:
        """Element with the given exponent vector."""
        x = 0
        G = self.parent
        for g, k in zip(self.generators, ks):
            x = G.table[x][G.power(g, k)]
        return x

    def __repr__(self) -> str:
        return f"CyclicDecomposition(orders={list(self.orders)})"


def _prime_base(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        else:
            p += 1
    if n > 1:
        out.append(n)
    return out


def cyclic_decomposition(A: Group) -> CyclicDecomposition:
    """Decompose an abelian group into cyclic factors of prime power order.

    Per prime, the Sylow subgroup is peeled greedily: the next generator is
    the smallest-index element of maximal order whose cyclic subgroup meets
    the span of the previous generators trivially.  The resulting normal
    forms are verified to cover the group exactly once.
    """
    if not is_abelian(A):
        raise NotAbelian("group is not abelian")
    cached = A._cache.get("cyclic_decomposition")
    if cached is not None:
        return cached
    n = A.n
    orders = element_orders(A)
    table = A.table
    gens: list[int] = []
    gen_orders: list[int] = []
    for p in _prime_factors(n):
        sylow = [x for x in range(n) if _is_power_of(orders[x], p)]
        span = {0}
        while len(span) < len(sylow):
            pick = -1
            pick_order = 0
            for x in sylow:
                d = orders[x]
                if d <= pick_order or d == 1:
                    continue
                # the cyclic group over x meets the span trivially iff its
                # unique minimal subgroup does
                if A.power(x, d // p) not in span:
                    pick = x
                    pick_order = d
            if pick < 0:
                raise GroupError("internal: cannot extend abelian basis")
            gens.append(pick)
            gen_orders.append(pick_order)
            powers = [A.power(pick, k) for k in range(pick_order)]
            span = {table[s][q] for s in span for q in powers}
            if len(span) % pick_order:
                raise GroupError("internal: abelian basis span is not direct")
    exponents: list[tuple[int, ...] | None] = [None] * n
    for ks in iter_product(*(range(d) for d in gen_orders)):
        x = 0
        for g, k in zip(gens, ks):
            x = table[x][A.power(g, k)]
        if exponents[x] is not None:
            raise GroupError("internal: normal form is not unique")
        exponents[x] = ks
    dec = CyclicDecomposition(A, tuple(gens), tuple(gen_orders),
                              tuple(exponents))  # type: ignore[arg-type]
    A._cache["cyclic_decomposition"] = dec
    return dec


def _is_power_of(q: int, p: int) -> bool:
    while q % p == 0:
        q //= p
    return q == 1


def count_order_dividing(B: Group, t: int) -> int:
    """Number of elements of B whose order divides t."""
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    return sum(1 for d in element_orders(B) if t % d == 0)


def hom_count_abelian(A: Group, B: Group) -> int:
    """Number of homomorphisms between two abelian groups.

    The product of the order-dividing counts over the cyclic generators of
    A; the prime-power decomposition makes the split of A into coprime
    parts implicit.
    """
    if not is_abelian(A):
        raise NotAbelian("source is not abelian")
    if not is_abelian(B):
        raise NotAbelian("target is not abelian")
    total = 1
    for d in cyclic_decomposition(A).orders:
        total *= count_order_dividing(B, d)
    return total


def hom_count_to_center(G: Group, H: Group) -> int:
    """Number of homomorphisms from G whose image lies in the center of H.

    Any such map kills every commutator, so the count equals the number of
    homomorphisms from G modulo its derived subgroup into the center.
    """
    Gab, _ = quotient(G, derived_subgroup(G))
    Z, _ = subgroup_group(center(H))
    return hom_count_abelian(Gab, Z)


def abelian_iso(A: Group, B: Group) -> Homomorphism | None:
    """An explicit isomorphism between abelian groups, if one exists.

    Present exactly when the canonical prime-power order sequences agree;
    generators map to generators and the map extends along normal forms.
    """
    if not is_abelian(A):
        raise NotAbelian("first group is not abelian")
    if not is_abelian(B):
        raise NotAbelian("second group is not abelian")
    if A.n != B.n:
        return None
    dec_a = cyclic_decomposition(A)
    dec_b = cyclic_decomposition(B)
    if dec_a.orders != dec_b.orders:
        return None
    images = [dec_b.compose(dec_a.exponents[x]) for x in range(A.n)]
    phi = build_hom(A, B, images)
    if not is_isomorphism(phi):
        raise GroupError("internal: generator match did not give a bijection")
    return phi
