"""Direct-factor decomposition with explicit internal witnesses.

A group splits when two nontrivial normal subgroups intersect trivially and
their orders multiply to the group order; splitting recursively until no
split exists certifies every factor as directly indecomposable.  The search
is exhaustive over the normal-subgroup lattice, which keeps it honest at
the cost of being feasible only for small tables.
"""

from __future__ import annotations

from .group_core import (
    Group,
    GroupError,
    Homomorphism,
    Subgroup,
    build_hom,
    conjugacy_classes,
    direct_product,
    is_isomorphism,
    subgroup_closure,
    subgroup_group,
)


class Decomposition:
    """A witnessed internal direct-product decomposition.

    ``internal_factors`` are normal subgroups of the parent whose pairwise
    products rebuild it; ``external_factors`` are the same groups on their
    own element indices; ``witness`` maps the parent isomorphically onto
    the iterated direct product of the external factors (left-associated,
    row-major pair indexing).
    """

    __slots__ = ("parent", "internal_factors", "external_factors", "witness")

    def __init__(self, parent: Group,
                 internal_factors: tuple[Subgroup, ...],
                 external_factors: tuple[Group, ...],
                 witness: Homomorphism):
        if not is_isomorphism(witness):
            raise GroupError("decomposition witness is not an isomorphism")
        self.parent = parent
        self.internal_factors = internal_factors
        self.external_factors = external_factors
        self.witness = witness

    @property
    def factor_count(self) -> int:
        return len(self.external_factors)

    def factor_orders(self) -> tuple[int, ...]:
        return tuple(g.n for g in self.external_factors)

    def __repr__(self) -> str:
        return f"Decomposition(orders={list(self.factor_orders())})"


def normal_subgroups(G: Group) -> list[Subgroup]:
    """All normal subgroups, sorted by size then element tuple.

    A normal subgroup is generated by the conjugacy classes it contains, so
    the lattice is the closure of the trivial subgroup under joining normal
    closures of single classes.  Joins of normal subgroups are plain
    product sets, computed here on bit masks.
    """
    cached = G._cache.get("normal_subgroups")
    if cached is not None:
        return cached
    n = G.n
    table = G.table
    atoms: list[tuple[int, tuple[int, ...]]] = []
    seen_atoms = set()
    for cls in conjugacy_classes(G):
        sub = subgroup_closure(G, cls)
        mask = 0
        for x in sub.elements:
            mask |= 1 << x
        if mask != 1 and mask not in seen_atoms:
            seen_atoms.add(mask)
            atoms.append((mask, sub.elements))
    found: dict[int, tuple[int, ...]] = {1: (0,)}
    queue: list[tuple[int, tuple[int, ...]]] = [(1, (0,))]
    i = 0
    while i < len(queue):
        mask, elems = queue[i]
        i += 1
        for amask, aelems in atoms:
            if amask | mask == mask:
                continue
            jmask = 0
            for u in elems:
                row = table[u]
                for a in aelems:
                    jmask |= 1 << row[a]
            if jmask not in found:
                jelems = _mask_elements(jmask, n)
                found[jmask] = jelems
                queue.append((jmask, jelems))
    subs = sorted(found.values(), key=lambda e: (len(e), e))
    cached = [Subgroup(G, e) for e in subs]
    G._cache["normal_subgroups"] = cached
    return cached


def _mask_elements(mask: int, n: int) -> tuple[int, ...]:
    return tuple(x for x in range(n) if mask >> x & 1)


def _find_split(G: Group) -> tuple[Subgroup, Subgroup] | None:
    """First pair of complementary proper normal subgroups, if any.

    Scanned in ascending size of the first factor, then of the second; two
    normal subgroups with trivial intersection and complementary orders
    automatically generate the whole group.
    """
    normals = normal_subgroups(G)
    n = G.n
    for N1 in normals:
        size1 = len(N1)
        if size1 == 1 or size1 == n:
            continue
        for N2 in normals:
            if size1 * len(N2) != n:
                continue
            if len(N1.element_set & N2.element_set) == 1:
                return N1, N2
    return None


def is_directly_indecomposable(G: Group) -> bool:
    """True iff no nontrivial internal direct-product split exists."""
    return _find_split(G) is None


def decompose_indecomposable(G: Group) -> Decomposition:
    """Split G into directly indecomposable factors with a full witness."""
    split = _find_split(G)
    if split is None:
        whole = Subgroup(G, range(G.n))
        external, _ = subgroup_group(whole)
        witness = build_hom(G, external, range(G.n))
        return Decomposition(G, (whole,), (external,), witness)
    N1, N2 = split
    G1, elems1 = subgroup_group(N1)
    G2, elems2 = subgroup_group(N2)
    left = decompose_indecomposable(G1)
    right = decompose_indecomposable(G2)
    # unique factorization g = a*b over (N1, N2)
    table = G.table
    fact: list[tuple[int, int] | None] = [None] * G.n
    for i1, a in enumerate(elems1):
        row = table[a]
        for i2, b in enumerate(elems2):
            g = row[b]
            if fact[g] is not None:
                raise GroupError("internal: factorization not unique")
            fact[g] = (i1, i2)
    internal = tuple(
        Subgroup(G, tuple(elems1[i] for i in F.elements))
        for F in left.internal_factors
    ) + tuple(
        Subgroup(G, tuple(elems2[i] for i in F.elements))
        for F in right.internal_factors
    )
    product = direct_product(left.witness.target, right.witness.target)
    right_order = right.witness.target.n
    w_left = left.witness.images
    w_right = right.witness.images
    images = [0] * G.n
    for g in range(G.n):
        i1, i2 = fact[g]  # type: ignore[misc]
        images[g] = w_left[i1] * right_order + w_right[i2]
    witness = build_hom(G, product.group, images)
    return Decomposition(G, internal,
                         left.external_factors + right.external_factors,
                         witness)
