"""Concrete automorphism-group oracles and brute-force isomorphism search.

The engine enumerates isomorphic embeddings by backtracking over the images
of a greedy irredundant generating sequence: candidate images are filtered
by element order, partial maps are extended by closure and pruned on the
first inconsistent product or image collision.  Enumeration order is fixed
(ascending element indices everywhere), so all outputs are reproducible
byte for byte.
"""

from __future__ import annotations

from itertools import product as iter_product
from typing import Iterator

from .abelian import cyclic_decomposition
from .group_core import (
    Group,
    Homomorphism,
    NotIsomorphism,
    build_hom,
    center,
    derived_subgroup,
    element_orders,
    is_isomorphism,
    quotient,
    subgroup_group,
)
from .perm_group import Partition, PermGroup, Permutation


class _Level:
    """One generator of the source group with its closure growth plan.

    ``derivations`` lists the elements that join the closure when this
    generator does, each as ``(element, source, gen_slot)`` meaning
    ``element = source * gens[gen_slot]`` (the generator itself carries
    source -1).  ``checks`` lists the products ``(x, gen_slot, result)``
    that land on already-placed elements; a candidate image assignment is
    consistent iff every check holds under the partial map.
    """

    __slots__ = ("gen", "gen_order", "derivations", "checks")

    def __init__(self, gen: int, gen_order: int):
        self.gen = gen
        self.gen_order = gen_order
        self.derivations: list[tuple[int, int, int]] = []
        self.checks: list[tuple[int, int, int]] = []


def _skeleton(G: Group) -> tuple[list[_Level], list[int]]:
    cached = G._cache.get("iso_skeleton")
    if cached is not None:
        return cached
    n = G.n
    table = G.table
    orders = element_orders(G)
    in_closure = bytearray(n)
    in_closure[0] = 1
    gens: list[int] = []
    levels: list[_Level] = []
    old_elems = [0]
    for x in range(1, n):
        if in_closure[x]:
            continue
        slot = len(gens)
        gens.append(x)
        level = _Level(x, orders[x])
        level.derivations.append((x, -1, -1))
        in_closure[x] = 1
        new_elems = [x]
        pending: list[tuple[int, int]] = [(u, slot) for u in old_elems]
        pending.extend((x, s) for s in range(slot + 1))
        i = 0
        while i < len(pending):
            u, s = pending[i]
            i += 1
            v = table[u][gens[s]]
            if in_closure[v]:
                level.checks.append((u, s, v))
            else:
                in_closure[v] = 1
                level.derivations.append((v, u, s))
                new_elems.append(v)
                pending.extend((v, s2) for s2 in range(slot + 1))
        old_elems.extend(new_elems)
        levels.append(level)
    result = (levels, gens)
    G._cache["iso_skeleton"] = result
    return result


def _iter_isomorphisms(G: Group, H: Group) -> Iterator[tuple[int, ...]]:
    """All isomorphisms G -> H as image tuples, in deterministic order."""
    n = G.n
    if n != H.n:
        return
    levels, gens = _skeleton(G)
    target_orders = element_orders(H)
    candidates = [
        tuple(y for y in range(n) if target_orders[y] == level.gen_order)
        for level in levels
    ]
    ht = H.table
    phi = [-1] * n
    phi[0] = 0
    used = bytearray(n)
    used[0] = 1

    def extend(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == len(levels):
            yield tuple(phi)
            return
        level = levels[depth]
        derivations = level.derivations
        checks = level.checks
        for y in candidates[depth]:
            if used[y]:
                continue
            trail = []
            ok = True
            for v, u, s in derivations:
                img = y if u < 0 else ht[phi[u]][phi[gens[s]]]
                if used[img]:
                    ok = False
                    break
                phi[v] = img
                used[img] = 1
                trail.append((v, img))
            if ok:
                for u, s, v in checks:
                    if ht[phi[u]][phi[gens[s]]] != phi[v]:
                        ok = False
                        break
            if ok:
                yield from extend(depth + 1)
            for v, img in trail:
                phi[v] = -1
                used[img] = 0

    yield from extend(0)


_AUT_CACHE: dict[tuple, list[Permutation]] = {}


def automorphism_permutations(G: Group) -> list[Permutation]:
    """Every automorphism of G, as permutations in enumeration order."""
    perms = _AUT_CACHE.get(G.table)
    if perms is None:
        perms = [Permutation(images) for images in _iter_isomorphisms(G, G)]
        _AUT_CACHE[G.table] = perms
    return perms


def is_automorphism(G: Group, p: Permutation) -> bool:
    """True iff p permutes the elements compatibly with the table."""
    if p.domain_size != G.n:
        return False
    table = G.table
    imgs = p.images
    return all(
        imgs[table[i][j]] == table[imgs[i]][imgs[j]]
        for i in range(G.n) for j in range(G.n))


def agen(G: Group) -> PermGroup:
    """Generators of the full automorphism group, acting on element indices."""
    return PermGroup(G.n, automorphism_permutations(G))


def acount(G: Group) -> int:
    """Number of automorphisms of G."""
    return agen(G).order()


def apart(G: Group) -> Partition:
    """Orbit partition of the elements under the full automorphism group."""
    return agen(G).orbits()


def brute_iso(G: Group, H: Group) -> Homomorphism | None:
    """First isomorphism G -> H found by exhaustive search, if any."""
    for images in _iter_isomorphisms(G, H):
        return build_hom(G, H, images)
    return None


def brute_iso_count(G: Group, H: Group) -> int:
    """Exact number of isomorphisms G -> H, by exhaustive search."""
    return sum(1 for _ in _iter_isomorphisms(G, H))


def homs_to_central(G: Group, H: Group) -> list[Homomorphism]:
    """All homomorphisms G -> H whose image lies in the center of H.

    Every such map kills the derived subgroup, so the list is built by
    enumerating homomorphisms from G/[G,G] into the center and lifting them
    through the projection.
    """
    Gab, proj = quotient(G, derived_subgroup(G))
    Z = center(H)
    Zgrp, z_elems = subgroup_group(Z)
    dec = cyclic_decomposition(Gab)
    z_orders = element_orders(Zgrp)
    choice_sets = [
        [b for b in range(Zgrp.n) if d % z_orders[b] == 0]
        for d in dec.orders
    ]
    maps: list[Homomorphism] = []
    for bs in iter_product(*choice_sets):
        ab_images = [0] * Gab.n
        for x in range(Gab.n):
            img = 0
            for b, k in zip(bs, dec.exponents[x]):
                img = Zgrp.table[img][Zgrp.power(b, k)]
            ab_images[x] = img
        images = [z_elems[ab_images[proj.images[g]]] for g in range(G.n)]
        maps.append(build_hom(G, H, images))
    return maps


class FormalMatrix:
    """A 2x2 block of maps acting on a direct product ``G x H``.

    The diagonal entries are automorphisms of the factors; the
    off-diagonal entries are homomorphisms into the opposite factor's
    center.  The action sends ``(g, h)`` to ``(alpha(g)beta(h),
    gamma(g)delta(h))``.
    """

    __slots__ = ("alpha", "beta", "gamma", "delta")

    def __init__(self, alpha: Homomorphism, beta: Homomorphism,
                 gamma: Homomorphism, delta: Homomorphism):
        if not is_isomorphism(alpha):
            raise NotIsomorphism("alpha is not an automorphism")
        if not is_isomorphism(delta):
            raise NotIsomorphism("delta is not an automorphism")
        center_g = center(alpha.source).element_set
        center_h = center(delta.source).element_set
        if not set(beta.images) <= center_g:
            raise NotIsomorphism("beta does not map into the first center")
        if not set(gamma.images) <= center_h:
            raise NotIsomorphism("gamma does not map into the second center")
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.delta = delta


def formal_matrices(G: Group, H: Group) -> list[FormalMatrix]:
    """All formal matrices over the pair, in deterministic nested order."""
    auts_g = [
        build_hom(G, G, p.images) for p in automorphism_permutations(G)
    ]
    auts_h = [
        build_hom(H, H, p.images) for p in automorphism_permutations(H)
    ]
    betas = homs_to_central(H, G)
    gammas = homs_to_central(G, H)
    return [
        FormalMatrix(alpha, beta, gamma, delta)
        for alpha in auts_g
        for beta in betas
        for gamma in gammas
        for delta in auts_h
    ]


def build_matrix_group(G: Group, H: Group) -> list[Permutation]:
    """The action of every formal matrix on ``G x H``, one permutation each.

    Pairs are indexed row-major (``(g,h)`` at ``g*|H| + h``), matching
    :func:`grpiso.group_core.direct_product`.
    """
    ng, nh = G.n, H.n
    gt, ht = G.table, H.table
    perms = []
    for m in formal_matrices(G, H):
        a, b = m.alpha.images, m.beta.images
        c, d = m.gamma.images, m.delta.images
        images = [0] * (ng * nh)
        at = 0
        for g in range(ng):
            ag_row = gt[a[g]]
            cg_row = ht[c[g]]
            for h in range(nh):
                images[at] = ag_row[b[h]] * nh + cg_row[d[h]]
                at += 1
        perms.append(Permutation(images))
    return perms


def build_flip(pi: Homomorphism) -> Permutation:
    """The order-2 map ``(g, h) -> (pi^-1(h), pi(g))`` on the product.

    ``pi`` must be an isomorphism between the two factors; the result is an
    automorphism of the product that swaps them through ``pi``.
    """
    if not is_isomorphism(pi):
        raise NotIsomorphism("factor swap needs an isomorphism")
    ng = pi.source.n
    nh = pi.target.n
    inv = [0] * nh
    for x, y in enumerate(pi.images):
        inv[y] = x
    images = [
        inv[h] * nh + pi.images[g]
        for g in range(ng) for h in range(nh)
    ]
    return Permutation(images)


class BacktrackingOracle:
    """Automorphism-problem oracle backed by the exhaustive search engine.

    Answers are memoized per Cayley table, so repeated queries about equal
    groups are free; the three entry points are mutually consistent because
    counting and partitioning both run off the generator list.
    """

    def agen(self, G: Group) -> PermGroup:
        return agen(G)

    def acount(self, G: Group) -> int:
        return acount(G)

    def apart(self, G: Group) -> Partition:
        return apart(G)
