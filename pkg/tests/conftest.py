"""Shared fixtures: the test catalog and independent brute-force oracles.

The naive enumerators here deliberately avoid the library's search engine:
they expand maps from greedy generator images with their own bookkeeping
and validate candidates directly against the tables.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product as iter_product

import pytest

from grpiso import catalog
from grpiso.group_core import Group, direct_product


# ---------------------------------------------------------------- catalog

def _base_entries() -> list[tuple[str, Group]]:
    entries: list[tuple[str, Group]] = []
    for n in range(1, 17):
        entries.append((f"Z{n}", catalog.cyclic_group(n)))
    entries.append(("E4", catalog.elementary_abelian_group(2, 2)))
    entries.append(("E8", catalog.elementary_abelian_group(2, 3)))
    entries.append(("E16", catalog.elementary_abelian_group(2, 4)))
    entries.append(("E9", catalog.elementary_abelian_group(3, 2)))
    entries.append(("Z4xZ2", direct_product(
        catalog.cyclic_group(4), catalog.cyclic_group(2)).group))
    for n in range(3, 9):
        entries.append((f"D{n}", catalog.dihedral_group(n)))
    entries.append(("Q8", catalog.quaternion_group(8)))
    entries.append(("Q16", catalog.quaternion_group(16)))
    entries.append(("S3", catalog.symmetric_group(3)))
    entries.append(("S4", catalog.symmetric_group(4)))
    entries.append(("A4", catalog.alternating_group(4)))
    return entries


@pytest.fixture(scope="session")
def base_catalog() -> dict[str, Group]:
    return dict(_base_entries())


@pytest.fixture(scope="session")
def full_catalog(base_catalog) -> dict[str, Group]:
    """Base groups plus pairwise direct products of order at most 64."""
    out = dict(base_catalog)
    names = list(base_catalog)
    for a, b in combinations_with_replacement(names, 2):
        G, H = base_catalog[a], base_catalog[b]
        if 1 < G.n * H.n <= 64:
            out[f"{a}*{b}"] = direct_product(G, H).group
    return out


# ------------------------------------------------- independent oracles

def greedy_generators(G: Group) -> list[int]:
    """Irredundant generating elements, chosen in ascending index order."""
    gens: list[int] = []
    closed = {0}
    for x in range(G.n):
        if x in closed:
            continue
        gens.append(x)
        frontier = list(closed) + [x]
        closed.add(x)
        i = 0
        while i < len(frontier):
            u = frontier[i]
            i += 1
            for g in gens:
                v = G.table[u][g]
                if v not in closed:
                    closed.add(v)
                    frontier.append(v)
    return gens


def _derivations(G: Group, gens: list[int]) -> list[tuple[int, int, int]]:
    """Spanning derivations (elem, src, gen_index) reaching every element."""
    out: list[tuple[int, int, int]] = []
    reached = {0}
    frontier = [0]
    i = 0
    while i < len(frontier):
        u = frontier[i]
        i += 1
        for gi, g in enumerate(gens):
            v = G.table[u][g]
            if v not in reached:
                reached.add(v)
                out.append((v, u, gi))
                frontier.append(v)
    assert len(reached) == G.n
    return out


def naive_homs(A: Group, B: Group) -> list[tuple[int, ...]]:
    """Every homomorphism A -> B, by exhausting generator image tuples.

    A candidate tuple extends to a unique total map along the spanning
    derivations; the map is a homomorphism iff multiplying by each
    generator commutes with it everywhere, which is checked directly.
    """
    gens = greedy_generators(A)
    derivs = _derivations(A, gens)
    at, bt = A.table, B.table
    results: list[tuple[int, ...]] = []
    for images in iter_product(range(B.n), repeat=len(gens)):
        phi = [-1] * A.n
        phi[0] = 0
        for gi, g in enumerate(gens):
            phi[g] = images[gi]
        for v, u, gi in derivs:
            phi[v] = bt[phi[u]][images[gi]]
        ok = True
        for x in range(A.n):
            for gi, g in enumerate(gens):
                if phi[at[x][g]] != bt[phi[x]][images[gi]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            results.append(tuple(phi))
    return results


def naive_isos(A: Group, B: Group) -> list[tuple[int, ...]]:
    """Every isomorphism A -> B, from the naive hom enumeration."""
    if A.n != B.n:
        return []
    return [phi for phi in naive_homs(A, B) if len(set(phi)) == A.n]


def naive_hom_count_central(A: Group, B: Group) -> int:
    """Homomorphisms A -> B landing in the center of B, counted naively."""
    from grpiso.group_core import center

    z = center(B).element_set
    return sum(1 for phi in naive_homs(A, B) if set(phi) <= z)


def shuffled_copy(G: Group, seed: int) -> Group:
    """Relabel G by a seeded random permutation (re-canonicalized)."""
    from grpiso.group_core import relabel_group

    rng = random.Random(seed)
    new_of = list(range(G.n))
    rng.shuffle(new_of)
    return relabel_group(G, new_of)
