"""Permutation groups on a finite domain given by generators.

Order, membership and orbit queries run off a deterministic stabilizer
chain: base points are the first moved points, transversals are built
breadth-first, and orders are exact Python integers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .group_core import DomainMismatch

Partition = tuple[tuple[int, ...], ...]


class Permutation:
    """A bijection of ``0..domain_size-1`` stored as an image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        n = len(imgs)
        seen = bytearray(n)
        for x in imgs:
            if not 0 <= x < n or seen[x]:
                raise ValueError(f"images {imgs!r} are not a bijection")
            seen[x] = 1
        self.images = imgs

    @property
    def domain_size(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(n))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = self(other(x)); other acts first.
        if len(self.images) != len(other.images):
            raise DomainMismatch("permutation domains differ")
        mine = self.images
        return Permutation(mine[y] for y in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


# Chain internals work on raw image tuples; Permutation objects only cross
# the public boundary.

def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(f[y] for y in g)


def _invert(f: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for x, y in enumerate(f):
        inv[y] = x
    return tuple(inv)


class _Level:
    __slots__ = ("base", "gens", "transversal", "inv_transversal")

    def __init__(self, base: int, ident: tuple[int, ...]):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {base: ident}
        self.inv_transversal: dict[int, tuple[int, ...]] = {base: ident}


class PermGroup:
    """The group generated by a list of permutations of a fixed domain."""

    def __init__(self, domain_size: int, generators: Sequence[Permutation]):
        for g in generators:
            if g.domain_size != domain_size:
                raise DomainMismatch(
                    f"generator domain {g.domain_size} != {domain_size}")
        self.domain_size = domain_size
        self.generators = tuple(generators)
        self._levels: list[_Level] | None = None

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _build_chain(
                self.domain_size, [g.images for g in self.generators])
        return self._levels

    def order(self) -> int:
        result = 1
        for level in self._chain():
            result *= len(level.transversal)
        return result

    def contains(self, p: Permutation) -> bool:
        if p.domain_size != self.domain_size:
            raise DomainMismatch(
                f"permutation domain {p.domain_size} != {self.domain_size}")
        ident = tuple(range(self.domain_size))
        residue, _ = _sift(self._chain(), p.images)
        return residue == ident

    def orbits(self) -> Partition:
        n = self.domain_size
        assigned = bytearray(n)
        blocks = []
        for start in range(n):
            if assigned[start]:
                continue
            block = [start]
            assigned[start] = 1
            i = 0
            while i < len(block):
                x = block[i]
                i += 1
                for g in self.generators:
                    y = g.images[x]
                    if not assigned[y]:
                        assigned[y] = 1
                        block.append(y)
            blocks.append(tuple(sorted(block)))
        return tuple(blocks)


def group_order(P: PermGroup) -> int:
    """Exact order of the generated group."""
    return P.order()


def orbits(P: PermGroup) -> Partition:
    """Orbit partition of the domain; blocks sorted, ordered by first point."""
    return P.orbits()


def contains(P: PermGroup, p: Permutation) -> bool:
    """Membership of p in the generated group, by sifting."""
    return P.contains(p)


def _sift(levels: list[_Level], p: tuple[int, ...],
          start: int = 0) -> tuple[tuple[int, ...], int]:
    i = start
    while i < len(levels):
        level = levels[i]
        x = p[level.base]
        rep_inv = level.inv_transversal.get(x)
        if rep_inv is None:
            return p, i
        p = _compose(rep_inv, p)
        i += 1
    return p, i


def _rebuild_orbit(level: _Level, ident: tuple[int, ...],
                   gens: Sequence[tuple[int, ...]]) -> None:
    level.transversal = {level.base: ident}
    level.inv_transversal = {level.base: ident}
    queue = [level.base]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        rep = level.transversal[x]
        for g in gens:
            y = g[x]
            if y not in level.transversal:
                new_rep = _compose(g, rep)
                level.transversal[y] = new_rep
                level.inv_transversal[y] = _invert(new_rep)
                queue.append(y)


def _build_chain(domain: int,
                 generators: Sequence[tuple[int, ...]]) -> list[_Level]:
    ident = tuple(range(domain))
    levels: list[_Level] = []

    def store(p: tuple[int, ...]) -> int | None:
        """Sift p and store the residue at the level it drops to."""
        residue, j = _sift(levels, p)
        if residue == ident:
            return None
        if j == len(levels):
            base = next(i for i, y in enumerate(residue) if y != i)
            levels.append(_Level(base, ident))
        levels[j].gens.append(residue)
        return j

    def verify_from(start: int) -> None:
        # Bottom-up verification: the generating set of level i is every
        # strong generator stored at level i or deeper (all of those fix
        # the earlier base points).  A Schreier generator that does not
        # sift to the identity is stored where it drops to, which also
        # extends the generating sets of the levels in between, so
        # verification restarts there.
        i = start
        while i >= 0:
            level = levels[i]
            gens_i = [g for lv in levels[i:] for g in lv.gens]
            _rebuild_orbit(level, ident, gens_i)
            restart = None
            for x in sorted(level.transversal):
                rep = level.transversal[x]
                for s in gens_i:
                    schreier = _compose(
                        level.inv_transversal[s[x]], _compose(s, rep))
                    residue, j = _sift(levels, schreier, i + 1)
                    if residue == ident:
                        continue
                    if j == len(levels):
                        base = next(
                            k for k, v in enumerate(residue) if v != k)
                        levels.append(_Level(base, ident))
                    levels[j].gens.append(residue)
                    restart = j
                    break
                if restart is not None:
                    break
            i = restart if restart is not None else i - 1

    for gen in generators:
        j = store(gen)
        if j is not None:
            verify_from(j)
    return levels
