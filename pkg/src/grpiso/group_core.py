"""Finite groups given by full Cayley tables, with 0-based element indices.

Element 0 is always the identity after validation.  Subgroups are canonical
sorted index tuples, homomorphisms are dense image sequences, and every
operation is a pure function of immutable inputs.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class GroupError(ValueError):
    """Base class for validation failures on tables, subgroups and maps."""


class MalformedTable(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NonAssociative(GroupError):
    pass


class NoInverse(GroupError):
    pass


class NotBijectiveRow(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotHomomorphism(GroupError):
    pass


class DomainMismatch(GroupError):
    pass


class NotIsomorphism(GroupError):
    pass


class Group:
    """A finite group of order ``n`` on element indices ``0..n-1``.

    ``table[i][j]`` holds the index of the product of elements ``i`` and
    ``j``; the identity is index 0.  Use :func:`build_group` to construct a
    validated instance from raw data.  ``relabeling`` records the old-to-new
    index map when the builder had to move the identity to position 0, and
    is ``None`` otherwise.
    """

    __slots__ = ("n", "table", "identity", "inverse", "relabeling", "_cache")

    def __init__(self, table: tuple[tuple[int, ...], ...],
                 relabeling: tuple[int, ...] | None = None):
        self.n = len(table)
        self.table = table
        self.identity = 0
        self.inverse = _inverse_vector(table)
        self.relabeling = relabeling
        self._cache: dict = {}

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, g: int, k: int) -> int:
        """g**k for k >= 0, by repeated squaring on the table."""
        if k < 0:
            raise ValueError("negative exponent")
        result = 0
        base = g
        table = self.table
        while k:
            if k & 1:
                result = table[result][base]
            base = table[base][base]
            k >>= 1
        return result

    def elements(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and self.table == other.table

    __hash__ = None  # type: ignore[assignment]  # mutable cache; key on .table instead

    def __repr__(self) -> str:
        return f"Group(order={self.n})"


class Subgroup:
    """A subgroup of a parent group, stored as a sorted index tuple."""

    __slots__ = ("parent", "elements", "element_set")

    def __init__(self, parent: Group, elements: Iterable[int]):
        elems = tuple(sorted(set(elements)))
        n = parent.n
        for x in elems:
            if not 0 <= x < n:
                raise GroupError(f"subgroup element {x} out of range [0,{n})")
        if not elems or elems[0] != parent.identity:
            raise GroupError("subgroup must contain the identity")
        member = frozenset(elems)
        table = parent.table
        for a in elems:
            row = table[a]
            for b in elems:
                if row[b] not in member:
                    raise GroupError(
                        f"not closed under product: {a}*{b} = {row[b]} missing")
            if parent.inverse[a] not in member:
                raise GroupError(f"inverse of {a} missing")
        self.parent = parent
        self.elements = elems
        self.element_set = member

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.element_set

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.elements == other.elements)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.elements)} of {self.parent.n})"


class Homomorphism:
    """A validated map between groups, stored as a dense image sequence.

    ``images[g]`` is the image of source element ``g``.  Use
    :func:`build_hom` to construct one; the constructor assumes the defining
    identity has already been checked.
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source: Group, target: Group, images: tuple[int, ...]):
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, g: int) -> int:
        return self.images[g]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Homomorphism)
                and self.source == other.source
                and self.target == other.target
                and self.images == other.images)

    def __repr__(self) -> str:
        return f"Homomorphism({self.source.n} -> {self.target.n})"


def _inverse_vector(table: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    inv = [0] * len(table)
    for i, row in enumerate(table):
        inv[i] = row.index(0)
    return tuple(inv)


def _check_shape(raw_table: Sequence[Sequence[int]]) -> int:
    n = len(raw_table)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(raw_table):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise MalformedTable(f"entry ({i},{j}) = {x!r} not in [0,{n})")
    return n


def _find_identity(table: list[tuple[int, ...]], n: int) -> int:
    ident = tuple(range(n))
    for e in range(n):
        if table[e] == ident and all(table[i][e] == i for i in range(n)):
            return e
    raise NoIdentity("no two-sided identity element")


def _check_latin(table: list[tuple[int, ...]], n: int) -> None:
    for i, row in enumerate(table):
        seen = bytearray(n)
        for j, x in enumerate(row):
            if seen[x]:
                raise NotBijectiveRow(f"row {i} repeats value {x} at column {j}")
            seen[x] = 1
    for j in range(n):
        seen = bytearray(n)
        for i in range(n):
            x = table[i][j]
            if seen[x]:
                raise NotBijectiveRow(f"column {j} repeats value {x} at row {i}")
            seen[x] = 1


def _check_inverses(table: list[tuple[int, ...]], n: int, e: int) -> None:
    for i in range(n):
        j = table[i].index(e)
        if table[j][i] != e:
            raise NoInverse(f"element {i}: right inverse {j} is not a left inverse")


def _check_associative(table: list[tuple[int, ...]], n: int) -> None:
    # table[table[i][j]][k] == table[i][table[j][k]] for all triples; the
    # inner k-loop is a whole-row comparison so the scan stays fast at n^3.
    for i in range(n):
        row_i = table[i]
        for j in range(n):
            left_row = table[row_i[j]]
            row_j = table[j]
            if left_row != tuple(row_i[row_j[k]] for k in range(n)):
                for k in range(n):
                    if table[row_i[j]][k] != row_i[row_j[k]]:
                        raise NonAssociative(
                            f"associativity fails at ({i},{j},{k}): "
                            f"({i}*{j})*{k} = {table[row_i[j]][k]}, "
                            f"{i}*({j}*{k}) = {row_i[row_j[k]]}")


def build_group(raw_table: Sequence[Sequence[int]]) -> Group:
    """Validate a raw multiplication table and return a canonical Group.

    Checks, in order: shape and entry range, existence of a two-sided
    identity, row/column bijectivity, two-sided inverses, associativity of
    all triples.  If the identity is not element 0, the elements are
    re-indexed so that it is; the applied old-to-new map is stored on the
    result as ``relabeling``.
    """
    n = _check_shape(raw_table)
    table = [tuple(row) for row in raw_table]
    e = _find_identity(table, n)
    _check_latin(table, n)
    _check_inverses(table, n, e)
    _check_associative(table, n)
    if e == 0:
        return Group(tuple(table))
    new_of = [0] * n
    new_of[e] = 0
    next_index = 1
    for x in range(n):
        if x != e:
            new_of[x] = next_index
            next_index += 1
    old_of = [0] * n
    for old, new in enumerate(new_of):
        old_of[new] = old
    relabeled = tuple(
        tuple(new_of[table[old_of[a]][old_of[b]]] for b in range(n))
        for a in range(n))
    return Group(relabeled, relabeling=tuple(new_of))


def relabel_group(G: Group, new_of: Sequence[int]) -> Group:
    """Rebuild G with element i renamed to new_of[i] (a permutation).

    The result is re-validated; if the identity lands away from index 0 the
    builder moves it back, so the output is always canonical.
    """
    n = G.n
    if sorted(new_of) != list(range(n)):
        raise GroupError("relabeling is not a permutation of the elements")
    old_of = [0] * n
    for old, new in enumerate(new_of):
        old_of[new] = old
    table = [
        [new_of[G.table[old_of[a]][old_of[b]]] for b in range(n)]
        for a in range(n)
    ]
    return build_group(table)


def element_order(G: Group, g: int) -> int:
    """Smallest t >= 1 with g**t equal to the identity."""
    if not 0 <= g < G.n:
        raise GroupError(f"element {g} out of range [0,{G.n})")
    return element_orders(G)[g]


def element_orders(G: Group) -> tuple[int, ...]:
    """Orders of all elements, cached on the group."""
    orders = G._cache.get("orders")
    if orders is None:
        table = G.table
        out = [1] * G.n
        for g in range(1, G.n):
            t = 1
            x = g
            while x != 0:
                x = table[x][g]
                t += 1
            out[g] = t
        orders = tuple(out)
        G._cache["orders"] = orders
    return orders


def subgroup_closure(G: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing the seed elements."""
    gens = sorted(set(seed))
    n = G.n
    for s in gens:
        if not 0 <= s < n:
            raise GroupError(f"seed element {s} out of range [0,{n})")
    member = bytearray(n)
    member[0] = 1
    elems = [0]
    table = G.table
    i = 0
    while i < len(elems):
        row = table[elems[i]]
        i += 1
        for g in gens:
            y = row[g]
            if not member[y]:
                member[y] = 1
                elems.append(y)
    return Subgroup(G, elems)


def center(G: Group) -> Subgroup:
    """All elements commuting with every element of G."""
    cached = G._cache.get("center")
    if cached is None:
        n = G.n
        table = G.table
        members = [
            g for g in range(n)
            if all(table[g][h] == table[h][g] for h in range(n))
        ]
        cached = Subgroup(G, members)
        G._cache["center"] = cached
    return cached


def derived_subgroup(G: Group) -> Subgroup:
    """Subgroup generated by all commutators a^-1 b^-1 a b."""
    cached = G._cache.get("derived")
    if cached is None:
        n = G.n
        table = G.table
        inv = G.inverse
        comms = set()
        for a in range(n):
            ia = inv[a]
            for b in range(n):
                comms.add(table[table[ia][inv[b]]][table[a][b]])
        cached = subgroup_closure(G, comms)
        G._cache["derived"] = cached
    return cached


def conjugacy_classes(G: Group) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes as sorted tuples, ordered by smallest member."""
    cached = G._cache.get("classes")
    if cached is None:
        n = G.n
        table = G.table
        inv = G.inverse
        assigned = bytearray(n)
        classes = []
        for g in range(n):
            if assigned[g]:
                continue
            cls = set()
            for h in range(n):
                cls.add(table[table[h][g]][inv[h]])
            for x in cls:
                assigned[x] = 1
            classes.append(tuple(sorted(cls)))
        cached = tuple(classes)
        G._cache["classes"] = cached
    return cached


def quotient(G: Group, N: Subgroup) -> tuple[Group, Homomorphism]:
    """Quotient of G by the normal subgroup N, with the projection map.

    Quotient elements are cosets indexed by their smallest member, in
    ascending order; coset of the identity is element 0.
    """
    if N.parent is not G and N.parent != G:
        raise DomainMismatch("subgroup does not belong to this group")
    n = G.n
    table = G.table
    inv = G.inverse
    for g in range(n):
        for x in N.elements:
            if table[table[g][x]][inv[g]] not in N.element_set:
                raise NotNormal(
                    f"conjugate {g}*{x}*{g}^-1 escapes the subgroup")
    coset_of = [-1] * n
    reps: list[int] = []
    for g in range(n):
        if coset_of[g] != -1:
            continue
        idx = len(reps)
        reps.append(g)
        for x in N.elements:
            coset_of[table[g][x]] = idx
    q_table = [
        [coset_of[table[a][b]] for b in reps]
        for a in reps
    ]
    Q = build_group(q_table)
    proj = build_hom(G, Q, coset_of)
    return Q, proj


class DirectProduct:
    """A direct product group with its embeddings and projections.

    Pair ``(g, h)`` sits at index ``g * |H| + h`` (row-major); this ordering
    is part of the contract for everything built on product subgroups.
    """

    __slots__ = ("group", "left", "right",
                 "embed_left", "embed_right", "proj_left", "proj_right")

    def __init__(self, G: Group, H: Group):
        ng, nh = G.n, H.n
        n = ng * nh
        gt, ht = G.table, H.table
        table = []
        for g1 in range(ng):
            grow = gt[g1]
            for h1 in range(nh):
                hrow = ht[h1]
                table.append(tuple(
                    grow[g2] * nh + hrow[h2]
                    for g2 in range(ng) for h2 in range(nh)))
        self.group = build_group(table)
        self.left = G
        self.right = H
        self.embed_left = build_hom(
            G, self.group, [g * nh for g in range(ng)])
        self.embed_right = build_hom(
            H, self.group, list(range(nh)))
        self.proj_left = build_hom(
            self.group, G, [p // nh for p in range(n)])
        self.proj_right = build_hom(
            self.group, H, [p % nh for p in range(n)])

    def pair_index(self, g: int, h: int) -> int:
        return g * self.right.n + h

    def split_index(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right.n)


def direct_product(G: Group, H: Group) -> DirectProduct:
    """Direct product of G and H with embeddings and projections."""
    return DirectProduct(G, H)


def build_hom(source: Group, target: Group,
              images: Sequence[int]) -> Homomorphism:
    """Validate an image sequence as a homomorphism source -> target."""
    n = source.n
    if len(images) != n:
        raise NotHomomorphism(
            f"image sequence has length {len(images)}, expected {n}")
    imgs = tuple(images)
    for g, y in enumerate(imgs):
        if not 0 <= y < target.n:
            raise NotHomomorphism(f"image of {g} is {y}, out of range")
    if imgs[0] != 0:
        raise NotHomomorphism("identity does not map to the identity")
    st = source.table
    tt = target.table
    for g in range(n):
        srow = st[g]
        trow = tt[imgs[g]]
        for h in range(n):
            if imgs[srow[h]] != trow[imgs[h]]:
                raise NotHomomorphism(
                    f"pair ({g},{h}): maps product to {imgs[srow[h]]} "
                    f"but product of images is {trow[imgs[h]]}")
    return Homomorphism(source, target, imgs)


def identity_hom(G: Group) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.n)))


def trivial_hom(source: Group, target: Group) -> Homomorphism:
    return Homomorphism(source, target, (0,) * source.n)


def hom_compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """Composition ``outer(inner(x))``, re-validated."""
    if inner.target != outer.source:
        raise DomainMismatch("inner target differs from outer source")
    images = [outer.images[y] for y in inner.images]
    return build_hom(inner.source, outer.target, images)


def hom_pointwise_sum(a: Homomorphism, b: Homomorphism) -> Homomorphism:
    """Pointwise product ``x -> a(x) * b(x)``, re-validated.

    Requires every image of ``a`` to commute with every image of ``b`` in
    the target (automatic when one of the maps lands in the center), else
    the sum need not be a homomorphism.
    """
    if a.source != b.source or a.target != b.target:
        raise DomainMismatch("summands must share source and target")
    tt = a.target.table
    for u in set(a.images):
        for v in set(b.images):
            if tt[u][v] != tt[v][u]:
                raise NotHomomorphism(
                    f"images {u} and {v} do not commute in the target")
    images = [tt[a.images[x]][b.images[x]] for x in range(a.source.n)]
    return build_hom(a.source, a.target, images)


def is_isomorphism(phi: Homomorphism) -> bool:
    """True iff the images are a bijection onto a same-order target."""
    return (phi.source.n == phi.target.n
            and len(set(phi.images)) == phi.source.n)


def invert_isomorphism(phi: Homomorphism) -> Homomorphism:
    """Inverse of a bijective homomorphism."""
    if not is_isomorphism(phi):
        raise NotIsomorphism("map is not a bijection")
    inv = [0] * phi.source.n
    for x, y in enumerate(phi.images):
        inv[y] = x
    return build_hom(phi.target, phi.source, inv)


def subgroup_group(S: Subgroup) -> tuple[Group, tuple[int, ...]]:
    """Re-index a subgroup as a standalone group.

    Returns the group together with the new-to-old element map (the sorted
    subgroup elements); new index 0 is the parent identity.
    """
    elems = S.elements
    pos = {x: i for i, x in enumerate(elems)}
    table = [
        [pos[S.parent.table[a][b]] for b in elems]
        for a in elems
    ]
    return build_group(table), elems


# Cayley-table text exchange format: optional '#' comment lines, then a
# line with n, then n lines of n space-separated indices; identity must be
# element 0 and the text must end with a newline.

def format_cayley_table(G: Group) -> str:
    lines = [str(G.n)]
    lines.extend(" ".join(str(x) for x in row) for row in G.table)
    return "\n".join(lines) + "\n"


def parse_cayley_table(text: str) -> Group:
    if not text.endswith("\n"):
        raise MalformedTable("missing trailing newline")
    lines = text.splitlines()
    at = 0
    while at < len(lines) and lines[at].lstrip().startswith("#"):
        at += 1
    if at >= len(lines):
        raise MalformedTable("missing order header")
    try:
        n = int(lines[at])
    except ValueError:
        raise MalformedTable(f"bad order header {lines[at]!r}") from None
    if n < 1:
        raise MalformedTable(f"order must be positive, got {n}")
    rows = lines[at + 1:]
    if len(rows) < n:
        raise MalformedTable(f"expected {n} rows, found {len(rows)}")
    if len(rows) > n and any(r.strip() for r in rows[n:]):
        raise MalformedTable("trailing content after the table")
    table = []
    for i, line in enumerate(rows[:n]):
        parts = line.split()
        if len(parts) != n:
            raise MalformedTable(f"row {i} has {len(parts)} entries, expected {n}")
        try:
            table.append([int(p) for p in parts])
        except ValueError:
            raise MalformedTable(f"row {i} has a non-integer entry") from None
    G = build_group(table)
    if G.relabeling is not None:
        raise MalformedTable("element 0 is not the identity")
    return G
