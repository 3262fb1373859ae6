"""Constructors for the small-group zoo.

Element orderings are fixed and documented per family so that every
constructor is deterministic: cyclic groups by exponent, dihedral and
quaternion groups as rotations then reflections, symmetric and alternating
groups by lexicographic rank, elementary abelian groups by row-major digit
vectors.
"""

from __future__ import annotations

from itertools import permutations

from .group_core import Group, build_group


def trivial_group() -> Group:
    return cyclic_group(1)


def cyclic_group(n: int) -> Group:
    """Cyclic group of order n; element i is the i-th power of the generator."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return build_group([[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n for n >= 1.

    Elements 0..n-1 are the rotations r^i; elements n..2n-1 are the
    reflections r^i s, with s r s = r^-1.
    """
    if n < 1:
        raise ValueError(f"rotation count must be positive, got {n}")

    def mul(a: int, b: int) -> int:
        ra, fa = a % n, a // n
        rb, fb = b % n, b // n
        rot = (ra - rb) % n if fa else (ra + rb) % n
        return rot + n * (fa ^ fb)

    m = 2 * n
    return build_group([[mul(a, b) for b in range(m)] for a in range(m)])


def quaternion_group(order: int) -> Group:
    """Generalized quaternion group of the given order (a power of 2, >= 8).

    With m = order/2, elements 0..m-1 are x^i and m..order-1 are x^i y,
    where x has order m, y^2 = x^(m/2) and y^-1 x y = x^-1.
    """
    if order < 8 or order & (order - 1):
        raise ValueError(f"order must be a power of 2 at least 8, got {order}")
    m = order // 2

    def mul(a: int, b: int) -> int:
        ra, fa = a % m, a // m
        rb, fb = b % m, b // m
        rot = (ra - rb) % m if fa else (ra + rb) % m
        if fa and fb:
            rot = (rot + m // 2) % m
        return rot + m * (fa ^ fb)

    return build_group([[mul(a, b) for b in range(order)] for a in range(order)])


def _perm_table(perms: list[tuple[int, ...]]) -> Group:
    rank = {p: i for i, p in enumerate(perms)}
    table = [
        [rank[tuple(p[q[i]] for i in range(len(q)))] for q in perms]
        for p in perms
    ]
    return build_group(table)


def symmetric_group(n: int) -> Group:
    """Symmetric group on n points; elements in lexicographic rank order.

    The product p*q is the composite applying q first, then p.
    """
    if n < 1:
        raise ValueError(f"point count must be positive, got {n}")
    return _perm_table(list(permutations(range(n))))


def alternating_group(n: int) -> Group:
    """Alternating group on n points; even permutations in lexicographic order."""
    if n < 1:
        raise ValueError(f"point count must be positive, got {n}")
    evens = [p for p in permutations(range(n)) if _parity(p) == 0]
    return _perm_table(evens)


def _parity(p: tuple[int, ...]) -> int:
    seen = bytearray(len(p))
    parity = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = p[x]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def elementary_abelian_group(p: int, k: int) -> Group:
    """Direct power of k copies of the cyclic group of prime order p.

    Element indices are base-p digit vectors read row-major.
    """
    if not _is_prime(p):
        raise ValueError(f"base must be prime, got {p}")
    if k < 1:
        raise ValueError(f"exponent must be positive, got {k}")
    n = p ** k

    # digits combine independently, so sum digit-by-digit from the low end
    def mul(a: int, b: int) -> int:
        out = 0
        shift = 1
        for _ in range(k):
            out += ((a % p + b % p) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    return build_group([[mul(a, b) for b in range(n)] for a in range(n)])


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True
