"""Isomorphism problems answered through automorphism-group oracles.

Both input groups are decomposed into directly indecomposable factors;
Krull-Schmidt uniqueness reduces isomorphism of the inputs to a multiset
matching of factor pairs.  An indecomposable abelian factor is cyclic of
prime power order, so equal order settles those pairs outright; nonabelian
pairs go to the oracle:

* counting: ``|Aut(Gi x Hj)|`` splits as ``|Aut(Gi)| * |Aut(Hj)| *
  |Hom(Gi, Z(Hj))| * |Hom(Hj, Z(Gi))| * e`` with ``e = 2`` exactly when the
  factors are isomorphic, so three automorphism counts and two polynomial
  hom counts decide the pair;
* partitioning: the subgroup ``Gi x Z(Hj)`` of the product is a union of
  automorphism orbits exactly when the factors are not isomorphic;
* generators: any generator moving that subgroup must swap the factors up
  to inner structure, and projecting its action on ``(g, 1)`` to the second
  factor extracts an explicit isomorphism.

Oracles are injected, so tests can substitute spies or adversarial
implementations for the concrete search-based one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol

from .abelian import abelian_iso, hom_count_to_center, is_abelian
from .decompose import Decomposition, decompose_indecomposable
from .group_core import (
    Group,
    Homomorphism,
    NotHomomorphism,
    build_hom,
    center,
    direct_product,
    invert_isomorphism,
    is_isomorphism,
)
from .perm_group import Partition, PermGroup, group_order, orbits


class ReductionError(RuntimeError):
    """An oracle answer or extracted map contradicts the reduction's math."""


class EpsilonOutOfRange(ReductionError):
    pass


class ExtractionFailed(ReductionError):
    pass


class ValidationFailed(ReductionError):
    pass


class AutOracleInterface(Protocol):
    """Entry points a reduction may call; answers must be consistent."""

    def agen(self, G: Group) -> PermGroup: ...

    def acount(self, G: Group) -> int: ...

    def apart(self, G: Group) -> Partition: ...


@dataclass
class OracleStats:
    """Per-run oracle invocation counts and the orders of their inputs."""

    agen_calls: int = 0
    acount_calls: int = 0
    apart_calls: int = 0
    input_orders: list[int] = field(default_factory=list)

    def record(self, entry_point: str, order: int) -> None:
        if entry_point == "agen":
            self.agen_calls += 1
        elif entry_point == "acount":
            self.acount_calls += 1
        elif entry_point == "apart":
            self.apart_calls += 1
        else:
            raise ValueError(f"unknown oracle entry point {entry_point!r}")
        self.input_orders.append(order)

    @property
    def largest_input(self) -> int:
        return max(self.input_orders, default=0)

    def merged(self, other: "OracleStats") -> "OracleStats":
        return OracleStats(
            self.agen_calls + other.agen_calls,
            self.acount_calls + other.acount_calls,
            self.apart_calls + other.apart_calls,
            self.input_orders + other.input_orders)

    def lines(self, sep: str = " ") -> list[str]:
        return [
            sep.join(("agen-calls", str(self.agen_calls))),
            sep.join(("acount-calls", str(self.acount_calls))),
            sep.join(("apart-calls", str(self.apart_calls))),
            sep.join(("largest-input", str(self.largest_input))),
            sep.join(["input-orders"] + [str(x) for x in self.input_orders]),
        ]


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of one indecomposable factor pair comparison."""

    classification: str  # both-abelian | one-abelian | both-nonabelian
    isomorphic: bool
    epsilon: int | None = None

    def __post_init__(self) -> None:
        if self.classification not in (
                "both-abelian", "one-abelian", "both-nonabelian"):
            raise ValueError(f"bad classification {self.classification!r}")
        if self.classification == "one-abelian" and self.isomorphic:
            raise ValueError("mixed abelian/nonabelian pairs never match")
        if self.epsilon is not None and self.classification != "both-nonabelian":
            raise ValueError("epsilon only applies to nonabelian pairs")


@dataclass(frozen=True)
class PairRecord:
    """One factor-pair comparison, for reports."""

    g_factor: int
    h_factor: int
    note: str
    isomorphic: bool


def _acount(oracle: AutOracleInterface, stats: OracleStats | None,
            G: Group) -> int:
    if stats is not None:
        stats.record("acount", G.n)
    return oracle.acount(G)


def _agen(oracle: AutOracleInterface, stats: OracleStats | None,
          G: Group) -> PermGroup:
    if stats is not None:
        stats.record("agen", G.n)
    return oracle.agen(G)


def _apart(oracle: AutOracleInterface, stats: OracleStats | None,
           G: Group) -> Partition:
    if stats is not None:
        stats.record("apart", G.n)
    return oracle.apart(G)


def epsilon_for_pair(Gi: Group, Hj: Group, oracle: AutOracleInterface,
                     stats: OracleStats | None = None) -> PairVerdict:
    """Decide a nonabelian indecomposable pair by three automorphism counts.

    The automorphism count of the product divides exactly by the product of
    the factor automorphism counts and the two central hom counts; the
    quotient is 1 for non-isomorphic factors and 2 for isomorphic ones.
    Any other quotient means the oracle lied or a precondition was broken.
    """
    if Gi.n != Hj.n:
        raise ValueError("factors must have equal order")
    if is_abelian(Gi) or is_abelian(Hj):
        raise ValueError("factors must both be nonabelian")
    product = direct_product(Gi, Hj).group
    total = _acount(oracle, stats, product)
    aut_g = _acount(oracle, stats, Gi)
    aut_h = _acount(oracle, stats, Hj)
    denominator = (aut_g * aut_h
                   * hom_count_to_center(Gi, Hj)
                   * hom_count_to_center(Hj, Gi))
    epsilon, remainder = divmod(total, denominator)
    if remainder or epsilon not in (1, 2):
        raise EpsilonOutOfRange(
            f"|Aut(product)| = {total} is not 1 or 2 times the predicted "
            f"{denominator}")
    return PairVerdict("both-nonabelian", epsilon == 2, epsilon)


def _product_s_subgroup(Gi: Group, Hj: Group) -> tuple[Group, frozenset[int]]:
    """The product group and the index set of ``Gi x Z(Hj)`` inside it."""
    dp = direct_product(Gi, Hj)
    z = center(Hj).elements
    s = frozenset(
        g * Hj.n + zh for g in range(Gi.n) for zh in z)
    return dp.group, s


def _is_union_of_blocks(s: frozenset[int], parts: Partition) -> bool:
    for block in parts:
        inside = block[0] in s
        for x in block[1:]:
            if (x in s) != inside:
                return False
    return True


def match_factors(
    decG: Decomposition,
    decH: Decomposition,
    pair_test: Callable[[int, int, Group, Group], bool],
) -> Optional[tuple[int, ...]]:
    """Greedy multiset matching of factors under an isomorphism test.

    Sound because isomorphism classes partition the factors: a perfect
    matching exists iff the class multisets agree, and then any greedy
    choice extends.  Runs at most k*m pair tests.
    """
    k = decG.factor_count
    m = decH.factor_count
    if k != m:
        return None
    assignment = [-1] * k
    used = [False] * m
    for i, Gi in enumerate(decG.external_factors):
        for j, Hj in enumerate(decH.external_factors):
            if not used[j] and pair_test(i, j, Gi, Hj):
                assignment[i] = j
                used[j] = True
                break
        else:
            return None
    return tuple(assignment)


def _classify_pair(Gi: Group, Hj: Group) -> str | None:
    """Cheap classification; None means an oracle is needed."""
    if Gi.n != Hj.n:
        return "order-mismatch"
    abelian_g = is_abelian(Gi)
    abelian_h = is_abelian(Hj)
    if abelian_g and abelian_h:
        # indecomposable abelian groups are cyclic of prime power order,
        # so equal order already decides
        return "both-abelian"
    if abelian_g != abelian_h:
        return "one-abelian"
    return None


def iso_via_acount(G: Group, H: Group, oracle: AutOracleInterface,
                   stats: OracleStats | None = None,
                   trace: list[PairRecord] | None = None) -> bool:
    """Isomorphism verdict using only the automorphism-counting oracle."""
    decG = decompose_indecomposable(G)
    decH = decompose_indecomposable(H)

    def pair_test(i: int, j: int, Gi: Group, Hj: Group) -> bool:
        label = _classify_pair(Gi, Hj)
        if label is not None:
            outcome = label == "both-abelian"
            note = label
        else:
            verdict = epsilon_for_pair(Gi, Hj, oracle, stats)
            outcome = verdict.isomorphic
            note = f"epsilon={verdict.epsilon}"
        if trace is not None:
            trace.append(PairRecord(i, j, note, outcome))
        return outcome

    return match_factors(decG, decH, pair_test) is not None


def iso_via_apart(G: Group, H: Group, oracle: AutOracleInterface,
                  stats: OracleStats | None = None,
                  trace: list[PairRecord] | None = None) -> bool:
    """Isomorphism verdict using only the automorphic-partition oracle."""
    decG = decompose_indecomposable(G)
    decH = decompose_indecomposable(H)

    def pair_test(i: int, j: int, Gi: Group, Hj: Group) -> bool:
        label = _classify_pair(Gi, Hj)
        if label is not None:
            outcome = label == "both-abelian"
            note = label
        else:
            product, s = _product_s_subgroup(Gi, Hj)
            parts = _apart(oracle, stats, product)
            outcome = not _is_union_of_blocks(s, parts)
            note = "s-straddled" if outcome else "s-union"
        if trace is not None:
            trace.append(PairRecord(i, j, note, outcome))
        return outcome

    return match_factors(decG, decH, pair_test) is not None


def _extract_pair_iso(Gi: Group, Hj: Group, oracle: AutOracleInterface,
                      stats: OracleStats | None) -> Homomorphism | None:
    """Factor isomorphism from a generator moving ``Gi x Z(Hj)``, if any.

    A generator that moves the subgroup swaps the factors up to central
    adjustments, so ``g -> proj_H(psi((g, 1)))`` must be an isomorphism; a
    failed validation means the oracle's generators were inconsistent.
    """
    product, s = _product_s_subgroup(Gi, Hj)
    perm_group = _agen(oracle, stats, product)
    mover = None
    for gen in perm_group.generators:
        if any(gen.images[x] not in s for x in s):
            mover = gen
            break
    if mover is None:
        return None
    nh = Hj.n
    images = [mover.images[g * nh] % nh for g in range(Gi.n)]
    try:
        phi = build_hom(Gi, Hj, images)
    except NotHomomorphism as exc:
        raise ExtractionFailed(
            f"projected map is not a homomorphism: {exc}") from exc
    if not is_isomorphism(phi):
        raise ExtractionFailed("projected map is not a bijection")
    return phi


def imap_via_agen(G: Group, H: Group, oracle: AutOracleInterface,
                  stats: OracleStats | None = None,
                  trace: list[PairRecord] | None = None
                  ) -> Homomorphism | None:
    """Explicit isomorphism G -> H via the generator oracle, if one exists.

    Abelian factor pairs are matched constructively; each nonabelian pair
    costs one generator query on the pair product.  When every factor is
    matched the factor maps are assembled through the decomposition
    witnesses into a single validated isomorphism; otherwise nothing is
    returned.
    """
    decG = decompose_indecomposable(G)
    decH = decompose_indecomposable(H)
    factor_isos: dict[int, Homomorphism] = {}

    def pair_test(i: int, j: int, Gi: Group, Hj: Group) -> bool:
        label = _classify_pair(Gi, Hj)
        if label == "order-mismatch" or label == "one-abelian":
            if trace is not None:
                trace.append(PairRecord(i, j, label, False))
            return False
        if label == "both-abelian":
            phi = abelian_iso(Gi, Hj)
            note = "abelian-match" if phi is not None else "abelian-mismatch"
        else:
            phi = _extract_pair_iso(Gi, Hj, oracle, stats)
            note = "extracted" if phi is not None else "all-generators-stabilize"
        if trace is not None:
            trace.append(PairRecord(i, j, note, phi is not None))
        if phi is None:
            return False
        factor_isos[i] = phi
        return True

    matching = match_factors(decG, decH, pair_test)
    if matching is None:
        return None
    return assemble_isomorphism(
        decG, decH, matching,
        tuple(factor_isos[i] for i in range(decG.factor_count)))


def icount_via_acount(G: Group, H: Group, oracle: AutOracleInterface,
                      stats: OracleStats | None = None,
                      trace: list[PairRecord] | None = None) -> int:
    """Number of isomorphisms G -> H via the counting oracle.

    Zero when the groups are not isomorphic; otherwise the count equals the
    number of automorphisms of G, one further oracle call.
    """
    if not iso_via_acount(G, H, oracle, stats, trace):
        return 0
    return _acount(oracle, stats, G)


def acount_via_agen(G: Group, oracle: AutOracleInterface) -> int:
    """Automorphism count from one generator query plus chain arithmetic."""
    return group_order(oracle.agen(G))


def apart_via_agen(G: Group, oracle: AutOracleInterface) -> Partition:
    """Automorphic partition from one generator query plus orbit closure."""
    return orbits(oracle.agen(G))


def assemble_isomorphism(decG: Decomposition, decH: Decomposition,
                         matching: tuple[int, ...],
                         factor_isos: tuple[Homomorphism, ...]
                         ) -> Homomorphism:
    """Compose factor isomorphisms into one map between the parents.

    Routes each element through the source witness, across the matched
    factor maps, and back through the inverse of the target witness; the
    result is re-validated.
    """
    k = decG.factor_count
    if decH.factor_count != k or len(matching) != k or len(factor_isos) != k:
        raise ValidationFailed("matching does not cover all factors")
    if sorted(matching) != list(range(k)):
        raise ValidationFailed("matching is not a bijection of factors")
    for i, phi in enumerate(factor_isos):
        if not is_isomorphism(phi):
            raise ValidationFailed(f"factor map {i} is not an isomorphism")
    radix_g = [F.n for F in decG.external_factors]
    radix_h = [F.n for F in decH.external_factors]
    witness_h_inverse = invert_isomorphism(decH.witness)
    images = [0] * decG.parent.n
    for g in range(decG.parent.n):
        value = decG.witness.images[g]
        components = [0] * k
        for i in range(k - 1, -1, -1):
            value, components[i] = divmod(value, radix_g[i])
        h_components = [0] * k
        for i in range(k):
            h_components[matching[i]] = factor_isos[i].images[components[i]]
        h_value = 0
        for i in range(k):
            h_value = h_value * radix_h[i] + h_components[i]
        images[g] = witness_h_inverse.images[h_value]
    try:
        phi = build_hom(decG.parent, decH.parent, images)
    except NotHomomorphism as exc:
        raise ValidationFailed(
            f"assembled map is not a homomorphism: {exc}") from exc
    if not is_isomorphism(phi):
        raise ValidationFailed("assembled map is not a bijection")
    return phi


def format_report(problem: str, verdict: str,
                  trace: list[PairRecord] | None,
                  stats: OracleStats | None,
                  sep: str = " ") -> list[str]:
    """Line-oriented run report: verdict, pair classifications, call table."""
    lines = [sep.join(("problem", problem)), sep.join(("verdict", verdict))]
    if trace:
        for rec in trace:
            lines.append(sep.join((
                "pair", str(rec.g_factor), str(rec.h_factor), rec.note,
                "isomorphic" if rec.isomorphic else "not-isomorphic")))
    if stats is not None:
        lines.extend(stats.lines(sep))
    return lines
