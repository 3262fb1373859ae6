"""Command-line interface.

Groups come from constructor expressions or Cayley-table files; the six
problems run either directly (exhaustive search) or through their oracle
reductions.  Output is byte-deterministic for fixed inputs and flags.

Exit codes: 0 success (isomorphic / map found / value printed), 1 negative
verdict (not isomorphic / no map), 2 input error, 3 internal inconsistency.
"""

from __future__ import annotations

import sys
from typing import Callable, Sequence, TextIO

from . import aut_oracle, catalog, reductions
from .decompose import decompose_indecomposable
from .group_core import (
    Group,
    GroupError,
    direct_product,
    format_cayley_table,
    is_isomorphism,
    parse_cayley_table,
)
from .reductions import OracleStats, ReductionError, format_report

_MAX_ORDER = 1024


class ParseError(ValueError):
    pass


def parse_group_spec(text: str) -> Group:
    """Build a group from a constructor expression or a file reference.

    Grammar: ``cyclic:n`` | ``dihedral:n`` (order 2n, n >= 2) |
    ``quaternion:n`` (order n, a power of 2, n >= 8) | ``sym:n`` |
    ``alt:n`` | ``elem:p^k`` | ``product:(SPEC,SPEC)`` | ``file:PATH``.
    """
    head, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"missing ':' in group spec {text!r}")
    if head == "cyclic":
        return _capped(catalog.cyclic_group(_positive(rest, text)))
    if head == "dihedral":
        n = _positive(rest, text)
        if n < 2:
            raise ParseError(f"dihedral needs n >= 2, got {rest!r}")
        return _capped(catalog.dihedral_group(n))
    if head == "quaternion":
        n = _positive(rest, text)
        if n < 8 or n & (n - 1):
            raise ParseError(
                f"quaternion needs a power of 2 at least 8, got {rest!r}")
        return _capped(catalog.quaternion_group(n))
    if head == "sym":
        n = _positive(rest, text)
        if n > 6:
            raise ParseError(f"sym:{n} exceeds the table-size limit")
        return _capped(catalog.symmetric_group(n))
    if head == "alt":
        n = _positive(rest, text)
        if n > 7:
            raise ParseError(f"alt:{n} exceeds the table-size limit")
        return _capped(catalog.alternating_group(n))
    if head == "elem":
        base, caret, exp = rest.partition("^")
        if not caret:
            raise ParseError(f"elem spec needs p^k, got {rest!r}")
        p = _positive(base, text)
        k = _positive(exp, text)
        try:
            g = catalog.elementary_abelian_group(p, k)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return _capped(g)
    if head == "product":
        left, right = _split_product(rest, text)
        return _capped(
            direct_product(parse_group_spec(left),
                           parse_group_spec(right)).group)
    if head == "file":
        try:
            content = open(rest, encoding="utf-8").read()
        except OSError as exc:
            raise ParseError(f"cannot read {rest!r}: {exc}") from None
        return parse_cayley_table(content)
    raise ParseError(f"unknown constructor {head!r} in {text!r}")


def _positive(token: str, context: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(
            f"expected a positive integer, got {token!r} in {context!r}"
        ) from None
    if value < 1:
        raise ParseError(f"expected a positive integer, got {token!r}")
    return value


def _split_product(rest: str, context: str) -> tuple[str, str]:
    if not rest.startswith("(") or not rest.endswith(")"):
        raise ParseError(f"product needs (SPEC,SPEC), got {rest!r}")
    inner = rest[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:i], inner[i + 1:]
    raise ParseError(f"product needs two comma-separated specs in {context!r}")


def _capped(G: Group) -> Group:
    if G.n > _MAX_ORDER:
        raise ParseError(
            f"group order {G.n} exceeds the table-size limit {_MAX_ORDER}")
    return G


_USAGE = (
    "usage: grpiso COMMAND ARGS [--via=direct|reduction] [--stats] "
    "[--format=text|tsv]\n"
    "commands: iso SPEC SPEC | imap SPEC SPEC | icount SPEC SPEC | "
    "acount SPEC | agen SPEC | apart SPEC | decompose SPEC | selftest")


def run_command(argv: Sequence[str], out: TextIO | None = None,
                err: TextIO | None = None) -> int:
    """Execute one command line; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        command, specs, via, want_stats, sep = _parse_argv(argv)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return 2
    try:
        groups = [parse_group_spec(s) for s in specs]
        for g in groups:
            if g.relabeling is not None:
                print("note: input identity was re-indexed to element 0",
                      file=err)
        return _dispatch(command, groups, via, want_stats, sep, out)
    except (ParseError, GroupError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ReductionError as exc:
        print(f"inconsistency: {exc}", file=err)
        return 3


def _parse_argv(argv: Sequence[str]
                ) -> tuple[str, list[str], str, bool, str]:
    args = list(argv)
    flags = [a for a in args if a.startswith("--")]
    rest = [a for a in args if not a.startswith("--")]
    via = None
    want_stats = False
    fmt = "text"
    for flag in flags:
        if flag.startswith("--via="):
            via = flag[len("--via="):]
            if via not in ("direct", "reduction"):
                raise ParseError(f"bad --via value {via!r}")
        elif flag == "--stats":
            want_stats = True
        elif flag.startswith("--format="):
            fmt = flag[len("--format="):]
            if fmt not in ("text", "tsv"):
                raise ParseError(f"bad --format value {fmt!r}")
        else:
            raise ParseError(f"unknown flag {flag!r}")
    if not rest:
        raise ParseError(_USAGE)
    command, *specs = rest
    two = {"iso", "imap", "icount"}
    one = {"acount", "agen", "apart", "decompose"}
    if command in two:
        expected = 2
    elif command in one:
        expected = 1
    elif command == "selftest":
        expected = 0
    else:
        raise ParseError(f"unknown command {command!r}\n{_USAGE}")
    if len(specs) != expected:
        raise ParseError(
            f"{command} takes {expected} group spec(s), got {len(specs)}")
    if via is None:
        via = "reduction" if command in two else "direct"
    if command == "agen" and via == "reduction":
        raise ParseError("agen has no reduction; use --via=direct")
    if command in ("decompose", "selftest") and via == "reduction":
        raise ParseError(f"{command} does not take --via")
    sep = "\t" if fmt == "tsv" else " "
    return command, specs, via, want_stats, sep


def _dispatch(command: str, groups: list[Group], via: str, want_stats: bool,
              sep: str, out: TextIO) -> int:
    oracle = _make_oracle()
    stats = OracleStats()
    trace: list[reductions.PairRecord] = []

    if command == "iso":
        G, H = groups
        if via == "reduction":
            verdict = reductions.iso_via_acount(G, H, oracle, stats, trace)
        else:
            verdict = aut_oracle.brute_iso(G, H) is not None
        word = "isomorphic" if verdict else "not-isomorphic"
        print(word, file=out)
        _print_stats(out, "iso", word, trace, stats, sep, want_stats)
        return 0 if verdict else 1

    if command == "imap":
        G, H = groups
        if via == "reduction":
            phi = reductions.imap_via_agen(G, H, oracle, stats, trace)
        else:
            phi = aut_oracle.brute_iso(G, H)
        if phi is None:
            print("none", file=out)
        else:
            for g, y in enumerate(phi.images):
                print(f"{g}\t{y}", file=out)
        _print_stats(out, "imap", "none" if phi is None else "map",
                     trace, stats, sep, want_stats)
        return 0 if phi is not None else 1

    if command == "icount":
        G, H = groups
        if via == "reduction":
            value = reductions.icount_via_acount(G, H, oracle, stats, trace)
        else:
            value = aut_oracle.brute_iso_count(G, H)
        print(value, file=out)
        _print_stats(out, "icount", str(value), trace, stats, sep, want_stats)
        return 0

    if command == "acount":
        (G,) = groups
        if via == "reduction":
            value = reductions.acount_via_agen(G, oracle)
        else:
            value = oracle.acount(G)
        print(value, file=out)
        return 0

    if command == "agen":
        (G,) = groups
        for p in oracle.agen(G).generators:
            print(sep.join(str(x) for x in p.images), file=out)
        return 0

    if command == "apart":
        (G,) = groups
        parts = (reductions.apart_via_agen(G, oracle)
                 if via == "reduction" else oracle.apart(G))
        for block in parts:
            print(sep.join(str(x) for x in block), file=out)
        return 0

    if command == "decompose":
        (G,) = groups
        dec = decompose_indecomposable(G)
        print(f"factors{sep}{dec.factor_count}", file=out)
        print(sep.join(["orders"] + [str(d) for d in dec.factor_orders()]),
              file=out)
        for i, factor in enumerate(dec.external_factors):
            print(f"# factor {i + 1} of {dec.factor_count}", file=out)
            out.write(format_cayley_table(factor))
        return 0

    if command == "selftest":
        return _selftest(out)
    raise ParseError(f"unknown command {command!r}")


def _make_oracle() -> aut_oracle.BacktrackingOracle:
    return aut_oracle.BacktrackingOracle()


def _print_stats(out: TextIO, problem: str, verdict: str,
                 trace: list[reductions.PairRecord], stats: OracleStats,
                 sep: str, want_stats: bool) -> None:
    if not want_stats:
        return
    for line in format_report(problem, verdict, trace, stats, sep):
        print(line, file=out)


def _selftest(out: TextIO) -> int:
    """Cross-validate the reductions against exhaustive search, quickly."""
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if ok:
            print(f"ok {name}", file=out)
        else:
            failures += 1
            print(f"FAIL {name} {detail}", file=out)

    oracle = _make_oracle()
    names = [
        "cyclic:1", "cyclic:6", "cyclic:8", "cyclic:12", "elem:2^2",
        "elem:2^3", "elem:3^2", "dihedral:3", "dihedral:4", "dihedral:6",
        "quaternion:8", "sym:3", "alt:4", "product:(cyclic:4,cyclic:2)",
        "product:(sym:3,cyclic:2)",
    ]
    groups = {}
    for name in names:
        try:
            groups[name] = parse_group_spec(name)
            check(f"validate {name}", True)
        except (ParseError, GroupError) as exc:
            check(f"validate {name}", False, str(exc))
    small = {k: v for k, v in groups.items() if v.n <= 12}
    for name, g in sorted(small.items()):
        check(f"acount-vs-count {name}",
              oracle.acount(g) == aut_oracle.brute_iso_count(g, g))
    pairs = [
        ("cyclic:6", "product:(cyclic:2,cyclic:3)", True),
        ("cyclic:6", "sym:3", False),
        ("dihedral:6", "product:(sym:3,cyclic:2)", True),
        ("dihedral:4", "quaternion:8", False),
        ("sym:3", "dihedral:3", True),
        ("alt:4", "product:(cyclic:3,elem:2^2)", False),
    ]
    for left, right, expected in pairs:
        G = groups.get(left) or parse_group_spec(left)
        H = groups.get(right) or parse_group_spec(right)
        brute = aut_oracle.brute_iso(G, H) is not None
        via_count = reductions.iso_via_acount(G, H, oracle)
        via_part = reductions.iso_via_apart(G, H, oracle)
        check(f"iso-agreement {left} {right}",
              brute == via_count == via_part == expected,
              f"brute={brute} acount={via_count} apart={via_part}")
        phi = reductions.imap_via_agen(G, H, oracle)
        check(f"imap-agreement {left} {right}",
              (phi is not None) == expected
              and (phi is None or is_isomorphism(phi)))
    stats = OracleStats()
    reductions.epsilon_for_pair(groups["sym:3"], groups["sym:3"],
                                oracle, stats)
    check("accounting epsilon-3-calls",
          stats.acount_calls == 3 and stats.largest_input == 36)
    stats = OracleStats()
    reductions.iso_via_apart(groups["sym:3"], groups["sym:3"], oracle, stats)
    check("accounting apart-1-call", stats.apart_calls == 1)
    stats = OracleStats()
    reductions.imap_via_agen(groups["sym:3"], groups["sym:3"], oracle, stats)
    check("accounting agen-1-call", stats.agen_calls == 1)
    dec = decompose_indecomposable(groups["dihedral:6"])
    check("decompose dihedral:6",
          sorted(dec.factor_orders()) == [2, 6])
    print(f"selftest: {'PASS' if failures == 0 else 'FAIL'} "
          f"({len(names)} groups, {len(pairs)} pairs, "
          f"{failures} failures)", file=out)
    return 0 if failures == 0 else 3


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
