"""Command-line interface.

Exit codes: 0 success, 1 domain failure (verification failed, UNSAT or
UNKNOWN under ``--expect-sat``), 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import constructions as C
from .bounds import upper_bound
from .core import (
    ConstraintProfile,
    SetPairSystem,
    cross_degree_identity,
    incidence_rank,
    verify,
)
from .documents import (
    DocumentError,
    partition_to_text,
    read_partition,
    read_sps,
    sps_to_text,
    write_text,
)
from .duality import BICLIQUE, CLIQUE, dualize, undualize, verify_partition
from .search import SAT, SearchLimits, decide_size, maximize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROFILE_HELP = (
    "constraint profile 'a,b,I_A,I_B,I_cross' or 'I_A,I_B,I_cross'; a and b are integers or '*', "
    "intersection tokens are '*', 'lin' (={0,1}), 'int' (={1}), an integer k (={k}) or a set literal like {0,1}"
)

CONSTRUCTIONS = (
    "standard a=<int> b=<int>",
    "cyclic A=<list> B=<list> mod=<int> count=<int> [stride=<int>] [profile=<profile>]",
    "product left=<file> right=<file> [one_cross=1|0]",
    "w22_power n=<int>",
    "star_extremal_2n n=<int>",
    "double_star s=<int>",
    "c1|c2|c3 q=<prime power>",
    "final1|final2|final3 n=<int>",
    "catalog:<entry>  entries: " + ", ".join(C.CATALOG_NAMES),
)


class UsageError(Exception):
    pass


def _env_number(name: str, kind, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return kind(raw)
    except ValueError:
        raise UsageError(f"{name} must be a number, got {raw!r}") from None


def _profile(text: str) -> ConstraintProfile:
    try:
        return ConstraintProfile.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _params(items) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"parameter {item!r} is not key=value")
        out[key] = value
    return out


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}=")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"parameter {key} must be an integer, got {params[key]!r}") from None


def _int_list(params: dict, key: str) -> list:
    if key not in params:
        raise UsageError(f"missing parameter {key}=")
    try:
        return [int(x) for x in params[key].strip("{}").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"parameter {key} must be a comma-separated integer list") from None


def build(name: str, params: dict) -> C.ConstructionRecord:
    """Dispatch a construction name with string parameters to its generator."""
    if name.startswith("catalog:"):
        return C.catalog(name.split(":", 1)[1])
    if name == "standard":
        return C.standard_example(_int(params, "a"), _int(params, "b"))
    if name == "cyclic":
        base_a, base_b = _int_list(params, "A"), _int_list(params, "B")
        system = C.cyclic_family(base_a, base_b, _int(params, "mod"), _int(params, "count"),
                                 _int(params, "stride", 1))
        if "profile" in params:
            profile = _profile(params["profile"])
        else:
            profile = ConstraintProfile(len(set(base_a)), len(set(base_b)))
        return C.ConstructionRecord(system, profile, system.m, "cyclic family",
                                    {k: params[k] for k in sorted(params)})
    if name == "product":
        left, _ = _read(params, "left")
        right, _ = _read(params, "right")
        one_cross = _int(params, "one_cross", 1) != 0
        system = C.product(left, right, one_cross)
        profile = C.ONE_CROSS if one_cross else C.CROSS
        return C.ConstructionRecord(system, profile, left.m * right.m, "product",
                                    {"left": params["left"], "right": params["right"], "one_cross": int(one_cross)})
    if name == "w22_power":
        return C.w22_power(_int(params, "n"))
    if name == "star_extremal_2n":
        return C.star_extremal_2n(_int(params, "n"))
    if name == "double_star":
        return C.double_star(_int(params, "s"))
    if name in ("c1", "c2", "c3"):
        return C.c_family(int(name[1]), _int(params, "q"))
    if name in ("final1", "final2", "final3"):
        return C.final_construction(int(name[5]), _int(params, "n"))
    raise UsageError(f"unknown construction {name!r}; see 'setpairs construct --help'")


def _read(params: dict, key: str):
    if key not in params:
        raise UsageError(f"missing parameter {key}=")
    return read_sps(params[key])


def _metadata(name: str, record: C.ConstructionRecord) -> dict:
    return {
        "construction": name,
        "parameters": record.parameters,
        "citation": record.citation,
        "declared_profile": str(record.declared_profile),
    }


def _emit(text: str, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        try:
            write_text(out, text)
        except OSError as e:
            raise DocumentError(f"cannot write {out}: {e}") from None


def cmd_construct(args) -> int:
    params = _params(args.params)
    try:
        record = build(args.name, params)
    except C.VerificationFailed as e:
        print(f"construction failed verification: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(sps_to_text(record.system, _metadata(args.name, record)), args.out)
    if args.out not in (None, "-"):
        print(f"{args.name}: {record.m} pairs on {record.system.ground_set_size} vertices, "
              f"verified {record.declared_profile} -> {args.out}")
    return EXIT_OK


def render_report(sps: SetPairSystem, profile: ConstraintProfile) -> tuple:
    """``(passed, text)`` for the verify subcommand."""
    report = verify(sps, profile)
    lines = [f"profile {profile}  m={sps.m}  ground set {sps.ground_set_size}"]
    lines.append(f"{'condition':<12} {'result':<6} {'violations':>10}  first witness (i, j, size)")
    for c in report.conditions.values():
        witness = "" if c.witness is None else str(c.witness)
        lines.append(f"{c.name:<12} {'pass' if c.passed else 'FAIL':<6} {c.violations:>10}  {witness}")
    if report.degenerate:
        lines.append(f"degenerate: m={sps.m} < 2")
    d = report.degrees
    lines.append(f"max set sizes: |A|={max(report.a_sizes, default=0)} |B|={max(report.b_sizes, default=0)}")
    lines.append(f"max degrees: d_A={max(d.d_a, default=0)} d_B={max(d.d_b, default=0)} "
                 f"d_H={max(d.d_h, default=0)}")
    if profile.one_cross and report.passed:
        ident = cross_degree_identity(sps)
        lines.append(f"sum_v d_A(v) d_B(v) = {ident.lhs}, m^2 - m = {ident.rhs}: "
                     f"{'holds' if ident.holds else 'VIOLATED'}")
    if sps.m:
        lines.append(f"incidence rank: A {incidence_rank(sps.a_family())}, B {incidence_rank(sps.b_family())} "
                     f"(m = {sps.m})")
    lines.append("VERIFIED" if report.passed else "FAILED")
    return report.passed, "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    sps, _ = read_sps(args.file)
    passed, text = render_report(sps, args.profile)
    sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_dualize(args) -> int:
    sps, _ = read_sps(args.file)
    kind = CLIQUE if args.kind == "clique" else BICLIQUE
    try:
        partition = dualize(sps, kind)
    except ValueError as e:
        print(f"cannot dualize: {e}", file=sys.stderr)
        return EXIT_FAIL
    _emit(partition_to_text(partition), args.out)
    return EXIT_OK


def cmd_undualize(args) -> int:
    partition = read_partition(args.file)
    valid, violations = verify_partition(partition)
    if not valid:
        print(f"invalid partition: {violations[:5]}", file=sys.stderr)
        return EXIT_FAIL
    _emit(sps_to_text(undualize(partition)), args.out)
    return EXIT_OK


def cmd_check_partition(args) -> int:
    partition = read_partition(args.file)
    valid, violations = verify_partition(partition)
    print(f"{partition.kind} m={partition.m} parts={len(partition.parts)} width={partition.width}")
    for reason, detail in violations[:20]:
        print(f"  {reason}: {detail}")
    print("VALID" if valid else f"INVALID ({len(violations)} violations)")
    return EXIT_OK if valid else EXIT_FAIL


def cmd_bounds(args) -> int:
    try:
        result = upper_bound(args.profile, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if result.value is None:
        print(f"unbounded ({result.source})")
    else:
        print(f"{result.value} ({result.kind}, {result.source})")
    return EXIT_OK


def _limits(args) -> SearchLimits:
    node_budget = args.node_budget or _env_number("SETPAIRS_NODE_BUDGET", int, SearchLimits.node_budget)
    time_budget = args.time_budget or _env_number("SETPAIRS_TIME_BUDGET", float, SearchLimits.time_budget)
    try:
        return SearchLimits(args.max_vertices, node_budget, time_budget)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_search(args) -> int:
    # the search is always single-threaded, so --single-thread needs no action
    limits = _limits(args)
    profile = args.profile
    if profile.a is None or profile.b is None:
        raise UsageError("search needs finite a and b in the profile")
    if args.m is not None:
        try:
            out = decide_size(profile, args.m, limits)
        except ValueError as e:
            raise UsageError(str(e)) from None
        witness, ok = out.witness, out.status == SAT
        reason = f" ({out.reason})" if out.reason else ""
        print(f"m={args.m} {out.status}{reason}")
        print(f"nodes={out.nodes_explored}")
    else:
        res = maximize(profile, limits)
        witness, ok = res.witness, res.witness is not None
        print(f"max={res.best_m} {'proven' if res.proven_optimal else 'not proven'}")
        if res.outcomes:
            last_m, last = res.outcomes[-1]
            reason = f" ({last.reason})" if last.reason else ""
            print(f"last query: m={last_m} {last.status}{reason}")
        print(f"nodes={sum(o.nodes_explored for _, o in res.outcomes)}")
    if witness is not None and args.witness_out:
        _emit(sps_to_text(witness, {"construction": "search", "parameters": {"profile": str(profile)}}),
              args.witness_out)
        print(f"witness: {args.witness_out}")
    if args.expect_sat and not ok:
        return EXIT_FAIL
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="setpairs", description="Cross intersecting set pair systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a system and write it as JSON",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog="constructions:\n  " + "\n  ".join(CONSTRUCTIONS))
    p.add_argument("name")
    p.add_argument("params", nargs="*", metavar="key=value")
    p.add_argument("--out", "-o", help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a system document against a profile")
    p.add_argument("file")
    p.add_argument("--profile", type=_profile, required=True, help=PROFILE_HELP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dualize", help="turn a 1-cross system into an edge partition")
    p.add_argument("file")
    p.add_argument("--kind", choices=("clique", "biclique"), default="biclique")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("undualize", help="turn an edge partition back into a system")
    p.add_argument("file")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_undualize)

    p = sub.add_parser("check-partition", help="validate an edge partition document")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_partition)

    p = sub.add_parser("bounds", help="best known upper bound for a profile")
    p.add_argument("--profile", type=_profile, required=True, help=PROFILE_HELP)
    p.add_argument("-n", type=int, help="value for unbounded a and b")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="exact search for the maximum size (or a given size with -m)")
    p.add_argument("--profile", type=_profile, required=True, help=PROFILE_HELP)
    p.add_argument("-m", type=int, help="decide this size only")
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--node-budget", type=int, help="default $SETPAIRS_NODE_BUDGET or 2000000")
    p.add_argument("--time-budget", type=float, help="seconds; default $SETPAIRS_TIME_BUDGET or 120")
    p.add_argument("--single-thread", action="store_true", help="deterministic single worker (the default)")
    p.add_argument("--expect-sat", action="store_true", help="exit 1 unless a witness is found")
    p.add_argument("--witness-out", help="write the best witness here")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DocumentError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
