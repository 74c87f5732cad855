"""Command-line surface: enumerate, verify, tree, and phi subcommands.

Exit codes: 0 on success, 1 when a verification finds a divergence,
2 on bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .arith import PrimePowerQ, phi_prefix
from .cosets import ORACLE_CAP, CosetPartition, CyclotomicCoset
from .system import splitting_tree
from .tower import enumerate_cosets, verify, worker_count

_JSON_INT_MAX = 2**53


def _jint(v: int):
    # decimal strings above 2**53 so JSON consumers cannot lose precision
    return v if -_JSON_INT_MAX <= v <= _JSON_INT_MAX else str(v)


def partition_to_json(part: CosetPartition, with_leaders: bool = False) -> str:
    records = []
    for c in part.cosets:
        rec = {"representative": _jint(c.rep), "size": _jint(c.size)}
        if with_leaders:
            rec["leader"] = _jint(c.leader())
        records.append(rec)
    if with_leaders:
        records.sort(key=lambda r: int(r["leader"]))
    doc = {
        "q": _jint(part.q),
        "n": _jint(part.n),
        "cosets": records,
        "total": _jint(part.total()),
    }
    return json.dumps(doc, indent=2)


def partition_from_json(text: str) -> CosetPartition:
    doc = json.loads(text)
    q = int(doc["q"])
    n = int(doc["n"])
    cosets = tuple(
        CyclotomicCoset(q, n, int(rec["representative"]), int(rec["size"]))
        for rec in sorted(doc["cosets"], key=lambda r: int(r["representative"]))
    )
    return CosetPartition(q, n, cosets)


def _resolve_q(args) -> int:
    if args.q is not None:
        if args.p is not None or args.e is not None:
            raise ValueError("give either --q or --p/--e, not both")
        return PrimePowerQ.from_value(args.q).q
    if args.p is None:
        raise ValueError("one of --q or --p is required")
    return PrimePowerQ(args.p, args.e if args.e is not None else 1).q


def _emit_rows(out, rows, header, fmt, total):
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(v) for v in row) + "\n")
        out.write(f"# total={total}\n")
    else:
        widths = [
            max(len(h), max((len(str(r[i])) for r in rows), default=0))
            for i, h in enumerate(header)
        ]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "\n")
        for row in rows:
            out.write("  ".join(str(v).ljust(w) for v, w in zip(row, widths)) + "\n")
        out.write(f"total: {len(rows)} cosets, {total} elements\n")


def cmd_enumerate(args) -> int:
    q = _resolve_q(args)
    part = enumerate_cosets(q, args.n, workers=worker_count())
    out = sys.stdout
    if args.format == "json":
        out.write(partition_to_json(part, with_leaders=args.with_leaders) + "\n")
        return 0
    if args.with_leaders:
        rows = sorted((c.leader(), c.rep, c.size) for c in part.cosets)
        rows = [(rep, size, lead) for lead, rep, size in rows]
        header = ["representative", "size", "leader"]
    else:
        rows = [(c.rep, c.size) for c in part.cosets]
        header = ["representative", "size"]
    _emit_rows(out, rows, header, args.format, part.total())
    return 0


def _report_line(rep) -> str:
    return (
        f"q={rep.q} n={rep.n} cosets={rep.coset_count} "
        f"match={'yes' if rep.match else 'NO'} "
        f"naive={rep.naive_seconds * 1000:.2f}ms "
        f"structured={rep.structured_seconds * 1000:.2f}ms"
    )


def cmd_verify(args) -> int:
    q = _resolve_q(args)
    if args.n_max is not None:
        checked = 0
        for n in range(1, args.n_max + 1):
            if math.gcd(q, n) != 1:
                continue
            rep = verify(q, n, oracle_cap=args.oracle_cap)
            checked += 1
            if not rep.match:
                print(_report_line(rep))
                print(f"first divergence: {rep.mismatches[0]}", file=sys.stderr)
                return 1
        print(f"verified q={q} for {checked} moduli up to {args.n_max}: all match")
        return 0
    if args.n is None:
        raise ValueError("one of --n or --n-max is required")
    rep = verify(q, args.n, oracle_cap=args.oracle_cap)
    print(_report_line(rep))
    if not rep.match:
        print(f"first divergence: {rep.mismatches[0]}", file=sys.stderr)
        return 1
    return 0


def cmd_tree(args) -> int:
    q = _resolve_q(args)
    tree = splitting_tree(args.ell, q, args.n, args.depth)
    sys.stdout.write(tree.to_dot())
    return 0


def cmd_phi(args) -> int:
    if args.digits < 1:
        raise ValueError("--digits must be at least 1")
    prefix = phi_prefix(args.ell, args.n, args.gamma, args.digits - 1)
    print(" ".join(str(d) for d in prefix.digits))
    return 0


def _add_q_options(sub) -> None:
    sub.add_argument("--q", type=int, help="prime power q")
    sub.add_argument("--p", type=int, help="prime base of q (with --e)")
    sub.add_argument("--e", type=int, help="exponent of q (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycloset",
        description="Enumerate q-cyclotomic cosets modulo n exactly, "
        "verify against a brute-force orbit oracle, and render splitting trees.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_enum = subs.add_parser("enumerate", help="list all cosets modulo n")
    _add_q_options(p_enum)
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--format", choices=["json", "csv", "table"], default="table")
    p_enum.add_argument("--with-leaders", action="store_true")
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = subs.add_parser("verify", help="compare against the orbit oracle")
    _add_q_options(p_verify)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--n-max", type=int, help="verify all coprime n up to this bound")
    p_verify.add_argument("--oracle-cap", type=int, default=ORACLE_CAP)
    p_verify.set_defaults(func=cmd_verify)

    p_tree = subs.add_parser("tree", help="emit the splitting tree as DOT")
    _add_q_options(p_tree)
    p_tree.add_argument("--ell", type=int, required=True)
    p_tree.add_argument("--n", type=int, required=True)
    p_tree.add_argument("--depth", type=int, required=True)
    p_tree.add_argument("--format", choices=["dot"], default="dot")
    p_tree.set_defaults(func=cmd_tree)

    p_phi = subs.add_parser("phi", help="digits of -gamma/n as an ell-adic integer")
    p_phi.add_argument("--ell", type=int, required=True)
    p_phi.add_argument("--n", type=int, required=True)
    p_phi.add_argument("--gamma", type=int, required=True)
    p_phi.add_argument("--digits", type=int, required=True)
    p_phi.set_defaults(func=cmd_phi)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
