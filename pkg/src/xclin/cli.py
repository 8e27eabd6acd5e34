"""Command-line interface: ``xclin <command> ...``.

All numbers are exact; fractions print as ``p/q``.  Diagnostics go to stderr
and any failure exits non-zero.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog
from .errors import XclinError
from .exterior import (all_exterior_stem_group_ids, exterior_center, exterior_degree, exterior_square,
                       is_exterior_stem_group)
from .fpenum import DEFAULT_MAX_COSETS
from .groups import (abelian_invariants, center, commutative_degree, derived_subgroup,
                     is_stem_group)
from .report import RELATIONS, fraction_text, group_families, xmod_classes, xmod_families
from .xmod import all_xmods, are_exterior_isoclinic_xmods, xmod_record


def _size(text: str) -> tuple[int, int]:
    try:
        s, r = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected S,R but got {text!r}") from None
    if s < 1 or r < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return s, r


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _warm(groups, max_cosets: int) -> None:
    # exterior squares are cached, so building them here fixes the coset bound
    for G in groups:
        exterior_square(G, max_cosets=max_cosets)


def cmd_info(args) -> str:
    G = catalog.small_group(args.order, args.id)
    _warm([G], args.max_cosets)
    info = {
        "order": G.order,
        "id": args.id,
        "name": G.name,
        "center": center(G).order,
        "exterior_center": exterior_center(G).order,
        "derived": derived_subgroup(G).order,
        "exterior_square": exterior_square(G).wedge.order,
        "commutative_degree": fraction_text(commutative_degree(G)),
        "exterior_degree": fraction_text(exterior_degree(G)),
        "stem": is_stem_group(G),
        "exterior_stem": is_exterior_stem_group(G),
    }
    if args.format == "json":
        return json.dumps(info, indent=2) + "\n"
    if args.format == "tsv":
        return "\t".join(info) + "\n" + "\t".join(str(v).lower() if isinstance(v, bool) else str(v)
                                               for v in info.values()) + "\n"
    width = max(map(len, info))
    return "".join(f"{k.ljust(width)}  {str(v).lower() if isinstance(v, bool) else v}\n"
                   for k, v in info.items())


def cmd_families(args) -> str:
    if (args.order is None) == (args.size is None):
        raise XclinError("give exactly one of --order or --size")
    if args.order is not None:
        _warm(catalog.all_small_groups(args.order), args.max_cosets)
        report = group_families(args.order, args.relation, args.jobs)
    else:
        _warm(catalog.all_small_groups(args.size[1]), args.max_cosets)
        report = xmod_families(*args.size, args.relation, args.jobs)
    return report.render(args.format)


def cmd_stems(args) -> str:
    groups = catalog.all_small_groups(args.order)
    if args.classical:
        ids = [G.catalog_id[1] for G in groups if is_stem_group(G)]
    else:
        _warm(groups, args.max_cosets)
        ids = [i for _, i in all_exterior_stem_group_ids(args.order)]
    if args.format == "json":
        return json.dumps({"order": args.order, "exterior": not args.classical, "ids": ids}) + "\n"
    return ",".join(map(str, ids)) + "\n"


def cmd_xmods(args) -> str:
    xs = list(xmod_classes(*args.size)) if args.up_to_iso else all_xmods(*args.size)
    records = [xmod_record(X) for X in xs]
    if args.format == "json":
        return json.dumps({"size": list(args.size), "up_to_isomorphism": args.up_to_iso,
                           "count": len(xs), "xmods": records}, indent=2) + "\n"
    lines = []
    if args.format == "table":
        lines.append(f"count: {len(xs)}")
    else:
        lines.append("position\tsource\trange\tboundary\taction")
    for k, rec in enumerate(records, start=1):
        src = f"({rec['source']['order']},{rec['source']['id']})"
        rng = f"({rec['range']['order']},{rec['range']['id']})"
        bd = " ".join(rec["boundary"]) or "-"
        act = "; ".join(" ".join(row) for row in rec["action"]) or "-"
        sep = "\t" if args.format == "tsv" else "  "
        lines.append(sep.join([str(k), src, rng, bd, act]))
    return "\n".join(lines) + "\n"


def cmd_wedge(args) -> str:
    G = catalog.small_group(args.order, args.id)
    P = exterior_square(G, max_cosets=args.max_cosets)
    if args.dump_table:
        text = P.coset_table.to_tsv()
        if args.dump_table == "-":
            sys.stdout.write(text)
        else:
            with open(args.dump_table, "w", encoding="utf-8") as fh:
                fh.write(text)
    inv = abelian_invariants(P.wedge) if P.wedge.is_abelian else None
    out = {
        "order": P.wedge.order,
        "abelian_invariants": inv,
        "generators": P.presentation.generator_count,
        "relators": len(P.presentation.relators),
        "cosets_defined": P.coset_table.defined,
    }
    if args.format == "json":
        return json.dumps(out) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in out.items())


def cmd_cross_order(args) -> str:
    if not args.slow:
        raise XclinError("cross-order comparison is slow; pass --slow to run it")
    t = time.perf_counter()
    big, small = xmod_classes(*args.size), xmod_classes(*args.against)
    for i, X in enumerate(big, start=1):
        for j, Y in enumerate(small, start=1):
            if are_exterior_isoclinic_xmods(X, Y) is not None:
                out = {"found": True, "size": list(args.size), "position": i,
                       "against": list(args.against), "against_position": j}
                print(f"searched in {time.perf_counter() - t:.1f}s", file=sys.stderr)
                return json.dumps(out) + "\n"
    return json.dumps({"found": False, "size": list(args.size), "against": list(args.against)}) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "tsv", "json"), default="table")
    common.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS,
                        help="coset enumeration bound (default %(default)s)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for pairwise checks")
    common.add_argument("--slow", action="store_true", help="allow long-running computations")

    p = argparse.ArgumentParser(prog="xclin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="invariants of one catalog group")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--id", type=int, required=True)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("families", parents=[common], help="partition groups or crossed modules")
    s.add_argument("--order", type=int)
    s.add_argument("--size", type=_size, help="crossed modules of size S,R (up to isomorphism)")
    s.add_argument("--relation", choices=RELATIONS, default="isoclinism")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("stems", parents=[common], help="ids of (exterior) stem groups")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--classical", action="store_true", help="stem groups instead of exterior stem groups")
    s.set_defaults(func=cmd_stems)

    s = sub.add_parser("xmods", parents=[common], help="enumerate crossed modules")
    s.add_argument("--size", type=_size, required=True)
    s.add_argument("--up-to-iso", action="store_true")
    s.set_defaults(func=cmd_xmods)

    s = sub.add_parser("wedge", parents=[common], help="build an exterior square")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--id", type=int, required=True)
    s.add_argument("--dump-table", metavar="PATH", help="write the coset table as TSV ('-' for stdout)")
    s.set_defaults(func=cmd_wedge)

    s = sub.add_parser("cross-order", parents=[common],
                       help="find crossed modules of one size exterior isoclinic to another size")
    s.add_argument("--size", type=_size, default=(18, 18))
    s.add_argument("--against", type=_size, default=(4, 4))
    s.set_defaults(func=cmd_cross_order)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sys.stdout.write(args.func(args))
    except (XclinError, ValueError) as exc:
        print(f"xclin: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
