"""Command-line entry point: ``isoposet <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path

from .. import analytic
from ..catalog import default_catalog, load_catalog
from ..errors import IsoPosetError
from ..grpiso import find_isomorphism
from ..poset import solitary_subposet
from ..subgrp import lattice_meta
from .dot import export_dot
from .expr import format_spec, parse_group_expr
from .suites import (
    FAIL, SUITE_ORDER, Caps, Workbench, non_isomorphism, poset_witness, replay_conjecture, run_suite,
)


def _bench(args) -> Workbench:
    catalog = load_catalog(args.catalog) if getattr(args, "catalog", None) else default_catalog()
    caps = Caps(table=args.table_cap, subgroups=args.subgroup_cap, max_order=getattr(args, "max_order", None))
    return Workbench(catalog, caps, cache_dir=getattr(args, "cache", None))


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2) if args.json else text)


def cmd_iso(args) -> int:
    bench = _bench(args)
    a = bench.spec(parse_group_expr(args.expr))
    p, r = a.poset, a.report
    classes = [{"label": p.labels[k], "order": int(a.lattice.orders[a.iso.representative[k]]),
                "members": len(a.iso.classes[k])} for k in range(p.size)]
    sol = solitary_subposet(a.iso)
    payload = {
        "group": a.name, "order": a.group.order, "subgroups": len(a.lattice), "classes": classes,
        "hasse": [[p.labels[i], p.labels[j]] for i, j in p.hasse],
        "properties": {"lattice": r.is_lattice, "chain": r.is_chain, "modular": r.is_modular,
                       "distributive": r.is_distributive, "complemented": r.is_complemented,
                       "height": r.height, "elements": p.size},
        "witness": {k: [p.labels[i] for i in v] for k, v in r.witness.items()},
        "solitary": list(sol.labels),
    }
    lines = [f"Iso({a.name}): {p.size} classes of {len(a.lattice)} subgroups"]
    lines += [f"  [{c['label']}]  order {c['order']}, {c['members']} subgroup(s)" for c in classes]
    lines.append("  covers: " + ", ".join(f"{x} < {y}" for x, y in payload["hasse"]))
    lines.append("  " + ", ".join(f"{k}={v}" for k, v in payload["properties"].items()))
    for k, v in payload["witness"].items():
        head = k.replace("_", " ") if k.startswith("no_") else f"not {k}"
        lines.append(f"  {head}: {', '.join(v)}")
    lines.append("  solitary classes: " + ", ".join(sol.labels))
    _emit(args, payload, "\n".join(lines))
    if args.dot:
        Path(args.dot).write_text(export_dot(p, name=f"Iso({a.name})"))
    return 0


def cmd_lattice(args) -> int:
    bench = _bench(args)
    a = bench.spec(parse_group_expr(args.expr))
    lat = a.lattice
    meta = lattice_meta(lat)
    by_order = Counter(int(o) for o in lat.orders)
    payload = {
        "group": a.name, "order": a.group.order, "subgroups": len(lat),
        "subgroups_by_order": {str(k): by_order[k] for k in sorted(by_order)},
        "conjugacy_classes": int(lat.conjugacy_class_ids.max()) + 1,
        "normal_subgroups": int(lat.normal_flags.sum()),
        "frattini_order": int(lat.orders[meta.frattini_id]),
        "clt": meta.is_clt, "jordan_dedekind": meta.jordan_dedekind,
        "minimal_normal_orders": [int(lat.orders[i]) for i in meta.minimal_normal_ids],
        "complemented": lat.is_complemented()[0],
    }
    lines = [f"L({a.name}): {len(lat)} subgroups"]
    lines += [f"  {k}: {v}" for k, v in payload.items() if k not in ("group", "subgroups")]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_compare(args) -> int:
    bench = _bench(args)
    a, b = bench.spec(parse_group_expr(args.first)), bench.spec(parse_group_expr(args.second))
    phi = find_isomorphism(a.group, b.group) if a.group.order == b.group.order else None
    w = poset_witness(a.poset, b.poset)
    payload = {"groups": [a.name, b.name], "groups_isomorphic": phi is not None,
               "group_witness": None if phi is None else [int(x) for x in phi],
               "iso_posets_isomorphic": w is not None, "poset_witness": w}
    lines = [f"{a.name} {'~' if phi is not None else '!~'} {b.name} as groups",
             f"Iso({a.name}) {'~' if w else '!~'} Iso({b.name})"]
    if w:
        lines += [f"  {m}" for m in w]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_twin(args) -> int:
    bench = _bench(args)
    s1, s2 = analytic.twin_pair(args.n)
    a, b = bench.spec(s1), bench.spec(s2)
    w = poset_witness(a.poset, b.poset)
    distinct = non_isomorphism(a.group, b.group)
    payload = {"n": args.n, "pair": [format_spec(s1), format_spec(s2)], "non_isomorphic": distinct,
               "poset_witness": w}
    lines = [f"twin pair of order {args.n}: {format_spec(s1)} and {format_spec(s2)}",
             f"  groups non-isomorphic: {distinct is not None}", f"  Iso posets isomorphic: {w is not None}"]
    _emit(args, payload, "\n".join(lines))
    return 0 if w is not None and distinct is not None else 1


def cmd_verify(args) -> int:
    bench = _bench(args)
    names = SUITE_ORDER if args.suite == "all" else [args.suite]
    reports = [run_suite(name, bench=bench) for name in names]
    if args.json:
        docs = [r.to_dict(args.timings) for r in reports]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, sort_keys=True, indent=2))
    else:
        print("\n\n".join(r.render(args.timings) for r in reports))
    if args.dot:
        bench.write_dot(args.dot)
    return 1 if any(r.count(FAIL) for r in reports) else 0


def cmd_replay(args) -> int:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    result = replay_conjecture(args.order, args.index, catalog)
    print(json.dumps(result, sort_keys=True, indent=2))
    return 0


def cmd_catalog(args) -> int:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    rows = [e for e in catalog if args.order is None or e.order == args.order]
    payload = {"complete_through": catalog.complete_through,
               "entries": [{"id": f"G({e.order},{e.index})", "name": e.name} for e in rows]}
    text = "\n".join(f"G({e.order},{e.index})  {e.name}" for e in rows)
    _emit(args, payload, f"complete through order {catalog.complete_through}\n{text}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isoposet", description=(
        "Subgroup lattices L(G) and posets Iso(G) of isomorphism classes of subgroups of small groups."))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog file (default: the shipped catalog)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--table-cap", type=int, default=Caps.table, help="largest group order to materialise")
    common.add_argument("--subgroup-cap", type=int, default=Caps.subgroups, help="largest subgroup count")
    common.add_argument("--cache", metavar="DIR", help="persistent result cache directory")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iso", parents=[common], help="describe Iso(G)")
    p.add_argument("expr", help="group expression, e.g. 'D8 x Z4' or 'ZM(7,3,2)'")
    p.add_argument("--dot", metavar="FILE", help="write the Hasse diagram as DOT")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("lattice", parents=[common], help="summarise L(G)")
    p.add_argument("expr")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("compare", parents=[common], help="compare two groups and their Iso posets")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("twin", parents=[common], help="twin pair of a non-square-free order")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_twin)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=[*SUITE_ORDER, "all"])
    p.add_argument("--max-order", type=int, help="override the suite's scan bound")
    p.add_argument("--dot", metavar="DIR", help="write every computed Iso poset as DOT into DIR")
    p.add_argument("--timings", action="store_true", help="include wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", parents=[common], help="recompute one conjecture case from scratch")
    p.add_argument("order", type=int)
    p.add_argument("index", type=int)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except IsoPosetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
