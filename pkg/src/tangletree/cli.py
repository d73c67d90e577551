"""Command-line entry point: ``tangletree tangles|decompose|verify|oracle``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .connectivity import DEFAULT_CAP
from .construct import greedy_extend, prune_minimal, stratified_construct, verify_distinguishing
from .errors import InputError, PreconditionError, ResourceError
from .io import KINDS, catalog_to_json, dumps, load_system, td_from_json, td_to_dot, td_to_json
from .oracle import ORACLE_CAP, brute_force_catalog, brute_force_maximal
from .tangles import all_tangles, efficient_pool
from .treedec import TreeDecomposition, TreeEdge, check_structure, edge_separation, nested_to_tree, verify_corollary

log = logging.getLogger("tangletree")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load(args):
    return load_system(args.input, args.kind, args.cap)


def cmd_tangles(args) -> int:
    system = _load(args)
    catalog = all_tangles(system, allow_trivial=args.allow_trivial)
    _write(args.out_tangles, dumps(catalog_to_json(catalog)))
    log.info("%d tangles, %d maximal", len(catalog), len(catalog.maximal()))
    return EXIT_OK


def cmd_decompose(args) -> int:
    system = _load(args)
    catalog = all_tangles(system)
    pool = efficient_pool(system, catalog)
    if args.strategy == "stratified":
        nested = stratified_construct(system, catalog, pool)
    else:
        nested = greedy_extend(system, catalog, random_seed=args.seed, pool=pool)
    if args.prune:
        nested = prune_minimal(catalog, nested)
    td = nested_to_tree(system.ground, nested.seps())

    ok = True
    report = verify_distinguishing(catalog, td.separations())
    for p in report.failures():
        log.error("maximal tangles %d and %d are not efficiently distinguished", p.i, p.j)
    ok &= report.passed
    if args.prune:
        cor = verify_corollary(system, td, catalog)
        for msg in cor.messages():
            log.error("%s", msg)
        ok &= cor.passed

    if args.out_tangles:
        _write(args.out_tangles, dumps(catalog_to_json(catalog)))
    _write(args.out_td, dumps(td_to_json(td)))
    if args.dot:
        _write(args.dot, td_to_dot(td))
    log.info("%d maximal tangles, %d tree nodes", len(catalog.maximal()), len(td.parts))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    system = _load(args)
    try:
        data = json.loads(Path(args.td).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read decomposition {args.td}: {exc}") from None
    td = td_from_json(data, system.ground)
    checks = ("partition", "distinguish", "corollary") if args.check == "all" else (args.check,)

    results = {}
    problems = check_structure(td, system)
    if "partition" in checks:
        results["partition"] = problems
    if problems and set(checks) - {"partition"}:
        for name in checks:
            results.setdefault(name, ["decomposition is structurally invalid"])
    elif set(checks) - {"partition"}:
        # edge data is rebuilt from the parts; nothing recorded in the file is trusted
        td = TreeDecomposition(td.ground, td.parts, [
            TreeEdge(e.u, e.v, edge_separation(td, k, system)) for k, e in enumerate(td.edges)])
        catalog = all_tangles(system)
        if "distinguish" in checks:
            rep = verify_distinguishing(catalog, td.separations())
            results["distinguish"] = [
                f"maximal tangles {p.i} and {p.j} are not efficiently distinguished"
                for p in rep.failures()]
        if "corollary" in checks:
            results["corollary"] = verify_corollary(system, td, catalog).messages()

    ok = True
    for name in checks:
        msgs = results[name]
        print(f"{name}: {'PASS' if not msgs else 'FAIL'}")
        for m in msgs:
            print(f"  {m}")
        ok &= not msgs
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    cap = args.cap if args.cap_given else ORACLE_CAP
    system = load_system(args.input, args.kind, max(cap, DEFAULT_CAP))
    levels = brute_force_catalog(system, cap=cap)
    catalog = all_tangles(system)
    engine = {k: {t.small_sides for t in v} for k, v in catalog.levels.items()}
    engine_max = {(t.order, t.small_sides) for t in catalog.maximal()}
    same = engine == levels and engine_max == brute_force_maximal(system, levels)
    counts = ", ".join(f"order{k}:{len(v)}" for k, v in sorted(levels.items()))
    print(f"oracle counts: [{counts}]")
    print("match" if same else "MISMATCH")
    return EXIT_OK if same else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tangletree", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i", required=True)
        p.add_argument("--kind", choices=KINDS, help="input format (default: detect from header)")
        p.add_argument("--cap", type=int, default=None, help=f"element cap (default {DEFAULT_CAP})")

    p = sub.add_parser("tangles", help="write the tangle catalog as JSON")
    common(p)
    p.add_argument("--out-tangles")
    p.add_argument("--allow-trivial", action="store_true",
                   help="drop the axiom forbidding small co-singletons")
    p.set_defaults(func=cmd_tangles)

    p = sub.add_parser("decompose", help="build and verify a tree-decomposition")
    common(p)
    p.add_argument("--strategy", choices=("greedy", "stratified"), default="greedy")
    p.add_argument("--seed", type=int, help="random tie-break seed for the greedy strategy")
    p.add_argument("--prune", action="store_true")
    p.add_argument("--out-tangles")
    p.add_argument("--out-td")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-check a decomposition from first principles")
    common(p)
    p.add_argument("--td", required=True, help="decomposition JSON to check")
    p.add_argument("--check", choices=("all", "distinguish", "corollary", "partition"), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="compare the engine against definitional brute force")
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    args.cap_given = args.cap is not None
    if args.cap is None:
        args.cap = DEFAULT_CAP
    if getattr(args, "seed", None) is not None and args.strategy != "greedy":
        parser.error("--seed only applies to the greedy strategy")
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
