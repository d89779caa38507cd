"""Command-line front end: enumerate, search, verify, classify, network,
basis, report."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import CYCLIC, Configuration, RuleSpec, evolve
from .rulespace import SPACES, all_classes, build_catalog, catalog_csv


def _rule_spec(space: str, number: int) -> RuleSpec:
    colors, template = SPACES[space]
    return RuleSpec(colors, template, number)


def _parse_rules(text: str):
    if text in ("all", "essential"):
        return text
    return tuple(int(part) for part in text.split(",") if part)


def _parse_k_range(text: str) -> tuple:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    k = int(text)
    return k, k


def cmd_enumerate(args) -> int:
    classes = all_classes(args.space)
    if args.format == "count":
        print(len(classes))
        return 0
    text = catalog_csv(build_catalog(args.space))
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(classes)} classes to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_search(args) -> int:
    from .harness import SearchJob, load_config, run_search

    config = load_config(args.config) if args.config else None
    job = SearchJob(
        space=args.space,
        rules=_parse_rules(args.rules),
        k_range=_parse_k_range(args.k),
        workers=args.workers,
        checkpoint_path=args.checkpoint,
        output_path=args.out,
    )
    last = [0]

    def progress(done, total):
        if done == total or done - last[0] >= max(1, total // 20):
            last[0] = done
            print(f"\r{done}/{total} cells", end="", file=sys.stderr, flush=True)

    summary = run_search(job, config, progress=progress)
    print(file=sys.stderr)
    print(
        f"{summary.records} records from {summary.cells_completed} cells "
        f"({summary.cells_skipped} resumed) in {summary.wall_time:.1f}s"
        + (f" -> {summary.output_path}" if summary.output_path else "")
    )
    return 0


def cmd_verify(args) -> int:
    from .emulation import Projection, block_encode, verify_emulation
    from .search import search_emulations

    emulator = _rule_spec(args.space, args.emulator)
    if args.code0 and args.code1:
        p = Projection.from_codes(args.code0, args.code1)
        emulated = _rule_spec(args.space, args.emulated)
        result = verify_emulation(emulator, emulated, p)
        if result:
            print(f"verified: {args.emulator} emulates {args.emulated} via {p}")
        else:
            print(
                f"refuted: {args.emulator} does not emulate {args.emulated} via {p}; "
                f"first failing neighbourhood {result.counterexample}"
            )
            return 1
    else:
        if args.k is None:
            print("need either --code0/--code1 or --k to search", file=sys.stderr)
            return 2
        hits = [
            rec
            for rec in search_emulations(emulator, args.k)
            if rec.emulated == args.emulated
        ]
        if not hits:
            print(f"refuted: no size-{args.k} projection makes {args.emulator} emulate {args.emulated}")
            return 1
        for rec in hits:
            print(f"verified: {args.emulator} emulates {args.emulated} via {rec.projection}")
        p = hits[0].projection
    if args.render:
        import numpy as np

        from .network import write_pbm

        rng = np.random.default_rng(args.seed)
        cells = rng.integers(0, emulator.colors, args.width)
        encoded = block_encode(p, Configuration(cells, CYCLIC))
        st = evolve(emulator, encoded, p.block_size * args.steps)
        Path(args.render).write_text(write_pbm(st))
        print(f"wrote space-time bitmap to {args.render}")
    return 0


def cmd_classify(args) -> int:
    from .complexity import classify, load_thresholds, profiles_to_csv

    thresholds = load_thresholds(args.thresholds) if args.thresholds else None
    rules = _parse_rules(args.rules)
    if rules == "all":
        colors, template = SPACES[args.space]
        numbers = range(colors ** colors ** len(template))
    elif rules == "essential":
        from .rulespace import essential_rules

        numbers = essential_rules(args.space)
    else:
        numbers = rules
    kwargs = {"thresholds": thresholds, "space": args.space}
    for name, value in (("width", args.width), ("steps", args.steps), ("n_inits", args.inits)):
        if value is not None:
            kwargs[name] = value
    profiles = []
    for i, n in enumerate(numbers):
        profiles.append(classify(_rule_spec(args.space, n), **kwargs))
        print(f"\r{i + 1} rules", end="", file=sys.stderr, flush=True)
    print(file=sys.stderr)
    text = profiles_to_csv(profiles)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(profiles)} profiles to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_network(args) -> int:
    from .complexity import profiles_from_csv
    from .harness import load_records, report_network

    records = load_records(args.records)
    profiles = profiles_from_csv(Path(args.profiles).read_text()) if args.profiles else None
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = report_network(records, out_dir, profiles=profiles, nontrivial=args.nontrivial)
    print("wrote " + " ".join(str(p) for p in paths))
    return 0


def cmd_basis(args) -> int:
    from .colorbasis import all_bases, basis_xy, lift_rule

    if args.basis_cmd == "table":
        r = args.r
        print("x,y,exponents")
        for b in all_bases(args.ell, r):
            print(f"{b.x},{b.y}," + " ".join(map(str, b.exponents)))
        return 0
    x, y = (int(part) for part in args.basis.split(","))
    basis = basis_xy(args.ell, args.r, x, y)
    rule = RuleSpec.eca(args.rule) if args.r == 1 else None
    if rule is None:
        print("only range-1 rules are supported", file=sys.stderr)
        return 2
    print(lift_rule(rule, basis))
    return 0


def cmd_report(args) -> int:
    from .complexity import profiles_from_csv
    from .harness import REPORT_KINDS, load_records

    missing = [p for p in (args.records, args.profiles) if p and not Path(p).exists()]
    if missing:
        print("missing input files: " + ", ".join(missing), file=sys.stderr)
        return 2
    records = load_records(args.records)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    profiles = profiles_from_csv(Path(args.profiles).read_text()) if args.profiles else None
    kind = REPORT_KINDS[args.kind]
    if args.kind == "degree":
        if profiles is None:
            print("degree report needs --profiles", file=sys.stderr)
            return 2
        paths = kind(records, profiles, out_dir, nontrivial=args.nontrivial)
    elif args.kind == "ranking":
        paths = kind(records, out_dir, nontrivial=args.nontrivial)
    elif args.kind == "network":
        paths = kind(records, out_dir, profiles=profiles, nontrivial=args.nontrivial)
    else:
        paths = kind(records, out_dir, profiles=profiles)
    print("wrote " + " ".join(str(p) for p in paths))
    return 0


REPORT_KIND_NAMES = ("network", "ranking", "degree", "frequency-curves", "compiler-stats")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caemu", description="block-emulation tools for 1-D cellular automata"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="equivalence classes of a rule space")
    p.add_argument("--space", choices=sorted(SPACES), required=True)
    p.add_argument("--format", choices=("csv", "count"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="run the emulation search grid")
    p.add_argument("--space", choices=sorted(SPACES), required=True)
    p.add_argument("--rules", default="all", help='"all", "essential", or comma list')
    p.add_argument("--k", default="2:3", help="block size or lo:hi range")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check one candidate emulation")
    p.add_argument("--space", choices=sorted(SPACES), required=True)
    p.add_argument("--emulator", type=int, required=True)
    p.add_argument("--emulated", type=int, required=True)
    p.add_argument("--code0")
    p.add_argument("--code1")
    p.add_argument("--k", type=int)
    p.add_argument("--render", help="write the emulator space-time as PBM")
    p.add_argument("--width", type=int, default=48)
    p.add_argument("--steps", type=int, default=48)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="complexity profiles for rules")
    p.add_argument("--space", choices=sorted(SPACES), required=True)
    p.add_argument("--rules", default="all")
    p.add_argument("--out")
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--inits", type=int, default=None)
    p.add_argument("--thresholds")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("network", help="build and export the emulation graph")
    p.add_argument("--records", required=True)
    p.add_argument("--profiles")
    p.add_argument("--nontrivial", action="store_true")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("basis", help="2-color basis tables and rule lifting")
    basis_sub = p.add_subparsers(dest="basis_cmd", required=True)
    t = basis_sub.add_parser("table", help="all bases for a color count")
    t.add_argument("--ell", type=int, required=True)
    t.add_argument("--r", type=int, default=1)
    t.set_defaults(func=cmd_basis)
    l = basis_sub.add_parser("lift", help="lift a binary rule along a basis")
    l.add_argument("--rule", type=int, required=True)
    l.add_argument("--basis", required=True, help="x,y digit pair")
    l.add_argument("--ell", type=int, required=True)
    l.add_argument("--r", type=int, default=1)
    l.set_defaults(func=cmd_basis)

    p = sub.add_parser("report", help="derive figure data from search results")
    p.add_argument("--kind", choices=sorted(REPORT_KIND_NAMES), required=True)
    p.add_argument("--records", required=True)
    p.add_argument("--profiles")
    p.add_argument("--nontrivial", action="store_true")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
