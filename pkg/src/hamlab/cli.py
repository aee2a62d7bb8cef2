"""Command-line entry point.

Exit codes: 0 success, 1 counterexample or open-problem candidate found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .conditions import CONDITION_IDS, evaluate
from .connectivity import is_k_strong, is_strong, vertex_connectivity
from .cycles import DEFAULT_DP_THRESHOLD, cycle_length_profile, cycle_through_pair, hamiltonian_cycle, longest_cycle
from .digraph import DigraphError, read, serialize
from .factor import extract_cycle_factor, extract_partition_witness
from .families import PREFILTERS, SAMPLERS, EnumerationScope, generate
from .harness import VerificationReport, explore_problem_1_17, find_remark_witness, sharpness_search, verify
from .registry import THEOREM_IDS

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _scope_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="digraph order")
    p.add_argument("--n-max", type=int, help="run every order from --n to --n-max")
    p.add_argument("--mode", choices=("exhaustive", "complement", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, help="number of draws in sampled mode")
    p.add_argument("--seed", type=int, help="seed for sampled mode")
    p.add_argument("--pair-budget", type=int, default=3, help="max non-adjacent pairs in complement mode (default 3)")
    p.add_argument("--sampler", choices=SAMPLERS, help="sampled mode generator (default depends on the theorem)")
    p.add_argument("--prefilter", action="append", default=[], choices=PREFILTERS,
                   help="only examine digraphs passing this test (repeatable)")
    p.add_argument("--report", type=Path, help="write the JSON report here")
    p.add_argument("--out", type=Path, help="directory for persisted failure digraphs")
    p.add_argument("--threads", type=int, help="worker processes (overrides HAMLAB_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamlab", description="Exact digraph Hamiltonicity tools and theorem harness.")
    parser.add_argument("--version", action="version", version=f"hamlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate degree and connectivity conditions")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--condition", action="append",
                   help=f"one of {', '.join(CONDITION_IDS)} (pair_sum_threshold:T); repeatable; default all")

    p = sub.add_parser("solve", help="run a cycle solver")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--task", choices=("hamiltonian", "pair", "longest", "profile"), default="hamiltonian")
    p.add_argument("--pair", type=int, nargs=2, metavar=("X", "Y"), help="vertices for --task pair")
    p.add_argument("--through", type=int)
    p.add_argument("--avoiding", type=int)
    p.add_argument("--dp-threshold", type=int, default=DEFAULT_DP_THRESHOLD)

    p = sub.add_parser("factor", help="cycle factor or partition witness")
    p.add_argument("--input", type=Path, required=True)

    p = sub.add_parser("generate", help="emit a named family member in DG format")
    p.add_argument("family", help="e.g. phi:n=8,m=6 or complete_bipartite:a=3,b=3")
    p.add_argument("--out", type=Path, help="write to this file instead of stdout")

    p = sub.add_parser("verify", help="verify a registry theorem over a scope")
    p.add_argument("--theorem", required=True, help="registry id, e.g. manoussakis-1.12")
    _scope_args(p)

    p = sub.add_parser("explore", help="searches: open problem, remark witness, sharpness exhibits")
    p.add_argument("--problem", choices=("1.17", "remark", "sharpness"), default="1.17")
    _scope_args(p)
    return parser


def _load(path: Path):
    try:
        return read(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _scopes(args) -> list[EnumerationScope]:
    top = args.n_max if args.n_max is not None else args.n
    if top < args.n:
        raise UsageError("--n-max must be >= --n")
    return [
        EnumerationScope(n, args.mode, sample_count=args.samples, seed=args.seed, prefilter=args.prefilter,
                         pair_budget=args.pair_budget, sampler=args.sampler)
        for n in range(args.n, top + 1)
    ]


def _emit_reports(reports: list[VerificationReport], args) -> int:
    for r in reports:
        n = r.scope["n"]
        print(f"{r.theorem_id} n={n} mode={r.scope['mode']}: examined {r.digraphs_examined}, "
              f"hypothesis hits {r.hypothesis_hits}, failures {r.failure_count} ({r.runtime_ms} ms)")
        if r.stats:
            print("  stats: " + ", ".join(f"{k}={v}" for k, v in r.stats.items()))
        if r.vacuous:
            print(f"  WARNING: vacuous run at n={n}: no digraph met the hypothesis; this is not evidence")
        for f in r.conclusion_failures:
            print(f"  {r.label.upper()}: {f['detail']}")
            print("    " + f["digraph"].rstrip("\n").replace("\n", "\n    "))
        if r.persisted:
            print(f"  persisted {len(r.persisted)} digraph(s) to {args.out}")
    if args.report:
        data = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        args.report.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
    return EXIT_FOUND if any(r.failure_count for r in reports) else EXIT_OK


def cmd_check(args) -> int:
    D = _load(args.input)
    for cid in args.condition or [c for c in CONDITION_IDS if c != "pair_sum_threshold"]:
        res = evaluate(D, cid)
        verdict = "satisfied" if res.satisfied else "violated"
        extra = " (vacuous)" if res.vacuous else ""
        if res.value is not None:
            extra += f", minimum pair sum {res.value}"
        print(f"{res.condition}: {verdict}{extra}")
        if res.witness:
            print(f"  witness: {res.witness.describe()}")
    if D.order >= 2:
        kappa = vertex_connectivity(D)
        print(f"strong: {is_strong(D)}, 2-strong: {is_k_strong(D, 2)}, kappa: {kappa.kappa}")
    return EXIT_OK


def cmd_solve(args) -> int:
    D = _load(args.input)
    t = args.dp_threshold
    if args.task == "hamiltonian":
        c = hamiltonian_cycle(D, dp_threshold=t)
    elif args.task == "pair":
        if not args.pair:
            raise UsageError("--task pair needs --pair X Y")
        c = cycle_through_pair(D, *args.pair, dp_threshold=t)
    elif args.task == "longest":
        c = longest_cycle(D, through=args.through, avoiding=args.avoiding, dp_threshold=t)
    else:
        prof = cycle_length_profile(D, dp_threshold=t)
        for length in sorted(prof.witnesses):
            print(f"{length}: {prof.witnesses[length]}")
        print(f"pancyclic: {prof.pancyclic}" + (f", missing {prof.missing}" if prof.missing else ""))
        return EXIT_OK
    print(c if c is not None else "none")
    return EXIT_OK


def cmd_factor(args) -> int:
    D = _load(args.input)
    F = extract_cycle_factor(D)
    if F is not None:
        print(F)
    else:
        print("no cycle factor; partition witness:")
        print(extract_partition_witness(D))
    return EXIT_OK


def cmd_generate(args) -> int:
    text = serialize(generate(args.family))
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"unknown theorem id {args.theorem!r}; known: {', '.join(THEOREM_IDS)}")
    reports = [verify(args.theorem, s, threads=args.threads, out_dir=args.out) for s in _scopes(args)]
    return _emit_reports(reports, args)


def cmd_explore(args) -> int:
    if args.problem == "1.17":
        reports = [explore_problem_1_17(s, threads=args.threads, out_dir=args.out) for s in _scopes(args)]
        return _emit_reports(reports, args)
    top = args.n_max if args.n_max is not None else args.n
    if args.problem == "remark":
        found = {}
        for n in range(args.n, top + 1):
            D = find_remark_witness(n)
            if D is None:
                print(f"n={n}: no witness exists in the search space", file=sys.stderr)
                continue
            found[n] = serialize(D)
            print(f"n={n}: strong, not 2-strong, one non-adjacent pair, non-Hamiltonian:")
            sys.stdout.write(found[n])
            if args.out:
                args.out.mkdir(parents=True, exist_ok=True)
                (args.out / f"remark-{n}.dg").write_text(found[n])
        if args.report:
            args.report.write_text(json.dumps({"remark_witnesses": found}, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    exhibits = sharpness_search(n_max=top, n_min=args.n)
    rows = []
    for i, e in enumerate(exhibits):
        print(f"n={e.digraph.order} |Y|,|Z|,|R1|,|R2|={e.shape}: 2-strong, no cycle factor, "
              f"smallest two-pair sum {e.min_pair_pair_sum} (4n-4 = {4 * e.digraph.order - 4})")
        rows.append({"shape": list(e.shape), "digraph": serialize(e.digraph), "min_pair_pair_sum": e.min_pair_pair_sum})
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"sharpness-{i}.dg").write_text(serialize(e.digraph))
    if not exhibits:
        print("no sharpness exhibit in range")
    if args.report:
        args.report.write_text(json.dumps({"sharpness_exhibits": rows}, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "factor": cmd_factor,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "explore": cmd_explore,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DigraphError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"hamlab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
