"""Command-line front end.

Subcommands::

    hsplearn bounds   --gsp 2,8,1 [--gsp ...] [--rahsp 2^3:1,3^3:1 ...]
    hsplearn learn    (--gsp p,n,k | --rahsp ... | --instance FILE)
                      [--seed S] [--delta D] [--trials N] [--early-stop]
    hsplearn sweep    (--gsp p,n,k ... | --gsp-range p,LO..HI,k ...) [--trials T] [--out CSV]
    hsplearn enumerate --gsp p,n,k
    hsplearn selftest  [--seed S]

Exit codes: 0 success, 1 selftest/I-O failure, 2 parameter error,
3 capacity guard.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .bounds import binary_entropy, gsp_theta, lower_bound
from .bruteforce import consistent_subgroups
from .errors import CapacityError, DomainError
from .experiments import bounds_table, run_trial, rows_to_csv, sweep
from .formats import format_subgroup, load_instance
from .groups import AbelianGroup, TableGroup
from .learner import learn, plan, plan_for
from .oracle import HspInstance, MeteredSampler, random_instance
from .rng import stream
from .subgroups import (
    ExplicitFamily,
    RankFamily,
    enumerate_subgroups,
    is_subgroup_of,
    span,
    subgroup_count,
)


def _parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected p,n,k but got {text!r}")
    try:
        p, n, k = (int(v) for v in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return p, n, k


def _parse_rahsp(text: str) -> tuple[tuple[int, int, int], ...]:
    out = []
    for part in text.split(","):
        try:
            base, k = part.split(":")
            p, n = base.split("^")
            out.append((int(p), int(n), int(k)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"expected p^n:k[,p^n:k...] but got {text!r}"
            ) from None
    return tuple(out)


def _parse_range(text: str) -> list[tuple[int, int, int]]:
    try:
        p_text, n_text, k_text = text.split(",")
        p, k = int(p_text), int(k_text)
        if ".." in n_text:
            lo, hi = (int(v) for v in n_text.split(".."))
        else:
            lo = hi = int(n_text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected p,LO..HI,k but got {text!r}"
        ) from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range in {text!r}")
    return [(p, n, k) for n in range(lo, hi + 1)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsplearn",
        description="Hidden-subgroup sample algorithm, bounds, and experiments.",
    )
    parser.add_argument("--version", action="version", version=f"hsplearn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="print lower/upper/theta bound table")
    p_bounds.add_argument("--gsp", action="append", type=_parse_triple, default=[],
                          metavar="p,n,k")
    p_bounds.add_argument("--rahsp", action="append", type=_parse_rahsp, default=[],
                          metavar="p^n:k,...")

    p_learn = sub.add_parser("learn", help="run learning trials and report success")
    p_learn.add_argument("--gsp", type=_parse_triple, metavar="p,n,k")
    p_learn.add_argument("--rahsp", type=_parse_rahsp, metavar="p^n:k,...")
    p_learn.add_argument("--instance", metavar="FILE", help="instance file to load")
    p_learn.add_argument("--seed", type=int, default=0)
    p_learn.add_argument("--delta", type=float, default=1 / 3)
    p_learn.add_argument("--trials", type=int, default=1,
                         help="Monte-Carlo trials (1 also prints the subgroup)")
    p_learn.add_argument("--early-stop", action="store_true",
                         help="opt-in: stop once the span reaches the family order")

    p_sweep = sub.add_parser("sweep", help="run a GSP grid and emit CSV")
    p_sweep.add_argument("--gsp", action="append", type=_parse_triple, default=[],
                         metavar="p,n,k")
    p_sweep.add_argument("--gsp-range", action="append", type=_parse_range, default=[],
                         metavar="p,LO..HI,k")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--delta", type=float, default=1 / 3)
    p_sweep.add_argument("--trials", type=int, default=100)
    p_sweep.add_argument("--out", metavar="PATH", help="CSV path (default: stdout)")

    p_enum = sub.add_parser("enumerate", help="list all rank-k subgroups of Z_p^n")
    p_enum.add_argument("--gsp", type=_parse_triple, required=True, metavar="p,n,k")

    p_self = sub.add_parser("selftest", help="quick built-in verification")
    p_self.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_bounds(args) -> int:
    items = [[triple] for triple in args.gsp] + [list(params) for params in args.rahsp]
    if not items:
        print("bounds: provide at least one --gsp or --rahsp", file=sys.stderr)
        return 2
    sys.stdout.write(bounds_table(items))
    return 0


def _run_instance_trial(instance, args, trial: int):
    run_plan = plan_for(instance.family, args.delta)
    sampler = MeteredSampler(instance, stream(args.seed, "learn", trial, "draw"))
    learned = learn(
        sampler,
        run_plan,
        instance.group,
        stream(args.seed, "learn", trial, "select"),
        early_stop=args.early_stop,
        family=instance.family if args.early_stop else None,
    )
    return run_plan, sampler.count, learned


def _cmd_learn(args) -> int:
    sources = [s for s in (args.gsp, args.rahsp, args.instance) if s]
    if len(sources) != 1:
        print("learn: provide exactly one of --gsp, --rahsp, --instance", file=sys.stderr)
        return 2
    if args.trials < 1:
        print("learn: --trials must be >= 1", file=sys.stderr)
        return 2
    params = None
    if not args.instance:
        params = [args.gsp] if args.gsp else list(args.rahsp)

    wins = contained = 0
    run_plan = samples = learned = instance = None
    for trial in range(args.trials):
        if params is not None:
            # fresh instance per trial, matching the Monte-Carlo harness
            result = run_trial(params, trial, args.seed, args.delta,
                               early_stop=args.early_stop)
            learned, hidden, samples = result.learned, result.hidden, result.samples
            wins += result.success
            contained += result.contained
            if run_plan is None:
                instance = random_instance(params, stream(args.seed, "inst", trial))
                run_plan = plan_for(instance.family, args.delta)
        else:
            # fixed instance from file, fresh example streams per trial
            if instance is None:
                instance = load_instance(args.instance)
            run_plan, samples, learned = _run_instance_trial(instance, args, trial)
            hidden = instance.hidden
            wins += learned == hidden
            contained += is_subgroup_of(learned, hidden)

    print(f"group: {instance.group!r}")
    print(
        f"plan: A={run_plan.A} B={run_plan.B} rounds={run_plan.rounds_per_iteration} "
        f"iterations={run_plan.iterations}"
    )
    print(f"samples_used: {samples}")
    if args.trials == 1:
        print("learned subgroup:")
        sys.stdout.write(format_subgroup(learned))
        print(f"matches_hidden: {'yes' if wins else 'no'}")
        print(f"contained_in_hidden: {'yes' if contained else 'no'}")
    else:
        print(f"trials: {args.trials}")
        print(f"successes: {wins}")
        print(f"success_rate: {wins / args.trials:.6g}")
        print(f"one_sided_ok: {contained}/{args.trials}")
    return 0


def _cmd_sweep(args) -> int:
    grid = list(args.gsp)
    for chunk in args.gsp_range:
        grid.extend(chunk)
    rows = sweep(grid, args.delta, args.trials, args.seed, out_path=args.out)
    if args.out is None:
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _cmd_enumerate(args) -> int:
    p, n, k = args.gsp
    subgroups = enumerate_subgroups(p, n, k)
    assert len(subgroups) == subgroup_count(p, n, k)
    for subgroup in subgroups:
        sys.stdout.write(format_subgroup(subgroup))
    print(f"count={len(subgroups)}")
    return 0


def _promise_ok(instance) -> bool:
    group = instance.group
    elems = list(group.elements())
    labels = [instance.label(x) for x in elems]
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            in_h = instance.hidden.contains(group.mul(group.inv(x), y))
            if (labels[i] == labels[j]) != in_h:
                return False
    return len(set(labels)) == group.order // instance.hidden.order


def _cmd_selftest(args) -> int:
    failures = 0

    def check(name: str, ok: bool):
        nonlocal failures
        print(f"selftest: {name}: {'ok' if ok else 'FAIL'}")
        failures += not ok

    check("subgroup count (2,4,2) = 35", subgroup_count(2, 4, 2) == 35
          and len(enumerate_subgroups(2, 4, 2)) == 35)
    check("subgroup count (3,3,1) = 13", subgroup_count(3, 3, 1) == 13)

    p371 = plan(8, 1, 1 / 3)
    check("plan(8,1,1/3) totals 371 samples",
          (p371.A, p371.B, p371.iterations, p371.total_examples) == (26, 3, 7, 371))

    # oracle promise, exhaustively, on abelian and non-abelian instances
    g16 = AbelianGroup([(2, 4)])
    abelian_ok = _promise_ok(
        HspInstance(g16, span(g16, [(1, 0, 1, 1), (0, 1, 1, 0)]),
                    RankFamily(g16, (2,)), salt=args.seed)
    )
    check("promise holds on Z2^4", abelian_ok)
    half = 4
    dihedral = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            i, f = a % half, a // half
            j, g = b % half, b // half
            rot = (i + (j if f == 0 else -j)) % half
            dihedral[a][b] = rot + half * (f ^ g)
    d4 = TableGroup(dihedral)
    d4_ok = all(
        _promise_ok(HspInstance(d4, hidden, ExplicitFamily([hidden]), salt=args.seed))
        for hidden in (span(d4, [1]), span(d4, [4]), span(d4, [2, 4]))
    )
    check("promise holds on dihedral order 8", d4_ok)

    inst = random_instance([(2, 4, 1)], stream(args.seed, "selftest-inst"))
    sampler = MeteredSampler(inst, stream(args.seed, "selftest-draw"))
    _, labels = sampler.draw_batch(40000)
    collide = (labels[0::2] == labels[1::2]).mean()
    check("collision rate 1/8 +- 0.02 on GSP(2,4,1)", abs(collide - 0.125) <= 0.02)

    inst6 = random_instance([(2, 6, 1)], stream(args.seed, "selftest-c8"))
    plan6 = plan_for(inst6.family, 1 / 3)
    sampler6 = MeteredSampler(inst6, stream(args.seed, "selftest-c8-draw"))
    rounds = 3000
    _, labels6 = sampler6.draw_batch((plan6.A + plan6.B) * rounds)
    labels6 = labels6.reshape(rounds, plan6.A + plan6.B)
    hits = sum(
        bool(np.isin(row[plan6.A:], row[:plan6.A]).any()) for row in labels6
    )
    check(f"probe-round collision rate {hits}/{rounds} >= 0.72", hits / rounds >= 0.72)

    trials = 60
    wins = 0
    one_sided = True
    for t in range(trials):
        result = run_trial([(2, 5, 1)], t, args.seed, 1 / 3)
        wins += result.success
        one_sided &= result.contained
    check(f"learn success {wins}/{trials} >= 2/3 on GSP(2,5,1)", wins / trials >= 2 / 3)
    check("one-sided error in all trials", one_sided)

    simon3 = lower_bound(RankFamily(AbelianGroup([(2, 3)]), (1,)))
    check("lower bound (Simon n=3) = 2.370 +- 0.001", abs(simon3 - 2.370) <= 1e-3)
    check("theta(3,5,2) = 7.348 +- 0.001", abs(gsp_theta(3, 5, 2) - 7.348) <= 1e-3)
    sweep_ok = all(
        -(1 - q) * math.log2(1 - q) <= -q * math.log2(q) + 1e-15
        and binary_entropy(q) <= 2 * q * math.log2(1 / q) + 1e-12
        for q in (0.001 * i for i in range(1, 501))
    )
    check("entropy inequality sweep: 0 violations", sweep_ok)

    candidates = enumerate_subgroups(2, 3, 1)
    bf_ok = True
    for t in range(30):
        simon = random_instance([(2, 3, 1)], stream(args.seed, "selftest-bf", t))
        bf_plan = plan_for(simon.family, 1 / 3)
        rec = MeteredSampler(simon, stream(args.seed, "selftest-bf-d", t), record=True)
        learned = learn(rec, bf_plan, simon.group,
                        stream(args.seed, "selftest-bf-s", t))
        survivors = consistent_subgroups(rec.recorded(), candidates)
        bf_ok &= simon.hidden in survivors
        if len(survivors) == 1:
            bf_ok &= learned == survivors[0]
    check("brute-force consistency agrees with learner (Simon n=3)", bf_ok)

    rows = sweep([(2, n, 1) for n in range(6, 11)], 1 / 3, 0, args.seed)
    ratios = [row.ratio for row in rows]
    xs = [row.n - row.k for row in rows]
    ys = [math.log2(row.samples_used) for row in rows]
    slope = float(np.polyfit(xs, ys, 1)[0])
    check(
        f"theta scaling: band {max(ratios)/min(ratios):.2f} <= 8, slope {slope:.2f}",
        max(ratios) / min(ratios) <= 8 and abs(slope - 0.5) <= 0.1,
    )

    return 1 if failures else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bounds": _cmd_bounds,
        "learn": _cmd_learn,
        "sweep": _cmd_sweep,
        "enumerate": _cmd_enumerate,
        "selftest": _cmd_selftest,
    }
    try:
        return handlers[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
