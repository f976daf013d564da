"""Monte-Carlo experiment harness: single trials, parameter sweeps, bound tables.

Every trial derives its randomness purely from ``(master_seed, purpose,
trial_index)``, so results are independent of execution order and identical
invocations produce byte-identical CSV output.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .bounds import gsp_theta, rahsp_bounds
from .errors import DomainError
from .groups import AbelianGroup, is_prime
from .learner import learn, plan_for
from .oracle import MeteredSampler, random_instance
from .rng import stream
from .subgroups import RankFamily, is_subgroup_of

CSV_HEADER = (
    "p,n,k,delta,A,B,iterations,samples_used,trials,successes,"
    "success_rate,theta,ratio,seed"
)


def normalize_params(params):
    """Accept ``(p, n, k)`` or ``[(p, n, k), ...]`` and return the tuple form."""
    if params and isinstance(params[0], int):
        params = [params]
    return tuple((int(p), int(n), int(k)) for p, n, k in params)


@dataclass(frozen=True)
class TrialResult:
    success: bool
    contained: bool
    samples: int
    learned: object
    hidden: object


def run_trial(params, trial_index: int, master_seed: int, delta: float = 1 / 3,
              early_stop: bool = False) -> TrialResult:
    """One generate-and-learn trial, fully determined by seed and index."""
    params = normalize_params(params)
    instance = random_instance(params, stream(master_seed, "inst", trial_index))
    run_plan = plan_for(instance.family, delta)
    sampler = MeteredSampler(instance, stream(master_seed, "learn", trial_index, "draw"))
    learned = learn(
        sampler,
        run_plan,
        instance.group,
        stream(master_seed, "learn", trial_index, "select"),
        early_stop=early_stop,
        family=instance.family if early_stop else None,
    )
    return TrialResult(
        success=learned == instance.hidden,
        contained=is_subgroup_of(learned, instance.hidden),
        samples=sampler.count,
        learned=learned,
        hidden=instance.hidden,
    )


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep: plan, exact sample count, empirical successes."""

    p: int
    n: int
    k: int
    delta: float
    A: int
    B: int
    iterations: int
    samples_used: int
    trials: int
    successes: int
    success_rate: float
    theta: float
    ratio: float
    seed: int

    def to_csv(self) -> str:
        return ",".join(
            [
                str(self.p),
                str(self.n),
                str(self.k),
                f"{self.delta:.6g}",
                str(self.A),
                str(self.B),
                str(self.iterations),
                str(self.samples_used),
                str(self.trials),
                str(self.successes),
                f"{self.success_rate:.6g}",
                f"{self.theta:.6g}",
                f"{self.ratio:.6g}",
                str(self.seed),
            ]
        )


def run_grid_point(p: int, n: int, k: int, delta: float, trials: int,
                   master_seed: int) -> SweepRow:
    theta = gsp_theta(p, n, k)
    # the plan depends only on (p, n, k, delta), so sample use is a constant
    run_plan = plan_for(RankFamily(AbelianGroup([(p, n)]), [k]), delta)
    samples = run_plan.total_examples
    successes = 0
    for t in range(trials):
        result = run_trial([(p, n, k)], t, master_seed, delta)
        successes += result.success
        if result.samples != samples:
            raise AssertionError("sample consumption must be deterministic")
    return SweepRow(
        p=p,
        n=n,
        k=k,
        delta=delta,
        A=run_plan.A,
        B=run_plan.B,
        iterations=run_plan.iterations,
        samples_used=samples,
        trials=trials,
        successes=successes,
        success_rate=successes / trials if trials else 0.0,
        theta=theta,
        ratio=samples / theta,
        seed=master_seed,
    )


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [row.to_csv() for row in rows]) + "\n"


def sweep(grid, delta: float, trials: int, master_seed: int,
          out_path=None) -> list[SweepRow]:
    """Run every (p, n, k) grid point and optionally write the CSV.

    The whole grid is validated up front so a bad point fails before any row
    is produced.
    """
    grid = [tuple(int(v) for v in point) for point in grid]
    for point in grid:
        if len(point) != 3:
            raise DomainError(f"grid point {point} is not (p, n, k)")
        p, n, k = point
        if not is_prime(p) or not 1 <= k < n:
            raise DomainError(f"invalid grid point (p={p}, n={n}, k={k})")
    rows = [run_grid_point(p, n, k, delta, trials, master_seed) for p, n, k in grid]
    if out_path is not None:
        Path(out_path).write_text(rows_to_csv(rows), encoding="utf-8", newline="\n")
    return rows


def format_params(params) -> str:
    params = normalize_params(params)
    if len(params) == 1:
        p, n, k = params[0]
        return f"GSP(p={p},n={n},k={k})"
    return "rAHSP(" + ",".join(f"{p}^{n}:{k}" for p, n, k in params) + ")"


def bounds_table(param_sets) -> str:
    """Text table of lower/upper/theta for each parameter set."""
    rows = [("problem", "lower", "upper", "theta")]
    for params in param_sets:
        report = rahsp_bounds(normalize_params(params))
        theta = f"{report.theta:.6g}" if report.theta is not None else "-"
        rows.append(
            (format_params(params), f"{report.lower:.6g}", f"{report.upper:.6g}", theta)
        )
    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"
