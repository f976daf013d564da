"""The collision-based sample algorithm for recovering a hidden subgroup.

One run works in iterations.  Each iteration draws a probe set ``P`` of ``A``
fresh examples, then ``9 * sr`` fresh batches ``Q_i`` of ``B`` examples; when
``P`` and ``Q_i`` share a label, one colliding pair ``(a, b)`` is picked
uniformly among all such pairs and ``a^{-1} b`` (an element of the hidden
subgroup, by the promise) is added to the working set ``W``.  After
``ceil(ln(1/delta) / ln(6/5))`` iterations the span of ``W`` is returned, so
the output is always a subgroup of the true one and equals it with
probability at least ``1 - delta``.

Every run consumes exactly ``(A + 9*B*sr) * iterations`` examples.  ``A`` and
``B`` are sized so that ``A*B >= 9 * max|G|/|H|``, which makes each probe
round collide with probability > 3/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .groups import AbelianGroup
from .oracle import Example
from .subgroups import span


@dataclass(frozen=True)
class LearnerPlan:
    """Sample-budget plan for one learning run."""

    A: int
    B: int
    rounds_per_iteration: int
    iterations: int
    delta: float
    sr: int
    max_index: int

    @property
    def per_iteration_examples(self) -> int:
        return self.A + self.rounds_per_iteration * self.B

    @property
    def total_examples(self) -> int:
        return self.per_iteration_examples * self.iterations


def _ceil_sqrt(x: int) -> int:
    if x <= 0:
        return 0
    return math.isqrt(x - 1) + 1


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    """Smallest b >= 1 with b*b*den >= num."""
    b = max(1, math.isqrt(num // den))
    while b * b * den < num:
        b += 1
    while b > 1 and (b - 1) * (b - 1) * den >= num:
        b -= 1
    return b


def plan(max_index: int, sr: int, delta: float) -> LearnerPlan:
    """Compute A, B and the iteration count for the given family parameters.

    If the index exceeds sr: ``A = ceil(9 * sqrt(max_index * sr))`` and
    ``B = ceil(sqrt(max_index / sr))``; otherwise ``A = 9 * max_index`` and
    ``B = 1``.  Either way ``A*B >= 9*max_index``.  The iteration count is
    ``ceil(ln(1/delta) / ln(6/5))``, hence delta = 0 is unsupported.
    """
    max_index = int(max_index)
    sr = int(sr)
    if max_index < 1:
        raise DomainError(f"max index must be >= 1, got {max_index}")
    if sr < 1:
        raise DomainError(f"sr must be >= 1, got {sr}")
    if not 0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    if max_index > sr:
        a = _ceil_sqrt(81 * max_index * sr)
        b = _ceil_sqrt_ratio(max_index, sr)
    else:
        a = 9 * max_index
        b = 1
    iterations = math.ceil(math.log(1.0 / delta) / math.log(6.0 / 5.0))
    out = LearnerPlan(
        A=a,
        B=b,
        rounds_per_iteration=9 * sr,
        iterations=iterations,
        delta=float(delta),
        sr=sr,
        max_index=max_index,
    )
    assert out.A * out.B >= 9 * max_index
    return out


def plan_for(family, delta: float) -> LearnerPlan:
    """Plan a run against a candidate family descriptor."""
    return plan(family.max_index, family.sr, delta)


@dataclass(frozen=True)
class CollisionPair:
    """A pair of examples with equal labels; ``derived = a^{-1} b`` lies in H."""

    a: Example
    b: Example
    derived: object


def _matching_pairs(labels_p: np.ndarray, labels_q: np.ndarray) -> list[tuple[int, int]]:
    """All index pairs (i, j) with labels_p[i] == labels_q[j]."""
    order = np.argsort(labels_p, kind="stable")
    sorted_p = labels_p[order]
    lo = np.searchsorted(sorted_p, labels_q, side="left")
    hi = np.searchsorted(sorted_p, labels_q, side="right")
    pairs = []
    for j in np.nonzero(hi > lo)[0]:
        for t in range(int(lo[j]), int(hi[j])):
            pairs.append((int(order[t]), int(j)))
    return pairs


def find_collisions(group, probe, batch) -> list[CollisionPair]:
    """Every colliding pair between two example lists, via a label-keyed index."""
    lp = np.asarray([e.label for e in probe], dtype=np.uint64)
    lq = np.asarray([e.label for e in batch], dtype=np.uint64)
    out = []
    for i, j in _matching_pairs(lp, lq):
        a, b = probe[i], batch[j]
        out.append(CollisionPair(a, b, group.mul(group.inv(a.point), b.point)))
    return out


def iteration(sampler, run_plan: LearnerPlan, group, rng: np.random.Generator) -> list:
    """One probe iteration; returns the recovered subgroup elements.

    Consumes exactly ``A + rounds * B`` fresh examples.  A round with no
    collision simply contributes nothing.
    """
    a_size, b_size = run_plan.A, run_plan.B
    rounds = run_plan.rounds_per_iteration
    points, labels = sampler.draw_batch(a_size + rounds * b_size)
    order = np.argsort(labels[:a_size], kind="stable")
    sorted_p = labels[:a_size][order]
    abelian = isinstance(group, AbelianGroup)
    moduli = group.moduli if abelian else None
    out = []
    for i in range(rounds):
        start = a_size + i * b_size
        q_labels = labels[start : start + b_size]
        lo = np.searchsorted(sorted_p, q_labels, side="left")
        hi = np.searchsorted(sorted_p, q_labels, side="right")
        hits = np.nonzero(hi > lo)[0]
        if hits.size == 0:
            continue
        pairs = [
            (int(order[t]), start + int(j))
            for j in hits
            for t in range(int(lo[j]), int(hi[j]))
        ]
        ai, bi = pairs[int(rng.integers(len(pairs)))]
        if abelian:
            out.append(tuple(int(v) for v in (points[bi] - points[ai]) % moduli))
        else:
            out.append(group.mul(group.inv(int(points[ai])), int(points[bi])))
    return out


def _early_stop_order(family) -> int:
    orders = family.member_orders
    if len(orders) != 1:
        raise DomainError("early stopping needs a family with a single member order")
    return orders[0]


def learn(sampler, run_plan: LearnerPlan, group, rng: np.random.Generator,
          *, early_stop: bool = False, family=None):
    """Run the full algorithm and return the span of all recovered elements.

    With ``early_stop=False`` (the contract used everywhere that sample
    counts matter) this consumes exactly ``run_plan.total_examples``
    examples.  ``early_stop=True`` stops as soon as the span reaches the
    family's known member order; it changes the sample count and is opt-in.
    """
    target = None
    if early_stop:
        if family is None:
            raise DomainError("early stopping requires the candidate family")
        target = _early_stop_order(family)
    elements: list = []
    for _ in range(run_plan.iterations):
        elements.extend(iteration(sampler, run_plan, group, rng))
        if target is not None and span(group, elements).order == target:
            break
    return span(group, elements)
