"""Exhaustive ground truth for tiny instances.

Filters candidate subgroups against observed examples by the collision
pattern alone (which carries all the usable information an example sequence
has about the hidden subgroup) and probes empirical minimum sample counts by
full enumeration.  Everything here is deliberately brute force and guarded to
small sizes: it exists to validate the learner and to derive expected test
values, not to be fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError
from .oracle import Example

BRUTE_FORCE_ORDER_CAP = 256


@dataclass(frozen=True)
class CollisionPattern:
    """The partition of observed points induced by label equality.

    ``assignments`` lists ``(point, class_index)`` in observation order with
    class indices dense from 0 by first appearance.
    """

    assignments: tuple[tuple[object, int], ...]

    @classmethod
    def from_examples(cls, examples) -> "CollisionPattern":
        ids: dict[int, int] = {}
        out = []
        for ex in examples:
            cid = ids.setdefault(ex.label, len(ids))
            out.append((ex.point, cid))
        return cls(tuple(out))

    @property
    def n_classes(self) -> int:
        return 1 + max((cid for _, cid in self.assignments), default=-1)

    def classes(self) -> list[list]:
        out: list[list] = [[] for _ in range(self.n_classes)]
        for point, cid in self.assignments:
            out[cid].append(point)
        return out


def consistent_subgroups(examples, candidates) -> list:
    """Candidates whose coset structure explains every observed (non-)collision.

    A candidate H survives iff for all observed pairs label equality holds
    exactly when the pair's quotient lies in H.  With zero examples every
    candidate survives; an empty result signals corrupted examples.

    Only quotients against one representative per label class and between
    class representatives are checked; the remaining pairs follow by
    composition inside H.
    """
    candidates = list(candidates)
    if not candidates:
        raise DomainError("candidates must be nonempty")
    group = candidates[0].group
    reps: dict[int, object] = {}
    same_class: list[object] = []
    for ex in examples:
        if ex.label in reps:
            same_class.append(group.mul(group.inv(reps[ex.label]), ex.point))
        else:
            reps[ex.label] = ex.point
    class_reps = list(reps.values())
    cross_class = [
        group.mul(group.inv(class_reps[i]), class_reps[j])
        for i in range(len(class_reps))
        for j in range(i + 1, len(class_reps))
    ]
    same_arr = np.asarray(same_class, dtype=np.int64) if same_class else None
    cross_arr = np.asarray(cross_class, dtype=np.int64) if cross_class else None
    out = []
    for h in candidates:
        if same_arr is not None and not h.contains_points(same_arr).all():
            continue
        if cross_arr is not None and h.contains_points(cross_arr).any():
            continue
        out.append(h)
    return out


def min_samples_exhaustive(instance, rng, target_success: float, trials: int,
                           max_examples: int = 1024) -> int:
    """Smallest T for which T examples plus exhaustive filtering hit the target.

    For each T, runs ``trials`` independent draws of T uniform examples,
    keeps the consistent candidates, answers with a uniformly random one, and
    returns the first T whose empirical success rate reaches
    ``target_success``.
    """
    if instance.group.order > BRUTE_FORCE_ORDER_CAP:
        raise CapacityError(
            f"exhaustive probe capped at order {BRUTE_FORCE_ORDER_CAP}"
        )
    candidates = instance.family.enumerate()
    group = instance.group
    for t in range(1, max_examples + 1):
        successes = 0
        for _ in range(trials):
            points = group.draw_points(rng, t)
            labels = instance.label_points(points)
            examples = [
                Example(group.element_of(row), int(lab))
                for row, lab in zip(points, labels)
            ]
            survivors = consistent_subgroups(examples, candidates)
            if survivors:
                pick = survivors[int(rng.integers(len(survivors)))]
                if pick == instance.hidden:
                    successes += 1
        if successes / trials >= target_success:
            return t
    raise CapacityError(f"no T <= {max_examples} reached success {target_success}")
