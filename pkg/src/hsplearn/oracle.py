"""Hidden-subgroup instances: coset-labeling oracles and metered example streams.

The hidden function is realized as a salted 64-bit hash of the canonical
coset representative, so two points get equal labels exactly when they lie in
the same coset while the label bits themselves carry no usable structure.
Exhaustive checks should compare representatives directly
(:meth:`HspInstance.coset_representative`) rather than hashes; with the coset
count capped at ``2**30`` the residual birthday risk of a 64-bit hash is below
``2**-4`` per instance and irrelevant for the statistical tests here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, GroupMismatchError
from .groups import AbelianGroup
from .subgroups import (
    AbelianSubgroup,
    RankFamily,
    _random_full_rank,
    is_prime,
)

INDEX_CAP = 1 << 30
_MASK64 = (1 << 64) - 1

_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_GOLD = np.uint64(0x9E3779B97F4A7C15)


def _mix64(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * _MIX1
        x = (x ^ (x >> np.uint64(27))) * _MIX2
        return x ^ (x >> np.uint64(31))


def _label_rows(salt: int, rows: np.ndarray) -> np.ndarray:
    """Salted 64-bit labels for representative rows, shape ``(m, d)`` -> ``(m,)``."""
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    m, d = rows.shape
    with np.errstate(over="ignore"):
        h = np.full(m, np.uint64(salt) ^ (np.uint64(d) * _GOLD), dtype=np.uint64)
        h = _mix64(h)
        for c in range(d):
            h = _mix64(h ^ (rows[:, c] + np.uint64(c + 1) * _GOLD))
    return h


@dataclass(frozen=True)
class Example:
    """One labeled uniform example ``(x, f(x))``."""

    point: object
    label: int


class HspInstance:
    """A group, a hidden subgroup from a candidate family, and the labeling salt."""

    def __init__(self, group, hidden, family, salt: int):
        if hidden.group != group:
            raise GroupMismatchError("hidden subgroup belongs to a different group")
        if family.group != group:
            raise GroupMismatchError("family belongs to a different group")
        if not family.contains_subgroup(hidden):
            raise DomainError("hidden subgroup is not a member of the candidate family")
        self.group = group
        self.hidden = hidden
        self.family = family
        self.salt = int(salt) & _MASK64
        self.index = group.order // hidden.order
        if self.index > INDEX_CAP:
            raise CapacityError(
                f"index {self.index} exceeds the labeling cap {INDEX_CAP}"
            )

    def representative_points(self, points: np.ndarray) -> np.ndarray:
        return self.hidden.reduce_points(points)

    def coset_representative(self, x):
        return self.hidden.coset_representative(x)

    def label_points(self, points: np.ndarray) -> np.ndarray:
        reps = self.hidden.reduce_points(points)
        if reps.ndim == 1:
            reps = reps[:, None]
        return _label_rows(self.salt, reps)

    def label(self, x) -> int:
        self.group.check_element(x)
        return int(self.label_points(np.asarray([x], dtype=np.int64))[0])

    def __repr__(self):
        return (
            f"HspInstance(group={self.group!r}, hidden={self.hidden!r}, "
            f"index={self.index})"
        )


class MeteredSampler:
    """Metered stream of i.i.d. uniform examples from one instance.

    The counter is the only record of how many examples an algorithm consumed;
    the learner has no other channel to the hidden function.  A sampler is
    single-owner (stateful counter and rng): use one per trial, with streams
    derived from the trial index for parallel work.
    """

    def __init__(self, instance: HspInstance, rng: np.random.Generator, record: bool = False):
        self.instance = instance
        self._rng = rng
        self._count = 0
        self._record = record
        self._rec_points: list[np.ndarray] = []
        self._rec_labels: list[np.ndarray] = []

    @property
    def count(self) -> int:
        return self._count

    def draw_batch(self, size: int) -> tuple[np.ndarray, np.ndarray]:
        points = self.instance.group.draw_points(self._rng, size)
        labels = self.instance.label_points(points)
        self._count += size
        if self._record:
            self._rec_points.append(points)
            self._rec_labels.append(labels)
        return points, labels

    def draw(self) -> Example:
        points, labels = self.draw_batch(1)
        return Example(self.instance.group.element_of(points[0]), int(labels[0]))

    def recorded(self) -> list[Example]:
        """Every example drawn so far (requires ``record=True``)."""
        if not self._record:
            raise DomainError("sampler was created without record=True")
        out = []
        group = self.instance.group
        for points, labels in zip(self._rec_points, self._rec_labels):
            for row, lab in zip(points, labels):
                out.append(Example(group.element_of(row), int(lab)))
        return out

    def recorded_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self._record:
            raise DomainError("sampler was created without record=True")
        if not self._rec_points:
            dims = self.instance.group.dims if isinstance(self.instance.group, AbelianGroup) else None
            shape = (0, dims) if dims is not None else (0,)
            return np.empty(shape, dtype=np.int64), np.empty(0, dtype=np.uint64)
        return np.concatenate(self._rec_points), np.concatenate(self._rec_labels)


class ReplaySampler:
    """Serves a fixed array of pre-drawn examples in order, with the same metering."""

    def __init__(self, group, points: np.ndarray, labels: np.ndarray):
        points = np.asarray(points)
        labels = np.asarray(labels)
        if labels.ndim != 1 or points.shape[0] != labels.shape[0]:
            raise DomainError("points and labels must align on the first axis")
        self.group = group
        self._points = points
        self._labels = labels
        self._count = 0

    @property
    def count(self) -> int:
        return self._count

    def draw_batch(self, size: int) -> tuple[np.ndarray, np.ndarray]:
        end = self._count + size
        if end > self._labels.shape[0]:
            raise DomainError(
                f"replay stream exhausted: requested {end} of {self._labels.shape[0]} examples"
            )
        points = self._points[self._count : end]
        labels = self._labels[self._count : end]
        self._count = end
        return points, labels

    def draw(self) -> Example:
        points, labels = self.draw_batch(1)
        return Example(self.group.element_of(points[0]), int(labels[0]))


def draw_dataset(sampler, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Pull ``size`` examples from a sampler as plain arrays ``(X, y)``."""
    return sampler.draw_batch(size)


def random_instance(params, rng: np.random.Generator) -> HspInstance:
    """Random restricted-abelian instance for components ``[(p, n, k), ...]``.

    The hidden subgroup is a product of independent uniformly random rank-k_i
    subgroups; the candidate family is every subgroup of that shape.
    """
    params = tuple((int(p), int(n), int(k)) for p, n, k in params)
    for p, n, k in params:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if not 1 <= k < n:
            raise DomainError(f"need 1 <= k < n, got k={k} n={n} for p={p}")
    group = AbelianGroup([(p, n) for p, n, _ in params])
    bases = [_random_full_rank(p, n, k, rng)[0] for p, n, k in params]
    hidden = AbelianSubgroup(group, bases)
    family = RankFamily(group, [k for _, _, k in params])
    salt = int(rng.integers(0, 1 << 64, dtype=np.uint64))
    return HspInstance(group, hidden, family, salt)


def gsp_instance(p: int, n: int, k: int, rng: np.random.Generator) -> HspInstance:
    """Random generalized-Simon instance over Z_p^n with hidden rank k."""
    return random_instance([(p, n, k)], rng)


def simon_instance(n: int, rng: np.random.Generator) -> HspInstance:
    """Random classic Simon instance: Z_2^n with a hidden order-2 subgroup."""
    return gsp_instance(2, n, 1, rng)
