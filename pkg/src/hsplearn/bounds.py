"""Closed-form sample-complexity bound evaluators.

All logarithms are base 2.  Counts (group orders, family sizes, index
products) stay exact Python integers until the final real-valued evaluation,
so the formulas remain accurate at dimensions well past 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .groups import is_prime


def _sqrt_int(x: int) -> float:
    """Double-precision square root of a possibly huge integer.

    Integers beyond float range are rescaled by an exact power of four;
    results beyond float range come back as ``inf``.
    """
    if x < (1 << 1020):
        return math.sqrt(x)
    shift = (x.bit_length() - 1000 + 1) // 2 * 2
    try:
        return math.ldexp(math.sqrt(x >> shift), shift // 2)
    except OverflowError:
        return math.inf


def binary_entropy(q: float) -> float:
    """``-q log2 q - (1-q) log2(1-q)``, with the limits at 0 and 1 set to 0."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"entropy argument must lie in [0, 1], got {q}")
    if q in (0.0, 1.0):
        return 0.0
    return -q * math.log2(q) - (1.0 - q) * math.log2(1.0 - q)


def fano_floor(delta: float, family_size: int) -> float:
    """Information floor ``(1 - delta) * log2 |family| - I(delta)``.

    The mutual information any successful bounded-error learner must extract
    from its examples.
    """
    if not 0.0 <= delta < 0.5:
        raise DomainError(f"delta must lie in [0, 1/2), got {delta}")
    if family_size < 2:
        raise DomainError("family must have at least 2 candidates")
    return (1.0 - delta) * math.log2(family_size) - binary_entropy(delta)


def lower_bound(family) -> float:
    """Necessary-examples formula: ``max{min_H L/log(idx), min_H sqrt(idx * L/log(idx))}``.

    ``L = log2 |family|`` and ``idx = |G|/|H|`` ranges over the candidate
    subgroups.  The reported value is the bare formula; asymptotic constants
    are not applied.
    """
    if family.size < 2:
        raise DomainError("lower bound needs a family with at least 2 candidates")
    log_size = math.log2(family.size)
    indices = family.indices()
    if any(idx < 2 for idx in indices):
        raise DomainError("lower bound is undefined for index-1 candidates")
    term1 = min(log_size / math.log2(idx) for idx in indices)
    term2 = min(_sqrt_int(idx) * math.sqrt(log_size / math.log2(idx)) for idx in indices)
    return max(term1, term2)


def upper_bound(family) -> float:
    """Sufficient-examples formula: ``max{sr, sqrt(max_idx * sr)}``."""
    sr = family.sr
    if sr < 1:
        raise DomainError(f"sr must be >= 1, got {sr}")
    return max(float(sr), _sqrt_int(family.max_index * sr))


def gsp_theta(p: int, n: int, k: int) -> float:
    """Tight generalized-Simon rate: ``max{k, sqrt(k * p^(n-k))}``."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not 1 <= k < n:
        raise DomainError(f"need 1 <= k < n, got k={k} n={n}")
    return max(float(k), _sqrt_int(k * p ** (n - k)))


@dataclass(frozen=True)
class BoundReport:
    """Lower/upper example counts for one restricted-abelian parameter set."""

    lower: float
    upper: float
    theta: float | None
    order: int
    family_size: int
    min_subgroup_order: int
    max_subgroup_order: int
    sr: int


def rahsp_bounds(params) -> BoundReport:
    """Evaluate the restricted-abelian bounds for ``[(p_i, n_i, k_i), ...]``.

    lower = ``max{min_i k_i, min_i sqrt(k_i * prod_j p_j^(n_j - k_j))}`` and
    upper = ``max_i max{k_i, sqrt(k_i * prod_j p_j^(n_j - k_j))}``; ``theta``
    is populated for a single component, where the two collapse to the same
    tight formula.
    """
    params = tuple((int(p), int(n), int(k)) for p, n, k in params)
    if not params:
        raise DomainError("at least one component is required")
    seen = set()
    for p, n, k in params:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if not 1 <= k < n:
            raise DomainError(f"need 1 <= k < n, got k={k} n={n} for p={p}")
        if p in seen:
            raise DomainError(f"component primes must be distinct, {p} repeats")
        seen.add(p)
    index_product = math.prod(p ** (n - k) for p, n, k in params)
    ks = [k for _, _, k in params]
    lower = max(float(min(ks)), _sqrt_int(min(ks) * index_product))
    upper = max(float(max(ks)), _sqrt_int(max(ks) * index_product))
    from .subgroups import subgroup_count

    family_size = math.prod(subgroup_count(p, n, k) for p, n, k in params)
    order = math.prod(p**n for p, n, _ in params)
    h_order = math.prod(p**k for p, _, k in params)
    theta = gsp_theta(*params[0]) if len(params) == 1 else None
    return BoundReport(
        lower=lower,
        upper=upper,
        theta=theta,
        order=order,
        family_size=family_size,
        min_subgroup_order=h_order,
        max_subgroup_order=h_order,
        sr=max(ks),
    )
