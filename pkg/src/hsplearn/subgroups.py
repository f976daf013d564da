"""Subgroups: canonical echelon bases, span, rank, counting, sampling, families.

Abelian subgroups are stored per prime component as a reduced-echelon basis
(columns generate, pivot residues are 1, pivot rows are zero elsewhere).  The
form is canonical, so two equal subgroups compare byte-identical, and reducing
a point against the basis yields the unique coset representative with zeros at
the pivot coordinates.  Table subgroups are explicit element sets closed under
the group operation.  Subgroups and family descriptors are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import CapacityError, DomainError, GroupMismatchError
from .groups import AbelianGroup, TableGroup, is_prime

SUBGROUP_ENUMERATION_CAP = 10**6
TABLE_RANK_CAP = 256
ELEMENT_ENUMERATION_CAP = 4096


def _rref_mod_p(p: int, rows: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over F_p.

    ``rows`` is an ``(m, n)`` int array; returns the ``(k, n)`` nonzero rows
    and the pivot columns.  The output is the canonical basis of the row span.
    """
    a = np.array(rows, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


class AbelianSubgroup:
    """A subgroup of an :class:`AbelianGroup`, one subspace per prime component.

    ``bases[i]`` is an ``(n_i, k_i)`` matrix over ``F_{p_i}`` whose columns
    generate component ``i``; the constructor canonicalizes arbitrary
    generating columns, so equal subgroups always compare equal.
    """

    def __init__(self, group: AbelianGroup, bases):
        if not isinstance(group, AbelianGroup):
            raise GroupMismatchError("AbelianSubgroup requires an AbelianGroup")
        bases = tuple(bases)
        if len(bases) != len(group.components):
            raise GroupMismatchError(
                f"expected {len(group.components)} component bases, got {len(bases)}"
            )
        self.group = group
        canon = []
        pivots = []
        for (p, n), mat in zip(group.components, bases):
            mat = np.asarray(mat, dtype=np.int64).reshape(n, -1)
            rows, piv = _rref_mod_p(p, mat.T)
            basis = np.ascontiguousarray(rows.T)
            basis.setflags(write=False)
            canon.append(basis)
            pivots.append(piv)
        self.bases = tuple(canon)
        self.pivots = tuple(pivots)
        self.ranks = tuple(b.shape[1] for b in self.bases)
        self.order = math.prod(p**k for (p, _), k in zip(group.components, self.ranks))
        self.rank = max(self.ranks)

        total = sum(self.ranks)
        flat = np.zeros((group.dims, total), dtype=np.int64)
        flat_piv = np.empty(total, dtype=np.int64)
        at = 0
        for sl, basis, piv in zip(group.component_slices, self.bases, self.pivots):
            k = basis.shape[1]
            flat[sl, at : at + k] = basis
            flat_piv[at : at + k] = np.asarray(piv, dtype=np.int64) + sl.start
            at += k
        flat.setflags(write=False)
        flat_piv.setflags(write=False)
        self._flat_basis = flat
        self._flat_pivots = flat_piv
        self._key = (group, tuple(b.shape for b in self.bases), b"".join(b.tobytes() for b in self.bases))

    def reduce_points(self, points: np.ndarray) -> np.ndarray:
        """Canonical coset representative of every row of ``points``."""
        points = np.asarray(points, dtype=np.int64)
        if self._flat_basis.shape[1] == 0:
            return points % self.group.moduli
        coeff = points[:, self._flat_pivots]
        return (points - coeff @ self._flat_basis.T) % self.group.moduli

    def contains_points(self, points: np.ndarray) -> np.ndarray:
        return ~self.reduce_points(points).any(axis=1)

    def contains(self, x) -> bool:
        self.group.check_element(x)
        return bool(self.contains_points(np.asarray([x], dtype=np.int64))[0])

    def coset_representative(self, x) -> tuple:
        self.group.check_element(x)
        return tuple(int(v) for v in self.reduce_points(np.asarray([x], dtype=np.int64))[0])

    def generators(self) -> list[tuple]:
        """Canonical generating set: the flat basis columns as elements."""
        return [tuple(int(v) for v in col) for col in self._flat_basis.T]

    def elements(self):
        """Iterate all elements (guarded; intended for small subgroups)."""
        if self.order > ELEMENT_ENUMERATION_CAP:
            raise CapacityError(
                f"refusing to enumerate {self.order} elements (cap {ELEMENT_ENUMERATION_CAP})"
            )
        col_mod = np.repeat(
            [p for p, _ in self.group.components], self.ranks
        ).astype(np.int64)
        moduli = self.group.moduli
        for coeff in itertools.product(*(range(int(m)) for m in col_mod)):
            vec = (self._flat_basis @ np.asarray(coeff, dtype=np.int64)) % moduli
            yield tuple(int(v) for v in vec)

    def is_subgroup_of(self, other: "AbelianSubgroup") -> bool:
        if not isinstance(other, AbelianSubgroup) or other.group != self.group:
            raise GroupMismatchError("subgroups live in different groups")
        if self._flat_basis.shape[1] == 0:
            return True
        return bool(other.contains_points(self._flat_basis.T).all())

    def __eq__(self, other):
        return isinstance(other, AbelianSubgroup) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"AbelianSubgroup(ranks={self.ranks}, order={self.order})"


class TableSubgroup:
    """A subgroup of a :class:`TableGroup` as an explicit element set."""

    def __init__(self, group: TableGroup, elements):
        if not isinstance(group, TableGroup):
            raise GroupMismatchError("TableSubgroup requires a TableGroup")
        elems = sorted({group.check_element(x) for x in elements})
        if not elems:
            elems = [group.identity]
        idx = np.asarray(elems, dtype=np.int64)
        if group.identity not in elems:
            raise DomainError("subgroup must contain the identity")
        sub = group.table[np.ix_(idx, idx)]
        if not np.isin(sub, idx).all():
            raise DomainError("element set is not closed under the group operation")
        if not np.isin(group.inverse_table[idx], idx).all():
            raise DomainError("element set is not closed under inverses")
        self.group = group
        self._elements = tuple(elems)
        self._index = idx
        self._member = np.zeros(group.order, dtype=bool)
        self._member[idx] = True
        self.order = len(elems)
        self._rank = None

    @property
    def rank(self) -> int:
        """Minimal generating-set size, by search over sets of increasing size."""
        if self._rank is None:
            self._rank = _table_rank(self.group, self._elements)
        return self._rank

    def reduce_points(self, points: np.ndarray) -> np.ndarray:
        """Minimum element index of each point's left coset ``xH``."""
        points = np.asarray(points, dtype=np.int64)
        out = np.empty(points.shape[0], dtype=np.int64)
        chunk = max(1, (1 << 20) // max(1, self.order))
        for at in range(0, points.shape[0], chunk):
            block = points[at : at + chunk]
            out[at : at + chunk] = self.group.table[np.ix_(block, self._index)].min(axis=1)
        return out

    def contains_points(self, points: np.ndarray) -> np.ndarray:
        return self._member[np.asarray(points, dtype=np.int64)]

    def contains(self, x) -> bool:
        return bool(self._member[self.group.check_element(x)])

    def coset_representative(self, x) -> int:
        self.group.check_element(x)
        return int(self.reduce_points(np.asarray([x], dtype=np.int64))[0])

    def generators(self) -> list[int]:
        size = self.rank
        if size == 0:
            return []
        for combo in itertools.combinations([e for e in self._elements if e != self.group.identity], size):
            if len(_closure_indices(self.group, combo)) == self.order:
                return list(combo)
        raise AssertionError("rank search and generator search disagree")

    def elements(self):
        return iter(self._elements)

    def is_subgroup_of(self, other: "TableSubgroup") -> bool:
        if not isinstance(other, TableSubgroup) or other.group != self.group:
            raise GroupMismatchError("subgroups live in different groups")
        return set(self._elements) <= set(other._elements)

    def __eq__(self, other):
        return (
            isinstance(other, TableSubgroup)
            and self.group == other.group
            and self._elements == other._elements
        )

    def __hash__(self):
        return hash((self.group, self._elements))

    def __repr__(self):
        return f"TableSubgroup(order={self.order})"


def _closure_indices(group: TableGroup, seeds) -> set[int]:
    mem = {group.identity}
    queue = []
    for s in seeds:
        s = group.check_element(s)
        if s not in mem:
            mem.add(s)
            queue.append(s)
    i = 0
    table = group.table
    while i < len(queue):
        x = queue[i]
        i += 1
        for y in list(mem):
            for z in (int(table[x, y]), int(table[y, x])):
                if z not in mem:
                    mem.add(z)
                    queue.append(z)
    return mem


def _table_rank(group: TableGroup, elements) -> int:
    if len(elements) == 1:
        return 0
    if len(elements) > TABLE_RANK_CAP:
        raise CapacityError(f"rank search capped at order {TABLE_RANK_CAP}")
    candidates = [e for e in elements if e != group.identity]
    target = set(elements)
    for size in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            if _closure_indices(group, combo) == target:
                return size
    raise AssertionError("subgroup not generated by its own elements")


def span(group, elements) -> "AbelianSubgroup | TableSubgroup":
    """Smallest subgroup of ``group`` containing ``elements``."""
    if isinstance(group, AbelianGroup):
        vecs = [group.check_element(x) for x in elements]
        mats = []
        for sl, (p, n) in zip(group.component_slices, group.components):
            if vecs:
                mats.append(np.asarray([x[sl] for x in vecs], dtype=np.int64).T)
            else:
                mats.append(np.zeros((n, 0), dtype=np.int64))
        return AbelianSubgroup(group, mats)
    if isinstance(group, TableGroup):
        return TableSubgroup(group, _closure_indices(group, elements))
    raise GroupMismatchError(f"unsupported group type {type(group).__name__}")


def trivial_subgroup(group):
    return span(group, [])


def full_subgroup(group):
    if isinstance(group, AbelianGroup):
        bases = [np.eye(n, dtype=np.int64) for _, n in group.components]
        return AbelianSubgroup(group, bases)
    return TableSubgroup(group, range(group.order))


def is_subgroup_of(inner, outer) -> bool:
    return inner.is_subgroup_of(outer)


def index(group, subgroup) -> int:
    """The index |G|/|H| (exact, by Lagrange)."""
    if subgroup.group != group:
        raise GroupMismatchError("subgroup does not belong to this group")
    return group.order // subgroup.order


def subgroup_count(p: int, n: int, k: int) -> int:
    """Number of rank-k subgroups of Z_p^n: the Gaussian binomial.

    ``prod_{j<k} (p^n - p^j) / (p^k - p^j)``, evaluated exactly.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got k={k} n={n}")
    num = math.prod(p**n - p**j for j in range(k))
    den = math.prod(p**k - p**j for j in range(k))
    return num // den if k else 1


def _enumerate_component_bases(p: int, n: int, k: int):
    """Yield every canonical (n, k) echelon basis of a rank-k subspace of F_p^n."""
    for piv in itertools.combinations(range(n), k):
        piv_set = set(piv)
        free = [
            (i, c)
            for i in range(k)
            for c in range(n)
            if c not in piv_set and c > piv[i]
        ]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(piv):
                rows[i, c] = 1
            for (i, c), v in zip(free, vals):
                rows[i, c] = v
            yield rows.T, piv


def enumerate_subgroups(p: int, n: int, k: int) -> list[AbelianSubgroup]:
    """All rank-k subgroups of Z_p^n, each exactly once, in canonical order."""
    count = subgroup_count(p, n, k)
    if count > SUBGROUP_ENUMERATION_CAP:
        raise CapacityError(
            f"{count} subgroups exceed the enumeration cap {SUBGROUP_ENUMERATION_CAP}"
        )
    group = AbelianGroup([(p, n)])
    return [AbelianSubgroup(group, [basis]) for basis, _ in _enumerate_component_bases(p, n, k)]


def _random_full_rank(p: int, n: int, k: int, rng: np.random.Generator):
    """Rejection-sample an (n, k) matrix over F_p with full column rank."""
    attempts = 0
    while True:
        attempts += 1
        mat = rng.integers(0, p, size=(n, k), dtype=np.int64)
        _, piv = _rref_mod_p(p, mat.T)
        if len(piv) == k:
            return mat, attempts


def uniform_random_subgroup(p: int, n: int, k: int, rng: np.random.Generator) -> AbelianSubgroup:
    """Uniformly random rank-k subgroup of Z_p^n.

    Column spaces of uniform full-column-rank matrices are uniform over
    rank-k subspaces, since every subspace has the same number of ordered
    bases.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not 1 <= k < n:
        raise DomainError(f"need 1 <= k < n, got k={k} n={n}")
    mat, _ = _random_full_rank(p, n, k, rng)
    return AbelianSubgroup(AbelianGroup([(p, n)]), [mat])


class RankFamily:
    """The candidate family of all componentwise products with fixed ranks.

    For a group ``prod Z_{p_i}^{n_i}`` and ranks ``k_i`` this is every
    subgroup of the form ``H_1 x ... x H_m`` with ``rank(H_i) = k_i``.  All
    members share one order, so the index |G|/|H| is a single number.
    """

    def __init__(self, group: AbelianGroup, ranks):
        if not isinstance(group, AbelianGroup):
            raise GroupMismatchError("RankFamily requires an AbelianGroup")
        ranks = tuple(int(k) for k in ranks)
        if len(ranks) != len(group.components):
            raise DomainError(
                f"expected {len(group.components)} ranks, got {len(ranks)}"
            )
        for (p, n), k in zip(group.components, ranks):
            if not 0 <= k <= n:
                raise DomainError(f"rank {k} out of range for Z{p}^{n}")
        self.group = group
        self.ranks = ranks
        self.size = math.prod(
            subgroup_count(p, n, k) for (p, n), k in zip(group.components, ranks)
        )
        self.member_order = math.prod(p**k for (p, _), k in zip(group.components, ranks))
        self.index = group.order // self.member_order
        self.sr = max(1, max(ranks))

    @property
    def max_index(self) -> int:
        return self.index

    @property
    def min_index(self) -> int:
        return self.index

    def indices(self) -> tuple[int, ...]:
        return (self.index,)

    @property
    def member_orders(self) -> tuple[int, ...]:
        return (self.member_order,)

    def contains_subgroup(self, subgroup) -> bool:
        return (
            isinstance(subgroup, AbelianSubgroup)
            and subgroup.group == self.group
            and subgroup.ranks == self.ranks
        )

    def enumerate(self) -> list[AbelianSubgroup]:
        if self.size > SUBGROUP_ENUMERATION_CAP:
            raise CapacityError(
                f"{self.size} members exceed the enumeration cap {SUBGROUP_ENUMERATION_CAP}"
            )
        per_component = [
            [basis for basis, _ in _enumerate_component_bases(p, n, k)]
            for (p, n), k in zip(self.group.components, self.ranks)
        ]
        return [
            AbelianSubgroup(self.group, combo)
            for combo in itertools.product(*per_component)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, RankFamily)
            and self.group == other.group
            and self.ranks == other.ranks
        )

    def __hash__(self):
        return hash((self.group, self.ranks))

    def __repr__(self):
        return f"RankFamily(group={self.group!r}, ranks={self.ranks})"


class ExplicitFamily:
    """A candidate family given as an explicit list of subgroups."""

    def __init__(self, members):
        members = tuple(dict.fromkeys(members))
        if not members:
            raise DomainError("family must be nonempty")
        group = members[0].group
        for h in members:
            if h.group != group:
                raise GroupMismatchError("family members belong to different groups")
        self.group = group
        self.members = members
        self.size = len(members)
        # sr clamped to >= 1 so the probe-round count 9*sr is never zero even
        # for a family of only the trivial subgroup.
        self.sr = max(1, max(h.rank for h in members))
        orders = [h.order for h in members]
        self.max_index = group.order // min(orders)
        self.min_index = group.order // max(orders)

    def indices(self) -> tuple[int, ...]:
        return tuple(sorted({self.group.order // h.order for h in self.members}))

    @property
    def member_orders(self) -> tuple[int, ...]:
        return tuple(sorted({h.order for h in self.members}))

    def contains_subgroup(self, subgroup) -> bool:
        return subgroup in self.members

    def enumerate(self):
        return list(self.members)

    def __repr__(self):
        return f"ExplicitFamily(size={self.size}, sr={self.sr})"
