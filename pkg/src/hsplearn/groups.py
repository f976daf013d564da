"""Finite groups with two backends: structured abelian products and lookup tables.

An :class:`AbelianGroup` is a direct product ``Z_{p_1}^{n_1} x ... x
Z_{p_m}^{n_m}`` over pairwise distinct primes; its elements are flat tuples of
residues, the component vectors concatenated in declaration order.  A
:class:`TableGroup` is given by an explicit ``N x N`` multiplication table
over element indices ``0..N-1`` and exists to exercise group-generic code on
small (possibly non-abelian) groups, not to scale.

Both kinds are immutable, hashable, and safe to share between threads.  Batch
operations (``draw_points``) work on integer numpy arrays: shape ``(m, dims)``
of residues for abelian groups, shape ``(m,)`` of indices for table groups.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import CapacityError, DomainError, GroupMismatchError

TABLE_ORDER_CAP = 4096
ASSOC_CHECK_CAP = 256
ENUMERATION_CAP = 1 << 16
AS_TABLE_CAP = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class AbelianGroup:
    """Direct product of ``Z_{p_i}^{n_i}`` over pairwise distinct primes."""

    def __init__(self, components):
        comps = tuple((int(p), int(n)) for p, n in components)
        if not comps:
            raise DomainError("group needs at least one component")
        for p, n in comps:
            if not is_prime(p):
                raise DomainError(f"component modulus {p} is not prime")
            if n < 1:
                raise DomainError(f"component exponent must be >= 1, got {n}")
        primes = [p for p, _ in comps]
        if len(set(primes)) != len(primes):
            raise DomainError("component primes must be pairwise distinct")
        self.components = comps
        self.dims = sum(n for _, n in comps)
        moduli = np.concatenate([np.full(n, p, dtype=np.int64) for p, n in comps])
        moduli.setflags(write=False)
        self.moduli = moduli
        slices = []
        at = 0
        for _, n in comps:
            slices.append(slice(at, at + n))
            at += n
        self.component_slices = tuple(slices)
        self.order = math.prod(p**n for p, n in comps)
        self.identity = (0,) * self.dims

    def check_element(self, x) -> tuple:
        if not isinstance(x, tuple) or len(x) != self.dims:
            raise GroupMismatchError(
                f"element {x!r} does not match group shape {self!r}"
            )
        for v, m in zip(x, self.moduli):
            if not 0 <= int(v) < int(m):
                raise GroupMismatchError(f"residue {v} out of range for modulus {m}")
        return x

    def mul(self, a, b) -> tuple:
        self.check_element(a)
        self.check_element(b)
        return tuple(int((u + v) % m) for u, v, m in zip(a, b, self.moduli))

    def inv(self, a) -> tuple:
        self.check_element(a)
        return tuple(int((-u) % m) for u, m in zip(a, self.moduli))

    def draw_points(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Uniform residue rows, shape ``(size, dims)``."""
        return rng.integers(0, self.moduli, size=(size, self.dims), dtype=np.int64)

    def element_of(self, row) -> tuple:
        return tuple(int(v) for v in row)

    def elements(self):
        """Iterate all elements in mixed-radix (row-major) order."""
        if self.order > ENUMERATION_CAP:
            raise CapacityError(
                f"refusing to enumerate {self.order} elements (cap {ENUMERATION_CAP})"
            )
        for combo in itertools.product(*(range(int(m)) for m in self.moduli)):
            yield combo

    def element_index(self, x) -> int:
        """Mixed-radix index matching the order of :meth:`elements`."""
        self.check_element(x)
        idx = 0
        for v, m in zip(x, self.moduli):
            idx = idx * int(m) + int(v)
        return idx

    def element_at(self, idx: int) -> tuple:
        if not 0 <= idx < self.order:
            raise DomainError(f"element index {idx} out of range")
        digits = []
        for m in self.moduli[::-1]:
            idx, r = divmod(idx, int(m))
            digits.append(r)
        return tuple(reversed(digits))

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.components == other.components

    def __hash__(self):
        return hash(("AbelianGroup", self.components))

    def __repr__(self):
        parts = " x ".join(f"Z{p}^{n}" for p, n in self.components)
        return f"AbelianGroup({parts})"


class TableGroup:
    """Finite group defined by an explicit multiplication table.

    The table is validated on load: shape, entry range, a two-sided identity,
    two-sided inverses, and the latin-square property are always checked;
    associativity is checked exhaustively for orders up to
    ``ASSOC_CHECK_CAP``.  Orders above ``TABLE_ORDER_CAP`` are rejected.
    """

    def __init__(self, table, inverse=None, identity=None, validate=True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise DomainError(f"multiplication table must be square, got {t.shape}")
        n = t.shape[0]
        if n < 1:
            raise DomainError("group order must be >= 1")
        if n > TABLE_ORDER_CAP:
            raise CapacityError(f"table order {n} exceeds cap {TABLE_ORDER_CAP}")
        if t.min() < 0 or t.max() >= n:
            raise DomainError("table entries must lie in [0, order)")
        t = t.copy()
        t.setflags(write=False)
        self.table = t
        self.order = n

        rng_idx = np.arange(n)
        row_ids = np.nonzero((t == rng_idx).all(axis=1))[0]
        ids = [e for e in row_ids if (t[:, e] == rng_idx).all()]
        if len(ids) != 1:
            raise DomainError("table does not define a unique two-sided identity")
        self.identity = int(ids[0])
        if identity is not None and int(identity) != self.identity:
            raise DomainError("declared identity does not match the table")

        if validate:
            if not ((np.sort(t, axis=1) == rng_idx).all() and (np.sort(t, axis=0) == rng_idx[:, None]).all()):
                raise DomainError("table rows/columns are not permutations")

        inv = np.argmax(t == self.identity, axis=1)
        if not ((t[rng_idx, inv] == self.identity).all() and (t[inv, rng_idx] == self.identity).all()):
            raise DomainError("table lacks two-sided inverses")
        inv = inv.astype(np.int64)
        inv.setflags(write=False)
        self.inverse_table = inv
        if inverse is not None and not np.array_equal(np.asarray(inverse, dtype=np.int64), inv):
            raise DomainError("declared inverse table does not match the multiplication table")

        if validate and n <= ASSOC_CHECK_CAP:
            self._check_associativity()

        self._hash = hash(("TableGroup", n, t.tobytes()))

    def _check_associativity(self):
        t = self.table
        n = self.order
        chunk = max(1, (1 << 21) // (n * n))
        for a0 in range(0, n, chunk):
            block = t[a0 : a0 + chunk]
            if not np.array_equal(t[block], block[:, t]):
                raise DomainError("table is not associative")

    def check_element(self, x) -> int:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise GroupMismatchError(f"table-group element must be an index, got {x!r}")
        if not 0 <= int(x) < self.order:
            raise GroupMismatchError(f"element index {x} out of range [0, {self.order})")
        return int(x)

    def mul(self, a, b) -> int:
        return int(self.table[self.check_element(a), self.check_element(b)])

    def inv(self, a) -> int:
        return int(self.inverse_table[self.check_element(a)])

    def draw_points(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.integers(0, self.order, size=size, dtype=np.int64)

    def element_of(self, row) -> int:
        return int(row)

    def elements(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return isinstance(other, TableGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TableGroup(order={self.order})"


def as_table(group: AbelianGroup) -> TableGroup:
    """Materialize an abelian group as a table group.

    Index ``i`` of the result corresponds to ``group.element_at(i)``.
    """
    if not isinstance(group, AbelianGroup):
        raise DomainError("as_table expects an AbelianGroup")
    n = group.order
    if n > AS_TABLE_CAP:
        raise CapacityError(f"refusing to materialize order {n} as a table (cap {AS_TABLE_CAP})")
    elems = np.array(list(group.elements()), dtype=np.int64)
    weights = np.ones(group.dims, dtype=np.int64)
    for d in range(group.dims - 2, -1, -1):
        weights[d] = weights[d + 1] * int(group.moduli[d + 1])
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        table[i] = ((elems[i] + elems) % group.moduli) @ weights
    return TableGroup(table)
