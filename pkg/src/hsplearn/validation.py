"""Input validation helpers for the array-facing estimator API."""

from __future__ import annotations

import numpy as np

from .errors import GroupMismatchError
from .groups import AbelianGroup, TableGroup


def check_points(group, X) -> np.ndarray:
    """Validate an array of encoded group elements for ``group``.

    Abelian groups expect an integer ``(m, dims)`` residue matrix, table
    groups an integer ``(m,)`` index vector.  Returns a contiguous int64
    array.
    """
    X = np.asarray(X)
    if not np.issubdtype(X.dtype, np.integer):
        raise GroupMismatchError(f"points must be integers, got dtype {X.dtype}")
    if isinstance(group, AbelianGroup):
        if X.ndim != 2 or X.shape[1] != group.dims:
            raise GroupMismatchError(
                f"expected shape (m, {group.dims}) for {group!r}, got {X.shape}"
            )
        X = np.ascontiguousarray(X, dtype=np.int64)
        if X.size and (X.min() < 0 or (X >= group.moduli).any()):
            raise GroupMismatchError("residues out of range for the group moduli")
        return X
    if isinstance(group, TableGroup):
        if X.ndim != 1:
            raise GroupMismatchError(f"expected shape (m,) for {group!r}, got {X.shape}")
        X = np.ascontiguousarray(X, dtype=np.int64)
        if X.size and (X.min() < 0 or X.max() >= group.order):
            raise GroupMismatchError("element indices out of range")
        return X
    raise GroupMismatchError(f"unsupported group type {type(group).__name__}")


def check_labels(y, n_rows: int) -> np.ndarray:
    """Validate a label vector and re-encode it densely.

    Labels are opaque: only equality matters.  The dense re-encoding keeps
    any integer input (including full-range unsigned hashes) safe to compare.
    """
    y = np.asarray(y)
    if y.ndim != 1:
        raise GroupMismatchError(f"labels must be 1-D, got shape {y.shape}")
    if y.shape[0] != n_rows:
        raise GroupMismatchError(f"got {y.shape[0]} labels for {n_rows} points")
    if not np.issubdtype(y.dtype, np.integer):
        raise GroupMismatchError(f"labels must be integers, got dtype {y.dtype}")
    return np.unique(y, return_inverse=True)[1].astype(np.int64).reshape(-1)


def check_examples(group, X, y) -> tuple[np.ndarray, np.ndarray]:
    X = check_points(group, X)
    return X, check_labels(y, X.shape[0])
