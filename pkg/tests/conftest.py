"""Shared fixtures: small reference groups built independently of the package."""

from __future__ import annotations

import numpy as np
import pytest

from hsplearn import AbelianGroup, TableGroup


def dihedral_table(n: int) -> np.ndarray:
    """Multiplication table of the dihedral group of order 2n.

    Element i + n*f encodes r^i s^f; composition uses s r^j = r^{-j} s.
    """
    order = 2 * n

    def mul(a, b):
        i, f = a % n, a // n
        j, g = b % n, b // n
        rot = (i + (j if f == 0 else -j)) % n
        return rot + n * (f ^ g)

    return np.array([[mul(a, b) for b in range(order)] for a in range(order)])


@pytest.fixture(scope="session")
def d4() -> TableGroup:
    """Dihedral group of order 8 (index 1 is the rotation r, index 4 is s)."""
    return TableGroup(dihedral_table(4))


@pytest.fixture(scope="session")
def z2_cubed() -> AbelianGroup:
    return AbelianGroup([(2, 3)])
