"""Group arithmetic, uniform sampling, and the text format."""

import itertools

import numpy as np
import pytest
import scipy.stats

from hsplearn import (
    AbelianGroup,
    CapacityError,
    DomainError,
    GroupMismatchError,
    TableGroup,
    as_table,
    format_group,
    parse_group,
    stream,
)


def test_mul_z2_squared():
    g = AbelianGroup([(2, 2)])
    assert g.mul((1, 0), (1, 1)) == (0, 1)


def test_mul_z3():
    g = AbelianGroup([(3, 1)])
    assert g.mul((2,), (2,)) == (1,)


@pytest.mark.parametrize("components", [[(2, 2)], [(3, 1)], [(2, 2), (3, 1)], [(5, 1)]])
def test_identity_law(components):
    g = AbelianGroup(components)
    for x in g.elements():
        assert g.mul(x, g.identity) == x
        assert g.mul(g.identity, x) == x


def test_inv_z5():
    g = AbelianGroup([(5, 1)])
    assert g.inv((2,)) == (3,)
    assert g.mul((2,), g.inv((2,))) == g.identity


def test_inv_z2_self_inverse():
    g = AbelianGroup([(2, 4)])
    for x in itertools.islice(g.elements(), 16):
        assert g.inv(x) == x


def test_inv_dihedral_rotation(d4):
    # independent oracle: scan the rotation's table row for the identity
    r = 1
    row = [b for b in range(d4.order) if d4.mul(r, b) == d4.identity]
    assert row == [3]  # r^3
    assert d4.inv(r) == 3


def test_order():
    assert AbelianGroup([(2, 3)]).order == 8
    assert AbelianGroup([(2, 2), (3, 1)]).order == 12
    assert as_table(AbelianGroup([(2, 1), (3, 1)])).order == 6


def test_order_matches_enumeration():
    # exhaustive enumeration up to |G| = 4096
    for comps in [[(2, 2), (3, 2)], [(5, 2)], [(2, 5)], [(2, 12)], [(2, 2), (3, 2), (5, 1)]]:
        g = AbelianGroup(comps)
        seen = set(g.elements())
        assert len(seen) == g.order


def test_group_laws_exhaustive_small():
    # associativity/identity/inverse on every pair and triple
    for g in [AbelianGroup([(2, 2), (3, 1)]), AbelianGroup([(3, 2)])]:
        elems = list(g.elements())
        for a in elems:
            assert g.mul(a, g.inv(a)) == g.identity
            for b in elems:
                ab = g.mul(a, b)
                for c in elems:
                    assert g.mul(ab, c) == g.mul(a, g.mul(b, c))


def test_table_group_laws_exhaustive(d4):
    elems = list(d4.elements())
    for a in elems:
        assert d4.mul(a, d4.inv(a)) == d4.identity
        for b in elems:
            ab = d4.mul(a, b)
            for c in elems:
                assert d4.mul(ab, c) == d4.mul(a, d4.mul(b, c))


def test_group_laws_order_256():
    # every pair/triple at |G| = 256: the table constructor checks all of
    # them vectorized; the laws below re-check identity and inverses
    t = as_table(AbelianGroup([(2, 8)]))
    assert t.order == 256
    idx = np.arange(256)
    assert np.array_equal(t.table[t.identity], idx)
    assert np.array_equal(t.table[idx, t.inverse_table[idx]], np.full(256, t.identity))


def test_shape_mismatch_raises():
    g = AbelianGroup([(2, 2)])
    with pytest.raises(GroupMismatchError):
        g.mul((1, 0, 1), (0, 0))
    with pytest.raises(GroupMismatchError):
        g.mul((1, 5), (0, 0))
    with pytest.raises(GroupMismatchError):
        TableGroup([[0, 1], [1, 0]]).mul(0, 7)


def test_invalid_components_raise():
    with pytest.raises(DomainError):
        AbelianGroup([(4, 2)])
    with pytest.raises(DomainError):
        AbelianGroup([(2, 0)])
    with pytest.raises(DomainError):
        AbelianGroup([(3, 1), (3, 2)])
    with pytest.raises(DomainError):
        AbelianGroup([])


def test_bad_tables_rejected():
    with pytest.raises(DomainError):
        TableGroup([[0, 1], [0, 1]])  # rows not permutations / no inverses
    with pytest.raises(DomainError):
        TableGroup([[0, 1, 2], [2, 0, 1], [1, 2, 0]])  # no two-sided identity
    # a latin square that is not associative (order 5 loop, no inverses)
    latin = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(DomainError):
        TableGroup(latin)
    # Z_8 with one intercalate swapped keeps identity, inverses, and the
    # latin property; only the associativity check can reject it
    twisted = np.fromfunction(lambda a, b: (a + b) % 8, (8, 8), dtype=np.int64)
    twisted[1, 2], twisted[1, 6] = 7, 3
    twisted[5, 2], twisted[5, 6] = 3, 7
    with pytest.raises(DomainError, match="associative"):
        TableGroup(twisted)
    with pytest.raises(CapacityError):
        TableGroup(np.zeros((5000, 5000), dtype=np.int64))


def test_uniform_frequency_z2():
    g = AbelianGroup([(2, 1)])
    rng = stream(11, "freq")
    points = g.draw_points(rng, 10000)
    assert abs(points.mean() - 0.5) <= 0.02


def test_uniform_determinism():
    g = AbelianGroup([(3, 2)])
    a = g.draw_points(stream(5, "z32"), 64)
    b = g.draw_points(stream(5, "z32"), 64)
    assert np.array_equal(a, b)
    c = g.draw_points(stream(6, "z32"), 64)
    assert not np.array_equal(a, c)


def test_uniform_chi_square_z2_squared():
    g = AbelianGroup([(2, 2)])
    rng = stream(17, "chi")
    points = g.draw_points(rng, 40000)
    cells = np.bincount(points[:, 0] * 2 + points[:, 1], minlength=4)
    assert scipy.stats.chisquare(cells).pvalue > 1e-3


@pytest.mark.parametrize(
    "components", [[(2, 1)], [(2, 2)], [(3, 1)], [(2, 2), (3, 1)], [(13, 1)]]
)
def test_uniform_chi_square_small_groups(components):
    # |G| <= 16, >= 1e4 * |G| draws, significance 1e-3
    g = AbelianGroup(components)
    rng = stream(23, "chi", str(components))
    points = g.draw_points(rng, 10**4 * g.order)
    idx = np.zeros(points.shape[0], dtype=np.int64)
    for c in range(g.dims):
        idx = idx * int(g.moduli[c]) + points[:, c]
    cells = np.bincount(idx, minlength=g.order)
    assert scipy.stats.chisquare(cells).pvalue > 1e-3


def test_element_index_roundtrip():
    g = AbelianGroup([(2, 2), (3, 1)])
    for i, x in enumerate(g.elements()):
        assert g.element_index(x) == i
        assert g.element_at(i) == x


def test_as_table_matches_abelian():
    g = AbelianGroup([(2, 1), (3, 1)])
    t = as_table(g)
    for a in g.elements():
        for b in g.elements():
            ia, ib = g.element_index(a), g.element_index(b)
            assert t.mul(ia, ib) == g.element_index(g.mul(a, b))
            assert t.inv(ia) == g.element_index(g.inv(a))


def test_group_format_roundtrip(d4):
    for g in [AbelianGroup([(2, 3)]), AbelianGroup([(2, 2), (5, 1)]), d4]:
        assert parse_group(format_group(g)) == g


def test_parse_group_rejects_garbage():
    with pytest.raises(DomainError):
        parse_group("abelian\n")
    with pytest.raises(DomainError):
        parse_group("component p=2 n=3\n")
    with pytest.raises(DomainError):
        parse_group("table n=2\n0 1\n")
    with pytest.raises(DomainError):
        parse_group("abelian\ncomponent p=9 n=1\n")
