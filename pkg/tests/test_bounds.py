"""Closed-form bound evaluators and the entropy facts they rest on."""

import math

import pytest

from hsplearn import (
    AbelianGroup,
    DomainError,
    ExplicitFamily,
    RankFamily,
    binary_entropy,
    fano_floor,
    gsp_theta,
    lower_bound,
    rahsp_bounds,
    span,
    upper_bound,
)


def simon_family(n):
    return RankFamily(AbelianGroup([(2, n)]), (1,))


def test_lower_bound_simon_n3():
    # |family| = 7, index = 4: max{log2(7)/2, sqrt(4 * log2(7)/2)} = 2.370
    value = lower_bound(simon_family(3))
    assert value == pytest.approx(2.370, abs=1e-3)


def test_lower_bound_two_index2_subgroups():
    g = AbelianGroup([(2, 2)])
    fam = ExplicitFamily([span(g, [(1, 0)]), span(g, [(0, 1)])])
    assert lower_bound(fam) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_lower_bound_tracks_sqrt_2n():
    for n in range(8, 21):
        ratio = lower_bound(simon_family(n)) / math.sqrt(2**n)
        assert 0.5 <= ratio <= 1.5


def test_lower_bound_domain():
    g = AbelianGroup([(2, 2)])
    with pytest.raises(DomainError):
        lower_bound(ExplicitFamily([span(g, [(1, 0)])]))  # |family| = 1


def test_upper_bound_values():
    assert upper_bound(simon_family(4)) == pytest.approx(math.sqrt(8), abs=1e-12)
    # sr >= max index: the sr branch dominates
    g = AbelianGroup([(2, 6)])
    fam = RankFamily(g, (4,))
    assert fam.max_index == 4 and fam.sr == 4
    assert upper_bound(fam) == 4.0


def test_upper_bound_matches_gsp_theta():
    for p, n, k in [(2, 6, 1), (2, 6, 2), (3, 4, 1), (5, 3, 2), (2, 10, 9)]:
        fam = RankFamily(AbelianGroup([(p, n)]), (k,))
        assert upper_bound(fam) == pytest.approx(gsp_theta(p, n, k), rel=1e-12)


def test_gsp_theta_values():
    assert gsp_theta(3, 5, 2) == pytest.approx(7.348, abs=1e-3)
    assert gsp_theta(2, 10, 9) == 9.0
    for n in range(2, 30):
        assert gsp_theta(2, n, 1) == pytest.approx(math.sqrt(2 ** (n - 1)), rel=1e-12)


def test_gsp_theta_monotonicity():
    for p in (2, 3, 5):
        for k in (1, 2):
            values = [gsp_theta(p, n, k) for n in range(k + 1, k + 8)]
            assert all(a <= b for a, b in zip(values, values[1:]))
    for n, k in [(5, 1), (5, 2), (7, 3)]:
        values = [gsp_theta(p, n, k) for p in (2, 3, 5, 7)]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_gsp_theta_domain():
    with pytest.raises(DomainError):
        gsp_theta(2, 3, 3)
    with pytest.raises(DomainError):
        gsp_theta(4, 3, 1)


def test_gsp_theta_huge_n_no_overflow():
    assert gsp_theta(2, 129, 1) == pytest.approx(2.0**64, rel=1e-9)
    assert gsp_theta(2, 1201, 1) == pytest.approx(2.0**600, rel=1e-12)
    assert gsp_theta(2, 4001, 1) == math.inf  # true value exceeds float range


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.25) == pytest.approx(0.8113, abs=1e-4)
    with pytest.raises(DomainError):
        binary_entropy(1.5)


def test_fano_floor_values():
    assert fano_floor(0.0, 8) == 3.0
    assert fano_floor(1 / 3, 7) == pytest.approx(0.953, abs=1e-3)
    with pytest.raises(DomainError):
        fano_floor(0.5, 8)
    with pytest.raises(DomainError):
        fano_floor(0.1, 1)


def test_fano_floor_monotone_toward_half():
    # floor shrinks as delta -> 1/2, approaching log2|family|/2 - 1
    deltas = [0.0, 0.1, 0.2, 0.3, 0.4, 0.49, 0.499]
    values = [fano_floor(d, 128) for d in deltas]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(7 / 2 - 1, abs=0.02)


def test_entropy_claim_sweep():
    # -(1-q) log(1-q) <= -q log q on (0, 1/2], hence I(q) <= 2 q log2(1/q)
    for i in range(1, 501):
        q = 0.001 * i
        assert -(1 - q) * math.log2(1 - q) <= -q * math.log2(q) + 1e-15
        assert binary_entropy(q) <= 2 * q * math.log2(1 / q) + 1e-12


def test_rahsp_bounds_single_component():
    report = rahsp_bounds([(2, 6, 2)])
    assert report.lower == pytest.approx(math.sqrt(32), rel=1e-12)
    assert report.upper == pytest.approx(math.sqrt(32), rel=1e-12)
    assert report.theta == pytest.approx(gsp_theta(2, 6, 2), rel=1e-12)
    assert report.order == 64 and report.sr == 2
    assert report.min_subgroup_order == report.max_subgroup_order == 4


def test_rahsp_bounds_two_components():
    report = rahsp_bounds([(2, 3, 1), (3, 3, 1)])
    assert report.lower == pytest.approx(6.0, rel=1e-12)  # sqrt(1 * 36)
    assert report.upper == pytest.approx(6.0, rel=1e-12)
    assert report.theta is None
    assert report.family_size == 7 * 13


def test_rahsp_bounds_domain():
    with pytest.raises(DomainError):
        rahsp_bounds([(2, 3, 3)])
    with pytest.raises(DomainError):
        rahsp_bounds([(2, 3, 1), (2, 4, 1)])
    with pytest.raises(DomainError):
        rahsp_bounds([])


def test_rahsp_upper_never_below_lower():
    # on the acceptance grid the single-component report collapses: equal values
    for p in (2, 3, 5):
        for n in range(2, 8):
            for k in range(1, n):
                report = rahsp_bounds([(p, n, k)])
                assert report.upper >= report.lower
                assert report.upper == report.lower  # min_i == max_i for m = 1
    for params in [[(2, 3, 1), (3, 3, 2)], [(2, 5, 2), (5, 2, 1)]]:
        report = rahsp_bounds(params)
        assert report.upper >= report.lower
