"""The sklearn-style facade: params, validation, and equivalence with the core."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hsplearn import (
    AbelianGroup,
    DomainError,
    ExplicitFamily,
    GroupMismatchError,
    HspInstance,
    MeteredSampler,
    RankFamily,
    SubgroupLearner,
    draw_dataset,
    gsp_instance,
    is_subgroup_of,
    learn,
    plan_for,
    span,
    stream,
)
from hsplearn.validation import check_examples, check_labels, check_points


def fitted_learner(seed=50, p=2, n=5, k=1):
    inst = gsp_instance(p, n, k, stream(seed, "inst"))
    est = SubgroupLearner(group=inst.group, family=inst.family, random_state=seed)
    sampler = MeteredSampler(inst, stream(seed, "draw"))
    X, y = draw_dataset(sampler, est.required_examples())
    return inst, est.fit(X, y)


def test_get_params_and_clone_roundtrip():
    g = AbelianGroup([(2, 4)])
    fam = RankFamily(g, (1,))
    est = SubgroupLearner(group=g, family=fam, delta=0.25, random_state=7)
    params = est.get_params()
    assert params["delta"] == 0.25 and params["family"] is fam
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(delta=0.4)
    assert est.delta == 0.4


def test_unfitted_predict_raises():
    g = AbelianGroup([(2, 3)])
    est = SubgroupLearner(group=g, family=RankFamily(g, (1,)))
    with pytest.raises(NotFittedError):
        est.predict(np.zeros((2, 3), dtype=int))


def test_fit_recovers_hidden_subgroup():
    inst, est = fitted_learner()
    assert est.subgroup_ == inst.hidden
    assert est.n_samples_used_ == est.plan_.total_examples


def test_fit_matches_sampler_driven_learn():
    # replaying the same recorded stream with the same selection rng must
    # reproduce the oracle-driven run exactly
    inst = gsp_instance(2, 6, 2, stream(51, "inst"))
    run_plan = plan_for(inst.family, 1 / 3)
    sampler = MeteredSampler(inst, stream(51, "draw"), record=True)
    direct = learn(sampler, run_plan, inst.group, stream(51, "sel"))
    X, y = sampler.recorded_arrays()
    est = SubgroupLearner(
        group=inst.group, family=inst.family, random_state=stream(51, "sel")
    )
    est.fit(X, y)
    assert est.subgroup_ == direct


def test_fit_requires_enough_rows():
    inst = gsp_instance(2, 4, 1, stream(52, "inst"))
    est = SubgroupLearner(group=inst.group, family=inst.family)
    need = est.required_examples()
    assert need == 371
    X, y = draw_dataset(MeteredSampler(inst, stream(52, "draw")), need - 1)
    with pytest.raises(DomainError, match="371"):
        est.fit(X, y)


def test_fit_ignores_surplus_rows():
    inst = gsp_instance(2, 4, 1, stream(53, "inst"))
    sampler = MeteredSampler(inst, stream(53, "draw"))
    est = SubgroupLearner(group=inst.group, family=inst.family, random_state=5)
    X, y = draw_dataset(sampler, est.required_examples() + 100)
    est.fit(X, y)
    assert est.n_samples_used_ == est.required_examples()


def test_predict_partitions_by_learned_cosets():
    inst, est = fitted_learner(seed=54)
    X, _ = draw_dataset(MeteredSampler(inst, stream(54, "fresh")), 200)
    ids = est.predict(X)
    labels = inst.label_points(X)
    # same coset ids exactly when the oracle labels collide
    for i in range(0, 200, 7):
        for j in range(200):
            assert (ids[i] == ids[j]) == (labels[i] == labels[j])


def test_fit_predict_one_sided_even_underpowered():
    inst = gsp_instance(2, 6, 1, stream(55, "inst"))
    weak = ExplicitFamily([inst.hidden])
    est = SubgroupLearner(group=inst.group, family=weak, delta=0.49, random_state=1)
    X, y = draw_dataset(MeteredSampler(inst, stream(55, "draw")), est.required_examples())
    est.fit(X, y)
    assert is_subgroup_of(est.subgroup_, inst.hidden)


def test_early_stop_estimator():
    inst = gsp_instance(2, 6, 1, stream(56, "inst"))
    est = SubgroupLearner(
        group=inst.group, family=inst.family, random_state=2, early_stop=True
    )
    X, y = draw_dataset(MeteredSampler(inst, stream(56, "draw")), est.required_examples())
    est.fit(X, y)
    assert est.subgroup_ == inst.hidden
    assert est.n_samples_used_ < est.plan_.total_examples


def test_table_group_estimator(d4):
    hidden = span(d4, [1])
    family = ExplicitFamily([hidden, span(d4, [2, 4]), span(d4, [2, 5])])
    inst = HspInstance(d4, hidden, family, salt=9)
    est = SubgroupLearner(group=d4, family=family, random_state=3)
    X, y = draw_dataset(MeteredSampler(inst, stream(57, "draw")), est.required_examples())
    est.fit(X, y)
    assert is_subgroup_of(est.subgroup_, hidden)
    ids = est.fit_predict(X, y)
    assert ids.shape == (X.shape[0],)


def test_validation_rejects_bad_points():
    g = AbelianGroup([(2, 3)])
    with pytest.raises(GroupMismatchError):
        check_points(g, np.zeros((4, 2), dtype=int))
    with pytest.raises(GroupMismatchError):
        check_points(g, np.full((4, 3), 2, dtype=int))
    with pytest.raises(GroupMismatchError):
        check_points(g, np.zeros((4, 3), dtype=float))
    with pytest.raises(GroupMismatchError):
        check_labels(np.zeros(3, dtype=int), 4)
    with pytest.raises(GroupMismatchError):
        check_labels(np.zeros((3, 1), dtype=int), 3)


def test_validation_densifies_labels():
    g = AbelianGroup([(2, 2)])
    X = np.array([[0, 0], [0, 1], [1, 1]])
    y = np.array([2**63 + 5, 17, 2**63 + 5], dtype=np.uint64)
    X2, y2 = check_examples(g, X, y)
    assert X2.dtype == np.int64
    assert y2.tolist() == [1, 0, 1]


def test_missing_group_or_family_raises():
    est = SubgroupLearner()
    with pytest.raises(DomainError):
        est.required_examples()
    g = AbelianGroup([(2, 3)])
    other = AbelianGroup([(3, 2)])
    bad = SubgroupLearner(group=g, family=RankFamily(other, (1,)))
    with pytest.raises(GroupMismatchError):
        bad.required_examples()
