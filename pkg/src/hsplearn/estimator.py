"""Scikit-learn style front end for the subgroup learner.

``SubgroupLearner`` consumes a plain dataset ``(X, y)`` of encoded points and
opaque labels, so it composes with the usual ecosystem tooling
(``get_params``/``set_params``, ``clone``, pipelines that hand datasets
around).  Internally it replays the rows through the exact same algorithm the
oracle-driven :func:`hsplearn.learner.learn` uses, consuming
``plan.total_examples`` rows in order; since uniform examples are i.i.d.,
pre-drawing them is equivalent to sampling on demand.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import DomainError, GroupMismatchError
from .groups import AbelianGroup
from .learner import learn, plan_for
from .oracle import ReplaySampler
from .rng import as_generator
from .validation import check_examples, check_points


class SubgroupLearner(BaseEstimator):
    """Recover a hidden subgroup from labeled uniform examples.

    Parameters
    ----------
    group : AbelianGroup or TableGroup
        The group the points live in.
    family : RankFamily or ExplicitFamily
        Candidate-subgroup descriptor; only its ``sr`` and maximum index are
        used, to size the sample plan.
    delta : float
        Failure-probability budget, in (0, 1/2).
    random_state : None, int or numpy Generator
        Drives the uniform choice among colliding pairs.
    early_stop : bool
        Opt-in: stop iterating once the span reaches the family's member
        order.  Changes the consumed-sample accounting.

    Attributes
    ----------
    subgroup_ : the learned subgroup (always contained in the true one)
    plan_ : the sample plan used
    n_samples_used_ : rows of X consumed
    """

    def __init__(self, group=None, family=None, delta=1 / 3,
                 random_state=None, early_stop=False):
        self.group = group
        self.family = family
        self.delta = delta
        self.random_state = random_state
        self.early_stop = early_stop

    def _plan(self):
        if self.group is None or self.family is None:
            raise DomainError("both group and family must be set")
        if self.family.group != self.group:
            raise GroupMismatchError("family does not describe subgroups of this group")
        return plan_for(self.family, self.delta)

    def required_examples(self) -> int:
        """Rows of (X, y) that :meth:`fit` will consume."""
        return self._plan().total_examples

    def fit(self, X, y):
        run_plan = self._plan()
        X, y = check_examples(self.group, X, y)
        needed = run_plan.total_examples
        if X.shape[0] < needed:
            raise DomainError(
                f"plan needs {needed} examples, got {X.shape[0]}; "
                "draw at least required_examples() rows"
            )
        sampler = ReplaySampler(self.group, X[:needed], y[:needed])
        rng = as_generator(self.random_state)
        self.subgroup_ = learn(
            sampler, run_plan, self.group, rng,
            early_stop=self.early_stop,
            family=self.family if self.early_stop else None,
        )
        self.plan_ = run_plan
        self.n_samples_used_ = sampler.count
        return self

    def _check_fitted(self):
        if not hasattr(self, "subgroup_"):
            raise NotFittedError("this SubgroupLearner instance is not fitted yet")

    def predict(self, X) -> np.ndarray:
        """Dense coset ids of each point under the learned subgroup.

        Two points receive equal ids exactly when the fitted model says the
        hidden function collides on them.
        """
        self._check_fitted()
        X = check_points(self.group, X)
        reps = self.subgroup_.reduce_points(X)
        if isinstance(self.group, AbelianGroup):
            _, inverse = np.unique(reps, axis=0, return_inverse=True)
        else:
            _, inverse = np.unique(reps, return_inverse=True)
        return inverse.astype(np.int64).reshape(-1)

    def fit_predict(self, X, y) -> np.ndarray:
        return self.fit(X, y).predict(X)
