"""hsplearn: learning hidden subgroups from uniform examples.

The package provides finite-group arithmetic (structured abelian products and
small table groups), canonical subgroup algebra over F_p, coset-labeling
oracles, the collision-based sample algorithm with its exact sample budget,
closed-form sample-complexity bound evaluators, exhaustive brute-force
oracles for tiny instances, and a CLI/CSV experiment harness.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    binary_entropy,
    fano_floor,
    gsp_theta,
    lower_bound,
    rahsp_bounds,
    upper_bound,
)
from .bruteforce import CollisionPattern, consistent_subgroups, min_samples_exhaustive
from .errors import CapacityError, DomainError, GroupMismatchError
from .estimator import SubgroupLearner
from .experiments import (
    SweepRow,
    TrialResult,
    bounds_table,
    run_grid_point,
    run_trial,
    sweep,
)
from .formats import (
    format_group,
    format_instance,
    format_subgroup,
    load_instance,
    parse_group,
    parse_instance,
    parse_subgroup,
    save_instance,
)
from .groups import AbelianGroup, TableGroup, as_table
from .learner import (
    CollisionPair,
    LearnerPlan,
    find_collisions,
    iteration,
    learn,
    plan,
    plan_for,
)
from .oracle import (
    Example,
    HspInstance,
    MeteredSampler,
    ReplaySampler,
    draw_dataset,
    gsp_instance,
    random_instance,
    simon_instance,
)
from .rng import stream
from .subgroups import (
    AbelianSubgroup,
    ExplicitFamily,
    RankFamily,
    TableSubgroup,
    enumerate_subgroups,
    full_subgroup,
    index,
    is_subgroup_of,
    span,
    subgroup_count,
    trivial_subgroup,
    uniform_random_subgroup,
)

__all__ = [
    "AbelianGroup",
    "AbelianSubgroup",
    "BoundReport",
    "CapacityError",
    "CollisionPair",
    "CollisionPattern",
    "DomainError",
    "Example",
    "ExplicitFamily",
    "GroupMismatchError",
    "HspInstance",
    "LearnerPlan",
    "MeteredSampler",
    "RankFamily",
    "ReplaySampler",
    "SubgroupLearner",
    "SweepRow",
    "TableGroup",
    "TableSubgroup",
    "TrialResult",
    "as_table",
    "binary_entropy",
    "bounds_table",
    "consistent_subgroups",
    "draw_dataset",
    "enumerate_subgroups",
    "fano_floor",
    "find_collisions",
    "format_group",
    "format_instance",
    "format_subgroup",
    "full_subgroup",
    "gsp_instance",
    "gsp_theta",
    "index",
    "is_subgroup_of",
    "iteration",
    "learn",
    "load_instance",
    "lower_bound",
    "min_samples_exhaustive",
    "parse_group",
    "parse_instance",
    "parse_subgroup",
    "plan",
    "plan_for",
    "rahsp_bounds",
    "random_instance",
    "run_grid_point",
    "run_trial",
    "save_instance",
    "simon_instance",
    "span",
    "stream",
    "subgroup_count",
    "sweep",
    "trivial_subgroup",
    "uniform_random_subgroup",
    "upper_bound",
]
