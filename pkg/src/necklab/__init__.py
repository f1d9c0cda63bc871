"""Exact fair splittings of colored necklaces."""

from .coloring import (RationalEnclosure, StepColoring, approximate_by_interval_coloring, color_measure,
                       format_coloring, make_interval_coloring, metric_distance, parse_coloring,
                       window_distance)
from .exact_lp import FeasibilityResult, FeasibilitySystem, LinearConstraint, rat_normalize, solve_feasibility
from .splitting import (FamilyPartition, SplitResult, Splitting, find_fair_family_partition,
                        find_fair_splitting, membership_B, min_splitting_size)
from .adversary import PerturbationPlan, build_avoider, distinct_subset_sum_lengths, perturb_interval_coloring

__version__ = "0.1.0"
