"""Oracles, explicit bounds, interval signatures, outerplanar levels and experiment suites."""

from .bounds import BoundQuery, bound_value, chordal_bound, interval_bound, treelength_bound
from .corollary import CorollaryReport, corollary_check
from .experiments import SUITES, ExperimentReport, run_experiment
from .guarding import (
    GuardingReport,
    guarded_by_paths,
    guarded_vertices,
    guarding_inequality_check,
    simple_paths,
    sreach_by_paths,
    verify_guarding,
    wreach_by_paths,
)
from .intervals import SignatureResult, interval_signatures
from .outerplanar import LevelReport, outerplanar_levels

__all__ = [
    "BoundQuery",
    "CorollaryReport",
    "ExperimentReport",
    "GuardingReport",
    "LevelReport",
    "SUITES",
    "SignatureResult",
    "bound_value",
    "chordal_bound",
    "corollary_check",
    "guarded_by_paths",
    "guarded_vertices",
    "guarding_inequality_check",
    "interval_bound",
    "interval_signatures",
    "outerplanar_levels",
    "run_experiment",
    "simple_paths",
    "sreach_by_paths",
    "treelength_bound",
    "verify_guarding",
    "wreach_by_paths",
]
