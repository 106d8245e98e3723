"""Commuting-detector constructions for incompatible projections.

The package builds parametrized families of projector solutions in which
commuting "detector" observables on an auxiliary factor reproduce, on a
single entangled state, the outcomes of mutually incompatible projections
— verifies all their defining conditions, cross-checks the closed forms
against a brute-force constraint solver, and samples the joint outcome
statistics.
"""

from .errors import (DimensionError, ModeError, NonCommutingError, ParamRangeError,
                     SeedError, StateShapeError, TwoSlitError, ZeroConditioningError)
from .family3 import Family3Params, SolutionBundle3
from .family4 import Family4Params, SolutionBundle4
from .fixtures import fixture, fixture_bundle, fixture_names
from .space import BlockVector, ProductSpace
from .verify import VerificationReport, verify_bundle

__version__ = "0.1.0"

__all__ = [
    "BlockVector", "DimensionError", "Family3Params", "Family4Params",
    "ModeError", "NonCommutingError", "ParamRangeError", "ProductSpace",
    "SeedError", "SolutionBundle3", "SolutionBundle4", "StateShapeError",
    "TwoSlitError", "VerificationReport", "ZeroConditioningError",
    "fixture", "fixture_bundle", "fixture_names", "verify_bundle",
]
