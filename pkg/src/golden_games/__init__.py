"""Random alternating win-lose games on complete binary trees: exact and
simulated value and flip-fragility, and the golden-game recursions."""

from ._backend import BACKEND
from .core import (
    MAX_MATERIALIZED_DEPTH,
    PHI,
    GameFormatError,
    GameInstance,
    Player,
    SampleSpec,
    leaf_payoff,
    mover_at_height,
    read_game,
    sample_game,
    value,
    value_streamed,
    write_game,
)
from .distribution import CappedCostDistribution, ExactRow, combine, exact_table, leaf_distribution, value_prob_iterate
from .fragility import CostPair, FragilityReport, brute_force_fragility, cost_pair, fragility, is_fragile, witness
from .montecarlo import EstimationRequest, EstimationResult, estimate, wilson_interval
from .theory import FiniteRow, TheoryRow, asymptotic_limit_check, finite_alpha_beta, xi_quadratic_root, xi_sequence

__version__ = "0.1.0"
