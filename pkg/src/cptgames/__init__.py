"""Cumulative prospect theory valuation and equilibrium notions for finite games."""
from .best_response import (
    ArgmaxSet,
    ConcaveEnvelope,
    best_response_actions,
    best_response_blackbox,
    best_response_blackbox_many,
    concave_envelope_1d,
    convex_decomposition,
    envelope_from_samples,
    hull_distance,
    hull_membership,
)
from .cpt import (
    CptFeatures,
    Lottery,
    ValidationError,
    ValueFunction,
    WeightingFunction,
    betweenness_scan,
    cpt_value,
    cpt_value_cumulative,
    mix_lotteries,
    weighting_functional_check,
)
from .equilibrium import (
    Classification,
    EquilibriumVerdict,
    NotAnEquilibrium,
    classify,
    decompose_mixed_blackbox,
    enumerate_pure,
    scan_blackbox_2x2,
    search_mixed_blackbox_2x2,
    solve_mixed_action_2x2,
    verify_blackbox,
    verify_mixed_action,
    verify_mixed_blackbox,
    verify_pure,
)
from .game import (
    Belief,
    Game,
    Mixture,
    MixtureProfile,
    action_lottery,
    induced_lottery,
    product_belief,
)
from .mediated import (
    MediatedStrategyProfile,
    MediatorOverMixtures,
    MediatorOverSignals,
    SignalSystem,
    conditional_opponent_belief,
    mediated_conditional_action_dist,
    mediator_pushforward,
    verify_correlated,
    verify_mediated,
)

__version__ = "0.1.0"
