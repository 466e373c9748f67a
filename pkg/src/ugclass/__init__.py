"""Collective node classification on graphs with uncertain edges."""

__version__ = "0.1.0"

from .baselines import rn_classify, rn_score, sample_world, sampling_classify, wvrn_classify
from .bayes import BayesModel, argmax_label, estimate_conditionals, estimate_model, estimate_priors, posterior_scores
from .evaluation import ClassifierSpec, SplitSpec, accuracy, confusion, run_experiment, subsample_split
from .graph import EdgeActivationView, UncertainGraph, build_graph, induced_subgraph, top_edges_by_prob
from .perturb import PerturbationConfig, add_noisy_edges, perturb, remove_edges, remove_labels
from .ubayes import LabelAssignment, UBayesParams, frontier, iteration_trace, ubayes_run
from .ubayes_plus import (
    UBayesPlusParams,
    ensemble_scores,
    theta_sweep,
    ubayes_plus_rn_run,
    ubayes_plus_run,
)

__all__ = [
    "BayesModel", "ClassifierSpec", "EdgeActivationView", "LabelAssignment", "PerturbationConfig",
    "SplitSpec", "UBayesParams", "UBayesPlusParams", "UncertainGraph", "accuracy", "add_noisy_edges",
    "argmax_label", "build_graph", "confusion", "ensemble_scores", "estimate_conditionals",
    "estimate_model", "estimate_priors", "frontier", "induced_subgraph", "iteration_trace", "perturb",
    "posterior_scores", "remove_edges", "remove_labels", "rn_classify", "rn_score", "run_experiment",
    "sample_world", "sampling_classify", "subsample_split", "theta_sweep", "top_edges_by_prob",
    "ubayes_plus_rn_run", "ubayes_plus_run", "ubayes_run", "wvrn_classify",
]
