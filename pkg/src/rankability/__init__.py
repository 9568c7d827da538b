"""Rankability of directed graphs: edge, spectral and learned measures."""

from .edge import KPResult, SearchOptions, compute_kp, compute_kp_bruteforce, edge_rankability
from .evaluation import correlation_matrix, run_experiment, spearman
from .features import FeatureVector, feature_matrix, feature_vector
from .forest import RandomForestModel, TrainConfig, fit, load_model, predict, rf_rankability, save_model
from .generators import DatasetConfig, GeneratorId, LabeledSample, gen_dataset
from .graph import Digraph, complete_dominance, cycle_graph, from_adjacency
from .spectral import spectral_rankability

__version__ = "0.1.0"
