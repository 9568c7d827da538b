"""The five graph properties used as predictors for the learned rankability."""

from dataclasses import astuple, dataclass

import numpy as np

from .errors import NoConvergenceError
from .graph import out_degrees

FEATURE_NAMES = (
    "triangles",
    "contradictions",
    "out_degree_std",
    "algebraic_connectivity",
    "draws",
)


@dataclass(frozen=True)
class FeatureVector:
    triangles: int
    contradictions: int
    out_degree_std: float
    algebraic_connectivity: float
    draws: int

    def as_array(self):
        return np.array(astuple(self), dtype=float)


def count_triangles(g):
    """Directed 3-cycles counted once per rotation class, as ``trace(A^3) / 3``."""
    a = g.adj
    return int(np.einsum("ij,jk,ki->", a, a, a)) // 3


def _pairs(g):
    a = g.adj
    return a[np.triu_indices(g.n, k=1)], a.T[np.triu_indices(g.n, k=1)]


def count_contradictions(g):
    fwd, back = _pairs(g)
    return int(np.count_nonzero((fwd == 1) & (back == 1)))


def count_draws(g):
    fwd, back = _pairs(g)
    return int(np.count_nonzero((fwd == 0) & (back == 0)))


def out_degree_std(g):
    """Population standard deviation of the out-degrees."""
    return float(np.std(out_degrees(g)))


def _ones_complement_basis(n):
    # orthonormal columns spanning the subspace orthogonal to (1, ..., 1)
    basis = np.eye(n)[:, 1:] - 1.0 / n
    q, _ = np.linalg.qr(basis)
    return q


def algebraic_connectivity(g):
    """Smallest eigenvalue of the symmetrised Laplacian restricted to the complement of 1."""
    a = g.adj.astype(float)
    lap = np.diag(a.sum(axis=1)) - a
    sym = 0.5 * (lap + lap.T)
    q = _ones_complement_basis(g.n)
    try:
        return float(np.linalg.eigvalsh(q.T @ sym @ q)[0])
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc


def feature_vector(g):
    return FeatureVector(
        triangles=count_triangles(g),
        contradictions=count_contradictions(g),
        out_degree_std=out_degree_std(g),
        algebraic_connectivity=algebraic_connectivity(g),
        draws=count_draws(g),
    )


def feature_matrix(graphs):
    return np.array([feature_vector(g).as_array() for g in graphs])
