"""Synthetic graphs with a known rankability label.

Two families are produced:

* perturbed complete dominance graphs, labelled ``c * (1 - 2p)``;
* Elo competition graphs, labelled with the relative rankability of the
  abilities (scaled by ``c`` when edges are thinned).

Every stochastic function takes an explicit ``numpy.random.Generator``.
Datasets derive one PCG64 stream per sample from ``(seed, index)``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadProbabilityError, ConfigError, TooSmallError
from .graph import Digraph, complete_dominance


class GeneratorId(str, enum.Enum):
    TARGET = "target"
    SPARSE_TARGET = "sparse-target"
    ELO = "elo"
    SPARSE_ELO = "sparse-elo"

    @property
    def sparse(self):
        return self in (GeneratorId.SPARSE_TARGET, GeneratorId.SPARSE_ELO)

    @property
    def elo(self):
        return self in (GeneratorId.ELO, GeneratorId.SPARSE_ELO)


@dataclass(frozen=True)
class LabeledSample:
    graph: Digraph
    label: float
    generator: GeneratorId
    p: float = None
    c: float = 1.0
    abilities: tuple = None


@dataclass(frozen=True)
class EloProbs:
    p_win_ij: float
    p_win_ji: float
    p_draw: float


def _check_prob(name, value, hi=1.0):
    if not 0.0 <= value <= hi:
        raise BadProbabilityError(f"{name}={value} outside [0, {hi}]")


def perturb_dominance(n, p, rng):
    """Flip each off-diagonal entry of the complete dominance graph with probability ``p``."""
    _check_prob("p", p, 0.5)
    a = complete_dominance(n).adj.copy()
    flip = rng.random((n, n)) < p
    np.fill_diagonal(flip, False)
    a[flip] = 1 - a[flip]
    return Digraph(a)


def target_rankability(p, c=1.0):
    _check_prob("p", p, 0.5)
    _check_prob("c", c)
    return c * (1.0 - 2.0 * p)


def sparsify(g, c, rng):
    """Keep each existing edge independently with probability ``c``."""
    _check_prob("c", c)
    keep = rng.random((g.n, g.n)) < c
    return Digraph(g.adj * keep)


def elo_expected(a_i, a_j):
    return 1.0 / (1.0 + 10.0 ** ((a_j - a_i) / 400.0))


def elo_probs(a_i, a_j):
    e_ij = elo_expected(a_i, a_j)
    e_ji = 1.0 - e_ij
    p_draw = e_ij * e_ji
    return EloProbs(e_ij * (1.0 - p_draw), e_ji * (1.0 - p_draw), p_draw)


def _elo_matrices(abilities):
    a = np.asarray(abilities, dtype=float)
    e = 1.0 / (1.0 + 10.0 ** ((a[None, :] - a[:, None]) / 400.0))
    draw = e * e.T
    win = e * (1.0 - draw)
    return win, draw


def relative_rankability(abilities, c=1.0):
    """Mean of ``|P_ij - P_ji|`` over vertex pairs, scaled by ``c``."""
    _check_prob("c", c)
    n = len(abilities)
    if n < 2:
        raise TooSmallError("need at least 2 abilities")
    win, _ = _elo_matrices(abilities)
    iu = np.triu_indices(n, k=1)
    total = np.abs(win - win.T)[iu].sum()
    return float(2.0 * c * total / (n * (n - 1)))


def gen_elo_graph(abilities, passes, rng):
    """Simulate one (or two) rounds of Elo matches between every pair.

    Per pair and pass a single uniform draw decides the outcome: below
    ``P_ij`` adds ``i -> j``, above ``P_ij + P_d`` adds ``j -> i``, otherwise
    the game is drawn. Two passes can therefore create 2-cycles.
    """
    n = len(abilities)
    if n < 2:
        raise TooSmallError("need at least 2 abilities")
    if passes not in (1, 2):
        raise ConfigError(f"passes must be 1 or 2, got {passes}")
    win, draw = _elo_matrices(abilities)
    iu, ju = np.triu_indices(n, k=1)
    p_ij = win[iu, ju]
    p_d = draw[iu, ju]
    adj = np.zeros((n, n), dtype=np.int64)
    for _ in range(passes):
        tau = rng.random(len(iu))
        fwd = tau < p_ij
        back = tau > p_ij + p_d
        adj[iu[fwd], ju[fwd]] = 1
        adj[ju[back], iu[back]] = 1
    return Digraph(adj)


@dataclass(frozen=True)
class DatasetConfig:
    n: int
    count: int
    generator: GeneratorId = GeneratorId.TARGET
    p_range: tuple = (0.0, 0.5)
    c_range: tuple = (0.0, 1.0)
    ability_range: tuple = (0.0, 800.0)
    # (max, power): per graph s = max * U**power, then a_i ~ U(0, s).
    # None draws a_i ~ U(ability_range) for every graph.
    ability_spread: tuple = (4000.0, 2.0)
    passes: int = 2
    seed: int = 0

    def validate(self):
        if self.count < 1:
            raise ConfigError("count must be >= 1")
        if self.n < 2:
            raise TooSmallError("n must be >= 2")
        lo, hi = self.p_range
        if not 0.0 <= lo <= hi <= 0.5:
            raise BadProbabilityError(f"p_range {self.p_range} not within [0, 0.5]")
        lo, hi = self.c_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise BadProbabilityError(f"c_range {self.c_range} not within [0, 1]")
        if self.ability_range[0] > self.ability_range[1]:
            raise ConfigError(f"bad ability_range {self.ability_range}")
        if self.ability_spread is not None and (
            self.ability_spread[0] < 0 or self.ability_spread[1] <= 0
        ):
            raise ConfigError(f"bad ability_spread {self.ability_spread}")
        if self.passes not in (1, 2):
            raise ConfigError("passes must be 1 or 2")
        return GeneratorId(self.generator)


def sample_rng(seed, index):
    return np.random.default_rng([int(seed), int(index)])


def _uniform(rng, lo, hi):
    # lo + (hi - lo) * U keeps a degenerate range exactly at its endpoint
    return lo + (hi - lo) * rng.random()


def draw_abilities(cfg, rng):
    if cfg.ability_spread is None:
        return rng.uniform(*cfg.ability_range, size=cfg.n)
    top, power = cfg.ability_spread
    spread = top * rng.random() ** power
    return rng.uniform(0.0, spread, size=cfg.n)


def gen_sample(cfg, index):
    gen = GeneratorId(cfg.generator)
    rng = sample_rng(cfg.seed, index)
    c = _uniform(rng, *cfg.c_range) if gen.sparse else 1.0
    if gen.elo:
        abilities = draw_abilities(cfg, rng)
        g = gen_elo_graph(abilities, cfg.passes, rng)
        if gen.sparse:
            g = sparsify(g, c, rng)
        label = relative_rankability(abilities, c)
        return LabeledSample(g, label, gen, None, c, tuple(float(x) for x in abilities))
    p = _uniform(rng, *cfg.p_range)
    g = perturb_dominance(cfg.n, p, rng)
    if gen.sparse:
        g = sparsify(g, c, rng)
    return LabeledSample(g, target_rankability(p, c), gen, p, c)


def gen_dataset(cfg):
    """Generate ``cfg.count`` independent samples; sample ``i`` depends only on ``(seed, i)``."""
    cfg.validate()
    return [gen_sample(cfg, i) for i in range(cfg.count)]
