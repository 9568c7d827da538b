"""Rank correlation and the synthetic train/test experiment harness."""

import csv
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from .edge import SearchOptions, edge_rankability
from .errors import ConfigError, DegenerateInputError, LengthMismatchError
from .features import feature_matrix
from .forest import TrainConfig, fit, predict_many
from .generators import DatasetConfig, GeneratorId, gen_dataset
from .spectral import spectral_rankability

log = logging.getLogger(__name__)

MEASURES = ("R_e", "R_s", "R_f")


def spearman(x, y):
    """Pearson correlation of average (fractional) ranks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"vectors differ in shape: {x.shape} vs {y.shape}")
    if len(x) < 2:
        raise LengthMismatchError("need at least two observations")
    for name, v in (("x", x), ("y", y)):
        if np.all(v == v[0]):
            raise DegenerateInputError(f"{name} is constant")
    rx = rankdata(x) - (len(x) + 1) / 2.0
    ry = rankdata(y) - (len(y) + 1) / 2.0
    rho = float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))
    return min(1.0, max(-1.0, rho))


def correlation_matrix(series):
    """Pairwise Spearman matrix over a mapping of name -> vector (insertion order)."""
    names = list(series)
    lengths = {len(series[k]) for k in names}
    if len(lengths) > 1:
        raise LengthMismatchError(f"series lengths differ: {sorted(lengths)}")
    m = np.eye(len(names))
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            m[i, j] = m[j, i] = spearman(series[names[i]], series[names[j]])
    return names, m


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    train_generator: GeneratorId = GeneratorId.TARGET
    test_generator: GeneratorId = GeneratorId.TARGET
    train_count: int = 1000
    test_count: int = 1000
    measures: tuple = MEASURES
    seed: int = 0
    r_e_max_n: int = 8
    passes: int = 2
    ability_range: tuple = (0.0, 800.0)
    ability_spread: tuple = (4000.0, 2.0)
    p_range: tuple = (0.0, 0.5)
    c_range: tuple = (0.0, 1.0)
    forest: TrainConfig = field(default_factory=TrainConfig)

    @property
    def sparse(self):
        return GeneratorId(self.test_generator).sparse

    def validate(self):
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ConfigError(f"unknown measures {sorted(unknown)}")
        if self.train_count < 1 or self.test_count < 2:
            raise ConfigError("need train_count >= 1 and test_count >= 2")

    def _streams(self):
        train_seed, test_seed, forest_seed = np.random.SeedSequence(self.seed).generate_state(3)
        return int(train_seed), int(test_seed), int(forest_seed)

    def train_dataset_config(self):
        return DatasetConfig(
            n=self.n,
            count=self.train_count,
            generator=GeneratorId(self.train_generator),
            p_range=self.p_range,
            c_range=self.c_range,
            ability_range=self.ability_range,
            ability_spread=self.ability_spread,
            passes=self.passes,
            seed=self._streams()[0],
        )

    def test_dataset_config(self):
        return replace(
            self.train_dataset_config(),
            count=self.test_count,
            generator=GeneratorId(self.test_generator),
            seed=self._streams()[1],
        )

    def forest_config(self):
        return replace(self.forest, seed=self._streams()[2])


def table_config(table, n, sparse=False, seed=0, **overrides):
    """Experiment settings for one column of benchmark table 1 or 2.

    Table 1 trains and tests on perturbed dominance graphs; table 2 trains on
    them and tests on two-pass Elo graphs.
    """
    train = GeneratorId.SPARSE_TARGET if sparse else GeneratorId.TARGET
    if table == 1:
        test = train
    elif table == 2:
        test = GeneratorId.SPARSE_ELO if sparse else GeneratorId.ELO
    else:
        raise ConfigError(f"table must be 1 or 2, got {table}")
    return ExperimentConfig(n=n, train_generator=train, test_generator=test, seed=seed, **overrides)


@dataclass
class CorrelationTable:
    """Spearman rho keyed by ``(measure, n, "complete" | "sparse")``; None renders as NA."""

    cells: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    scatter: dict = field(default_factory=dict)

    def columns(self):
        return sorted({(n, setting) for _, n, setting in self.cells}, key=lambda c: (c[1] != "complete", c[0]))

    def rows(self):
        return [m for m in MEASURES if any(key[0] == m for key in self.cells)]

    def get(self, measure, n, setting):
        return self.cells.get((measure, n, setting))

    def merge(self, other):
        self.cells.update(other.cells)
        self.errors.update(other.errors)
        self.scatter.update(other.scatter)
        return self

    def render(self):
        cols = self.columns()
        head = ["measure"] + [f"n={n} {setting}" for n, setting in cols]
        lines = ["  ".join(f"{h:>14}" for h in head)]
        for m in self.rows():
            cells = [m]
            for n, setting in cols:
                rho = self.get(m, n, setting)
                cells.append("NA" if rho is None else f"{rho:.3f}")
            lines.append("  ".join(f"{c:>14}" for c in cells))
        return "\n".join(lines)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["measure", "n", "data", "rho"])
            for m in self.rows():
                for n, setting in self.columns():
                    if (m, n, setting) in self.cells:
                        rho = self.cells[(m, n, setting)]
                        w.writerow([m, n, setting, "NA" if rho is None else repr(float(rho))])

    def write_scatter(self, path):
        """One row per test graph: the label and each measure value for every column run."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "data", "id", "label"] + list(MEASURES))
            for (n, setting), data in sorted(self.scatter.items()):
                for i, label in enumerate(data["label"]):
                    row = [n, setting, i, repr(float(label))]
                    for m in MEASURES:
                        values = data.get(m)
                        row.append("" if values is None else repr(float(values[i])))
                    w.writerow(row)


def train_forest(cfg, cache=None):
    """Train the forest for ``cfg``; ``cache`` (a dict) shares models between tables."""
    train_cfg = cfg.train_dataset_config()
    forest_cfg = cfg.forest_config()
    key = (train_cfg, forest_cfg)
    if cache is not None and key in cache:
        return cache[key]
    samples = gen_dataset(train_cfg)
    X = feature_matrix([s.graph for s in samples])
    model = fit(X, [s.label for s in samples], forest_cfg, trained_n=cfg.n)
    if cache is not None:
        cache[key] = model
    return model


def measure_values(measure, graphs, cfg, model=None):
    if measure == "R_e":
        opts = SearchOptions(max_n=max(cfg.r_e_max_n, 2))
        return np.array([edge_rankability(g, opts) for g in graphs])
    if measure == "R_s":
        return np.array([spectral_rankability(g) for g in graphs])
    if measure == "R_f":
        return predict_many(model, feature_matrix(graphs))
    raise ConfigError(f"unknown measure {measure!r}")


def run_experiment(cfg, model_cache=None):
    """Generate, measure and correlate one ``(n, complete|sparse)`` column."""
    cfg.validate()
    setting = "sparse" if cfg.sparse else "complete"
    table = CorrelationTable()
    test = gen_dataset(cfg.test_dataset_config())
    graphs = [s.graph for s in test]
    labels = np.array([s.label for s in test])
    scatter = {"label": labels}
    for m in cfg.measures:
        key = (m, cfg.n, setting)
        if m == "R_e" and cfg.n > cfg.r_e_max_n:
            table.cells[key] = None
            continue
        model = train_forest(cfg, model_cache) if m == "R_f" else None
        values = measure_values(m, graphs, cfg, model)
        scatter[m] = values
        try:
            table.cells[key] = spearman(values, labels)
        except DegenerateInputError as exc:
            table.cells[key] = None
            table.errors[key] = f"DegenerateInput: {exc}"
        log.info("%s n=%d %s rho=%s", m, cfg.n, setting, table.cells[key])
    table.scatter[(cfg.n, setting)] = scatter
    return table


def run_table(table, ns, sparse_settings=(False, True), seed=0, model_cache=None, **overrides):
    out = CorrelationTable()
    for sparse in sparse_settings:
        for n in ns:
            cfg = table_config(table, n, sparse=sparse, seed=seed, **overrides)
            out.merge(run_experiment(cfg, model_cache))
    return out


def write_correlation_matrix(names, matrix, path):
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["measure"] + names)
        for name, row in zip(names, matrix):
            w.writerow([name] + [repr(float(v)) for v in row])
