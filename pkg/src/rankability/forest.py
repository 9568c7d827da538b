"""A small, deterministic random-forest regressor.

Trees are CART regression trees grown to purity on bootstrap resamples,
choosing splits by weighted variance reduction. Bootstrap multiplicities are
carried as integer sample weights rather than duplicated rows.

The model file is JSON; every float is stored with ``float.hex`` so a
save/load round trip predicts bit-identically.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    CorruptModelError,
    EmptyTrainingSetError,
    LengthMismatchError,
    SchemaVersionMismatchError,
    VertexCountMismatchError,
)
from .features import FEATURE_NAMES, FeatureVector, feature_vector

SCHEMA_VERSION = 1
FORMAT_NAME = "rankability-forest"
NODE_FIELDS = ("kind", "feature_index", "threshold", "left_id", "right_id", "value")


@dataclass(frozen=True)
class TrainConfig:
    n_trees: int = 100
    max_features: int = None  # None: every feature at every split
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    max_depth: int = None
    bootstrap: bool = True
    seed: int = 0

    def validate(self, n_features):
        if self.n_trees < 1:
            raise ConfigError("n_trees must be >= 1")
        if self.max_features is not None and not 1 <= self.max_features <= n_features:
            raise ConfigError(f"max_features must be in 1..{n_features}")
        if self.min_samples_split < 2:
            raise ConfigError("min_samples_split must be >= 2")
        if self.min_samples_leaf < 1:
            raise ConfigError("min_samples_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ConfigError("max_depth must be >= 1")


@dataclass
class Tree:
    """Flat preorder node arrays; a leaf has ``feature == -1``."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def node_count(self):
        return len(self.feature)

    def predict(self, X):
        node = np.zeros(len(X), dtype=np.intp)
        active = np.flatnonzero(self.feature[node] >= 0)
        while active.size:
            cur = node[active]
            go_left = X[active, self.feature[cur]] <= self.threshold[cur]
            node[active] = np.where(go_left, self.left[cur], self.right[cur])
            active = active[self.feature[node[active]] >= 0]
        return self.value[node]


@dataclass
class RandomForestModel:
    trees: list
    trained_n: int
    label_range: tuple
    seed: int
    feature_names: tuple = FEATURE_NAMES
    config: TrainConfig = field(default_factory=TrainConfig)

    @property
    def n_trees(self):
        return len(self.trees)


def _best_split(xn, yn, wn, features, min_leaf):
    """Return ``(feature, threshold)`` maximising weighted variance reduction, or None.

    Ties go to the lowest feature index and then the smallest threshold.
    """
    best = None
    best_score = -math.inf
    tot_w = wn.sum()
    tot_wy = (wn * yn).sum()
    for f in features:
        col = xn[:, f]
        order = np.lexsort((yn, col))
        xs = col[order]
        cw = np.cumsum(wn[order])[:-1]
        cwy = np.cumsum(wn[order] * yn[order])[:-1]
        ok = xs[:-1] < xs[1:]
        if min_leaf > 1:
            ok &= (cw >= min_leaf) & (tot_w - cw >= min_leaf)
        if not ok.any():
            continue
        rw = tot_w - cw
        score = np.where(ok, cwy * cwy / cw + (tot_wy - cwy) ** 2 / np.where(ok, rw, 1.0), -math.inf)
        i = int(np.argmax(score))
        if score[i] > best_score:
            best_score = score[i]
            lo, hi = xs[i], xs[i + 1]
            thr = lo + (hi - lo) / 2.0
            if thr >= hi:
                thr = lo
            best = (int(f), float(thr))
    return best


def _grow_tree(X, y, weights, cfg, rng):
    n_features = X.shape[1]
    feature, threshold, left, right, value = [], [], [], [], []
    rows = np.flatnonzero(weights > 0)
    # (rows, depth, parent id, is_left)
    stack = [(rows, 0, -1, False)]
    while stack:
        idx, depth, parent, is_left = stack.pop()
        node_id = len(feature)
        if parent >= 0:
            (left if is_left else right)[parent] = node_id
        yn, wn = y[idx], weights[idx]
        n_weighted = wn.sum()
        split = None
        pure = bool(np.all(yn == yn[0]))
        if (
            not pure
            and n_weighted >= cfg.min_samples_split
            and (cfg.max_depth is None or depth < cfg.max_depth)
        ):
            if cfg.max_features is None:
                features = range(n_features)
            else:
                features = np.sort(rng.choice(n_features, cfg.max_features, replace=False))
            split = _best_split(X[idx], yn, wn, features, cfg.min_samples_leaf)
        if split is None:
            mean = float((wn * yn).sum() / n_weighted)
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            value.append(min(max(mean, float(yn.min())), float(yn.max())))
            continue
        f, thr = split
        feature.append(f)
        threshold.append(thr)
        left.append(-1)
        right.append(-1)
        value.append(float((wn * yn).sum() / n_weighted))
        goes_left = X[idx, f] <= thr
        stack.append((idx[~goes_left], depth + 1, node_id, False))
        stack.append((idx[goes_left], depth + 1, node_id, True))
    return Tree(
        np.array(feature, dtype=np.intp),
        np.array(threshold, dtype=float),
        np.array(left, dtype=np.intp),
        np.array(right, dtype=np.intp),
        np.array(value, dtype=float),
    )


def _as_matrix(X):
    rows = [x.as_array() if isinstance(x, FeatureVector) else np.asarray(x, dtype=float) for x in X]
    if not rows:
        return np.zeros((0, len(FEATURE_NAMES)))
    return np.vstack(rows).astype(float)


def fit(X, y, config=None, trained_n=None):
    """Train a forest on feature rows ``X`` and labels ``y``."""
    config = config or TrainConfig()
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if len(X) != len(y):
        raise LengthMismatchError(f"{len(X)} feature rows but {len(y)} labels")
    if len(y) == 0:
        raise EmptyTrainingSetError("cannot fit a forest on zero samples")
    if not np.all(np.isfinite(y)):
        raise ValueError("labels must be finite")
    config.validate(X.shape[1])
    n = len(y)
    trees = []
    for t in range(config.n_trees):
        rng = np.random.default_rng([int(config.seed), t])
        if config.bootstrap:
            weights = np.bincount(rng.integers(0, n, size=n), minlength=n).astype(float)
        else:
            weights = np.ones(n)
        trees.append(_grow_tree(X, y, weights, config, rng))
    return RandomForestModel(
        trees=trees,
        trained_n=trained_n,
        label_range=(float(y.min()), float(y.max())),
        seed=int(config.seed),
        config=config,
    )


def predict_many(model, X):
    X = _as_matrix(X)
    # sequential sum so a row's prediction does not depend on the batch shape
    total = np.zeros(len(X))
    for tree in model.trees:
        total += tree.predict(X)
    lo, hi = model.label_range
    return np.clip(total / model.n_trees, lo, hi)


def predict(model, x):
    return float(predict_many(model, [x])[0])


def rf_rankability(model, g, allow_mismatch=False):
    if not allow_mismatch and model.trained_n is not None and g.n != model.trained_n:
        raise VertexCountMismatchError(
            f"model trained on {model.trained_n}-vertex graphs, got n={g.n}"
        )
    return predict(model, feature_vector(g))


def _hex(x):
    return float(x).hex()


def _unhex(s):
    if not isinstance(s, str):
        raise CorruptModelError(f"expected hex float string, got {s!r}")
    return float.fromhex(s)


def model_to_dict(model):
    cfg = model.config
    trees = []
    for tree in model.trees:
        nodes = []
        for i in range(tree.node_count):
            leaf = tree.feature[i] < 0
            nodes.append([
                "leaf" if leaf else "split",
                int(tree.feature[i]),
                _hex(tree.threshold[i]),
                int(tree.left[i]),
                int(tree.right[i]),
                _hex(tree.value[i]),
            ])
        trees.append(nodes)
    return {
        "format": FORMAT_NAME,
        "version": SCHEMA_VERSION,
        "n_trees": model.n_trees,
        "trained_n": model.trained_n,
        "feature_names": list(model.feature_names),
        "label_range": [_hex(model.label_range[0]), _hex(model.label_range[1])],
        "seed": model.seed,
        "config": {
            "n_trees": cfg.n_trees,
            "max_features": cfg.max_features,
            "min_samples_split": cfg.min_samples_split,
            "min_samples_leaf": cfg.min_samples_leaf,
            "max_depth": cfg.max_depth,
            "bootstrap": cfg.bootstrap,
            "seed": cfg.seed,
        },
        "node_fields": list(NODE_FIELDS),
        "trees": trees,
    }


def _tree_from_records(records):
    if not isinstance(records, list) or not records:
        raise CorruptModelError("tree has no nodes")
    m = len(records)
    feature = np.empty(m, dtype=np.intp)
    threshold = np.empty(m)
    left = np.empty(m, dtype=np.intp)
    right = np.empty(m, dtype=np.intp)
    value = np.empty(m)
    for i, rec in enumerate(records):
        if not isinstance(rec, list) or len(rec) != len(NODE_FIELDS):
            raise CorruptModelError(f"node {i} is malformed")
        kind, f, thr, lo, hi, val = rec
        if kind == "leaf":
            feature[i], left[i], right[i] = -1, -1, -1
        elif kind == "split":
            if not (0 <= f < len(FEATURE_NAMES) and i < lo < m and i < hi < m):
                raise CorruptModelError(f"node {i} has invalid links")
            feature[i], left[i], right[i] = f, lo, hi
        else:
            raise CorruptModelError(f"node {i} has unknown kind {kind!r}")
        threshold[i] = _unhex(thr)
        value[i] = _unhex(val)
    return Tree(feature, threshold, left, right, value)


def model_from_dict(doc):
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise CorruptModelError("not a rankability forest document")
    if doc.get("version") != SCHEMA_VERSION:
        raise SchemaVersionMismatchError(
            f"model schema version {doc.get('version')!r}, expected {SCHEMA_VERSION}"
        )
    try:
        trees = [_tree_from_records(t) for t in doc["trees"]]
        if len(trees) != doc["n_trees"] or not trees:
            raise CorruptModelError("tree count does not match header")
        cfg = TrainConfig(**doc["config"])
        lo, hi = (_unhex(v) for v in doc["label_range"])
        return RandomForestModel(
            trees=trees,
            trained_n=doc["trained_n"],
            label_range=(lo, hi),
            seed=doc["seed"],
            feature_names=tuple(doc["feature_names"]),
            config=cfg,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModelError(f"invalid model document: {exc}") from exc


def save_model(model, path):
    Path(path).write_text(json.dumps(model_to_dict(model), separators=(",", ":")))


def load_model(path):
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptModelError(f"model file is not valid JSON: {exc}") from exc
    return model_from_dict(doc)
