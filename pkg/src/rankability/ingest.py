"""Season-by-season rankability of sports results.

Input CSV columns: ``season,team_a,team_b,score_a,score_b``. A season's graph
has an edge ``i -> j`` iff team ``i`` beat team ``j`` at least once that
season; draws add nothing.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .edge import SearchOptions, edge_rankability
from .errors import (
    DegenerateInputError,
    MalformedRowError,
    MissingHeaderError,
    ModelMissingError,
    TooFewTeamsError,
    UnknownSeasonError,
)
from .evaluation import spearman, write_correlation_matrix
from .features import feature_matrix, feature_vector
from .forest import TrainConfig, fit, load_model, predict, save_model
from .generators import DatasetConfig, GeneratorId, gen_dataset
from .graph import Digraph
from .spectral import spectral_rankability

log = logging.getLogger(__name__)

HEADER = ["season", "team_a", "team_b", "score_a", "score_b"]


@dataclass(frozen=True)
class MatchRecord:
    season: str
    team_a: str
    team_b: str
    score_a: int
    score_b: int


@dataclass
class SeasonReport:
    season: str
    n_teams: int
    measures: dict
    re_skipped_too_large: bool = False


@dataclass(frozen=True)
class IngestOptions:
    re_max_n: int = 8
    auto_train: bool = True
    train_count: int = 1000
    train_seed: int = 0
    forest: TrainConfig = field(default_factory=TrainConfig)
    order: tuple = None  # explicit chronological season order


def _score(text, line, name):
    try:
        value = int(text)
    except ValueError:
        raise MalformedRowError(line, f"{name} {text!r} is not an integer") from None
    if value < 0:
        raise MalformedRowError(line, f"{name} is negative")
    return value


def parse_matches(csv_path):
    records = []
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != HEADER:
            raise MissingHeaderError(f"expected header {','.join(HEADER)}")
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(HEADER):
                raise MalformedRowError(line, f"expected {len(HEADER)} fields, got {len(row)}")
            season, team_a, team_b = (cell.strip() for cell in row[:3])
            if not season or not team_a or not team_b:
                raise MalformedRowError(line, "empty season or team name")
            if team_a == team_b:
                raise MalformedRowError(line, f"team {team_a!r} plays itself")
            records.append(
                MatchRecord(
                    season,
                    team_a,
                    team_b,
                    _score(row[3].strip(), line, "score_a"),
                    _score(row[4].strip(), line, "score_b"),
                )
            )
    return records


def season_graph(records, season):
    """Graph and sorted team-label table for one season."""
    games = [r for r in records if r.season == season]
    if not games:
        raise UnknownSeasonError(f"no matches for season {season!r}")
    labels = sorted({r.team_a for r in games} | {r.team_b for r in games})
    if len(labels) < 2:
        raise TooFewTeamsError(f"season {season!r} has fewer than 2 teams")
    index = {name: i for i, name in enumerate(labels)}
    adj = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for r in games:
        a, b = index[r.team_a], index[r.team_b]
        if r.score_a > r.score_b:
            adj[a, b] = 1
        elif r.score_b > r.score_a:
            adj[b, a] = 1
    return Digraph(adj), labels


def fixtures_from_graph(g, season, labels):
    """Double round robin whose season graph is exactly ``g``.

    Each ordered pair gets one fixture: a 1-0 home win when the edge exists,
    otherwise a 0-0 draw.
    """
    out = []
    for i in range(g.n):
        for j in range(g.n):
            if i != j:
                won = int(g.adj[i, j])
                out.append(MatchRecord(season, labels[i], labels[j], won, 0))
    return out


def write_matches_csv(records, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(HEADER)
        for r in records:
            w.writerow([r.season, r.team_a, r.team_b, r.score_a, r.score_b])


def seasons_in(records, order=None):
    present = {r.season for r in records}
    if order:
        return [s for s in order if s in present]
    return sorted(present)


def model_path(models_dir, n):
    return Path(models_dir) / f"n{n}.rf"


def auto_train_model(n, opts):
    cfg = DatasetConfig(n=n, count=opts.train_count, generator=GeneratorId.TARGET, seed=opts.train_seed)
    samples = gen_dataset(cfg)
    X = feature_matrix([s.graph for s in samples])
    return fit(X, [s.label for s in samples], opts.forest, trained_n=n)


def resolve_model(n, models, opts, models_dir=None):
    if n in models:
        return models[n]
    if models_dir is not None and model_path(models_dir, n).exists():
        models[n] = load_model(model_path(models_dir, n))
        return models[n]
    if not opts.auto_train:
        raise ModelMissingError(f"no forest for {n}-team seasons and auto-training is disabled")
    log.info("training forest for n=%d", n)
    models[n] = auto_train_model(n, opts)
    if models_dir is not None:
        Path(models_dir).mkdir(parents=True, exist_ok=True)
        save_model(models[n], model_path(models_dir, n))
    return models[n]


def season_report(records, seasons=None, models=None, opts=None, models_dir=None):
    """Rankability per season plus a Spearman matrix between the measures.

    Returns ``(reports, names, matrix)``; ``matrix[i][j]`` is NaN when a
    pair of series is constant across seasons.
    """
    opts = opts or IngestOptions()
    models = {} if models is None else models
    seasons = seasons_in(records, opts.order) if seasons is None else list(seasons)
    reports = []
    for season in seasons:
        g, labels = season_graph(records, season)
        n = len(labels)
        measures = {}
        skipped = n > opts.re_max_n
        if not skipped:
            measures["R_e"] = edge_rankability(g, SearchOptions(max_n=max(opts.re_max_n, 2)))
        measures["R_s"] = spectral_rankability(g)
        model = resolve_model(n, models, opts, models_dir)
        measures["R_f"] = predict(model, feature_vector(g))
        reports.append(SeasonReport(season, n, measures, skipped))

    names = [m for m in ("R_e", "R_s", "R_f") if reports and all(m in r.measures for r in reports)]
    matrix = np.full((len(names), len(names)), math.nan)
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i == j:
                matrix[i, j] = 1.0
                continue
            try:
                matrix[i, j] = spearman(
                    [r.measures[a] for r in reports], [r.measures[b] for r in reports]
                )
            except (DegenerateInputError, ValueError) as exc:
                log.warning("no correlation for %s vs %s: %s", a, b, exc)
    return reports, names, matrix


def write_seasons_csv(reports, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["season", "n_teams", "r_e", "r_s", "r_f"])
        for r in reports:
            w.writerow(
                [r.season, r.n_teams]
                + ["" if m not in r.measures else repr(float(r.measures[m])) for m in ("R_e", "R_s", "R_f")]
            )


def write_report(reports, names, matrix, out_dir):
    from .plotting import scatter_matrix_svg, timeseries_svg

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_seasons_csv(reports, out / "seasons.csv")
    write_correlation_matrix(names, matrix, out / "correlations.csv")
    seasons = [r.season for r in reports]
    series = {m: [r.measures.get(m) for r in reports] for m in ("R_e", "R_s", "R_f")}
    series = {m: v for m, v in series.items() if any(x is not None for x in v)}
    timeseries_svg(seasons, series, out / "timeseries.svg")
    full = {m: [r.measures[m] for r in reports] for m in names}
    scatter_matrix_svg(full, matrix, out / "scatter_matrix.svg")
