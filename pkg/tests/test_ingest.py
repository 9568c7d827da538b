import csv

import numpy as np
import pytest

from conftest import EXAMPLE4
from rankability.errors import (
    MalformedRowError,
    MissingHeaderError,
    ModelMissingError,
    TooFewTeamsError,
    UnknownSeasonError,
)
from rankability.forest import TrainConfig, fit, save_model
from rankability.generators import perturb_dominance
from rankability.graph import complete_dominance, from_adjacency
from rankability.ingest import (
    IngestOptions,
    MatchRecord,
    fixtures_from_graph,
    model_path,
    parse_matches,
    season_graph,
    season_report,
    seasons_in,
    write_matches_csv,
    write_report,
)

FAST = IngestOptions(train_count=80, forest=TrainConfig(n_trees=5))
HEADER = "season,team_a,team_b,score_a,score_b\n"


def write(tmp_path, body, header=HEADER):
    path = tmp_path / "m.csv"
    path.write_text(header + body)
    return path


def league(g, season, names=None):
    names = names or [f"T{i}" for i in range(g.n)]
    return fixtures_from_graph(g, season, names)


class TestParse:
    def test_draw_row(self, tmp_path):
        recs = parse_matches(write(tmp_path, "1974,Wales,Ireland,9,9\n"))
        assert recs == [MatchRecord("1974", "Wales", "Ireland", 9, 9)]

    def test_blank_lines_and_spaces(self, tmp_path):
        recs = parse_matches(write(tmp_path, "\n 2001 , A , B , 3 , 1 \n\n"))
        assert recs == [MatchRecord("2001", "A", "B", 3, 1)]

    @pytest.mark.parametrize(
        "row, line",
        [
            ("1974,Wales,Ireland,9\n", 2),
            ("1974,Wales,Wales,9,3\n", 2),
            ("1974,Wales,Ireland,x,3\n", 2),
            ("1974,Wales,Ireland,-1,3\n", 2),
            ("1974,,Ireland,1,3\n", 2),
            ("1974,A,B,1,0\n1974,A,B,1,0,7\n", 3),
        ],
    )
    def test_malformed(self, tmp_path, row, line):
        with pytest.raises(MalformedRowError) as info:
            parse_matches(write(tmp_path, row))
        assert info.value.line == line

    def test_missing_header(self, tmp_path):
        with pytest.raises(MissingHeaderError):
            parse_matches(write(tmp_path, "1974,Wales,Ireland,9,9\n", header=""))

    def test_empty_file(self, tmp_path):
        with pytest.raises(MissingHeaderError):
            parse_matches(write(tmp_path, "", header=""))

    def test_csv_round_trip(self, tmp_path):
        recs = league(complete_dominance(4), "s1") + league(from_adjacency(EXAMPLE4), "s2")
        write_matches_csv(recs, tmp_path / "out.csv")
        assert parse_matches(tmp_path / "out.csv") == recs


class TestSeasonGraph:
    def test_round_robin_dominance(self):
        recs = [MatchRecord("s", a, b, 2, 1) for a, b in [("A", "B"), ("A", "C"), ("B", "C")]]
        g, labels = season_graph(recs, "s")
        assert labels == ["A", "B", "C"]
        assert g == complete_dominance(3)

    def test_split_fixtures_two_cycle(self):
        recs = [MatchRecord("s", "A", "B", 1, 0), MatchRecord("s", "B", "A", 2, 0)]
        g, _ = season_graph(recs, "s")
        assert g.adj.tolist() == [[0, 1], [1, 0]]

    def test_away_win(self):
        g, _ = season_graph([MatchRecord("s", "A", "B", 0, 3)], "s")
        assert g.adj.tolist() == [[0, 0], [1, 0]]

    def test_draw_adds_nothing(self):
        g, labels = season_graph([MatchRecord("s", "A", "B", 1, 1)], "s")
        assert g.n_edges == 0 and labels == ["A", "B"]

    def test_fixtures_reproduce_graph(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            g = perturb_dominance(7, 0.3, rng)
            h, labels = season_graph(league(g, "x"), "x")
            assert h == g and labels == [f"T{i}" for i in range(7)]

    def test_row_order_invariant(self):
        recs = league(from_adjacency(EXAMPLE4), "s")
        shuffled = [recs[i] for i in np.random.default_rng(1).permutation(len(recs))]
        assert season_graph(shuffled, "s") == season_graph(recs, "s")

    def test_rename_relabels(self):
        g = perturb_dominance(5, 0.4, np.random.default_rng(2))
        names = ["e", "d", "c", "b", "a"]
        h, labels = season_graph(league(g, "s", names), "s")
        assert labels == sorted(names)
        perm = [names.index(x) for x in labels]
        assert np.array_equal(h.adj, g.adj[np.ix_(perm, perm)])

    def test_unknown_season(self):
        with pytest.raises(UnknownSeasonError):
            season_graph([MatchRecord("s", "A", "B", 1, 0)], "t")

    def test_too_few_teams(self):
        with pytest.raises(TooFewTeamsError):
            season_graph([MatchRecord("s", "A", "A", 1, 0)], "s")

    def test_season_order(self):
        recs = league(complete_dominance(3), "2001") + league(complete_dominance(3), "1999")
        assert seasons_in(recs) == ["1999", "2001"]
        assert seasons_in(recs, order=("2001", "1999", "2005")) == ["2001", "1999"]


class TestSeasonReport:
    def test_example_season(self):
        reports, _, _ = season_report(league(from_adjacency(EXAMPLE4), "s"), opts=FAST)
        (r,) = reports
        assert r.n_teams == 4
        assert r.measures["R_e"] == pytest.approx(0.986, abs=1e-3)
        assert r.measures["R_s"] == pytest.approx(2 / 3, abs=1e-9)
        assert 0 <= r.measures["R_f"] <= 1

    def test_dominance_league(self):
        recs = [r for s in range(3) for r in league(complete_dominance(5), str(s))]
        reports, names, matrix = season_report(recs, opts=FAST)
        assert all(r.measures["R_e"] == 1.0 and r.measures["R_s"] == 1.0 for r in reports)
        assert names == ["R_e", "R_s", "R_f"]
        assert np.isnan(matrix[0, 1])  # constant series

    def test_mixed_sizes_skip_edge(self):
        rng = np.random.default_rng(3)
        recs = league(perturb_dominance(5, 0.2, rng), "a") + league(perturb_dominance(10, 0.2, rng), "b")
        reports, names, _ = season_report(recs, opts=FAST)
        big = reports[1]
        assert big.n_teams == 10 and big.re_skipped_too_large
        assert "R_e" not in big.measures
        assert names == ["R_s", "R_f"]

    def test_model_missing(self):
        opts = IngestOptions(auto_train=False)
        with pytest.raises(ModelMissingError):
            season_report(league(complete_dominance(4), "s"), opts=opts)

    def test_models_dir_used_and_filled(self, tmp_path):
        const = fit([[0, 0, 0, 0, 0]], [0.25], TrainConfig(n_trees=1), trained_n=4)
        save_model(const, model_path(tmp_path, 4))
        recs = league(complete_dominance(4), "a") + league(complete_dominance(5), "b")
        reports, _, _ = season_report(recs, opts=FAST, models_dir=tmp_path)
        assert reports[0].measures["R_f"] == 0.25
        assert model_path(tmp_path, 5).exists()

    def test_write_report(self, tmp_path):
        rng = np.random.default_rng(4)
        recs = [r for s in range(6) for r in league(perturb_dominance(6, 0.08 * s, rng), f"y{s}")]
        reports, names, matrix = season_report(recs, opts=FAST)
        write_report(reports, names, matrix, tmp_path / "out")
        out = tmp_path / "out"
        for f in ("seasons.csv", "correlations.csv", "timeseries.svg", "scatter_matrix.svg"):
            assert (out / f).stat().st_size > 0
        rows = list(csv.DictReader(open(out / "seasons.csv")))
        assert [r["season"] for r in rows] == [f"y{s}" for s in range(6)]
        assert all(0 <= float(r[k]) <= 1 for r in rows for k in ("r_e", "r_s", "r_f"))
        assert open(out / "timeseries.svg").read().lstrip().startswith("<?xml")
