import numpy as np
import pytest
from hypothesis import given

from rankability.errors import (
    IndexOutOfRangeError,
    NonBinaryEntryError,
    NonSquareError,
    SelfLoopError,
    TooSmallError,
)
from rankability.graph import (
    complete_dominance,
    cycle_graph,
    format_graph,
    from_adjacency,
    out_degrees,
    parse_graph,
    read_graph,
    toggle_edge,
    write_graph,
)

from conftest import EXAMPLE4, digraphs


class TestFromAdjacency:
    def test_example_has_five_edges(self, example4):
        assert example4.n_edges == 5
        assert sorted(example4.edges()) == [(0, 1), (0, 2), (0, 3), (2, 1), (3, 1)]

    def test_empty_2x2(self):
        assert from_adjacency(np.zeros((2, 2), dtype=int)).n_edges == 0

    def test_self_loop_rejected(self):
        a = np.zeros((3, 3), dtype=int)
        a[1, 1] = 1
        with pytest.raises(SelfLoopError):
            from_adjacency(a)

    @pytest.mark.parametrize(
        "matrix, exc",
        [
            ([[0, 1, 0]], NonSquareError),
            ([[0]], TooSmallError),
            ([[0, 2], [0, 0]], NonBinaryEntryError),
            ([[0, 0.5], [0, 0]], NonBinaryEntryError),
        ],
    )
    def test_invalid(self, matrix, exc):
        with pytest.raises(exc):
            from_adjacency(matrix)

    @given(digraphs())
    def test_round_trip(self, g):
        assert from_adjacency(g.adj) == g
        assert np.array_equal(from_adjacency(g.adj).adj, g.adj)

    def test_immutable(self, example4):
        with pytest.raises(ValueError):
            example4.adj[0, 1] = 0


class TestConstructors:
    def test_complete_dominance_4(self):
        expected = [[0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1], [0, 0, 0, 0]]
        assert complete_dominance(4).adj.tolist() == expected

    def test_complete_dominance_2(self):
        assert complete_dominance(2).edges() == [(0, 1)]

    @pytest.mark.parametrize("n", range(2, 12))
    def test_complete_dominance_edge_count(self, n):
        assert complete_dominance(n).n_edges == n * (n - 1) // 2

    def test_complete_dominance_reversal(self):
        # reversing edges and the vertex order gives the same dominance graph back
        g = complete_dominance(6)
        assert g.reverse().relabel(list(range(5, -1, -1))) == g

    def test_cycle_3(self):
        assert sorted(cycle_graph(3).edges()) == [(0, 1), (1, 2), (2, 0)]

    def test_cycle_2_is_two_cycle(self):
        assert sorted(cycle_graph(2).edges()) == [(0, 1), (1, 0)]

    @pytest.mark.parametrize("ctor", [complete_dominance, cycle_graph])
    def test_too_small(self, ctor):
        with pytest.raises(TooSmallError):
            ctor(1)


class TestOutDegrees:
    def test_four_vertex_example(self, example4):
        assert out_degrees(example4).tolist() == [3, 0, 1, 1]

    def test_dominance(self):
        assert out_degrees(complete_dominance(4)).tolist() == [3, 2, 1, 0]

    def test_cycle(self):
        assert out_degrees(cycle_graph(5)).tolist() == [1] * 5

    @given(digraphs())
    def test_sum_is_edge_count(self, g):
        assert out_degrees(g).sum() == g.n_edges


class TestToggle:
    def test_involution(self, example4):
        assert toggle_edge(toggle_edge(example4, 0, 1), 0, 1) == example4

    def test_removes_edge(self):
        g = toggle_edge(complete_dominance(4), 2, 3)
        assert (2, 3) not in g.edges()
        assert complete_dominance(4).adj[2, 3] == 1

    def test_self_loop(self, example4):
        with pytest.raises(SelfLoopError):
            toggle_edge(example4, 1, 1)

    def test_out_of_range(self, example4):
        with pytest.raises(IndexOutOfRangeError):
            toggle_edge(example4, 0, 4)

    @given(digraphs())
    def test_changes_one_entry(self, g):
        h = toggle_edge(g, 0, 1)
        assert np.count_nonzero(h.adj != g.adj) == 1
        assert abs(h.n_edges - g.n_edges) == 1


class TestTextFormat:
    def test_round_trip(self, tmp_path, example4):
        path = tmp_path / "g.txt"
        write_graph(example4, path)
        assert path.read_text().splitlines()[0] == "4"
        assert read_graph(path) == example4

    def test_parse(self):
        assert parse_graph("4\n" + "\n".join(" ".join(map(str, r)) for r in EXAMPLE4)).adj.tolist() == EXAMPLE4

    def test_wrong_count(self):
        with pytest.raises(NonSquareError):
            parse_graph("3\n0 1 0\n0 0 1\n")

    def test_format(self):
        assert format_graph(complete_dominance(2)) == "2\n0 1\n0 0\n"
