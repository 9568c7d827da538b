"""Unweighted directed graphs stored as dense 0/1 adjacency matrices."""

from pathlib import Path

import numpy as np

from .errors import (
    IndexOutOfRangeError,
    NonBinaryEntryError,
    NonSquareError,
    SelfLoopError,
    TooSmallError,
)


class Digraph:
    """Immutable simple digraph on vertices ``0..n-1``.

    ``adj[i, j] == 1`` iff the edge ``i -> j`` exists. The diagonal is always
    zero and ``n >= 2``.
    """

    __slots__ = ("_adj",)

    def __init__(self, adj):
        adj = np.array(adj, dtype=np.int64, copy=True)
        adj.setflags(write=False)
        self._adj = adj

    @property
    def adj(self):
        return self._adj

    @property
    def n(self):
        return self._adj.shape[0]

    @property
    def n_edges(self):
        return int(self._adj.sum())

    def edges(self):
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self._adj))]

    def reverse(self):
        """Graph with every edge direction flipped."""
        return Digraph(self._adj.T)

    def relabel(self, perm):
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        perm = np.asarray(perm)
        new = np.zeros_like(self._adj)
        new[np.ix_(perm, perm)] = self._adj
        return Digraph(new)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._adj.shape == other._adj.shape and bool(
            np.array_equal(self._adj, other._adj)
        )

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={self.n_edges})"


def _check_n(n):
    if n < 2:
        raise TooSmallError(f"need at least 2 vertices, got {n}")


def from_adjacency(matrix):
    """Validate ``matrix`` and wrap it as a :class:`Digraph`."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"adjacency matrix must be square, got shape {a.shape}")
    _check_n(a.shape[0])
    if not np.all((a == 0) | (a == 1)):
        raise NonBinaryEntryError("adjacency entries must be 0 or 1")
    if np.any(np.diagonal(a) != 0):
        i = int(np.flatnonzero(np.diagonal(a))[0])
        raise SelfLoopError(f"self-loop at vertex {i}")
    return Digraph(a)


def complete_dominance(n):
    """Complete dominance graph: ``i -> j`` for every ``i < j``."""
    _check_n(n)
    return Digraph(np.triu(np.ones((n, n), dtype=np.int64), k=1))


def cycle_graph(n):
    """Directed cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
    _check_n(n)
    a = np.zeros((n, n), dtype=np.int64)
    a[np.arange(n), (np.arange(n) + 1) % n] = 1
    return Digraph(a)


def complete_digraph(n):
    """Every ordered pair of distinct vertices joined (all 2-cycles)."""
    _check_n(n)
    return Digraph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64))


def empty_graph(n):
    _check_n(n)
    return Digraph(np.zeros((n, n), dtype=np.int64))


def out_degrees(g):
    return g.adj.sum(axis=1)


def toggle_edge(g, i, j):
    """Return a copy of ``g`` with entry ``(i, j)`` flipped."""
    n = g.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRangeError(f"vertex pair ({i}, {j}) outside 0..{n - 1}")
    if i == j:
        raise SelfLoopError(f"cannot toggle diagonal entry ({i}, {i})")
    a = g.adj.copy()
    a[i, j] = 1 - a[i, j]
    return Digraph(a)


# Text format: first line n, then n rows of n space-separated 0/1 digits.

def format_graph(g):
    lines = [str(g.n)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in g.adj)
    return "\n".join(lines) + "\n"


def parse_graph(text):
    tokens = text.split()
    if not tokens:
        raise NonSquareError("empty graph file")
    try:
        n = int(tokens[0])
        values = [int(t) for t in tokens[1:]]
    except ValueError as exc:
        raise NonBinaryEntryError(f"non-integer token in graph file: {exc}") from None
    if len(values) != n * n:
        raise NonSquareError(f"expected {n * n} entries for n={n}, got {len(values)}")
    return from_adjacency(np.array(values, dtype=np.int64).reshape(n, n))


def read_graph(path):
    return parse_graph(Path(path).read_text())


def write_graph(g, path):
    Path(path).write_text(format_graph(g))
