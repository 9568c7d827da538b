"""Edge rankability: distance to the nearest complete dominance graph.

``k`` is the minimum number of single-entry edits (edge additions plus
removals) turning the graph into some complete dominance graph and ``p`` is
the number of vertex orderings attaining that minimum. Distinct orderings give
distinct dominance edge sets, so ``p`` also counts reachable dominance graphs.
"""

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import LengthMismatchError, SearchTimeoutError, TooLargeError, TooSmallError

BRUTE_FORCE_MAX_N = 9


@dataclass(frozen=True)
class KPResult:
    k: int
    p: int
    minimizers: tuple = None


@dataclass(frozen=True)
class SearchOptions:
    max_n: int = 12
    time_budget: float = None  # seconds; None means unbounded
    list_minimizers: bool = False
    max_minimizers: int = None


def pair_costs(g):
    """``c[u, v]``: edits needed on the pair {u, v} when u is ranked above v."""
    a = g.adj
    c = 1 - a + a.T
    np.fill_diagonal(c, 0)
    return c


def ordering_cost(g, order):
    """Edits needed so that ``g`` permuted by ``order`` is strictly upper-triangular ones."""
    order = [int(v) for v in order]
    if len(order) != g.n or sorted(order) != list(range(g.n)):
        raise LengthMismatchError(f"ordering {order} is not a permutation of 0..{g.n - 1}")
    permuted = g.adj[np.ix_(order, order)]
    upper = np.triu_indices(g.n, k=1)
    return int((1 - permuted[upper]).sum() + permuted.T[upper].sum())


def compute_kp_bruteforce(g):
    """Minimise :func:`ordering_cost` over all ``n!`` orderings."""
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLargeError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    a = g.adj
    costs = np.zeros(len(perms), dtype=np.int64)
    for pos_p in range(n):
        for pos_q in range(pos_p + 1, n):
            hi, lo = perms[:, pos_p], perms[:, pos_q]
            costs += (1 - a[hi, lo]) + a[lo, hi]
    k = int(costs.min())
    return KPResult(k=k, p=int(np.count_nonzero(costs == k)))


def _subset_tables(m, n):
    """``t[v, mask] = sum(m[u, v] for u in mask)`` for every bitmask over n vertices."""
    t = np.zeros((n, 1 << n), dtype=np.int64)
    for b in range(n):
        lo = 1 << b
        t[:, lo : 2 * lo] = t[:, :lo] + m[b][:, None]
    return t


def _heuristic_order(g):
    score = g.adj.sum(axis=1) - g.adj.sum(axis=0)
    return [int(v) for v in np.argsort(-score, kind="stable")]


def compute_kp(g, opts=None):
    """Exact ``(k, p)`` by branch and bound over the set of already-placed vertices.

    A search node is the set ``S`` of vertices occupying the top ``|S|``
    positions. Every ordering of ``S`` reaching the node is merged into one
    state holding the cheapest internal cost and the number of orderings that
    attain it, which is what lets ``p`` be counted without enumerating ties.
    A node is pruned when its committed cost (pairs inside ``S`` plus pairs
    between ``S`` and the rest) plus the number of drawn or contradicted pairs
    left among the unplaced vertices exceeds the incumbent ``k``.
    """
    opts = opts or SearchOptions()
    n = g.n
    if n < 2:
        raise TooSmallError("need at least 2 vertices")
    if n > opts.max_n:
        raise TooLargeError(f"n={n} exceeds max_n={opts.max_n}")
    deadline = None if opts.time_budget is None else time.monotonic() + opts.time_budget

    def check_clock():
        if deadline is not None and time.monotonic() > deadline:
            raise SearchTimeoutError(f"edge rankability search exceeded {opts.time_budget}s")

    c = pair_costs(g)
    a = g.adj
    tied = (a == a.T).astype(np.int64)
    np.fill_diagonal(tied, 0)
    full = (1 << n) - 1

    # colsum[v][S]: cost of pairs (u above v) for u in S
    colsum = _subset_tables(c, n)
    rowsum = _subset_tables(c.T, n)
    tie_tab = _subset_tables(tied, n)

    cross = np.zeros(1 << n, dtype=np.int64)
    bound = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        lo = 1 << b
        masks = np.arange(lo, 2 * lo)
        cross[masks] = cross[:lo] - colsum[b, :lo] + rowsum[b, full ^ masks]
        bound[masks] = bound[:lo] + tie_tab[b, :lo]
    colsum = colsum.tolist()
    cross = cross.tolist()
    bound = bound.tolist()

    incumbent = ordering_cost(g, _heuristic_order(g))
    layers = [{0: (0, 1)}]
    for _ in range(n):
        check_clock()
        nxt = {}
        for mask, (cost, count) in layers[-1].items():
            for v in range(n):
                bit = 1 << v
                if mask & bit:
                    continue
                new_mask = mask | bit
                new_cost = cost + colsum[v][mask]
                if new_cost + cross[new_mask] + bound[full ^ new_mask] > incumbent:
                    continue
                prev = nxt.get(new_mask)
                if prev is None or new_cost < prev[0]:
                    nxt[new_mask] = (new_cost, count)
                elif new_cost == prev[0]:
                    nxt[new_mask] = (new_cost, prev[1] + count)
        layers.append(nxt)
        if len(nxt) > 4096:
            check_clock()

    k, p = layers[-1][full]
    minimizers = None
    if opts.list_minimizers:
        minimizers = tuple(_enumerate_minimizers(layers, colsum, n, opts.max_minimizers))
    return KPResult(k=int(k), p=int(p), minimizers=minimizers)


def _enumerate_minimizers(layers, colsum, n, limit):
    out = []

    def walk(mask, depth, suffix):
        if limit is not None and len(out) >= limit:
            return
        if depth == 0:
            out.append(tuple(reversed(suffix)))
            return
        cost = layers[depth][mask][0]
        below = layers[depth - 1]
        for v in range(n):
            bit = 1 << v
            if not mask & bit:
                continue
            prev = below.get(mask ^ bit)
            if prev is not None and prev[0] + colsum[v][mask ^ bit] == cost:
                suffix.append(v)
                walk(mask ^ bit, depth - 1, suffix)
                suffix.pop()

    walk((1 << n) - 1, n, [])
    return out


def rankability_from_kp(k, p, n):
    k_max = n * (n - 1) // 2
    return float(1 - Fraction(k * p, k_max * math.factorial(n)))


def edge_rankability(g, opts=None):
    result = compute_kp(g, opts)
    return rankability_from_kp(result.k, result.p, g.n)


def edge_rankability_cycle(n):
    """Closed form of the edge rankability of a directed n-cycle."""
    if n < 3:
        raise TooSmallError(f"cycle formula needs n >= 3, got {n}")
    fact = 1.0
    for i in range(2, n + 1):
        fact *= i
    return 1.0 - (2 + (n - 1) * (n - 2)) / (fact * (n - 1))
