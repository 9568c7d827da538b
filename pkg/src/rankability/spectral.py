"""Spectral rankability from Laplacian spectra and Hausdorff distances."""

import cmath
import logging
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import linkage, to_tree
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist

from .errors import EmptySpectrumError, NoConvergenceError, TooSmallError
from .graph import out_degrees

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralParts:
    D: np.ndarray
    L: np.ndarray
    S: np.ndarray


def spectral_parts(g):
    """Out-degree matrix, Laplacian ``D - A`` and the benchmark ``diag(n-1, ..., 0)``."""
    d = out_degrees(g)
    D = np.diag(d)
    L = D - g.adj
    S = np.diag(np.arange(g.n - 1, -1, -1))
    return SpectralParts(D=D, L=L, S=S)


def eigenvalues(m):
    """All eigenvalues of a real square matrix, with multiplicity.

    LAPACK ``geev`` (Hessenberg reduction followed by shifted QR), then
    :func:`merge_clusters` to repair defective eigenvalues.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"need a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    try:
        values = np.linalg.eigvals(m).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    return merge_clusters(values, max(1.0, float(np.linalg.norm(m, 1))))


def _jordan_radius(k, scale):
    # a k-fold defective eigenvalue comes back spread over a ring of about this radius
    return 4.0 * (k * np.finfo(float).eps * scale) ** (1.0 / k)


def merge_clusters(values, scale):
    """Replace each tight cluster of computed eigenvalues by the cluster mean.

    A defective eigenvalue of multiplicity ``k`` is returned by QR as ``k``
    values scattered over a ring of radius about ``(eps * scale) ** (1/k)``,
    while their mean stays accurate to about ``eps * scale``. Clusters come
    from a complete-linkage dendrogram (merge height = cluster diameter); the
    largest nodes whose diameter fits the ring size for their own multiplicity
    are merged, everything else is left alone.
    """
    values = np.asarray(values, dtype=complex)
    n = values.size
    if n < 2:
        return values
    tree = to_tree(linkage(pdist(np.column_stack([values.real, values.imag])), method="complete"))
    out = values.copy()
    stack = [tree]
    while stack:
        node = stack.pop()
        if node.is_leaf():
            continue
        if node.dist <= 2 * _jordan_radius(node.count, scale):
            idx = node.pre_order()
            out[idx] = values[idx].mean()
        else:
            stack.extend((node.left, node.right))
    return out


def laplacian_spectrum(g, L=None):
    """Eigenvalues of ``L = D - A``, one strongly connected component at a time.

    Ordering vertices by component makes ``L`` block triangular, so its
    spectrum is the union of the diagonal blocks' spectra. Singleton blocks
    give their out-degree exactly.
    """
    L = spectral_parts(g).L if L is None else L
    n_comp, labels = connected_components(g.adj, directed=True, connection="strong")
    parts = []
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        if idx.size == 1:
            parts.append(np.array([L[idx[0], idx[0]]], dtype=complex))
        else:
            parts.append(eigenvalues(L[np.ix_(idx, idx)]))
    values = np.concatenate(parts)
    return values[np.lexsort((values.imag, values.real))]


def _as_points(values):
    pts = np.asarray(values, dtype=complex).ravel()
    if pts.size == 0:
        raise EmptySpectrumError("spectrum is empty")
    return pts


def spectral_variation(a, b):
    """``max over x in a of min over y in b of |x - y|`` (one-sided)."""
    a, b = _as_points(a), _as_points(b)
    return float(np.abs(a[:, None] - b[None, :]).min(axis=1).max())


def hausdorff(a, b):
    return max(spectral_variation(a, b), spectral_variation(b, a))


@dataclass(frozen=True)
class SpectralReport:
    value: float
    raw: float
    hd_degree: float
    hd_laplacian: float
    spectrum_D: np.ndarray
    spectrum_L: np.ndarray
    spectrum_S: np.ndarray


def spectral_report(g):
    n = g.n
    if n < 2:
        raise TooSmallError("need at least 2 vertices")
    parts = spectral_parts(g)
    # D and S are diagonal, their spectra are read off exactly
    sd = np.diagonal(parts.D).astype(complex)
    ss = np.diagonal(parts.S).astype(complex)
    sl = laplacian_spectrum(g, parts.L)
    hd_d = hausdorff(sd, ss)
    hd_l = hausdorff(sl, ss)
    raw = 1.0 - (hd_d + hd_l) / (2 * (n - 1))
    value = min(1.0, max(0.0, raw))
    if value != raw:
        log.info("spectral rankability %.6g clamped to %.1f", raw, value)
    return SpectralReport(value, raw, hd_d, hd_l, sd, sl, ss)


def spectral_rankability(g):
    return spectral_report(g).value


def spectral_rankability_cycle(n):
    """Closed form of the spectral rankability of a directed n-cycle."""
    if n < 3:
        raise TooSmallError(f"cycle formula needs n >= 3, got {n}")
    if n % 2 == 0:
        return 1.0 - (2 * n - 5) / (2 * n - 2)
    return 1.0 - (n - 2 + abs(n - 2 - cmath.exp(-1j * cmath.pi / n))) / (2 * n - 2)
