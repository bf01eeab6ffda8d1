"""Exact orthogonality checks and the exhaustive clique search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ResourceError
from ..numtheory import MeasureParams, in_scaled_zero_set, in_zero_set
from ..treemap import SpectrumCandidate


def check_bizero(c: SpectrumCandidate) -> tuple[bool, tuple | None]:
    """Check that every scaled difference ``r (lambda_i - lambda_j)`` is a zero.

    Returns
    -------
    ok : bool
    witness : tuple of int or None
        First failing pair ``(lambda_i, lambda_j)`` with ``j < i``.

    Examples
    --------
    >>> P = MeasureParams(2, 4)
    >>> check_bizero(SpectrumCandidate.from_lambdas(P, [0, 1, 2]))
    (False, (2, 0))
    """
    p = c.params
    r = p.require_r()
    lams = c.lambdas
    for i in range(1, len(lams)):
        li = lams[i]
        for j in range(i):
            if not in_zero_set(r * (li - lams[j]), p):
                return False, (li, lams[j])
    return True, None


def check_maximality_window(c: SpectrumCandidate, window: int, prefix: int) -> list[int]:
    """Scaled frequencies ``r m`` (``|m| <= window``) orthogonal to the first ``prefix`` elements.

    Elements of the prefix are excluded, so an empty result means no
    frequency in the window extends the prefix.
    """
    p = c.params
    r = p.require_r()
    base = [r * x for x in c.lambdas[:prefix]]
    present = set(base)
    out = []
    for m in range(-window, window + 1):
        theta = r * m
        if theta in present:
            continue
        if all(in_zero_set(theta - v, p) for v in base):
            out.append(theta)
    return out


# ---------------------------------------------------------------------------
# clique search


def degeneracy_order(A: np.ndarray) -> np.ndarray:
    """Smallest-last vertex order of a symmetric boolean adjacency matrix."""
    n = A.shape[0]
    deg = A.sum(axis=1).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    big = np.iinfo(np.int64).max
    for i in range(n):
        v = int(np.argmin(np.where(alive, deg, big)))
        order[i] = v
        alive[v] = False
        deg -= A[v]
    return order


def _bits(rows: np.ndarray) -> list[int]:
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def max_clique(A: np.ndarray) -> list[int]:
    """Maximum clique of a graph with boolean adjacency matrix ``A``.

    Branch and bound with greedy coloring bounds (MCQ style) on bit-set
    rows.  Vertices are relabeled in reverse degeneracy order so that the
    dense core is colored first.
    """
    A = np.asarray(A, dtype=bool)
    n = A.shape[0]
    if n == 0:
        return []
    order = degeneracy_order(A)[::-1]
    radj = _bits(A[np.ix_(order, order)])
    best: list[int] = []

    def color_sort(P: int):
        verts, cols = [], []
        k = 0
        U = P
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                verts.append(v)
                cols.append(k)
                U &= ~low
                Q &= ~low & ~radj[v]
        return verts, cols

    def expand(C: list[int], P: int):
        nonlocal best
        verts, cols = color_sort(P)
        for i in range(len(verts) - 1, -1, -1):
            if len(C) + cols[i] <= len(best):
                return
            v = verts[i]
            C.append(v)
            NP = P & radj[v]
            if NP:
                expand(C, NP)
            elif len(C) > len(best):
                best = list(C)
            C.pop()
            P &= ~(1 << v)

    expand([], (1 << n) - 1)
    return sorted(int(order[v]) for v in best)


@dataclass
class OrthogonalSearchResult:
    """Largest mutually orthogonal frequency set found in a window.

    Frequencies are ``(b/q) * m`` for the integer coordinates ``m`` in
    ``witness``; the set always contains 0.
    """

    params: MeasureParams
    window: int
    size: int
    witness: list

    def frequencies(self) -> list[Fraction]:
        return [Fraction(self.params.b * m, self.params.q) for m in self.witness]


def max_orthogonal_search(p: MeasureParams, window: int = 500,
                          max_vertices: int = 6000) -> OrthogonalSearchResult:
    """Exact maximum size of an orthogonal set containing 0 with coordinates in the window.

    Any orthogonal set can be translated to contain 0, after which all its
    elements lie in the zero set, hence on the lattice ``(b/q) Z``.  Vertices
    are lattice points ``m`` with ``0 < |m| <= window`` whose frequency is a
    zero; two vertices are adjacent when their difference is a zero too.

    Raises
    ------
    ResourceError
        If the graph would exceed ``max_vertices``.
    """
    q, b = p.q, p.b
    W = int(window)
    if W < 1:
        return OrthogonalSearchResult(p, W, 1, [0])
    table = np.array([in_scaled_zero_set(d, q, b) for d in range(-2 * W, 2 * W + 1)], dtype=bool)
    coords = np.array([m for m in range(-W, W + 1) if m and table[m + 2 * W]], dtype=np.int64)
    if len(coords) > max_vertices:
        raise ResourceError(f"{len(coords)} vertices exceed the limit {max_vertices}")
    if len(coords) == 0:
        return OrthogonalSearchResult(p, W, 1, [0])
    diff = coords[:, None] - coords[None, :] + 2 * W
    A = table[diff]
    clique = max_clique(A)
    witness = [0] + sorted(int(coords[i]) for i in clique)
    return OrthogonalSearchResult(p, W, len(witness), witness)
