"""Exact triangle and 6-cycle censuses and their densities.

Counting conventions
--------------------
A triangle is an unordered vertex triple inducing three edges; a 6-cycle
is an unordered set of six vertices carrying a (not necessarily induced)
cycle through all six, counted once per cyclic edge set.  Densities are

    c3_hat = n3 / C(n, 3)
    c6_hat = n6 / (60 * C(n, 6))

The 60 comes from the permutation average that defines the 6-cycle
density: on a fixed 6-set, exactly 12 of the 6! vertex orderings trace a
given undirected 6-cycle (6 rotations x 2 directions), so the averaged
indicator equals 12 * n6(set) / 6!.  oracle_census() evaluates that
permutation sum literally and pins the constant.

The fast counters enumerate canonically: each cycle is rooted at its
minimum-label vertex v1, paths v1-v2-...-v6 extend through vertices
labelled above v1, and the direction tie is broken by v2 < v6.  Counts
are exact integers; the fast path uses 64-bit accumulators and falls
back to arbitrary-precision Python integers whenever the theoretical
maximum count could overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

import numpy as np

from .errors import SizeError
from .graph import Graph

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_INT64_SAFE_LIMIT = 2 ** 62


def _first_greater(arr, lo, hi, x):
    # First index in [lo, hi) with arr[idx] > x (rows are sorted).
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] > x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _triangle_loop(indptr, indices, n):
    total = 0
    for u in range(n):
        au, bu = indptr[u], indptr[u + 1]
        eu = _first_greater(indices, au, bu, u)
        for ei in range(eu, bu):
            v = indices[ei]
            # merge-intersect N(u) and N(v), keeping only w > v so each
            # triangle u < v < w is counted exactly once
            i = _first_greater(indices, au, bu, v)
            j = _first_greater(indices, indptr[v], indptr[v + 1], v)
            jend = indptr[v + 1]
            while i < bu and j < jend:
                wi = indices[i]
                wj = indices[j]
                if wi == wj:
                    total += 1
                    i += 1
                    j += 1
                elif wi < wj:
                    i += 1
                else:
                    j += 1
    return total


def _six_cycle_loop(indptr, indices, n, mark):
    # Canonical enumeration: min-rooted, intermediates above the root,
    # direction fixed by v2 < v6, closing edge checked against `mark`
    # (the root's neighbor indicator).
    total = 0
    for v1 in range(n):
        a1, b1 = indptr[v1], indptr[v1 + 1]
        s1 = _first_greater(indices, a1, b1, v1)
        if s1 >= b1:
            continue
        for ei in range(a1, b1):
            mark[indices[ei]] = 1
        for i2 in range(s1, b1):
            v2 = indices[i2]
            a2, b2 = indptr[v2], indptr[v2 + 1]
            for i3 in range(_first_greater(indices, a2, b2, v1), b2):
                v3 = indices[i3]
                a3, b3 = indptr[v3], indptr[v3 + 1]
                for i4 in range(_first_greater(indices, a3, b3, v1), b3):
                    v4 = indices[i4]
                    if v4 == v2:
                        continue
                    a4, b4 = indptr[v4], indptr[v4 + 1]
                    for i5 in range(_first_greater(indices, a4, b4, v1), b4):
                        v5 = indices[i5]
                        if v5 == v2 or v5 == v3:
                            continue
                        a5, b5 = indptr[v5], indptr[v5 + 1]
                        for i6 in range(_first_greater(indices, a5, b5, v2), b5):
                            v6 = indices[i6]
                            if v6 == v3 or v6 == v4:
                                continue
                            if mark[v6] == 1:
                                total += 1
        for ei in range(a1, b1):
            mark[indices[ei]] = 0
    return total


if _HAVE_NUMBA:
    # Rebinding the helper first lets the jitted loops resolve it as a
    # compiled callee; the plain loops keep working through the dispatcher.
    _first_greater = njit(cache=True)(_first_greater)
    _triangle_jit = njit(cache=True)(_triangle_loop)
    _six_cycle_jit = njit(cache=True)(_six_cycle_loop)
else:  # pragma: no cover
    _triangle_jit = None
    _six_cycle_jit = None


def warmup() -> None:
    """Trigger JIT compilation once (useful before forking workers)."""
    if _HAVE_NUMBA:
        indptr = np.array([0, 2, 4, 6], dtype=np.int64)
        indices = np.array([1, 2, 0, 2, 0, 1], dtype=np.int64)
        _triangle_jit(indptr, indices, 3)
        _six_cycle_jit(indptr, indices, 3, np.zeros(3, dtype=np.uint8))


def count_triangles(g: Graph) -> int:
    """Exact number of vertex triples inducing a triangle."""
    if g.n < 3 or g.m < 3:
        return 0
    if _HAVE_NUMBA and comb(g.n, 3) < _INT64_SAFE_LIMIT:
        return int(_triangle_jit(g.indptr, g.indices, g.n))
    return int(_triangle_loop(g.indptr, g.indices, g.n))


_RELABEL_MIN_N = 32


def count_six_cycles(g: Graph) -> int:
    """Exact number of 6-cycles, each counted once as an undirected,
    vertex-distinct subgraph."""
    if g.n < 6 or g.m < 6:
        return 0
    if g.n >= _RELABEL_MIN_N:
        # Counts are isomorphism-invariant; rooting the enumeration at
        # high-degree vertices first cuts the explored path space.
        order = np.argsort(g.degrees(), kind="stable")[::-1]
        perm = np.empty(g.n, dtype=np.int64)
        perm[order] = np.arange(g.n)
        g = g.relabel(perm)
    mark = np.zeros(g.n, dtype=np.uint8)
    if _HAVE_NUMBA and 60 * comb(g.n, 6) < _INT64_SAFE_LIMIT:
        return int(_six_cycle_jit(g.indptr, g.indices, g.n, mark))
    # Arbitrary-precision fallback: same enumeration, Python integers.
    return int(_six_cycle_loop(g.indptr, g.indices, g.n, mark))


@dataclass(frozen=True)
class CycleCensus:
    """Exact cycle counts and densities for one graph.

    ``degenerate`` is set when n < 6, where the 6-cycle density is
    forced to zero (and for n < 3 both densities are zero).
    """

    n: int
    m: int
    n3: int
    n6: int
    c3_hat: float
    c6_hat: float
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "n3": self.n3,
            "n6": self.n6,
            "c3_hat": self.c3_hat,
            "c6_hat": self.c6_hat,
            "degenerate": self.degenerate,
        }

    @staticmethod
    def csv_header() -> str:
        return "n,m,n3,n6,c3_hat,c6_hat"

    def csv_row(self) -> str:
        return (f"{self.n},{self.m},{self.n3},{self.n6},"
                f"{self.c3_hat!r},{self.c6_hat!r}")


def census(g: Graph) -> CycleCensus:
    """Assemble exact counts and densities for g.

    Counts stay integers; densities are formed at the end so the test
    statistic's numerator can be rebuilt from exact quantities.
    """
    n3 = count_triangles(g)
    n6 = count_six_cycles(g)
    c3_hat = n3 / comb(g.n, 3) if g.n >= 3 else 0.0
    c6_hat = n6 / (60 * comb(g.n, 6)) if g.n >= 6 else 0.0
    return CycleCensus(n=g.n, m=g.m, n3=n3, n6=n6,
                       c3_hat=c3_hat, c6_hat=c6_hat, degenerate=g.n < 6)


_ORACLE_MAX_N = 12


def oracle_census(g: Graph) -> CycleCensus:
    """Brute-force census from the defining sums; n <= 12 only.

    The 6-cycle density is computed as the literal average over all 6!
    orderings of every 6-subset of the edge-indicator product around the
    ring, with no combinatorial shortcuts; the triangle density comes
    from full triple enumeration.  Used to validate the fast counters.
    """
    n = g.n
    if n > _ORACLE_MAX_N:
        raise SizeError(f"oracle_census supports n <= {_ORACLE_MAX_N}, got {n}")
    adj = np.zeros((n, n), dtype=bool)
    for u, v in g.edges.tolist():
        adj[u, v] = adj[v, u] = True

    n3 = 0
    for i, j, k in combinations(range(n), 3):
        if adj[i, j] and adj[j, k] and adj[k, i]:
            n3 += 1
    c3_hat = n3 / comb(n, 3) if n >= 3 else 0.0

    perm_sum = 0
    if n >= 6:
        for subset in combinations(range(n), 6):
            for p in permutations(subset):
                if (adj[p[0], p[1]] and adj[p[1], p[2]] and adj[p[2], p[3]]
                        and adj[p[3], p[4]] and adj[p[4], p[5]]
                        and adj[p[5], p[0]]):
                    perm_sum += 1
        c6_hat = perm_sum / (720 * comb(n, 6))
    else:
        c6_hat = 0.0
    # every undirected 6-cycle is traced by exactly 12 orderings
    assert perm_sum % 12 == 0
    n6 = perm_sum // 12

    return CycleCensus(n=n, m=g.m, n3=n3, n6=n6,
                       c3_hat=c3_hat, c6_hat=c6_hat, degenerate=n < 6)
