"""Immutable undirected simple graphs and edge-list ingestion.

Vertices are dense integers 0..n-1.  Construction collapses duplicate
edges and both orientations to a single undirected edge and silently
drops self-loops, reporting how many of each were seen.  Adjacency is
kept as a CSR structure with sorted neighbor rows; the cycle-counting
kernels rely on that ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ParseError


@dataclass(frozen=True)
class ParseReport:
    """Summary of what ingestion did.

    ``labels`` maps dense index -> original token in first-seen order, or
    is None when labels were taken literally (explicit vertex count).
    """

    n: int
    m: int
    self_loops_dropped: int
    duplicates_collapsed: int
    labels: list[str] | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_collapsed": self.duplicates_collapsed,
        }


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Instances are immutable after construction: the backing arrays are
    marked read-only, so concurrent readers are safe.  ``edges`` holds
    each edge once as (u, v) with u < v, sorted lexicographically.
    """

    __slots__ = ("n", "edges", "indptr", "indices")

    def __init__(self, n: int, edges: np.ndarray):
        # Internal constructor: `edges` must already be unique, u < v,
        # lexicographically sorted.  Use from_edges() for raw pairs.
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        both = np.concatenate([edges, edges[:, ::-1]]) if len(edges) else edges
        if len(both):
            order = np.lexsort((both[:, 1], both[:, 0]))
            both = both[order]
        counts = np.bincount(both[:, 0], minlength=n) if len(both) else np.zeros(n, np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = both[:, 1].copy() if len(both) else np.zeros(0, dtype=np.int64)
        for arr in (edges, indptr, indices):
            arr.setflags(write=False)
        self.n = n
        self.edges = edges
        self.indptr = indptr
        self.indices = indices

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        """Degree of every vertex as a fresh int64 array."""
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbors of v (read-only view)."""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex i renamed perm[i]; perm must be a permutation."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise InputError("relabel requires a permutation of 0..n-1")
        if self.m == 0:
            return Graph(self.n, np.zeros((0, 2), dtype=np.int64))
        mapped = perm[self.edges]
        lo = mapped.min(axis=1)
        hi = mapped.max(axis=1)
        pairs = np.stack([lo, hi], axis=1)
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        return Graph(self.n, pairs)

    def edge_list_text(self) -> str:
        """Serialize as one "u v" pair per line, 0-based, u < v, sorted.

        Isolated vertices are not representable in this format; reloading
        recovers them only if the original vertex count is supplied.
        """
        return "".join(f"{u} {v}\n" for u, v in self.edges.tolist())

    def write_edge_list(self, path: str | Path) -> None:
        Path(path).write_text(self.edge_list_text())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _clean_pairs(n: int, pairs: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Collapse duplicates/orientations, drop self-loops. Returns
    (edges, loops_dropped, duplicates_collapsed)."""
    if len(pairs) == 0:
        return np.zeros((0, 2), dtype=np.int64), 0, 0
    if pairs.min() < 0 or pairs.max() >= n:
        bad = pairs.flat[int(np.argmax((pairs < 0) | (pairs >= n)))]
        raise InputError(f"vertex label {bad} outside [0, {n})")
    loops = pairs[:, 0] == pairs[:, 1]
    n_loops = int(loops.sum())
    pairs = pairs[~loops]
    if len(pairs) == 0:
        return np.zeros((0, 2), dtype=np.int64), n_loops, 0
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    canon = np.stack([lo, hi], axis=1)
    uniq = np.unique(canon, axis=0)
    n_dups = len(canon) - len(uniq)
    return uniq, n_loops, n_dups


def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph from raw vertex pairs.

    Duplicates and both orientations collapse to one edge; self-loops are
    dropped.  Labels must lie in [0, n).  Use from_edges_report() if the
    cleanup counts are needed.
    """
    g, _ = from_edges_report(n, pairs)
    return g


def from_edges_report(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[Graph, ParseReport]:
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                     dtype=np.int64).reshape(-1, 2)
    edges, n_loops, n_dups = _clean_pairs(n, arr)
    g = Graph(n, edges)
    return g, ParseReport(n=n, m=g.m, self_loops_dropped=n_loops,
                          duplicates_collapsed=n_dups, labels=None)


def degree_sequence(g: Graph) -> np.ndarray:
    """Degrees as a length-n vector; sums to 2m."""
    return g.degrees()


def _open_lines(source) -> list[str]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    elif isinstance(source, bytes):
        text = source.decode()
    elif hasattr(source, "read"):
        raw = source.read()
        text = raw.decode() if isinstance(raw, bytes) else raw
    else:
        raise InputError(f"unsupported edge-list source: {type(source).__name__}")
    return text.splitlines()


def _is_comment(line: str) -> bool:
    s = line.lstrip()
    return s == "" or s.startswith("%") or s.startswith("#")


def load_edge_list(source, *, fmt: str = "auto", n: int | None = None,
                   ) -> tuple[Graph, ParseReport]:
    """Parse whitespace-separated edge-list text into a Graph.

    Parameters
    ----------
    source : path, bytes, str path, or readable file object
        Lines of "u v [extra...]"; lines starting with '%' or '#' are
        comments.  A MatrixMarket header is recognized (fmt="auto") and
        its dimension line supplies the vertex count (1-based labels).
    fmt : "auto" | "edgelist" | "mtx"
    n : explicit vertex count.  When given, labels must be integers and
        are taken literally (0-based) if they all fit in [0, n-1], or
        shifted down by one if they fit in [1, n].  Without it, labels
        are arbitrary tokens remapped to 0..n-1 in first-seen order.

    Returns (graph, report); the report surfaces (n, m, dropped
    self-loops, collapsed duplicates) so dataset-version mismatches are
    detectable.
    """
    if fmt not in ("auto", "edgelist", "mtx"):
        raise InputError(f"unknown format {fmt!r}")
    lines = _open_lines(source)

    is_mtx = fmt == "mtx"
    if fmt == "auto":
        for line in lines:
            if line.strip():
                is_mtx = line.lstrip().lower().startswith("%%matrixmarket")
                break

    tokens_per_line: list[tuple[int, str, str]] = []  # (lineno, tok_u, tok_v)
    mtx_dims_pending = is_mtx
    for lineno, line in enumerate(lines, start=1):
        if line.lstrip().lower().startswith("%%matrixmarket"):
            continue
        if _is_comment(line):
            continue
        parts = line.split()
        if mtx_dims_pending:
            # First data line of a MatrixMarket file: "rows cols [nnz]".
            if len(parts) not in (2, 3):
                raise ParseError("expected MatrixMarket size line 'rows cols [nnz]'",
                                 lineno)
            try:
                rows, cols = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("non-integer MatrixMarket dimensions", lineno) from None
            if rows != cols:
                raise InputError(
                    f"MatrixMarket matrix is {rows}x{cols}; need a square adjacency")
            if n is None:
                n = rows
            mtx_dims_pending = False
            continue
        if len(parts) < 2:
            raise ParseError(f"expected at least two labels, got {line!r}", lineno)
        tokens_per_line.append((lineno, parts[0], parts[1]))

    if not tokens_per_line:
        raise InputError("empty input: no edges found")

    if n is not None or is_mtx:
        pairs = np.empty((len(tokens_per_line), 2), dtype=np.int64)
        for i, (lineno, a, b) in enumerate(tokens_per_line):
            try:
                pairs[i, 0] = int(a)
                pairs[i, 1] = int(b)
            except ValueError:
                raise ParseError(f"non-integer label in {a!r} {b!r}", lineno) from None
        if is_mtx:
            if n is None:
                raise InputError("MatrixMarket input missing size line")
            pairs -= 1  # MatrixMarket coordinates are 1-based
        else:
            lo, hi = int(pairs.min()), int(pairs.max())
            if 0 <= lo and hi <= n - 1:
                pass  # literal 0-based labels
            elif 1 <= lo and hi <= n:
                pairs -= 1
            else:
                raise InputError(
                    f"labels span [{lo}, {hi}], inconsistent with n={n}")
        labels = None
    else:
        index: dict[str, int] = {}
        pairs = np.empty((len(tokens_per_line), 2), dtype=np.int64)
        for i, (lineno, a, b) in enumerate(tokens_per_line):
            for j, tok in enumerate((a, b)):
                if tok not in index:
                    index[tok] = len(index)
                pairs[i, j] = index[tok]
        n = len(index)
        labels = list(index)

    edges, n_loops, n_dups = _clean_pairs(n, pairs)
    g = Graph(n, edges)
    report = ParseReport(n=n, m=g.m, self_loops_dropped=n_loops,
                         duplicates_collapsed=n_dups, labels=labels)
    return g, report


def loads_edge_list(text: str, **kwargs) -> tuple[Graph, ParseReport]:
    """load_edge_list for in-memory text."""
    return load_edge_list(text.encode(), **kwargs)
