"""Graphs, G(N,p) sampling, and random edge 2-colorings.

Vertices are labelled 0..N-1.  Adjacency is kept as one bitset row per
vertex (bit v of row u set iff uv is an edge), so common-neighborhood
queries reduce to word-parallel AND plus popcount.  Edges are ordered
lexicographically by (u, v) with u < v everywhere: sampling, coloring,
and the edge-list file format all consume or emit edges in that order,
which is what makes seeded runs reproducible bit for bit.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

import numpy as np

from .rng import RngStream

# Above this vertex count the full boolean adjacency matrix is not
# materialized in one piece; rows are assembled in blocks instead.
_DENSE_BUILD_LIMIT = 2048
_BLOCK_ROWS = 1024


@lru_cache(maxsize=32)
def _triu_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, iv = np.triu_indices(n, k=1)
    return iu.astype(np.int64), iv.astype(np.int64)


def _pack_bool_rows(adj: np.ndarray) -> list[int]:
    packed = np.packbits(adj, axis=1, bitorder="little")
    data = packed.tobytes()
    width = packed.shape[1]
    return [
        int.from_bytes(data[i * width : (i + 1) * width], "little")
        for i in range(adj.shape[0])
    ]


def _rows_from_edge_arrays(n: int, eu: np.ndarray, ev: np.ndarray) -> list[int]:
    if n <= _DENSE_BUILD_LIMIT:
        adj = np.zeros((n, n), dtype=bool)
        adj[eu, ev] = True
        adj[ev, eu] = True
        return _pack_bool_rows(adj)
    rows: list[int] = []
    for lo in range(0, n, _BLOCK_ROWS):
        hi = min(lo + _BLOCK_ROWS, n)
        block = np.zeros((hi - lo, n), dtype=bool)
        sel = (eu >= lo) & (eu < hi)
        block[eu[sel] - lo, ev[sel]] = True
        sel = (ev >= lo) & (ev < hi)
        block[ev[sel] - lo, eu[sel]] = True
        rows.extend(_pack_bool_rows(block))
    return rows


def _bits_to_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class Graph:
    """Immutable simple undirected graph on vertices 0..N-1.

    Prefer :func:`build_graph`, :func:`sample_gnp`, or the small factory
    helpers over calling the constructor with raw bitset rows.
    """

    __slots__ = ("_n", "_rows", "_edge_count", "_edge_arrays", "_hash")

    def __init__(
        self,
        vertex_count: int,
        rows: Sequence[int],
        edge_count: int | None = None,
    ):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if len(rows) != vertex_count:
            raise ValueError("expected one adjacency row per vertex")
        self._n = vertex_count
        self._rows = tuple(rows)
        if edge_count is None:
            edge_count = sum(r.bit_count() for r in self._rows) // 2
        self._edge_count = edge_count
        self._edge_arrays: tuple[np.ndarray, np.ndarray] | None = None
        self._hash: int | None = None

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def rows(self) -> tuple[int, ...]:
        """Bitset adjacency rows; bit v of rows[u] is set iff uv is an edge."""
        return self._rows

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return self._rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def neighbors_mask(self, u: int) -> int:
        self._check_vertex(u)
        return self._rows[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return _bits_to_vertices(self.neighbors_mask(u))

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoints as two parallel arrays, lexicographic, u < v."""
        if self._edge_arrays is None:
            n = self._n
            if self._edge_count == 0:
                empty = np.zeros(0, dtype=np.int64)
                self._edge_arrays = (empty, empty.copy())
            else:
                width = (n + 7) // 8
                buf = b"".join(r.to_bytes(width, "little") for r in self._rows)
                packed = np.frombuffer(buf, dtype=np.uint8).reshape(n, width)
                adj = np.unpackbits(
                    packed, axis=1, bitorder="little", count=n
                ).astype(bool)
                eu, ev = np.nonzero(np.triu(adj, k=1))
                self._edge_arrays = (eu.astype(np.int64), ev.astype(np.int64))
        return self._edge_arrays

    def edges(self) -> list[tuple[int, int]]:
        eu, ev = self.edge_arrays()
        return [(int(u), int(v)) for u, v in zip(eu, ev)]

    def with_edge(self, u: int, v: int) -> "Graph":
        """Copy of this graph with edge uv added (no-op if present)."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError("loop edges are not allowed")
        if self.has_edge(u, v):
            return self
        rows = list(self._rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self._n, rows, self._edge_count + 1)

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self._n:
            raise ValueError(f"vertex {u} out of range for N={self._n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self._n}, edge_count={self._edge_count})"


@dataclass(frozen=True)
class ColoredSplit:
    """The two color classes of an edge 2-coloring of a host graph."""

    red: Graph
    blue: Graph


def build_graph(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicates collapse, loops error."""
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValueError(f"edge ({u}, {v}) out of range for N={vertex_count}")
        if u == v:
            raise ValueError(f"loop edge at vertex {u}")
        seen.add((u, v) if u < v else (v, u))
    if seen:
        arr = np.array(sorted(seen), dtype=np.int64)
        eu, ev = arr[:, 0], arr[:, 1]
    else:
        eu = ev = np.zeros(0, dtype=np.int64)
    return Graph(vertex_count, _rows_from_edge_arrays(vertex_count, eu, ev), len(seen))


def sample_gnp(vertex_count: int, p: float, rng: RngStream) -> Graph:
    """Sample G(N, p): each of the C(N,2) edges present independently.

    One uniform is drawn per vertex pair in lexicographic order, so a
    given stream always yields the same graph.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    n = vertex_count
    if n < 0:
        raise ValueError("vertex_count must be non-negative")
    gen = rng.generator()
    if n <= _DENSE_BUILD_LIMIT:
        iu, iv = _triu_pairs(n)
        keep = gen.random(iu.size) < p
        eu, ev = iu[keep], iv[keep]
    else:
        us, vs = [], []
        for u in range(n - 1):
            keep = gen.random(n - 1 - u) < p
            hit = np.nonzero(keep)[0]
            if hit.size:
                vs.append(hit.astype(np.int64) + (u + 1))
                us.append(np.full(hit.size, u, dtype=np.int64))
        eu = np.concatenate(us) if us else np.zeros(0, dtype=np.int64)
        ev = np.concatenate(vs) if vs else np.zeros(0, dtype=np.int64)
    return Graph(n, _rows_from_edge_arrays(n, eu, ev), int(eu.size))


def _halve_with_bias(F: Graph, rng: RngStream, red_probability: float) -> ColoredSplit:
    if not 0.0 <= red_probability <= 1.0:
        raise ValueError("red_probability must lie in [0, 1]")
    eu, ev = F.edge_arrays()
    coins = rng.generator().random(eu.size) < red_probability
    n = F.vertex_count
    red = Graph(n, _rows_from_edge_arrays(n, eu[coins], ev[coins]), int(coins.sum()))
    blue = Graph(
        n,
        _rows_from_edge_arrays(n, eu[~coins], ev[~coins]),
        F.edge_count - red.edge_count,
    )
    return ColoredSplit(red=red, blue=blue)


def random_halving(F: Graph, rng: RngStream) -> ColoredSplit:
    """Color each edge of F red or blue by an independent fair coin.

    Coins are drawn in lexicographic edge order from the given stream.
    When F ~ G(N, p) and the coloring stream is independent of the
    sampling stream, each color class is distributed exactly G(N, p/2).
    """
    return _halve_with_bias(F, rng, 0.5)


def graph_probability(L: Graph, p: float) -> float:
    """Probability that G(N, p) equals L exactly, N = L.vertex_count."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    n = L.vertex_count
    total = n * (n - 1) // 2
    e = L.edge_count
    return p**e * (1.0 - p) ** (total - e)


def common_neighborhood(F: Graph, U: Iterable[int]) -> tuple[int, ...]:
    """Vertices adjacent to every vertex of U; all vertices if U is empty."""
    mask = -1
    count = 0
    for u in U:
        F._check_vertex(u)
        mask &= F.neighbors_mask(u)
        count += 1
    if count == 0:
        return tuple(range(F.vertex_count))
    return _bits_to_vertices(mask)


def pair_density(F: Graph, X: Iterable[int], Y: Iterable[int]) -> float:
    """Fraction of X-Y pairs joined by an edge; X and Y must be disjoint."""
    xs, ys = set(X), set(Y)
    if not xs or not ys:
        raise ValueError("X and Y must be non-empty")
    if xs & ys:
        raise ValueError("X and Y must be disjoint")
    ymask = 0
    for y in ys:
        F._check_vertex(y)
        ymask |= 1 << y
    crossing = 0
    for x in xs:
        F._check_vertex(x)
        crossing += (F.neighbors_mask(x) & ymask).bit_count()
    return crossing / (len(xs) * len(ys))


# -- small constructions used by patterns and tests --------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n, 0)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite_graph(m: int, n: int) -> Graph:
    """K_{m,n}: left side 0..m-1, right side m..m+n-1."""
    if m < 1 or n < 1:
        raise ValueError("both sides must be non-empty")
    return build_graph(m + n, [(u, m + v) for u in range(m) for v in range(n)])


def book_graph(m: int, n: int) -> Graph:
    """K_m + (n isolated pages): clique 0..m-1, each page adjacent to it."""
    if m < 1 or n < 1:
        raise ValueError("need a non-empty spine and at least one page")
    edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    edges += [(u, m + w) for u in range(m) for w in range(n)]
    return build_graph(m + n, edges)


# -- edge-list text format ----------------------------------------------------
#
#   N=<vertex count>
#   u v          (one edge per line, 0-indexed, u < v, lexicographic)


def write_edge_list(F: Graph, sink: TextIO | str) -> None:
    """Write F in the edge-list text format (canonical ordering)."""
    if isinstance(sink, str):
        with open(sink, "w", encoding="ascii") as fh:
            write_edge_list(F, fh)
        return
    sink.write(f"N={F.vertex_count}\n")
    for u, v in F.edges():
        sink.write(f"{u} {v}\n")


def read_edge_list(source: TextIO | str) -> Graph:
    """Parse the edge-list text format; malformed input raises ValueError."""
    if isinstance(source, str):
        with open(source, "r", encoding="ascii") as fh:
            return read_edge_list(fh)
    if isinstance(source, io.TextIOBase) or hasattr(source, "readline"):
        header = source.readline()
        if not header.startswith("N=") or not header[2:].strip().isdigit():
            raise ValueError("first line must be 'N=<vertex count>'")
        n = int(header[2:].strip())
        edges = []
        for lineno, line in enumerate(source, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: expected two integers") from None
            if u >= v:
                raise ValueError(f"line {lineno}: edges must satisfy u < v")
            edges.append((u, v))
        return build_graph(n, edges)
    raise TypeError("source must be a path or a text stream")
