"""Containment checks with explicit witnesses.

Two pattern families drive everything here: complete bipartite K_{m,n}
and books (an m-clique spine joined to n otherwise-isolated pages).  Both
searches look for a core: an m-set of vertices whose common neighborhood
has at least n vertices, with the book case additionally requiring the
core to be a clique.  The search enumerates candidate cores in ascending
vertex order, so the first witness found is the lexicographically
smallest core.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    Graph,
    _bits_to_vertices,
    book_graph,
    complete_bipartite_graph,
)

_PATTERN_KINDS = ("kmn", "book", "explicit")

# Hosts/patterns above these sizes make full embedding enumeration
# unreasonable; the brute-force oracle refuses rather than crawling.
MAX_BRUTE_FORCE_HOST = 16
MAX_EXPLICIT_PATTERN = 8


@dataclass(frozen=True)
class Witness:
    """Core vertices plus the leaves certifying a containment."""

    core: tuple[int, ...]
    leaves: tuple[int, ...]

    def verify(self, F: Graph, clique_core: bool = False) -> bool:
        """Re-check this witness against F (adjacency, disjointness, clique)."""
        if set(self.core) & set(self.leaves):
            return False
        for u in self.core:
            for v in self.leaves:
                if not F.has_edge(u, v):
                    return False
        if clique_core:
            for i, u in enumerate(self.core):
                for v in self.core[i + 1 :]:
                    if not F.has_edge(u, v):
                        return False
        return True


@dataclass(frozen=True)
class PatternSpec:
    """A target pattern: K_{m,n}, a book, or an explicit small graph."""

    kind: str
    m: int = 0
    n: int = 0
    graph: Graph | None = None

    def __post_init__(self):
        if self.kind not in _PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "explicit":
            if self.graph is None:
                raise ValueError("explicit patterns need a graph")
            if self.graph.vertex_count > MAX_EXPLICIT_PATTERN:
                raise ValueError(
                    f"explicit patterns are limited to {MAX_EXPLICIT_PATTERN} vertices"
                )
        elif self.m < 1 or self.n < 1:
            raise ValueError("pattern parameters m and n must be at least 1")

    @classmethod
    def complete_bipartite(cls, m: int, n: int) -> "PatternSpec":
        return cls(kind="kmn", m=m, n=n)

    @classmethod
    def book(cls, m: int, n: int) -> "PatternSpec":
        return cls(kind="book", m=m, n=n)

    @classmethod
    def explicit(cls, graph: Graph) -> "PatternSpec":
        return cls(kind="explicit", graph=graph)

    def build(self) -> Graph:
        """Concrete pattern graph (used by the brute-force oracle)."""
        if self.kind == "kmn":
            return complete_bipartite_graph(self.m, self.n)
        if self.kind == "book":
            return book_graph(self.m, self.n)
        assert self.graph is not None
        return self.graph

    @property
    def vertex_count(self) -> int:
        if self.kind == "explicit":
            assert self.graph is not None
            return self.graph.vertex_count
        return self.m + self.n


def _validate_mn(m: int, n: int, vertex_count: int) -> None:
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    if m > vertex_count:
        raise ValueError(f"core size m={m} exceeds vertex count {vertex_count}")


def _kmn_core(rows, m: int, n: int):
    """Lex-first m-set with >= n common neighbors, or None.

    Returns (core, common-neighborhood mask).  Candidate cores are
    restricted to vertices of degree >= n; a partial intersection
    dropping below n bits prunes the whole branch.
    """
    cand = [u for u in range(len(rows)) if rows[u].bit_count() >= n]
    if len(cand) < m:
        return None
    if m == 1:
        u = cand[0]
        return (u,), rows[u]
    limit = len(cand) - m

    def extend(start: int, depth: int, chosen: list[int], inter: int):
        for idx in range(start, limit + depth + 1):
            u = cand[idx]
            ni = inter & rows[u]
            if ni.bit_count() < n:
                continue
            chosen.append(u)
            if depth + 1 == m:
                return tuple(chosen), ni
            hit = extend(idx + 1, depth + 1, chosen, ni)
            if hit:
                return hit
            chosen.pop()
        return None

    full = (1 << len(rows)) - 1
    return extend(0, 0, [], full)


def _book_core(rows, m: int, n: int):
    """Lex-first m-clique with >= n common neighbors, or None.

    Every book core vertex is adjacent to the other m-1 core vertices and
    to all n pages, so only vertices of degree >= n+m-1 can participate.
    """
    need = n + m - 1
    cand = [u for u in range(len(rows)) if rows[u].bit_count() >= need]
    if len(cand) < m:
        return None
    if m == 1:
        u = cand[0]
        return (u,), rows[u]
    limit = len(cand) - m

    def extend(start: int, depth: int, chosen: list[int], inter: int):
        for idx in range(start, limit + depth + 1):
            u = cand[idx]
            if depth and not inter >> u & 1:
                continue  # u must be a common neighbor of the partial clique
            ni = inter & rows[u]
            if ni.bit_count() < n:
                continue
            chosen.append(u)
            if depth + 1 == m:
                return tuple(chosen), ni
            hit = extend(idx + 1, depth + 1, chosen, ni)
            if hit:
                return hit
            chosen.pop()
        return None

    full = (1 << len(rows)) - 1
    return extend(0, 0, [], full)


def _leaves_from(core: tuple[int, ...], inter: int) -> tuple[int, ...]:
    for u in core:
        inter &= ~(1 << u)
    return _bits_to_vertices(inter)


def contains_kmn(F: Graph, m: int, n: int) -> Witness | None:
    """Witness for K_{m,n} in F, or None.

    The core is the smaller side: if m > n the roles are swapped first
    (K_{m,n} and K_{n,m} are the same pattern).  Leaves are the full
    common neighborhood of the core, so the witness may exceed n leaves.
    """
    _validate_mn(m, n, F.vertex_count)
    if m > n:
        m, n = n, m
    hit = _kmn_core(F.rows, m, n)
    if hit is None:
        return None
    core, inter = hit
    return Witness(core=core, leaves=_leaves_from(core, inter))


def contains_book(F: Graph, m: int, n: int) -> Witness | None:
    """Witness for the book K_m + n pages in F, or None.

    The core must induce a clique; pages are the core's full common
    neighborhood.  No side swap applies -- spine and pages play
    different roles.
    """
    _validate_mn(m, n, F.vertex_count)
    hit = _book_core(F.rows, m, n)
    if hit is None:
        return None
    core, inter = hit
    return Witness(core=core, leaves=_leaves_from(core, inter))


def _embeds(host_rows, host_n: int, pat_rows, pat_n: int) -> bool:
    """Backtracking injective homomorphism test (edges must map to edges)."""
    if pat_n > host_n:
        return False
    order = sorted(range(pat_n), key=lambda v: -pat_rows[v].bit_count())
    assign = [0] * pat_n
    all_hosts = (1 << host_n) - 1

    def place(d: int, used: int) -> bool:
        if d == pat_n:
            return True
        pv = order[d]
        cand = all_hosts & ~used
        for e in range(d):
            if pat_rows[pv] >> order[e] & 1:
                cand &= host_rows[assign[e]]
        while cand:
            low = cand & -cand
            assign[d] = low.bit_length() - 1
            if place(d + 1, used | low):
                return True
            cand ^= low
        return False

    return place(0, 0)


def brute_force_contains(F: Graph, pattern: PatternSpec) -> bool:
    """Oracle containment check by exhaustive embedding search.

    Deliberately independent of the witness searches above so the two
    can cross-check each other.  Refuses hosts over
    ``MAX_BRUTE_FORCE_HOST`` vertices or patterns over
    ``MAX_EXPLICIT_PATTERN`` vertices.
    """
    if F.vertex_count > MAX_BRUTE_FORCE_HOST:
        raise ValueError(
            f"brute force limited to hosts with <= {MAX_BRUTE_FORCE_HOST} vertices"
        )
    target = pattern.build()
    if target.vertex_count > MAX_EXPLICIT_PATTERN:
        raise ValueError(
            f"brute force limited to patterns with <= {MAX_EXPLICIT_PATTERN} vertices"
        )
    return _embeds(F.rows, F.vertex_count, target.rows, target.vertex_count)
