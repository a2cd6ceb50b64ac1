"""Deciding the arrow relation F -> G for edge 2-colorings.

Three tiers with different strength/cost trade-offs:

* certificate -- a density count: if e(F) exceeds twice the bipartite
  extremal bound, one color class must hold K_{m,n}.  One-sided (yes or
  unknown), runs on any size.
* exhaustive -- enumerate all 2-colorings with pruning.  Exact, but only
  for tiny hosts (capped by edge count).
* refute -- sample random halvings; a split where neither class contains
  the pattern disproves the arrow constructively.  One-sided (no or
  unknown).
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import kst_extremal_bound
from .graphs import ColoredSplit, Graph, _halve_with_bias
from .rng import RngStream
from .witness import PatternSpec, _book_core, _embeds, _kmn_core

# 2^25 colorings is the point where exhaustive search stops being a
# give-it-a-second tool even with pruning.
MAX_EXHAUSTIVE_EDGES = 25

_REFUTE_KINDS = ("kmn", "book")
DEFAULT_REFUTE_TRIALS = 128


def arrow_certificate_kmn(F: Graph, m: int, n: int) -> bool:
    """One-sided arrow check for K_{m,n} via edge counting.

    True means F -> K_{m,n} is proven: the majority color class of any
    2-coloring has more than ex(N; K_{m,n}) edges, so it contains the
    pattern.  False means no verdict, not a refutation.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    if m > n:
        m, n = n, m  # K_{m,n} = K_{n,m}; the bound wants the smaller exponent side
    return F.edge_count > 2.0 * kst_extremal_bound(F.vertex_count, m, n)


def _pattern_checker(pattern: PatternSpec, host_n: int):
    if pattern.kind == "kmn":
        m, n = (pattern.m, pattern.n) if pattern.m <= pattern.n else (pattern.n, pattern.m)
        return lambda rows: _kmn_core(rows, m, n) is not None
    if pattern.kind == "book":
        return lambda rows: _book_core(rows, pattern.m, pattern.n) is not None
    target = pattern.build()
    return lambda rows: _embeds(rows, host_n, target.rows, target.vertex_count)


def arrow_exhaustive(F: Graph, pattern: PatternSpec) -> bool:
    """Exact arrow decision by enumerating every red/blue edge coloring.

    Symmetry and pruning keep this usable: the first edge is fixed red
    (color swap maps counterexamples to counterexamples), and any branch
    whose partial coloring already holds a monochromatic pattern is cut.
    Hosts with more than ``MAX_EXHAUSTIVE_EDGES`` edges are refused.
    """
    if F.edge_count > MAX_EXHAUSTIVE_EDGES:
        raise ValueError(
            f"exhaustive search capped at {MAX_EXHAUSTIVE_EDGES} edges;"
            f" F has {F.edge_count}"
        )
    n = F.vertex_count
    check = _pattern_checker(pattern, n)
    if not check(list(F.rows)):
        # Some subgraph of F holds the pattern in every coloring only if
        # F itself does; otherwise any coloring is a counterexample.
        return False

    edge_list = F.edges()
    red = [0] * n
    blue = [0] * n
    if check(red):
        return True  # the pattern sits in the empty graph; any coloring works
    if not edge_list:
        return False

    def set_edge(rows, u, v):
        rows[u] |= 1 << v
        rows[v] |= 1 << u

    def clear_edge(rows, u, v):
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)

    def every_coloring_mono(i: int) -> bool:
        # Invariant: neither partial class contains the pattern yet.  Once
        # a class does, adding edges cannot remove it, so that entire
        # subtree is settled without recursing.
        if i == len(edge_list):
            return False  # complete coloring, no monochromatic pattern
        u, v = edge_list[i]
        set_edge(red, u, v)
        ok = check(red) or every_coloring_mono(i + 1)
        clear_edge(red, u, v)
        if not ok:
            return False
        set_edge(blue, u, v)
        ok = check(blue) or every_coloring_mono(i + 1)
        clear_edge(blue, u, v)
        return ok

    # First edge red without loss of generality: swapping colors maps
    # counterexample colorings to counterexample colorings.
    u0, v0 = edge_list[0]
    set_edge(red, u0, v0)
    ok = check(red) or every_coloring_mono(1)
    clear_edge(red, u0, v0)
    return ok


def refute_arrow_by_halving(
    F: Graph,
    m: int,
    n: int,
    pattern_kind: str = "kmn",
    trials: int = DEFAULT_REFUTE_TRIALS,
    rng: RngStream = RngStream(0),
) -> ColoredSplit | None:
    """Search random fair halvings for a coloring with no monochromatic pattern.

    Returns the first such split (lowest trial index) or None after
    ``trials`` attempts.  A returned split is a constructive disproof of
    F -> pattern; None is not a proof of the arrow.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if pattern_kind not in _REFUTE_KINDS:
        raise ValueError(f"pattern_kind must be one of {_REFUTE_KINDS}")
    if pattern_kind == "kmn":
        a, b = (m, n) if m <= n else (n, m)
        found = lambda G: _kmn_core(G.rows, a, b) is not None
    else:
        found = lambda G: _book_core(G.rows, m, n) is not None
    for t in range(trials):
        split = _halve_with_bias(F, rng.child(t), 0.5)
        if not found(split.red) and not found(split.blue):
            return split
    return None


@dataclass(frozen=True)
class ArrowReport:
    """Outcome of one tiered arrow query.

    ``verdict`` is yes/no/unknown; ``tier`` names the tier that produced
    it (cert, exact, refute); ``exact`` is True only when the verdict is
    two-sided truth rather than one-sided evidence.
    """

    verdict: str
    tier: str
    exact: bool
    split: ColoredSplit | None = None


def decide_arrow(
    F: Graph,
    mode: str,
    pattern_kind: str,
    m: int,
    n: int,
    trials: int = DEFAULT_REFUTE_TRIALS,
    rng: RngStream = RngStream(0),
) -> ArrowReport:
    """Single entry point behind the CLI and the service.

    ``mode`` picks the tier: 'certificate' (kmn only), 'exhaustive', or
    'refute'.
    """
    if pattern_kind not in _REFUTE_KINDS:
        raise ValueError(f"pattern_kind must be one of {_REFUTE_KINDS}")
    if mode == "certificate":
        if pattern_kind != "kmn":
            raise ValueError("the density certificate applies to kmn patterns only")
        hit = arrow_certificate_kmn(F, m, n)
        return ArrowReport(verdict="yes" if hit else "unknown", tier="cert", exact=False)
    if mode == "exhaustive":
        pattern = (
            PatternSpec.complete_bipartite(m, n)
            if pattern_kind == "kmn"
            else PatternSpec.book(m, n)
        )
        hit = arrow_exhaustive(F, pattern)
        return ArrowReport(verdict="yes" if hit else "no", tier="exact", exact=True)
    if mode == "refute":
        split = refute_arrow_by_halving(F, m, n, pattern_kind, trials=trials, rng=rng)
        if split is None:
            return ArrowReport(verdict="unknown", tier="refute", exact=False)
        return ArrowReport(verdict="no", tier="refute", exact=False, split=split)
    raise ValueError("mode must be one of: certificate, exhaustive, refute")
