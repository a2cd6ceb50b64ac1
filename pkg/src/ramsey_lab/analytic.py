"""Closed-form quantities: thresholds, tail bounds, exact small-N laws.

Everything here is deterministic arithmetic.  The exact enumeration
functions at the bottom are deliberately brute force -- they exist as
ground truth for the samplers and the containment searches, so they
avoid sharing code with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .graphs import Graph, build_graph
from .witness import MAX_EXPLICIT_PATTERN, PatternSpec, _embeds

_EXACT_HALVING_LIMIT = 4
_EXACT_CONTAINMENT_LIMIT = 6


class ClampedProbability(NamedTuple):
    """A probability together with a flag saying the formula exceeded [0,1]."""

    value: float
    clamped: bool


def default_omega(n: int) -> float:
    """Slow-growing divergence parameter: max(10, log(n)^2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return max(10.0, math.log(n) ** 2)


def m_min(c: float, m: int) -> float:
    """Smallest margin constant for which the lower threshold argument closes.

    Equals 6 * m * c * 2^m * p0 * (1 - p0) with p0 = 1 / (c * 2^m), the
    asymptotic post-halving edge probability at the lower threshold.
    """
    if c <= 1.0:
        raise ValueError("c must exceed 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    p0 = 1.0 / (c * 2.0**m)
    return 6.0 * m * c * 2.0**m * p0 * (1.0 - p0)


@dataclass(frozen=True)
class ThresholdParams:
    """Parameters of one threshold instance.

    ``omega`` defaults to max(10, log(n)^2); ``M`` defaults to twice the
    minimal admissible margin (a safety factor over the bare constant).
    """

    m: int
    c: float
    n: int
    omega: float | None = None
    M: float | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.c <= 1.0:
            raise ValueError("c must exceed 1")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.omega is None:
            object.__setattr__(self, "omega", default_omega(self.n))
        elif self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.M is None:
            object.__setattr__(self, "M", 2.0 * m_min(self.c, self.m))
        elif self.M <= 0:
            raise ValueError("M must be positive")

    @property
    def N(self) -> int:
        return ramsey_window_N(self.c, self.m, self.n)


def ramsey_window_N(c: float, m: int, n: int) -> int:
    """Host size N = floor(c * 2^m * n)."""
    if c <= 1.0:
        raise ValueError("c must exceed 1")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    # Tiny additive guard so integer-valued products do not floor down.
    return int(math.floor(c * 2.0**m * n + 1e-9))


def p_upper(params: ThresholdParams) -> ClampedProbability:
    """Upper threshold c^{-1/m} * (1 + omega/n), clamped into [0, 1]."""
    raw = params.c ** (-1.0 / params.m) * (1.0 + params.omega / params.n)
    if raw > 1.0:
        return ClampedProbability(1.0, True)
    return ClampedProbability(raw, False)


def p_lower(params: ThresholdParams) -> ClampedProbability:
    """Lower threshold c^{-1/m} * (1 - sqrt(M log(n)/n)).

    Defined only while M log(n)/n < 1; smaller n makes the square root
    exceed 1 and the formula meaningless, which raises ValueError.
    """
    ratio = params.M * math.log(params.n) / params.n
    if ratio >= 1.0:
        raise ValueError(
            f"lower threshold undefined: M*log(n)/n = {ratio:.4g} >= 1"
        )
    raw = params.c ** (-1.0 / params.m) * (1.0 - math.sqrt(ratio))
    return ClampedProbability(raw, False)


def threshold_summary(params: ThresholdParams) -> dict[str, object]:
    """All derived threshold quantities in one mapping (CLI/service view)."""
    upper = p_upper(params)
    try:
        lower = p_lower(params)
        lower_value, lower_defined = lower.value, True
    except ValueError:
        lower_value, lower_defined = None, False
    return {
        "N": params.N,
        "m_min": m_min(params.c, params.m),
        "omega": params.omega,
        "M": params.M,
        "p_upper": upper.value,
        "p_upper_clamped": upper.clamped,
        "p_lower": lower_value,
        "p_lower_defined": lower_defined,
    }


def chernoff_tail_bound(T: int, p: float, delta: float) -> float:
    """Multiplicative Chernoff bound exp(-T delta^2 / (3 p q)) for Bin(T, p).

    Bounds the probability of deviating from the mean by at least
    delta*T; the same expression serves the upper and the lower tail.
    """
    if T < 0:
        raise ValueError("T must be non-negative")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if delta < 0.0:
        raise ValueError("delta must be non-negative")
    return math.exp(-T * delta * delta / (3.0 * p * (1.0 - p)))


def exact_binomial_tail(T: int, p: float, k: int, side: str) -> float:
    """Exact Bin(T, p) tail: P[X >= k] for 'upper', P[X <= k] for 'lower'.

    Summed in log space from the far end of the tail inward so extreme
    tails keep full relative precision until they underflow doubles.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    if T < 0:
        raise ValueError("T must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if not 0 <= k <= T:
        raise ValueError("k must lie in [0, T]")
    if side == "upper" and k == 0:
        return 1.0
    if side == "lower" and k == T:
        return 1.0
    if p == 0.0:
        return 0.0 if side == "upper" else 1.0
    if p == 1.0:
        return 1.0 if side == "upper" else 0.0
    logp, logq = math.log(p), math.log1p(-p)
    lgT = math.lgamma(T + 1)
    if side == "upper":
        js = range(T, k - 1, -1)  # smallest terms first
    else:
        js = range(0, k + 1)
    terms = [
        math.exp(
            lgT
            - math.lgamma(j + 1)
            - math.lgamma(T - j + 1)
            + j * logp
            + (T - j) * logq
        )
        for j in js
    ]
    return min(1.0, math.fsum(terms))


def kst_extremal_bound(N: int, m: int, n: int) -> float:
    """Upper bound on ex(N; K_{m,n}):

        0.5 * ((n - 1)^{1/m} * N^{2 - 1/m} + (m - 1) * N)

    Any N-vertex graph with more edges contains K_{m,n}.  The formula is
    evaluated literally; it is the classical double-counting bound for
    the m <= n orientation, so callers with m > n should swap sides.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    return 0.5 * ((n - 1.0) ** (1.0 / m) * N ** (2.0 - 1.0 / m) + (m - 1.0) * N)


def _lex_pairs(N: int) -> list[tuple[int, int]]:
    return list(combinations(range(N), 2))


def exact_halving_distribution(N: int, p: float) -> dict[Graph, float]:
    """Exact law of the red class of a fair halving of G(N, p).

    Enumerates every host graph and every red subset of its edges, so it
    is restricted to N <= 4 (at most 2^6 hosts x 2^6 subsets).  The
    returned weights are indexed by the red graph and sum to 1.
    """
    if N > _EXACT_HALVING_LIMIT:
        raise ValueError(f"exact enumeration restricted to N <= {_EXACT_HALVING_LIMIT}")
    if N < 0:
        raise ValueError("N must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    pairs = _lex_pairs(N)
    C = len(pairs)
    acc: dict[int, float] = {}
    for host in range(1 << C):
        e = host.bit_count()
        weight = p**e * (1.0 - p) ** (C - e) * 0.5**e
        sub = host
        while True:
            acc[sub] = acc.get(sub, 0.0) + weight
            if sub == 0:
                break
            sub = (sub - 1) & host
    out: dict[Graph, float] = {}
    for mask, weight in acc.items():
        edges = [pairs[i] for i in range(C) if mask >> i & 1]
        out[build_graph(N, edges)] = weight
    return out


def exact_containment_prob(N: int, p: float, pattern: PatternSpec) -> float:
    """Exact P[pattern appears in G(N, p)] by enumerating all hosts.

    Containment is decided by the standalone embedding search, keeping
    this independent from the witness-producing checks it validates.
    Restricted to N <= 6.
    """
    if N > _EXACT_CONTAINMENT_LIMIT:
        raise ValueError(
            f"exact enumeration restricted to N <= {_EXACT_CONTAINMENT_LIMIT}"
        )
    if N < 0:
        raise ValueError("N must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    target = pattern.build()
    if target.vertex_count > MAX_EXPLICIT_PATTERN:
        raise ValueError(
            f"pattern limited to {MAX_EXPLICIT_PATTERN} vertices for enumeration"
        )
    pat_rows, pat_n = target.rows, target.vertex_count
    pairs = _lex_pairs(N)
    C = len(pairs)
    total = 0.0
    rows = [0] * N
    for host in range(1 << C):
        for i in range(N):
            rows[i] = 0
        for i in range(C):
            if host >> i & 1:
                u, v = pairs[i]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if _embeds(rows, N, pat_rows, pat_n):
            e = host.bit_count()
            total += p**e * (1.0 - p) ** (C - e)
    return min(1.0, total)
