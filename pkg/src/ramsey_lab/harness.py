"""Monte Carlo engine: event estimates over p-grids, halving-law checks,
and density checks, all reproducible to the byte.

Every trial owns a derived substream named by (grid row, trial index),
so results are a pure function of (config, master seed) no matter how
trials are scheduled across workers.  The ``RAMSEY_LAB_THREADS``
environment variable caps the worker count.

Sweep config file format (key=value lines, ``#`` starts a comment)::

    c=2            # window constant, N = floor(c * 2^m * n)
    m=1
    n=500
    event=weak-containment   # or a full kind like weak-containment-kmn
    pattern=kmn              # kmn | book
    p_grid=0.40:0.60:0.02    # start:stop:step, or a comma list
    trials=100
    seed=7
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy import stats

from .analytic import ramsey_window_N
from .arrows import (
    DEFAULT_REFUTE_TRIALS,
    arrow_certificate_kmn,
    refute_arrow_by_halving,
)
from .graphs import Graph, _halve_with_bias, pair_density, sample_gnp
from .rng import RngStream
from .witness import contains_book, contains_kmn

THREADS_ENV = "RAMSEY_LAB_THREADS"
DEFAULT_TRIALS = 100
_DEFAULT_WORKERS = 1

EVENT_KINDS = (
    "weak-containment-kmn",
    "weak-containment-book",
    "arrow-certificate-kmn",
    "arrow-refuted-by-halving",
)

_Z95 = float(stats.norm.ppf(0.975))


def resolve_workers(requested: int | None = None) -> int:
    """Effective worker count: the request (or default), capped by env."""
    count = _DEFAULT_WORKERS if requested is None else int(requested)
    if count < 1:
        raise ValueError("worker count must be at least 1")
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer") from None
        if cap_value < 1:
            raise ValueError(f"{THREADS_ENV} must be at least 1")
        count = min(count, cap_value)
    return count


@dataclass(frozen=True)
class EventSpec:
    """One per-trial experiment: which property to test on a sampled graph.

    ``rule`` is the sampling rule: 'halved' draws the trial graph at p/2
    (the weak form: one color class of a fair coloring), 'raw' draws at
    p.  Left as None it defaults by kind: containment events are halved,
    arrow events are raw.
    """

    kind: str
    m: int
    n: int
    rule: str | None = None
    refute_trials: int = DEFAULT_REFUTE_TRIALS
    refute_pattern: str = "kmn"

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("event parameters m and n must be at least 1")
        if self.rule is None:
            default = "halved" if self.kind.startswith("weak-containment") else "raw"
            object.__setattr__(self, "rule", default)
        elif self.rule not in ("raw", "halved"):
            raise ValueError("rule must be 'raw' or 'halved'")
        if self.refute_trials < 1:
            raise ValueError("refute_trials must be at least 1")
        if self.refute_pattern not in ("kmn", "book"):
            raise ValueError("refute_pattern must be 'kmn' or 'book'")

    def sampling_probability(self, p: float) -> float:
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        return p / 2.0 if self.rule == "halved" else p

    def evaluate(self, F: Graph, rng: RngStream) -> bool:
        """Whether the event holds for one sampled graph."""
        if self.kind == "weak-containment-kmn":
            return contains_kmn(F, self.m, self.n) is not None
        if self.kind == "weak-containment-book":
            return contains_book(F, self.m, self.n) is not None
        if self.kind == "arrow-certificate-kmn":
            return arrow_certificate_kmn(F, self.m, self.n)
        split = refute_arrow_by_halving(
            F, self.m, self.n, self.refute_pattern,
            trials=self.refute_trials, rng=rng,
        )
        return split is not None


class EventEstimate(NamedTuple):
    """Success fraction with its 95% Wilson score interval."""

    p_hat: float
    ci_low: float
    ci_high: float


def wilson_interval(
    successes: int, trials: int, confidence: float = 0.95
) -> tuple[float, float]:
    """Wilson score interval for a Bernoulli proportion."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must lie strictly between 0 and 1")
    if confidence == 0.95:
        z = _Z95
    else:
        z = float(stats.norm.ppf(0.5 + confidence / 2.0))
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = (
        z
        * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
        / denom
    )
    # At the boundary counts the endpoint is exactly 0 or 1; rounding in
    # center - half otherwise leaves ~1e-18 residue.
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def _count_successes(
    event: EventSpec,
    N: int,
    sample_p: float,
    row_stream: RngStream,
    lo: int,
    hi: int,
) -> int:
    hits = 0
    for t in range(lo, hi):
        trial = row_stream.child(t)
        F = sample_gnp(N, sample_p, trial.child(0))
        if event.evaluate(F, trial.child(1)):
            hits += 1
    return hits


def _run_trials(
    event: EventSpec,
    N: int,
    sample_p: float,
    row_stream: RngStream,
    trials: int,
    workers: int,
) -> int:
    if workers <= 1 or trials <= 1:
        return _count_successes(event, N, sample_p, row_stream, 0, trials)
    chunk = -(-trials // workers)
    bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            lambda b: _count_successes(event, N, sample_p, row_stream, *b), bounds
        )
        return sum(parts)


def estimate_event_prob(
    event: EventSpec,
    N: int,
    p: float,
    trials: int,
    rng: RngStream,
    workers: int | None = None,
) -> EventEstimate:
    """Monte Carlo estimate of Pr[event] with a 95% Wilson interval.

    Each trial samples one graph (at p or p/2 per the event's rule) on a
    substream named by the trial index, so the estimate is deterministic
    in ``rng`` for any worker count.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sample_p = event.sampling_probability(p)
    hits = _run_trials(event, N, sample_p, rng, trials, resolve_workers(workers))
    low, high = wilson_interval(hits, trials)
    return EventEstimate(hits / trials, low, high)


@dataclass(frozen=True)
class SweepConfig:
    """A resolved sweep: window parameters, event, grid, budget, seed."""

    c: float
    m: int
    n: int
    event: EventSpec
    p_grid: tuple[float, ...]
    trials: int = DEFAULT_TRIALS
    seed: int = 0

    def __post_init__(self):
        if self.c <= 1.0:
            raise ValueError("c must exceed 1")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be at least 1")
        if not self.p_grid:
            raise ValueError("p_grid must be non-empty")
        for p in self.p_grid:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"grid value {p} outside [0, 1]")
        if list(self.p_grid) != sorted(self.p_grid):
            object.__setattr__(self, "p_grid", tuple(sorted(self.p_grid)))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    @property
    def N(self) -> int:
        return ramsey_window_N(self.c, self.m, self.n)


@dataclass(frozen=True)
class SweepRow:
    p: float
    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int


@dataclass(frozen=True)
class SweepResult:
    """Rows of estimates, sorted by p, plus the config that produced them."""

    config: SweepConfig
    rows: tuple[SweepRow, ...] = field(default_factory=tuple)

    CSV_HEADER = "p,trials,successes,p_hat,ci_low,ci_high,seed"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.p:.6g},{r.trials},{r.successes},"
                f"{r.p_hat:.6g},{r.ci_low:.6g},{r.ci_high:.6g},{r.seed}"
            )
        return "\n".join(lines) + "\n"


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """Estimate the event at every grid point.

    Trial streams are derived from (master seed, row index, trial
    index); the result is byte-identical for any worker count.
    """
    effective = resolve_workers(workers)
    root = RngStream(config.seed)
    N = config.N
    rows = []
    for row_index, p in enumerate(config.p_grid):
        sample_p = config.event.sampling_probability(p)
        hits = _run_trials(
            config.event, N, sample_p, root.child(row_index), config.trials, effective
        )
        low, high = wilson_interval(hits, config.trials)
        rows.append(
            SweepRow(
                p=p,
                trials=config.trials,
                successes=hits,
                p_hat=hits / config.trials,
                ci_low=low,
                ci_high=high,
                seed=config.seed,
            )
        )
    return SweepResult(config=config, rows=tuple(rows))


def _parse_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid range must be start:stop:step")
        start, stop, step = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        if stop < start:
            raise ValueError("grid stop must not precede start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 12) for i in range(count))
    values = tuple(float(x) for x in text.split(",") if x.strip())
    if not values:
        raise ValueError("grid list is empty")
    return values


def _compose_event(kind_text: str, pattern: str | None, rule: str | None,
                   m: int, n: int, refute_trials: int) -> EventSpec:
    if pattern is not None and pattern not in ("kmn", "book"):
        raise ValueError("pattern must be 'kmn' or 'book'")
    kind = kind_text
    if kind_text == "weak-containment":
        if pattern is None:
            raise ValueError("event 'weak-containment' needs pattern=kmn|book")
        kind = f"weak-containment-{pattern}"
    elif kind_text == "arrow-certificate":
        kind = "arrow-certificate-kmn"
    elif kind_text not in EVENT_KINDS:
        raise ValueError(f"unknown event {kind_text!r}")
    if kind.startswith("weak-containment") and pattern is not None:
        if not kind.endswith(pattern):
            raise ValueError(f"event {kind_text!r} conflicts with pattern={pattern}")
    if kind == "arrow-certificate-kmn" and pattern not in (None, "kmn"):
        raise ValueError("the arrow certificate supports only pattern=kmn")
    return EventSpec(
        kind=kind, m=m, n=n, rule=rule,
        refute_trials=refute_trials, refute_pattern=pattern or "kmn",
    )


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse the key=value sweep format (see the module docstring)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value

    required = ("c", "m", "n", "event", "p_grid", "trials", "seed")
    missing = [k for k in required if k not in values]
    if missing:
        raise ValueError(f"missing config keys: {', '.join(missing)}")
    known = set(required) | {"pattern", "rule", "refute_trials"}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")

    try:
        c = float(values["c"])
        m = int(values["m"])
        n = int(values["n"])
        trials = int(values["trials"])
        seed = int(values["seed"])
        refute_trials = int(values.get("refute_trials", DEFAULT_REFUTE_TRIALS))
    except ValueError as exc:
        raise ValueError(f"malformed numeric config value: {exc}") from None
    event = _compose_event(
        values["event"], values.get("pattern"), values.get("rule"),
        m, n, refute_trials,
    )
    return SweepConfig(
        c=c, m=m, n=n, event=event,
        p_grid=_parse_grid(values["p_grid"]),
        trials=trials, seed=seed,
    )


@dataclass(frozen=True)
class HalvingTestReport:
    """Chi-square comparison of red edge counts against Binomial(C, p/2)."""

    vertex_count: int
    p: float
    samples: int
    red_bias: float
    statistic: float
    dof: int
    p_value: float
    bin_count: int


def verify_halving_statistical(
    N: int,
    p: float,
    samples: int,
    rng: RngStream,
    red_bias: float = 0.5,
) -> HalvingTestReport:
    """Sample halvings of G(N, p) and chi-square test the red edge counts.

    The null law is Binomial(C(N,2), p/2); cells are pooled until every
    expected count reaches 5.  ``red_bias`` exists for power checks: a
    biased coin breaks the law and the test should reject.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples for a meaningful test")
    if N < 2:
        raise ValueError("N must be at least 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    C = N * (N - 1) // 2
    observed = np.zeros(C + 1, dtype=np.int64)
    for i in range(samples):
        trial = rng.child(i)
        F = sample_gnp(N, p, trial.child(0))
        split = _halve_with_bias(F, trial.child(1), red_bias)
        observed[split.red.edge_count] += 1
    expected = samples * stats.binom.pmf(np.arange(C + 1), C, p / 2.0)

    obs_bins: list[float] = []
    exp_bins: list[float] = []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += float(o)
        acc_e += float(e)
        if acc_e >= 5.0:
            obs_bins.append(acc_o)
            exp_bins.append(acc_e)
            acc_o = acc_e = 0.0
    if (acc_e > 0.0 or acc_o > 0.0) and obs_bins:
        obs_bins[-1] += acc_o
        exp_bins[-1] += acc_e
    elif acc_e > 0.0 or acc_o > 0.0:
        obs_bins.append(acc_o)
        exp_bins.append(acc_e)

    if len(obs_bins) <= 1:
        statistic, dof, p_value = 0.0, 0, 1.0
    else:
        statistic = float(
            sum((o - e) ** 2 / e for o, e in zip(obs_bins, exp_bins))
        )
        dof = len(obs_bins) - 1
        p_value = float(stats.chi2.sf(statistic, dof))
    return HalvingTestReport(
        vertex_count=N,
        p=p,
        samples=samples,
        red_bias=red_bias,
        statistic=statistic,
        dof=dof,
        p_value=p_value,
        bin_count=len(obs_bins),
    )


@dataclass(frozen=True)
class PairDensityRow:
    x_size: int
    y_size: int
    density: float
    passes: bool


@dataclass(frozen=True)
class DensityCheckReport:
    """Per-pair densities against the threshold p/2."""

    threshold: float
    rows: tuple[PairDensityRow, ...]
    all_pass: bool


def density_property_check(
    F: Graph,
    p: float,
    pairs: Sequence[tuple[Iterable[int], Iterable[int]]],
) -> DensityCheckReport:
    """Check d(X, Y) >= p/2 for each disjoint pair (X, Y)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    threshold = p / 2.0
    rows = []
    for X, Y in pairs:
        xs, ys = tuple(X), tuple(Y)
        d = pair_density(F, xs, ys)  # validates disjointness and emptiness
        rows.append(
            PairDensityRow(
                x_size=len(set(xs)),
                y_size=len(set(ys)),
                density=d,
                passes=d >= threshold,
            )
        )
    return DensityCheckReport(
        threshold=threshold,
        rows=tuple(rows),
        all_pass=all(r.passes for r in rows),
    )


def random_disjoint_pairs(
    N: int,
    x_size: int,
    y_size: int,
    count: int,
    rng: RngStream,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Seeded disjoint vertex-set pairs, one permutation draw per pair."""
    if x_size < 1 or y_size < 1:
        raise ValueError("pair sides must be non-empty")
    if x_size + y_size > N:
        raise ValueError("pair sides exceed the vertex count")
    if count < 1:
        raise ValueError("count must be at least 1")
    out = []
    for i in range(count):
        perm = rng.child(i).generator().permutation(N)
        xs = tuple(sorted(int(v) for v in perm[:x_size]))
        ys = tuple(sorted(int(v) for v in perm[x_size : x_size + y_size]))
        out.append((xs, ys))
    return out
