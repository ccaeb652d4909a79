"""Seeded Monte Carlo under random labeling: calibration, rate and SLLN studies.

Sampling contract
-----------------
Replicate ``r`` of a run with master seed ``s`` colors the graph with the
stream ``stream_seed(s, r)``; nothing else consumes randomness.  Studies
derive one sub-master per size via ``stream_seed(s, n)`` and split it
into a graph seed (index 0) and a simulation master (index 1), so every
row of a study is reproducible in isolation.  Replicates are evaluated
in fixed-size chunks; a worker pool over chunks returns results in chunk
order, which makes the output identical for any worker count.

Standardization
---------------
Two scalings of Q - mu are supported: ``"sigma"`` divides by the exact
null standard deviation, ``"delta"`` by the asymptotic scale
sqrt(r1/m).  The rate study reports the Kolmogorov distance for both.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .colors import ColorDistribution
from .errors import DomainError, InputError
from .generators import GeneratorSpec, parse_generator_spec
from .graph import Graph
from .moments import NullMoments, _q_rows, _v2_rows, modularity, null_moments
from .rng import stream_seed, stream_seed_array, uniform_matrix

_SQRT2 = math.sqrt(2.0)
_CHUNK = 1024

STANDARDIZATIONS = ("sigma", "delta")


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function.

    Phi(x) = erfc(-x / sqrt(2)) / 2, with erfc evaluated by the Cephes
    rational approximations behind scipy.special (relative error a few
    ulp, far below the 1e-12 contract).  The scalar and array paths call
    the same routine, so they agree bit for bit.
    """
    return float(0.5 * special.erfc(-float(x) / _SQRT2))


def _phi_array(x: np.ndarray) -> np.ndarray:
    return 0.5 * special.erfc(-np.asarray(x, dtype=np.float64) / _SQRT2)


def upper_p_value(z: float) -> float:
    """P(N(0,1) > z), evaluated in the complementary form to keep tail accuracy."""
    return float(0.5 * special.erfc(float(z) / _SQRT2))


def ks_distance(samples) -> float:
    """Kolmogorov distance between the empirical CDF and the standard normal."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    if x.size == 0:
        raise InputError("need at least one sample")
    return _ks_against(_phi_array(x))


def ks_distance_uniform(samples) -> float:
    """Kolmogorov distance to the uniform law on [0, 1] (for p-value calibration)."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    if x.size == 0:
        raise InputError("need at least one sample")
    if x[0] < 0.0 or x[-1] > 1.0:
        raise InputError("samples outside [0, 1]")
    return _ks_against(x)


def _ks_against(cdf_at_sorted: np.ndarray) -> float:
    # Both grids are built directly so each gap is the literal float
    # count/n - cdf; a double-loop empirical-CDF scan produces the same
    # candidate values and therefore the exact same maximum.
    n = cdf_at_sorted.size
    above = np.arange(1, n + 1, dtype=np.float64) / n
    below = np.arange(0, n, dtype=np.float64) / n
    upper = float(np.max(above - cdf_at_sorted))
    lower = float(np.max(cdf_at_sorted - below))
    return max(upper, lower)


def _chunk_ranges(total: int, chunk: int = _CHUNK) -> list[tuple[int, int]]:
    return [(a, min(a + chunk, total)) for a in range(0, total, chunk)]


def _run_chunks(fn, total: int, threads: int) -> list[np.ndarray]:
    """Evaluate ``fn(start, stop)`` per chunk, in chunk order regardless of workers."""
    ranges = _chunk_ranges(total)
    if threads <= 1 or len(ranges) <= 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def _null_colorings(dist: ColorDistribution, n: int, master_seed: int, start: int, stop: int):
    seeds = stream_seed_array(master_seed, np.arange(start, stop, dtype=np.uint64))
    u = uniform_matrix(seeds, n)
    return np.searchsorted(dist._cum, u, side="right").astype(np.int16) + 1


def null_q_samples(
    g: Graph, dist: ColorDistribution, reps: int, master_seed: int, threads: int = 1
) -> np.ndarray:
    """Raw modularity values for ``reps`` independent null colorings."""
    if reps < 1:
        raise InputError("reps must be >= 1")
    if dist.is_degenerate:
        raise DomainError("degenerate color distribution: null sampling is pointless")

    def chunk(a: int, b: int) -> np.ndarray:
        return _q_rows(_null_colorings(dist, g.n, master_seed, a, b), g)

    return np.concatenate(_run_chunks(chunk, reps, threads))


def martingale_variance_samples(
    g: Graph, dist: ColorDistribution, reps: int, master_seed: int, threads: int = 1
) -> np.ndarray:
    """Martingale conditional variance for the same colorings as null_q_samples."""
    if reps < 1:
        raise InputError("reps must be >= 1")
    if dist.is_degenerate:
        raise DomainError("degenerate color distribution: martingale variance undefined")

    def chunk(a: int, b: int) -> np.ndarray:
        return _v2_rows(_null_colorings(dist, g.n, master_seed, a, b), g, dist)

    return np.concatenate(_run_chunks(chunk, reps, threads))


@dataclass(frozen=True)
class NullSample:
    """Monte Carlo draw of standardized modularity under the null."""

    q: np.ndarray
    samples: np.ndarray
    standardization: str
    mean: float
    variance: float
    ks: float
    moments: NullMoments


def _check_standardization(name: str) -> str:
    if name not in STANDARDIZATIONS:
        raise InputError(f"standardization must be one of {STANDARDIZATIONS}, got {name!r}")
    return name


def simulate_null(
    g: Graph,
    dist: ColorDistribution,
    reps: int,
    master_seed: int,
    standardization: str = "sigma",
    threads: int = 1,
) -> NullSample:
    """Sample (Q - mu)/scale under random labeling; summary with KS distance."""
    standardization = _check_standardization(standardization)
    mom = null_moments(g, dist)
    q = null_q_samples(g, dist, reps, master_seed, threads)
    scale = mom.sigma if standardization == "sigma" else mom.delta
    z = (q - mom.mu) / scale
    return NullSample(
        q=q,
        samples=z,
        standardization=standardization,
        mean=float(np.mean(z)),
        variance=float(np.var(z, ddof=1)) if reps > 1 else 0.0,
        ks=ks_distance(z),
        moments=mom,
    )


@dataclass(frozen=True)
class TestReport:
    """z-test of an observed partition against the random-labeling null."""

    Q: float
    mu: float
    sigma: float
    delta: float
    z_sigma: float
    z_delta: float
    p_value: float
    sidedness: str
    standardization: str


def significance_test(
    g: Graph,
    colors,
    dist: ColorDistribution | None = None,
    sided: str = "upper",
    standardization: str = "sigma",
) -> TestReport:
    """Normal-approximation significance of a partition.

    With no explicit distribution the observed color frequencies are
    used.  ``upper`` answers "is Q larger than random labeling would
    produce"; ``two_sided`` doubles the symmetric tail.
    """
    standardization = _check_standardization(standardization)
    if sided == "two":
        sided = "two_sided"
    if sided not in ("upper", "two_sided"):
        raise InputError(f"sidedness must be 'upper' or 'two_sided', got {sided!r}")
    if dist is None:
        dist = ColorDistribution.from_coloring(colors)
    if dist.is_degenerate:
        raise DomainError("degenerate color distribution: z-score undefined")
    q = modularity(g, colors)
    mom = null_moments(g, dist)
    z_sigma = (q - mom.mu) / mom.sigma
    z_delta = (q - mom.mu) / mom.delta
    z = z_sigma if standardization == "sigma" else z_delta
    p = upper_p_value(z) if sided == "upper" else min(1.0, 2.0 * upper_p_value(abs(z)))
    return TestReport(
        Q=q,
        mu=mom.mu,
        sigma=mom.sigma,
        delta=mom.delta,
        z_sigma=z_sigma,
        z_delta=z_delta,
        p_value=p,
        sidedness=sided,
        standardization=standardization,
    )


@dataclass(frozen=True)
class StudyConfig:
    """Configuration of a rate study; a pure function of this produces the rows."""

    generator_spec: GeneratorSpec
    sizes: tuple[int, ...]
    reps: int
    master_seed: int
    standardization: str = "delta"
    distribution: ColorDistribution = field(default_factory=lambda: ColorDistribution.uniform(2))

    def __post_init__(self):
        if isinstance(self.generator_spec, str):
            object.__setattr__(self, "generator_spec", parse_generator_spec(self.generator_spec))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        _check_standardization(self.standardization)
        if self.reps < 100:
            raise InputError(f"a study needs reps >= 100, got {self.reps}")
        if len(self.sizes) == 0 or any(s < 2 for s in self.sizes):
            raise InputError("sizes must all be >= 2")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise InputError("sizes must be strictly increasing")
        if self.distribution.is_degenerate:
            raise DomainError("degenerate color distribution in study config")


@dataclass(frozen=True)
class RateRow:
    """Per-size outcome of a rate study.

    ``ks`` is the Kolmogorov distance for the configured standardization;
    both scalings are also reported, together with the rate shape
    n^{-1/4} log n and the constant ks / shape it implies.
    """

    n: int
    m: int
    ks: float
    bound_shape: float
    fitted_C: float
    seed_used: int
    ks_sigma: float
    ks_delta: float
    sigma2_over_delta2: float


def _size_seeds(master_seed: int, n: int) -> tuple[int, int, int]:
    size_master = stream_seed(master_seed, n)
    return size_master, stream_seed(size_master, 0), stream_seed(size_master, 1)


def be_rate_study(cfg: StudyConfig, threads: int = 1) -> list[RateRow]:
    """Kolmogorov distance to the normal across sizes, against the rate shape.

    One graph per size, ``cfg.reps`` standardized replicates each; KS is
    computed for both scalings from the same raw modularity values.
    """
    rows = []
    for n in cfg.sizes:
        size_master, graph_seed, sim_master = _size_seeds(cfg.master_seed, n)
        try:
            g = cfg.generator_spec.build(n, graph_seed)
        except (InputError, DomainError) as exc:
            raise type(exc)(f"generator failed at size n={n}: {exc}") from exc
        mom = null_moments(g, cfg.distribution)
        q = null_q_samples(g, cfg.distribution, cfg.reps, sim_master, threads)
        ks_sigma = ks_distance((q - mom.mu) / mom.sigma)
        ks_delta = ks_distance((q - mom.mu) / mom.delta)
        ks = ks_sigma if cfg.standardization == "sigma" else ks_delta
        shape = n ** -0.25 * math.log(n)
        rows.append(
            RateRow(
                n=n,
                m=g.m,
                ks=ks,
                bound_shape=shape,
                fitted_C=ks / shape,
                seed_used=size_master,
                ks_sigma=ks_sigma,
                ks_delta=ks_delta,
                sigma2_over_delta2=mom.sigma2 / mom.delta2,
            )
        )
    return rows


@dataclass(frozen=True)
class SllnRow:
    path: int
    n: int
    value: float


@dataclass(frozen=True)
class SllnPathSummary:
    path: int
    first_half_max: float
    second_half_max: float
    decayed: bool


@dataclass(frozen=True)
class SllnResult:
    rows: list[SllnRow]
    path_summaries: list[SllnPathSummary]
    decayed_paths: int
    paths: int


def slln_study(
    generator_spec: GeneratorSpec | str,
    sizes,
    paths: int,
    master_seed: int,
    distribution: ColorDistribution | None = None,
    bn_mode: str = "default",
) -> SllnResult:
    """Path-wise decay of b_n (Q - mu) along a size ladder.

    The default scaling b_n = sqrt(m) / (log n)^2 keeps b_n log n /
    sqrt(m) = 1 / log n vanishing, the regime in which the centered
    modularity is driven to zero almost surely.  Each path draws a fresh
    coloring at every size; decay is summarized as second-half max
    |value| not exceeding the first-half max.
    """
    if bn_mode != "default":
        raise InputError(f"unknown bn_mode {bn_mode!r}; only 'default' is defined")
    if isinstance(generator_spec, str):
        generator_spec = parse_generator_spec(generator_spec)
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 2 or any(s < 2 for s in sizes):
        raise InputError("slln study needs at least two sizes, all >= 2")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    if paths < 1:
        raise InputError("paths must be >= 1")
    dist = distribution if distribution is not None else ColorDistribution.uniform(2)
    if dist.is_degenerate:
        raise DomainError("degenerate color distribution in slln study")

    per_size = []
    for n in sizes:
        _, graph_seed, sim_master = _size_seeds(master_seed, n)
        g = generator_spec.build(n, graph_seed)
        mom = null_moments(g, dist)
        b_n = math.sqrt(g.m) / math.log(n) ** 2
        per_size.append((n, g, mom.mu, b_n, sim_master))

    rows: list[SllnRow] = []
    summaries: list[SllnPathSummary] = []
    half = len(sizes) // 2
    for path in range(paths):
        values = []
        for n, g, mu, b_n, sim_master in per_size:
            colors = dist.sample_coloring(g.n, stream_seed(sim_master, path))
            values.append(b_n * (modularity(g, colors) - mu))
            rows.append(SllnRow(path=path, n=n, value=values[-1]))
        first = max(abs(v) for v in values[:half])
        second = max(abs(v) for v in values[half:])
        summaries.append(
            SllnPathSummary(
                path=path,
                first_half_max=first,
                second_half_max=second,
                decayed=second <= first,
            )
        )
    return SllnResult(
        rows=rows,
        path_summaries=summaries,
        decayed_paths=sum(s.decayed for s in summaries),
        paths=paths,
    )
