"""Weight vectors, model parameters, and seeded graph samplers.

Two sampling laws are provided.  The null model joins each pair {i, j}
independently with probability p0*W_i*W_j.  The planted model first
draws community indicators Z_i ~ Bernoulli(r) and then joins {i, j}
with probability W_i*W_j*((a-b)*Z_i*Z_j + b)/n, so community pairs
connect at rate a/n and all other pairs at rate b/n.

Samplers are pure functions of their SeedSpec: per-replication streams
are derived by feeding (master_seed, replication_index) into a seed
sequence, so results never depend on execution order or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, ParameterError
from .graph import Graph

_WEIGHT_NORM_MAX_K = 12


class WeightVector:
    """Nonnegative per-vertex weights with power-sum accessors."""

    __slots__ = ("w",)

    def __init__(self, values):
        w = np.asarray(values, dtype=np.float64).reshape(-1)
        if len(w) == 0:
            raise InputError("weight vector must have length >= 1")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InputError("weights must be finite and nonnegative")
        w = w.copy()
        w.setflags(write=False)
        self.w = w

    def __len__(self) -> int:
        return len(self.w)

    @property
    def values(self) -> np.ndarray:
        return self.w

    def normk(self, k: int) -> float:
        """Power sum sum_i W_i^k for integer k in [1, 12]."""
        if not (1 <= int(k) <= _WEIGHT_NORM_MAX_K) or k != int(k):
            raise InputError(f"normk requires integer k in [1, {_WEIGHT_NORM_MAX_K}]")
        return float(np.sum(self.w ** int(k)))

    @property
    def norm2sq(self) -> float:
        return self.normk(2)

    def max_pair_product(self) -> float:
        """max over i != j of W_i*W_j (0.0 when n == 1)."""
        if len(self.w) < 2:
            return 0.0
        top = np.partition(self.w, len(self.w) - 2)[-2:]
        return float(top[0] * top[1])

    @classmethod
    def from_file(cls, path: str | Path) -> "WeightVector":
        """One nonnegative real per line; blank lines and '#' comments skipped."""
        vals = []
        for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                vals.append(float(s))
            except ValueError:
                raise InputError(f"line {lineno}: not a real number: {s!r}") from None
        if not vals:
            raise InputError("weight file contains no values")
        return cls(vals)

    def __repr__(self) -> str:
        return f"WeightVector(n={len(self)}, norm2sq={self.norm2sq:.4f})"


def weights_linear(n: int) -> WeightVector:
    """W_i = i/n for i = 1..n; a strongly heterogeneous profile."""
    if n < 1:
        raise InputError("n must be >= 1")
    return WeightVector(np.arange(1, n + 1, dtype=np.float64) / n)


def weights_constant(n: int, c: float) -> WeightVector:
    """All weights equal to c; c = 1 recovers the homogeneous model."""
    if n < 1:
        raise InputError("n must be >= 1")
    if c < 0:
        raise InputError("c must be nonnegative")
    return WeightVector(np.full(n, float(c)))


def weights_uniform(n: int, seed: int, low: float = 1.0, high: float = 2.0) -> WeightVector:
    """W_i drawn iid Uniform[low, high]; deterministic given seed."""
    if n < 1:
        raise InputError("n must be >= 1")
    if not (0 <= low <= high):
        raise InputError("need 0 <= low <= high")
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    return WeightVector(rng.uniform(low, high, size=n))


@dataclass(frozen=True)
class ModelParams:
    """Planted-model parameters (n, a, b, r); rates a, b are absolute.

    Community pairs connect at rate a/n, background pairs at b/n.  Use
    from_rates() to construct from the per-n form (a/n, b/n) directly.
    """

    n: int
    a: float
    b: float
    r: float

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"n must be >= 1, got {self.n}")
        if not (self.a >= self.b >= 0):
            raise ParameterError(f"need a >= b >= 0, got a={self.a}, b={self.b}")
        if not (0 <= self.r <= 1):
            raise ParameterError(f"need 0 <= r <= 1, got r={self.r}")

    @classmethod
    def from_rates(cls, n: int, a_over_n: float, b_over_n: float, r: float) -> "ModelParams":
        return cls(n=n, a=a_over_n * n, b=b_over_n * n, r=r)

    @property
    def p0(self) -> float:
        """Null edge-probability scale a/n."""
        return self.a / self.n

    @property
    def b_over_n(self) -> float:
        return self.b / self.n

    def validate_with(self, w: WeightVector) -> None:
        """Every edge probability must land in [0, 1] for these weights."""
        if len(w) != self.n:
            raise InputError(f"weight vector length {len(w)} != n={self.n}")
        worst = self.p0 * w.max_pair_product()
        if worst > 1.0 + 1e-12:
            raise ParameterError(
                f"max edge probability (a/n)*max WiWj = {worst:.6g} exceeds 1")


@dataclass(frozen=True)
class SeedSpec:
    """Reproducible stream id: (master_seed, replication_index).

    The derived generator is a pure function of the two fields, so
    replications can run in any order, on any number of workers, and
    still produce identical samples.
    """

    master_seed: int
    replication_index: int = 0

    def __post_init__(self):
        if not (0 <= self.master_seed < 2 ** 64):
            raise InputError("master_seed must fit in 64 unsigned bits")
        if self.replication_index < 0:
            raise InputError("replication_index must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master_seed,
                                    spawn_key=(self.replication_index,))
        return np.random.Generator(np.random.PCG64(ss))


def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Row-major upper triangle: (0,1), (0,2), ..., (n-2,n-1).
    return np.triu_indices(n, k=1)


def _graph_from_mask(n: int, iu: np.ndarray, ju: np.ndarray, keep: np.ndarray) -> Graph:
    pairs = np.stack([iu[keep], ju[keep]], axis=1).astype(np.int64)
    # triu order is already u < v and lexicographically sorted
    return Graph(n, pairs)


def sample_null(n: int, p0: float, w: WeightVector, seed: SeedSpec) -> Graph:
    """Sample the no-community model: pair {i,j} present w.p. p0*W_i*W_j."""
    if len(w) != n:
        raise InputError(f"weight vector length {len(w)} != n={n}")
    if p0 < 0:
        raise ParameterError(f"p0 must be nonnegative, got {p0}")
    if p0 * w.max_pair_product() > 1.0 + 1e-12:
        raise ParameterError("p0*max WiWj exceeds 1: probabilities invalid")
    iu, ju = _pair_index(n)
    probs = p0 * w.values[iu] * w.values[ju]
    rng = seed.generator()
    keep = rng.random(len(probs)) < probs
    return _graph_from_mask(n, iu, ju, keep)


def sample_planted(params: ModelParams, w: WeightVector,
                   seed: SeedSpec) -> tuple[Graph, np.ndarray]:
    """Sample the planted model; returns (graph, z).

    z is the 0/1 community-membership vector, returned even when a = b
    (it is then inert for the edge law) so ground truth is always
    available for logging.  Draw order is fixed: z first, then one
    uniform per vertex pair in row-major upper-triangle order.
    """
    params.validate_with(w)
    rng = seed.generator()
    z = (rng.random(params.n) < params.r).astype(np.int8)
    iu, ju = _pair_index(params.n)
    rate = ((params.a - params.b) * (z[iu] * z[ju]) + params.b) / params.n
    probs = w.values[iu] * w.values[ju] * rate
    keep = rng.random(len(probs)) < probs
    return _graph_from_mask(params.n, iu, ju, keep), z


def expected_degree(i: int, p0: float, w: WeightVector) -> float:
    """Closed-form expected degree of vertex i (1-based) under linear weights.

    Evaluates i*p0/2 + i*p0/(2n) - i^2*p0/n^2, which equals
    p0*W_i*(sum_j W_j - W_i), i.e. the self-loop-free expectation.  Note
    the naive sum over all j (including j = i) would exceed this by
    p0*W_i^2 <= p0.
    """
    n = len(w)
    if not np.allclose(w.values, np.arange(1, n + 1) / n):
        raise InputError("expected_degree is defined for linear weights W_i = i/n")
    if not (1 <= i <= n):
        raise InputError(f"vertex index {i} outside [1, {n}]")
    return i * p0 / 2 + i * p0 / (2 * n) - i * i * p0 / (n * n)


def expected_edge_count_null(p0: float, w: WeightVector) -> float:
    """Sum of Bernoulli means p0*W_i*W_j over unordered pairs."""
    s1 = float(np.sum(w.values))
    s2 = w.norm2sq
    return p0 * (s1 * s1 - s2) / 2.0


def expected_edge_count_planted(params: ModelParams, w: WeightVector) -> float:
    """Marginal expected edge count; E[Z_i Z_j] = r^2 for i != j."""
    scale = ((params.a - params.b) * params.r ** 2 + params.b) / params.n
    s1 = float(np.sum(w.values))
    s2 = w.norm2sq
    return scale * (s1 * s1 - s2) / 2.0
