"""Positive definite matrices, Gaussian entropy vectors and subspace ranks.

The bridge between matrices and the subset lattice: an SPD matrix K induces
the log-determinant rank function g(a) = log2 |K_a| over principal
submatrices; a Gaussian vector with covariance K/(2*pi*e) has differential
entropy function g/2. Configurations of row vectors induce subspace-rank
functions, realized in the Gaussian family by covariances A A^T / c + I
whose entropy growth rate as c -> 0 recovers the ranks.

All logarithms are base 2 (bits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactlin
from .rankfn import RankFunction, as_fraction
from .subsets import check_ground, indices_of

LOG2_2PIE = math.log2(2.0 * math.pi * math.e)

SYMMETRY_RTOL = 1e-12
RANK_RTOL = 1e-9  # singular values below this times the largest count as zero
WISHART_JITTER = 1e-9


class NotPositiveDefiniteError(ValueError):
    """Raised when a matrix fails symmetry or factorization checks."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SpdMatrix:
    """Symmetric positive definite matrix with principal-minor access.

    Symmetry is required within 1e-12 relative; positive definiteness is
    verified by Cholesky factorization at construction.
    """

    entries: np.ndarray

    def __init__(self, entries) -> None:
        arr = np.asarray(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise NotPositiveDefiniteError(f"need a square matrix, got shape {arr.shape}")
        scale = max(1.0, float(np.max(np.abs(arr))))
        if float(np.max(np.abs(arr - arr.T))) > SYMMETRY_RTOL * scale:
            raise NotPositiveDefiniteError("matrix is not symmetric within 1e-12 relative")
        sym = 0.5 * (arr + arr.T)
        try:
            np.linalg.cholesky(sym)
        except np.linalg.LinAlgError:
            raise NotPositiveDefiniteError("matrix is not positive definite") from None
        object.__setattr__(self, "entries", _freeze(sym))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def submatrix(self, mask: int) -> np.ndarray:
        idx = [i - 1 for i in indices_of(mask)]
        return self.entries[np.ix_(idx, idx)]

    def logdet2(self, mask: int = -1) -> float:
        """log2 of the principal minor |K_a|; the empty set gives 0."""
        if mask == -1:
            sub = self.entries
        elif mask == 0:
            return 0.0
        else:
            sub = self.submatrix(mask)
        chol = np.linalg.cholesky(sub)
        return float(2.0 * np.sum(np.log2(np.diag(chol))))

    def to_json(self) -> str:
        import json

        return json.dumps({"n": self.n, "rows": [[float(v) for v in row] for row in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> "SpdMatrix":
        import json

        doc = json.loads(text)
        rows = doc["rows"]
        if "n" in doc and len(rows) != doc["n"]:
            raise ValueError("matrix JSON: 'n' does not match row count")
        return cls(np.array(rows, dtype=float))

    def __eq__(self, other) -> bool:
        return isinstance(other, SpdMatrix) and np.array_equal(self.entries, other.entries)


@dataclass(frozen=True)
class VectorConfig:
    """n groups of row vectors of a common ambient dimension.

    Group i may be empty (rank contribution 0). Entries are kept exact
    (ints/Fractions) when given exact, which routes rank computation
    through fraction-free elimination instead of SVD thresholds.
    """

    groups: tuple

    def __init__(self, groups) -> None:
        norm = []
        width = None
        for group in groups:
            rows = []
            for row in group:
                vals = tuple(self._coerce(v) for v in row)
                if width is None:
                    width = len(vals)
                elif len(vals) != width:
                    raise ValueError("all rows must share one ambient dimension")
                rows.append(vals)
            norm.append(tuple(rows))
        if width is None:
            # no rows anywhere: ambient dimension is irrelevant but defined
            width = 0
        check_ground(len(norm))
        object.__setattr__(self, "groups", tuple(norm))

    @staticmethod
    def _coerce(v):
        if isinstance(v, (int, Fraction)):
            return v
        if isinstance(v, str):
            return as_fraction(v)
        if isinstance(v, float):
            return v
        if isinstance(v, (np.integer,)):
            return int(v)
        if isinstance(v, (np.floating,)):
            return float(v)
        raise TypeError(f"unsupported vector entry {v!r}")

    @property
    def n(self) -> int:
        return len(self.groups)

    @property
    def ambient_dim(self) -> int:
        for g in self.groups:
            for row in g:
                return len(row)
        return 0

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    def is_exact(self) -> bool:
        return all(
            isinstance(v, (int, Fraction)) for g in self.groups for row in g for v in row
        )

    def is_scalar(self) -> bool:
        return all(len(g) == 1 for g in self.groups)

    def stacked_rows(self, mask: int) -> list:
        rows = []
        for i in indices_of(mask):
            rows.extend(self.groups[i - 1])
        return rows

    def stacked_matrix(self) -> np.ndarray:
        rows = self.stacked_rows((1 << self.n) - 1)
        if not rows:
            return np.zeros((0, self.ambient_dim))
        return np.array([[float(v) for v in row] for row in rows], dtype=float)

    def to_json(self) -> str:
        import json

        def enc(v):
            return str(v) if isinstance(v, Fraction) else v

        return json.dumps({"groups": [[[enc(v) for v in row] for row in g] for g in self.groups]})

    @classmethod
    def from_json(cls, text: str) -> "VectorConfig":
        import json

        doc = json.loads(text)
        return cls(doc["groups"])


@dataclass(frozen=True)
class BlockGaussian:
    """Gaussian vector variables: a joint covariance plus a partition
    assigning each coordinate to one ground-set index."""

    covariance: SpdMatrix
    partition: tuple

    def __init__(self, covariance: SpdMatrix, partition) -> None:
        part = tuple(tuple(int(c) for c in block) for block in partition)
        total = covariance.n
        seen = sorted(c for block in part for c in block)
        if seen != list(range(total)):
            raise ValueError("partition must cover every covariance coordinate exactly once")
        check_ground(len(part))
        object.__setattr__(self, "covariance", covariance)
        object.__setattr__(self, "partition", part)

    @property
    def n(self) -> int:
        return len(self.partition)

    def coords_of(self, mask: int) -> list[int]:
        out = []
        for i in indices_of(mask):
            out.extend(self.partition[i - 1])
        return out

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.partition)


def logdet_rank_function(K: SpdMatrix) -> RankFunction:
    """g(a) = log2 |K_a| over all principal submatrices (|K_empty| = 1).

    Each minor is factorized independently; at n <= 12 the 2**n
    factorizations are cheap and numerically safer than minor recursion.
    """
    vals = [0.0] * (1 << K.n)
    for mask in range(1, 1 << K.n):
        vals[mask] = K.logdet2(mask)
    vals[0] = 0
    return RankFunction(K.n, tuple(vals))


def gaussian_entropy_function(B: BlockGaussian) -> RankFunction:
    """Differential entropy function of a block Gaussian, in bits:

        g(a) = (1/2) log2((2*pi*e)**m_a * |Sigma_a|)

    with Sigma_a the covariance over all coordinates of the blocks in `a`
    and m_a their count. For covariance K/(2*pi*e) with scalar blocks this
    is half the log-determinant function of K.
    """
    cov = B.covariance.entries
    vals = [0.0] * (1 << B.n)
    for mask in range(1, 1 << B.n):
        coords = B.coords_of(mask)
        sub = cov[np.ix_(coords, coords)]
        try:
            chol = np.linalg.cholesky(sub)
        except np.linalg.LinAlgError:
            raise NotPositiveDefiniteError("covariance submatrix not positive definite") from None
        ld = float(2.0 * np.sum(np.log2(np.diag(chol))))
        vals[mask] = 0.5 * (len(coords) * LOG2_2PIE + ld)
    vals[0] = 0
    return RankFunction(B.n, tuple(vals))


def representable_rank_function(V: VectorConfig) -> RankFunction:
    """g(a) = dim span of all rows in the groups indexed by a.

    Exact inputs use fraction-free elimination; float inputs use SVD with
    singular values below 1e-9 of the largest treated as zero.
    """
    exact = V.is_exact()
    vals = [0] * (1 << V.n)
    for mask in range(1, 1 << V.n):
        rows = V.stacked_rows(mask)
        if not rows:
            vals[mask] = 0
            continue
        if exact:
            vals[mask] = exactlin.rank(rows)
        else:
            arr = np.array([[float(v) for v in row] for row in rows], dtype=float)
            sv = np.linalg.svd(arr, compute_uv=False)
            if sv.size == 0 or sv[0] == 0.0:
                vals[mask] = 0
            else:
                vals[mask] = int(np.count_nonzero(sv > RANK_RTOL * sv[0]))
    return RankFunction(V.n, tuple(vals))


def representable_to_gaussian(V: VectorConfig, c: float) -> BlockGaussian:
    """Scalar Gaussians X_i = A_i W / sqrt(c) + V_i realizing a
    one-vector-per-index configuration; covariance A A^T / c + I."""
    if c <= 0:
        raise ValueError(f"noise scale must be positive, got {c}")
    if not V.is_scalar():
        raise ValueError("need exactly one vector per index")
    A = V.stacked_matrix()
    n = V.n
    if A.shape[0] != n:
        raise ValueError("need exactly one vector per index")
    cov = A @ A.T / c + np.eye(n)
    return BlockGaussian(SpdMatrix(cov), tuple((i,) for i in range(n)))


def limit_slope_check(V: VectorConfig, c: float) -> RankFunction:
    """Finite-difference growth rate of the realization entropies.

    Compares the entropy functions at noise scales c and c/4 per half-log
    of scale: s_a(c) = [h_{c/4}(X_a) - h_c(X_a)] / ((1/2) log2 4). The
    additive Gaussian constant cancels in the difference, and s_a(c)
    converges to the subspace rank of a as c -> 0.
    """
    if not 0 < c < 1:
        raise ValueError(f"noise scale must lie in (0, 1), got {c}")
    h_c = gaussian_entropy_function(representable_to_gaussian(V, c))
    h_c4 = gaussian_entropy_function(representable_to_gaussian(V, c / 4.0))
    denom = 0.5 * math.log2(4.0)
    vals = tuple((b - a) / denom for a, b in zip(h_c.values, h_c4.values))
    return RankFunction(V.n, vals)


def diagonal_scale(K: SpdMatrix, d) -> SpdMatrix:
    """D K D with D = diag(d), all d_i > 0.

    Shifts the log-determinant function by 2 * sum_{i in a} log2 d_i, the
    matrix-side witness of the scale_shift operation.
    """
    d = np.asarray(d, dtype=float)
    if d.shape != (K.n,):
        raise ValueError(f"need {K.n} scales, got shape {d.shape}")
    if np.any(d <= 0):
        raise ValueError("scales must be strictly positive")
    return SpdMatrix(K.entries * np.outer(d, d))


def block_diag_sum(K1: SpdMatrix, K2: SpdMatrix) -> BlockGaussian:
    """Independent pairing Z_i = (X_i, X'_i) with block-diagonal covariance.

    Its entropy function is the pointwise sum of the two scalar entropy
    functions, witnessing that entropy vectors are closed under addition.
    """
    if K1.n != K2.n:
        raise ValueError("ground-set size mismatch")
    n = K1.n
    cov = np.zeros((2 * n, 2 * n))
    cov[:n, :n] = K1.entries
    cov[n:, n:] = K2.entries
    partition = tuple((i, n + i) for i in range(n))
    return BlockGaussian(SpdMatrix(cov), partition)


def scalar_gaussian(K: SpdMatrix) -> BlockGaussian:
    """View an SPD matrix as the covariance of n scalar Gaussians."""
    return BlockGaussian(K, tuple((i,) for i in range(K.n)))


def wishart_sample(n: int, dof: int | None = None, seed: int = 0) -> SpdMatrix:
    """G G^T + 1e-9 I with G an n-by-dof matrix of seeded unit normals.

    dof defaults to n + 2 so minors are well conditioned; dof < n is
    rejected (the jittered matrix would be nearly singular).
    """
    check_ground(n)
    if dof is None:
        dof = n + 2
    if dof < n:
        raise ValueError(f"degrees of freedom must be >= n, got dof={dof}, n={n}")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, dof))
    return SpdMatrix(G @ G.T + WISHART_JITTER * np.eye(n))
