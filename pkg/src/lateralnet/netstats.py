"""Statistics on networks and value distributions.

Distribution comparison against degree-preserving ensembles, clustering,
geodesic length, small-world-ness, discrete power-law fits of degree
sequences, C(k) scaling fits and degree correlation.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.special import kolmogorov

from .arcpaths import centrality
from .errors import FitError, UndefinedStatistic
from .network import DirectedNetwork, RewireWarning, UndirectedNetwork, rewire_preserving_degrees

KS_REGIME = "one-sample asymptotic Kolmogorov, n_eff = empirical sample count"


# -------------------------------------------------------------- distributions

@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Right-continuous step cdf given by its jump points ``support`` and values ``cdf``.

    ``n`` is the sample count behind the curve (for an average, the size of
    one member sample).  ``degenerate`` counts members whose samples were all
    zero because the underlying measure had no contributing pairs.
    """

    support: np.ndarray
    cdf: np.ndarray
    n: int
    samples: tuple | None = None
    degenerate: int = 0

    @classmethod
    def from_samples(cls, samples, degenerate=False):
        x = np.sort(np.asarray(samples, dtype=np.float64))
        if len(x) == 0:
            raise ValueError("no samples")
        support, last = np.unique(x, return_index=False, return_counts=True)
        cdf = np.cumsum(last) / len(x)
        cdf[-1] = 1.0
        return cls(support, cdf, len(x), tuple(x.tolist()), int(bool(degenerate)))

    @classmethod
    def average(cls, dists):
        """Pointwise mean of several cdfs over the union of their jump points."""
        dists = list(dists)
        if not dists:
            raise ValueError("nothing to average")
        grid = np.unique(np.concatenate([d.support for d in dists]))
        vals = np.mean([d(grid) for d in dists], axis=0)
        vals[-1] = 1.0
        n = int(round(np.mean([d.n for d in dists])))
        samples = dists[0].samples if len(dists) == 1 else None
        return cls(grid, vals, n, samples, sum(d.degenerate for d in dists))

    def __call__(self, x):
        idx = np.searchsorted(self.support, x, side="right")
        padded = np.concatenate(([0.0], self.cdf))
        return padded[idx]

    def to_csv(self, fh=None, header_comment=None) -> str:
        buf = fh if fh is not None else io.StringIO()
        if header_comment:
            buf.write(f"# {header_comment}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "cumulative_frequency"])
        for v, c in zip(self.support.tolist(), self.cdf.tolist()):
            w.writerow([repr(v), repr(c)])
        return buf.getvalue() if fh is None else ""


def measure_distribution(g: DirectedNetwork, measure: str) -> EmpiricalDistribution:
    rep = centrality(g, measure)
    return EmpiricalDistribution.from_samples(rep.values, degenerate=rep.degenerate)


def _replica(args):
    g, measure, seq, swaps = args
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = rewire_preserving_degrees(g, swaps=swaps, seed=seq)
    return measure_distribution(res.network, measure), res.exhausted, [str(w.message) for w in caught]


def ensemble_reference(g: DirectedNetwork, measure: str, replicas: int, seed=0, swaps=None,
                       jobs: int = 1) -> EmpiricalDistribution:
    """Replica-averaged cdf of ``measure`` over degree-preserving randomisations.

    Replica ``r`` rewires with ``SeedSequence([seed, r])``.  Rewiring warnings
    from the replicas are re-emitted once each in replica order.
    """
    if replicas < 1:
        raise ValueError("replicas must be >= 1")
    tasks = [(g, measure, np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, r]), swaps)
             for r in range(replicas)]
    if jobs > 1 and replicas > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            out = list(ex.map(_replica, tasks))
    else:
        out = [_replica(t) for t in tasks]
    for _, _, msgs in out:
        for msg in msgs:
            warnings.warn(msg, RewireWarning, stacklevel=2)
    return EmpiricalDistribution.average(d for d, _, _ in out)


@dataclass(frozen=True)
class KsResult:
    d_statistic: float
    p_value: float
    effective_n: float
    regime: str = KS_REGIME


def ks_test(empirical: EmpiricalDistribution, reference) -> KsResult:
    """Kolmogorov-Smirnov distance and asymptotic p-value.

    ``reference`` is either another :class:`EmpiricalDistribution` (both are
    step functions, so the supremum is attained on the merged jump grid) or a
    callable continuous cdf, in which case the classic one-sample formula over
    the sorted samples is used.
    """
    if empirical.n == 0:
        raise ValueError("empirical distribution is empty")
    if isinstance(reference, EmpiricalDistribution):
        grid = np.union1d(empirical.support, reference.support)
        d = float(np.max(np.abs(empirical(grid) - reference(grid))))
    else:
        if empirical.samples is None:
            raise ValueError("continuous reference needs raw empirical samples")
        x = np.asarray(empirical.samples)
        n = len(x)
        f = np.asarray(reference(x), dtype=np.float64)
        i = np.arange(1, n + 1)
        d = float(max(np.max(i / n - f), np.max(f - (i - 1) / n), 0.0))
    n_eff = float(empirical.n)
    p = float(kolmogorov(math.sqrt(n_eff) * d))
    return KsResult(d, min(1.0, max(0.0, p)), n_eff)


# ----------------------------------------------------------------- clustering

def _triangles_and_wedges(g: UndirectedNetwork):
    a = g.adjacency()
    k = a.sum(axis=1)
    af = a.astype(np.float64)
    # edges among the neighbours of each node; float matmul is exact at these sizes
    per_node = np.rint(((af @ af) * af).sum(axis=1) / 2).astype(np.int64)
    return a, k, per_node


def global_clustering(g: UndirectedNetwork) -> float:
    """``3 * triangles / wedges`` (six times triangles over ordered 2-paths)."""
    _, k, per_node = _triangles_and_wedges(g)
    ordered_paths = int(np.sum(k * (k - 1)))
    if ordered_paths == 0:
        raise UndefinedStatistic("no paths of length 2")
    triangles = int(per_node.sum()) // 3
    return 6 * triangles / ordered_paths


def local_clustering(g: UndirectedNetwork) -> dict:
    """Node index -> C_i for nodes of degree at least 2."""
    _, k, per_node = _triangles_and_wedges(g)
    return {i: 2 * int(per_node[i]) / (int(k[i]) * (int(k[i]) - 1))
            for i in range(g.n_nodes) if k[i] >= 2}


def local_clustering_curve(g: UndirectedNetwork) -> dict:
    """Degree k -> mean local clustering over nodes of degree k (k >= 2)."""
    _, k, per_node = _triangles_and_wedges(g)
    sums, counts = {}, {}
    for i in range(g.n_nodes):
        ki = int(k[i])
        if ki < 2:
            continue
        sums[ki] = sums.get(ki, Fraction(0)) + Fraction(2 * int(per_node[i]), ki * (ki - 1))
        counts[ki] = counts.get(ki, 0) + 1
    return {ki: float(sums[ki] / counts[ki]) for ki in sorted(sums)}


# ------------------------------------------------------------------- geodesics

def mean_geodesic(g: UndirectedNetwork) -> float:
    """Mean BFS distance over ordered connected pairs of distinct nodes."""
    n = g.n_nodes
    if g.n_edges == 0:
        raise UndefinedStatistic("no connected pair")
    a = csr_matrix(g.adjacency())
    d = shortest_path(a, directed=False, unweighted=True)
    finite = d[np.isfinite(d) & (d > 0)]
    if finite.size == 0 or n < 2:
        raise UndefinedStatistic("no connected pair")
    return float(finite.astype(np.int64).sum() / finite.size)


def mean_degree(g: UndirectedNetwork) -> float:
    return 2 * g.n_edges / g.n_nodes if g.n_nodes else 0.0


def small_world_ness(g: UndirectedNetwork) -> float:
    """``S = (l_ER / l) * (C / C_ER)`` with ``C_ER = <k>/n`` and ``l_ER = ln n / ln <k>``."""
    n = g.n_nodes
    k = mean_degree(g)
    if k <= 1:
        raise UndefinedStatistic("mean degree <= 1")
    c = global_clustering(g)
    l = mean_geodesic(g)
    c_er = k / n
    l_er = math.log(n) / math.log(k)
    return (l_er / l) * (c / c_er)


def degree_correlation(g: UndirectedNetwork):
    """Degree correlation coefficient evaluated exactly in integers.

    Numerator ``sum_ij (2a A_ij - k_i k_j) k_i k_j`` and denominator
    ``sum_ij (2a k_i delta_ij - k_i k_j) k_i k_j`` (the usual form scaled by
    ``2a``).  Returns ``None`` when the denominator vanishes.
    """
    if g.n_edges == 0:
        return None
    k = [int(x) for x in g.degrees()]
    two_a = 2 * g.n_edges
    s2 = sum(x * x for x in k)
    s3 = sum(x ** 3 for x in k)
    cross = 2 * sum(k[i] * k[j] for i, j in g.edges)
    num = two_a * cross - s2 * s2
    den = two_a * s3 - s2 * s2
    if den == 0:
        return None
    return float(Fraction(num, den))


def degree_histogram(degrees) -> dict:
    vals, counts = np.unique(np.asarray(degrees, dtype=np.int64), return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


# ----------------------------------------------------------------- power law

ALPHA_BOUNDS = (1.01, 6.0)
MAX_CANDIDATES = 50


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    k_min: int
    k_max: int
    ks_distance: float
    log_likelihood: float
    n_tail: int
    candidates: int

    def _support(self):
        return np.arange(self.k_min, self.k_max + 1, dtype=np.float64)

    def pmf(self, k=None):
        """Truncated zeta pmf; over the whole fitted range when ``k`` is None."""
        ks = self._support()
        w = ks ** -self.alpha
        p = w / w.sum()
        if k is None:
            return p
        k = np.asarray(k)
        inside = (k >= self.k_min) & (k <= self.k_max)
        out = np.zeros(k.shape)
        out[inside] = p[(k[inside] - self.k_min).astype(np.int64)]
        return out

    def as_dict(self):
        return asdict(self)


def golden_section(f, lo, hi, tol=1e-9, max_iter=200):
    """Minimiser of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    # the interior search cannot land exactly on a bound; compare explicitly
    best = min((f(x), x), (f(lo), lo), (f(hi), hi))
    return best[1]


def _fit_range(logk_all, counts_all, lo, hi):
    # logk_all/counts_all indexed by k - 1 over 1..k_max of the data
    logk = logk_all[lo - 1:hi]
    counts = counts_all[lo - 1:hi]
    n = int(counts.sum())
    s = float(counts @ logk)

    def nll(alpha):
        x = -alpha * logk
        top = x.max()
        return alpha * s + n * (top + math.log(np.exp(x - top).sum()))

    alpha = golden_section(nll, *ALPHA_BOUNDS)
    w = np.exp(-alpha * logk - (-alpha * logk).max())
    model = np.cumsum(w / w.sum())
    emp = np.cumsum(counts) / n
    ks = float(np.max(np.abs(emp - model)))
    return alpha, ks, float(-nll(alpha)), n


def _candidates(values):
    if len(values) <= MAX_CANDIDATES:
        return values
    idx = np.unique(np.round(np.linspace(0, len(values) - 1, MAX_CANDIDATES)).astype(np.int64))
    return values[idx]


def fit_power_law(degrees, min_distinct: int = 3, min_samples: int = 10) -> PowerLawFit:
    """Truncated discrete power-law fit with data-driven ``[k_min, k_max]``.

    For each candidate range over the observed support the exponent maximises
    the likelihood of ``P(k) = k^-alpha / sum_{j=k_min}^{k_max} j^-alpha``
    (golden-section search on ``[1.01, 6]``); the range whose fitted cdf is
    closest in KS distance to the data restricted to it wins.  A range needs
    ``min_distinct`` observed values and ``min_samples`` samples.  Supports
    with more than 50 distinct values use 50 quantile-spaced candidates for
    each bound.
    """
    x = np.asarray(degrees)
    if x.size < min_samples:
        raise FitError(f"need at least {min_samples} samples, got {x.size}")
    if np.any(x < 1) or np.any(x != np.round(x)):
        raise FitError("samples must be positive integers")
    x = x.astype(np.int64)
    values = np.unique(x)
    if len(values) < 2:
        raise FitError("all samples are equal")
    kmax_data = int(values[-1])
    counts_all = np.bincount(x, minlength=kmax_data + 1)[1:].astype(np.float64)
    logk_all = np.log(np.arange(1, kmax_data + 1, dtype=np.float64))
    cands = _candidates(values)
    rank = {int(v): i for i, v in enumerate(values)}
    cum = np.cumsum(counts_all)
    best = None
    evaluated = 0
    for lo in cands:
        for hi in cands:
            lo_i, hi_i = int(lo), int(hi)
            if rank[hi_i] - rank[lo_i] + 1 < max(2, min_distinct):
                continue
            n = cum[hi_i - 1] - (cum[lo_i - 2] if lo_i > 1 else 0.0)
            if n < min_samples:
                continue
            alpha, ks, ll, n = _fit_range(logk_all, counts_all, lo_i, hi_i)
            evaluated += 1
            key = (ks, -n)
            if best is None or key < best[0]:
                best = (key, PowerLawFit(alpha, lo_i, hi_i, ks, ll, n, 0))
    if best is None:
        raise FitError("no candidate range has enough distinct values and samples")
    fit = best[1]
    return PowerLawFit(fit.alpha, fit.k_min, fit.k_max, fit.ks_distance, fit.log_likelihood,
                       fit.n_tail, evaluated)


# ----------------------------------------------------------------- C(k) scaling

@dataclass(frozen=True)
class CkFit:
    beta: float
    k_min: int
    k_max: int
    intercept: float
    score: float
    points: int

    @property
    def range(self):
        return (self.k_min, self.k_max)

    def as_dict(self):
        return asdict(self)


def fit_ck_exponent(curve: dict, min_points: int = 3) -> CkFit:
    """Least-squares fit of ``log C(k) = c - beta log k`` over a contiguous window.

    Windows run over the degree classes with positive C(k) and hold at least
    ``max(min_points, ceil(m / 2))`` of the ``m`` usable points; the window
    with the smallest residual sum of squares per point wins, ties going to
    the wider window.
    """
    pts = sorted((int(k), float(c)) for k, c in curve.items() if k > 0 and c > 0)
    m = len(pts)
    if m < min_points:
        raise FitError(f"need at least {min_points} degree classes with positive C(k), got {m}")
    lk = np.log([p[0] for p in pts])
    lc = np.log([p[1] for p in pts])
    width = max(min_points, math.ceil(m / 2))
    best = None
    for i in range(m):
        for j in range(i + width, m + 1):
            x, y = lk[i:j], lc[i:j]
            xm, ym = x.mean(), y.mean()
            sxx = float(((x - xm) ** 2).sum())
            slope = float(((x - xm) * (y - ym)).sum()) / sxx
            icpt = ym - slope * xm
            rss = float(((y - icpt - slope * x) ** 2).sum())
            score = rss / (j - i)
            key = (round(score, 15), -(j - i), i)
            if best is None or key < best[0]:
                best = (key, CkFit(-slope, pts[i][0], pts[j - 1][0], float(icpt), score, j - i))
    fit = best[1]
    # exact data can leave -0.0 or 1e-17 noise in a flat fit
    beta = 0.0 if abs(fit.beta) < 1e-14 else fit.beta
    return CkFit(beta, fit.k_min, fit.k_max, fit.intercept, fit.score, fit.points)
