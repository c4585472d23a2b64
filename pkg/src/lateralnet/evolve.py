"""Hill-climbing evolution of directed networks under Q(lambda) = lambda*Eff_D + (1-lambda)*Eff_L.

Each proposal removes a uniformly random arc and inserts a uniformly random
absent, non-loop ordered pair (absence is judged after the removal, so the
removed arc may come straight back).  A proposal is kept only if Q strictly
increases.  The loop stops after ``a`` consecutive rejections, ``a`` being the
arc count, or when ``max_steps`` proposals have been made.

Q values are compared exactly: efficiencies are rational numbers built from
integer distance histograms, so the accept decision does not depend on the
kernel backend or on float summation order.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .arcpaths import centrality, efficiency_from_histogram
from .errors import ConfigError
from .network import DirectedNetwork, make_rng, random_er

STAGNATION = "stagnation"
STEP_CAP = "step-cap"
DEFAULT_MAX_STEPS = 10**6
SEED_MASK = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class EvolutionConfig:
    n: int
    p: float
    lam: float
    seed: int = 0
    max_steps: int = DEFAULT_MAX_STEPS
    # extra entropy words appended to the seed; the batch driver uses (lambda index, replica)
    stream: tuple = ()

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        if self.max_steps < 0:
            raise ConfigError("max_steps must be non-negative")
        object.__setattr__(self, "stream", tuple(int(s) for s in self.stream))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence([int(self.seed) & SEED_MASK, *self.stream])


@dataclass(frozen=True)
class EvolutionRun:
    config: EvolutionConfig
    q_trace: tuple
    final: DirectedNetwork
    stop_reason: str
    initial: DirectedNetwork
    proposals: int
    q_exact: Fraction = field(repr=False, default=None)

    @property
    def final_q(self) -> float:
        return self.q_trace[-1][1]

    @property
    def initial_q(self) -> float:
        return self.q_trace[0][1]

    def to_json(self, extra=None) -> str:
        d = {
            "config": asdict(self.config),
            "stop_reason": self.stop_reason,
            "proposals": self.proposals,
            "q_trace": [list(t) for t in self.q_trace],
            "final_q": self.final_q,
            "initial_arcs": [[s, t] for _, s, t in self.initial.arcs()],
            "final_nodes": list(self.final.nodes),
            "final_arcs": [[s, t] for _, s, t in self.final.arcs()],
        }
        if extra:
            d.update(extra)
        return json.dumps(d, indent=1, sort_keys=True)


def _exact_quality(src, tgt, n_nodes, lam: Fraction) -> Fraction:
    m = len(src)
    eff_d = efficiency_from_histogram(kernels.distance_histogram(src, tgt, n_nodes, kernels.DIRECTED), m, True)
    eff_l = efficiency_from_histogram(kernels.distance_histogram(src, tgt, n_nodes, kernels.LATERAL), m, True)
    return lam * eff_d + (1 - lam) * eff_l


def quality(g: DirectedNetwork, lam: float, exact: bool = False):
    """``lam * Eff_D + (1 - lam) * Eff_L``; a Fraction when ``exact``."""
    q = _exact_quality(g.src, g.tgt, g.n_nodes, Fraction(lam))
    return q if exact else float(q)


def _draw_absent(rng, n, present):
    # uniform over absent ordered non-diagonal pairs, by rejection
    while True:
        k = int(rng.integers(n * (n - 1)))
        u, v = divmod(k, n - 1)
        if v >= u:
            v += 1
        if (u, v) not in present:
            return u, v


def evolve(config: EvolutionConfig, initial: DirectedNetwork | None = None,
           observer=None) -> EvolutionRun:
    """Run one hill-climbing evolution.  ``initial`` overrides the random start.

    ``observer(step, accepted, src, tgt)``, if given, sees the arc arrays after
    every proposal has been kept or reverted (read-only views).
    """
    rng = make_rng(config.seed_sequence())
    g0 = random_er(config.n, config.p, rng) if initial is None else initial
    m = g0.n_arcs
    if m < 2:
        raise ConfigError(f"initial network has {m} arcs; at least 2 are required")
    if not g0.simple:
        raise ConfigError("initial network must be simple")
    n = g0.n_nodes
    lam = Fraction(config.lam)
    src = np.array(g0.src)
    tgt = np.array(g0.tgt)
    present = set(zip(src.tolist(), tgt.tolist()))
    q = _exact_quality(src, tgt, n, lam)
    trace = [(0, float(q))]
    rejected = 0
    step = 0
    reason = STEP_CAP
    while step < config.max_steps:
        step += 1
        i = int(rng.integers(m))
        old = (int(src[i]), int(tgt[i]))
        present.discard(old)
        new = _draw_absent(rng, n, present)
        src[i], tgt[i] = new
        q_new = _exact_quality(src, tgt, n, lam)
        if q_new > q:
            present.add(new)
            q = q_new
            trace.append((step, float(q)))
            rejected = 0
        else:
            src[i], tgt[i] = old
            present.add(old)
            rejected += 1
        if observer is not None:
            observer(step, rejected == 0, _view(src), _view(tgt))
        if rejected >= m:
            reason = STAGNATION
            break
    final = g0.with_arcs(src, tgt, g0.arc_ids)
    return EvolutionRun(config, tuple(trace), final, reason, g0, step, q)


def _view(a):
    v = a.view()
    v.setflags(write=False)
    return v


def pearson(x, y):
    """Pearson correlation, or ``None`` when either vector has zero variance."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise ValueError("vectors differ in length")
    if len(x) < 2:
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    # relative tolerance so float noise in equal values reads as constant
    scale = max(float(np.abs(x).max()), float(np.abs(y).max()), 1e-300)
    if sxx <= (1e-12 * scale) ** 2 * len(x) or syy <= (1e-12 * scale) ** 2 * len(y):
        return None
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def lbc_dbc_correlation(g: DirectedNetwork):
    """Pearson correlation of per-arc LBC and DBC; ``None`` when undefined."""
    if g.n_arcs < 2:
        raise ConfigError("correlation needs at least two arcs")
    return pearson(centrality(g, "lbc").values, centrality(g, "dbc").values)


# ---------------------------------------------------------------- batch driver

GRID_COLUMNS = ["lambda", "replica", "q_final", "corr_lbc_dbc", "stop_reason", "proposals"]


def lambda_grid(start=0.0, stop=1.0, step=0.05):
    k = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(k + 1)]


def _run_one(args):
    config, path = args
    if path is not None and os.path.exists(path):
        with open(path) as fh:
            d = json.load(fh)
        return {"q_final": d["final_q"], "corr_lbc_dbc": d["corr_lbc_dbc"],
                "stop_reason": d["stop_reason"], "proposals": d["proposals"], "resumed": True}
    run = evolve(config)
    corr = lbc_dbc_correlation(run.final)
    row = {"q_final": run.final_q, "corr_lbc_dbc": corr, "stop_reason": run.stop_reason,
           "proposals": run.proposals, "resumed": False}
    if path is not None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            fh.write(run.to_json({"corr_lbc_dbc": corr}))
        os.replace(tmp, path)
    return row


def run_grid(n, p, lambdas, replicas, seed=0, max_steps=DEFAULT_MAX_STEPS, jobs=1, out_dir=None):
    """Evolve ``replicas`` networks per lambda.

    Run ``(i, r)`` draws from ``SeedSequence([seed, i, r])`` where ``i`` is the
    lambda index, so results do not depend on ``jobs`` or on scheduling.  With
    ``out_dir`` set, each run is written to ``runs/lam{i}_rep{r}.json`` and
    existing files are reused instead of recomputed.
    """
    tasks, keys = [], []
    run_dir = None
    if out_dir is not None:
        run_dir = Path(out_dir) / "runs"
        run_dir.mkdir(parents=True, exist_ok=True)
    for i, lam in enumerate(lambdas):
        for r in range(replicas):
            cfg = EvolutionConfig(n, p, float(lam), seed, max_steps, (i, r))
            path = None if run_dir is None else str(run_dir / f"lam{i:02d}_rep{r:03d}.json")
            tasks.append((cfg, path))
            keys.append((float(lam), r))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    rows = []
    for (lam, r), res in zip(keys, results):
        rows.append({"lambda": lam, "replica": r, **res})
    return rows


def aggregate(rows):
    """Per-lambda mean and sample standard deviation of final Q and correlation.

    Runs with an undefined correlation are left out of the correlation columns
    and counted in ``corr_undefined``.
    """
    by_lam = {}
    for row in rows:
        by_lam.setdefault(row["lambda"], []).append(row)
    out = []
    for lam in sorted(by_lam):
        group = by_lam[lam]
        q = np.array([r["q_final"] for r in group])
        c = np.array([r["corr_lbc_dbc"] for r in group if r["corr_lbc_dbc"] is not None])
        out.append({
            "lambda": lam,
            "runs": len(group),
            "q_mean": float(q.mean()),
            "q_std": float(q.std(ddof=1)) if len(q) > 1 else 0.0,
            "corr_mean": float(c.mean()) if len(c) else None,
            "corr_std": float(c.std(ddof=1)) if len(c) > 1 else (0.0 if len(c) else None),
            "corr_undefined": len(group) - len(c),
        })
    return out


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_rows_csv(rows, columns, fh, header_comment=None):
    if header_comment:
        fh.write(f"# {header_comment}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])


AGGREGATE_COLUMNS = ["lambda", "runs", "q_mean", "q_std", "corr_mean", "corr_std", "corr_undefined"]
