"""Command-line front end: ``lateralnet <command> ...``.

Every command that writes files writes ``manifest.json`` next to them; CSV
outputs start with ``# manifest: manifest.json`` and JSON outputs carry a
``manifest`` key.  Exit codes: 0 success, 2 input error, 3 resource bound hit,
4 every requested statistic undefined.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import warnings
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, kernels
from .arcpaths import (betweenness, directed_metric, lateral_metric, write_centrality_csv,
                       write_metric_csv)
from .errors import (ConfigError, FitError, LateralNetError, ParseError, ResourceLimitError,
                     UndefinedStatistic)
from .evolve import (AGGREGATE_COLUMNS, GRID_COLUMNS, aggregate, lambda_grid, run_grid,
                     write_rows_csv)
from .network import UndirectedNetwork, read_edge_list, undirected_projection
from .netstats import (KS_REGIME, degree_correlation, degree_histogram,
                       ensemble_reference, fit_ck_exponent, fit_power_law, global_clustering,
                       ks_test, local_clustering_curve, mean_degree, mean_geodesic,
                       measure_distribution, small_world_ness)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_UNDEFINED = 4
MANIFEST = "manifest.json"
SEED_ENV = "LATERALNET_SEED"

log = logging.getLogger("lateralnet")


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class Manifest:
    """Run record written beside the outputs; timestamps are the only volatile fields."""

    VOLATILE = ("started_at", "finished_at")

    def __init__(self, command, args, inputs=()):
        flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "jobs", "verbose")}
        self.data = {
            "command": command,
            "flags": flags,
            "seed": getattr(args, "seed", None),
            "inputs": {str(p): _digest(p) for p in inputs},
            "tool_version": __version__,
            "kernel_backend": kernels.BACKEND_NAME,
            "started_at": _now(),
        }

    def stable_view(self):
        return {k: v for k, v in self.data.items() if k not in self.VOLATILE and k != "kernel_backend"}

    def write(self, out_dir: Path, **extra):
        self.data.update(extra)
        self.data["finished_at"] = _now()
        (out_dir / MANIFEST).write_text(json.dumps(self.data, indent=1, sort_keys=True, default=str) + "\n")


def _out_dir(args) -> Path:
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _csv_header():
    return f"manifest: {MANIFEST}"


def _write_json(path: Path, payload):
    payload = {"manifest": MANIFEST, **payload}
    path.write_text(json.dumps(payload, indent=1, sort_keys=True, default=_json_default) + "\n")


def _json_default(o):
    if hasattr(o, "item"):
        return o.item()
    if hasattr(o, "tolist"):
        return o.tolist()
    return str(o)


def _load(args):
    return read_edge_list(args.input, require_simple=args.require_simple, exclude=args.exclude or ())


# ----------------------------------------------------------------- centrality

def cmd_centrality(args):
    g = _load(args)
    out = _out_dir(args)
    man = Manifest("centrality", args, [args.input])
    kinds = ["lbc", "dbc"] if args.measure == "both" else [args.measure]
    metrics = {"lbc": lateral_metric, "dbc": directed_metric}
    reports, tables = [], {}
    for k in kinds:
        m = metrics[k](g)
        rep = betweenness(m, exact=args.exact)
        if rep.degenerate:
            log.warning("%s: no ordered arc pair at finite positive distance; all values are zero",
                        k.upper())
        reports.append(rep)
        tables[k] = m
    with open(out / "centrality.csv", "w") as fh:
        fh.write(f"# {_csv_header()}\n")
        write_centrality_csv(g, reports, fh)
    if args.scatter and len(reports) == 2:
        with open(out / "scatter.csv", "w") as fh:
            fh.write(f"# {_csv_header()}\n")
            fh.write("arc_id,dbc,lbc\n")
            for k, aid in enumerate(g.arc_ids):
                fh.write(f"{aid},{float(reports[1].values[k])!r},{float(reports[0].values[k])!r}\n")
    if args.debug_metric:
        for k, m in tables.items():
            with open(out / f"metric_{k}.csv", "w") as fh:
                fh.write(f"# {_csv_header()}\n")
                write_metric_csv(m, fh)
    man.write(out, normalizers={r.kind: r.normalizer for r in reports})
    return EXIT_OK


# ----------------------------------------------------------------- compare

def cmd_compare(args):
    if args.replicas < 1:
        raise ConfigError("--replicas must be at least 1")
    g = _load(args)
    if not g.simple:
        raise ConfigError("degree-preserving comparison needs a simple network (no loops or duplicate arcs)")
    out = _out_dir(args)
    man = Manifest("compare", args, [args.input])
    emp = measure_distribution(g, args.measure)
    if args.self_reference:
        ref = emp
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ref = ensemble_reference(g, args.measure, args.replicas, args.seed, args.swaps, args.jobs)
        for w in caught:
            log.warning("%s", w.message)
    if emp.degenerate:
        log.warning("empirical %s distribution is degenerate (zero normalizer)", args.measure.upper())
    with open(out / "empirical_cdf.csv", "w") as fh:
        emp.to_csv(fh, _csv_header())
    with open(out / "reference_cdf.csv", "w") as fh:
        ref.to_csv(fh, _csv_header())
    ks = ks_test(emp, ref)
    _write_json(out / "ks.json", {
        "measure": args.measure, "replicas": args.replicas, "d_statistic": ks.d_statistic,
        "p_value": ks.p_value, "effective_n": ks.effective_n, "regime": KS_REGIME,
        "degenerate_replicas": ref.degenerate,
    })
    man.write(out)
    return EXIT_OK


# ----------------------------------------------------------------- evolve

def _parse_grid(text):
    try:
        return _grid_values(text.strip())
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"cannot parse --lambda-grid {text!r}")


def _grid_values(text):
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ConfigError("--lambda-grid range must be start:stop:step")
        return lambda_grid(*parts)
    vals = [float(x) for x in text.split(",") if x.strip()]
    if not vals:
        raise ConfigError("--lambda-grid is empty")
    return vals


def cmd_evolve(args):
    lambdas = _parse_grid(args.lambda_grid)
    if any(not 0 <= x <= 1 for x in lambdas):
        raise ConfigError("lambda values must lie in [0, 1]")
    if args.replicas < 1:
        raise ConfigError("--replicas must be at least 1")
    out = _out_dir(args)
    man = Manifest("evolve", args)
    prior = out / MANIFEST
    if prior.exists():
        old = json.loads(prior.read_text())
        if old.get("flags") != man.stable_view()["flags"]:
            raise ConfigError(f"{out} holds runs from a different configuration; use another --out")
    rows = run_grid(args.n, args.p, lambdas, args.replicas, args.seed, args.max_steps, args.jobs, out)
    resumed = sum(r["resumed"] for r in rows)
    if resumed:
        log.info("reused %d of %d runs already on disk", resumed, len(rows))
    with open(out / "grid.csv", "w") as fh:
        write_rows_csv(rows, GRID_COLUMNS, fh, _csv_header())
    with open(out / "aggregate.csv", "w") as fh:
        write_rows_csv(aggregate(rows), AGGREGATE_COLUMNS, fh, _csv_header())
    man.write(out, lambdas=lambdas)
    return EXIT_OK


# ----------------------------------------------------------------- stats

def _guard(fn, *a):
    try:
        return {"value": fn(*a)}
    except UndefinedStatistic as e:
        return {"value": None, "reason": e.reason}
    except FitError as e:
        return {"value": None, "reason": str(e)}


def _load_undirected(args) -> UndirectedNetwork:
    g = read_edge_list(args.input, exclude=args.exclude or ())
    return undirected_projection(g), g


def cmd_stats(args):
    u, g = _load_undirected(args)
    deg = u.degrees()
    corr = degree_correlation(u)
    curve = local_clustering_curve(u)
    stats = {
        "l": _guard(mean_geodesic, u),
        "C": _guard(global_clustering, u),
        "S": _guard(small_world_ness, u),
        "r": {"value": corr} if corr is not None else {"value": None, "reason": "zero denominator"},
        "power_law": _guard(lambda: fit_power_law(deg[deg > 0]).as_dict()),
        "beta_fit": _guard(lambda: fit_ck_exponent(curve).as_dict()),
    }
    payload = {
        "nodes": u.n_nodes,
        "edges": u.n_edges,
        "mean_degree": mean_degree(u),
        "degree_histogram": {str(k): v for k, v in degree_histogram(deg).items()},
        "ck": {str(k): v for k, v in curve.items()},
        **stats,
    }
    if not args.undirected:
        payload["out_degree_histogram"] = {str(k): v for k, v in degree_histogram(g.out_degree()).items()}
        payload["in_degree_histogram"] = {str(k): v for k, v in degree_histogram(g.in_degree()).items()}
    _emit(args, "stats", payload, [args.input])
    if all(s["value"] is None for s in stats.values()):
        return EXIT_UNDEFINED
    return EXIT_OK


def _emit(args, command, payload, inputs):
    if args.out:
        out = _out_dir(args)
        man = Manifest(command, args, inputs)
        _write_json(out / f"{command}.json", payload)
        man.write(out)
    else:
        print(json.dumps(payload, indent=1, sort_keys=True, default=_json_default))


# ----------------------------------------------------------------- presheaf

def _rep(name):
    from .presheaf import builtin_representation
    from .presheaf.serialize import representation_from_dict
    if name.endswith(".json"):
        with open(name) as fh:
            return representation_from_dict(json.load(fh))
    try:
        return builtin_representation(name)
    except KeyError as e:
        raise ConfigError(e.args[0])


def cmd_presheaf(args):
    from . import presheaf as ps
    from .presheaf.serialize import category_from_dict, dual_from_dict, representation_to_dict

    inputs = [args.input] if args.input else []
    if args.action == "standard-rep":
        if not args.input:
            raise ConfigError("standard-rep needs a base-graph JSON input")
        with open(args.input) as fh:
            spec = json.load(fh)
        try:
            C = category_from_dict(spec)
            sigma = dual_from_dict(C, spec["sigma"])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"bad base-graph JSON: {e}")
        M = ps.standard_representation(C, sigma)
        payload = {"representation": representation_to_dict(M)}
        if C == ps.parallel_arrows():
            payload["isomorphic_to_m0"] = ps.representations_isomorphic(M, ps.m0_representation(), args.bound)
        _emit(args, "presheaf", payload, inputs)
        return EXIT_OK
    M = _rep(args.rep)
    if args.action == "gluing":
        sizes, bij = ps.gluing_comparison(M)
        payload = {"rep": M.name or args.rep, "gluing": all(bij.values()),
                   "bijective_at": {str(k): v for k, v in bij.items()},
                   "pushout_sizes": {str(k): v for k, v in sizes.items()}}
        _emit(args, "presheaf", payload, inputs)
        return EXIT_OK
    if not args.input:
        raise ConfigError(f"{args.action} needs an edge-list input")
    g = read_edge_list(args.input, exclude=args.exclude or ())
    if args.action == "fibers":
        G = ps.network_to_presheaf(g, M.category)
        blocks = ps.fibers(G, M, args.object)
        payload = {"rep": M.name or args.rep, "object": args.object, "fibers": blocks}
        if args.object == 1 and M.category == ps.parallel_arrows():
            ends = {aid: f"{s}->{t}" for aid, s, t in g.arcs()}
            payload["fiber_arcs"] = [[ends[a] for a in block] for block in blocks]
    else:
        rep = ps.stability(g, M, args.bound)
        payload = {"rep": M.name or args.rep, "stable": rep.stable,
                   "hom_counts": {str(k): v for k, v in rep.hom_counts.items()},
                   "element_counts": {str(k): v for k, v in rep.element_counts.items()}}
        if M.name == "M0":
            payload["conditions_m0"] = ps.stability_conditions_m0(g)
    _emit(args, "presheaf", payload, inputs)
    return EXIT_OK


# ----------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="lateralnet", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True, seed=False, out_required=True):
        if needs_input:
            sp.add_argument("input", help="edge-list file")
            sp.add_argument("--require-simple", action="store_true")
            sp.add_argument("--exclude", nargs="*", metavar="NODE", help="node ids to drop")
        sp.add_argument("--out", required=out_required, help="output directory")
        if seed:
            sp.add_argument("--seed", type=int, default=None,
                            help=f"64-bit seed (default: ${SEED_ENV} or 0)")
            sp.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("centrality", help="per-arc LBC/DBC")
    common(c)
    c.add_argument("--measure", choices=["lbc", "dbc", "both"], default="both")
    c.add_argument("--scatter", action="store_true", help="also write (dbc, lbc) pairs")
    c.add_argument("--exact", action="store_true", help="rational arithmetic")
    c.add_argument("--debug-metric", action="store_true", help="dump distance/count tables")
    c.set_defaults(func=cmd_centrality)

    m = sub.add_parser("compare", help="cdf against degree-preserving ensemble + KS test")
    common(m, seed=True)
    m.add_argument("--measure", choices=["lbc", "dbc"], default="lbc")
    m.add_argument("--replicas", type=int, default=1000)
    m.add_argument("--swaps", type=int, default=None, help="accepted swaps per replica (default 10|A|)")
    m.add_argument("--self-reference", action="store_true", help="debug: compare input with itself")
    m.set_defaults(func=cmd_compare)

    e = sub.add_parser("evolve", help="hill-climbing evolution over a lambda grid")
    common(e, needs_input=False, seed=True)
    e.add_argument("--n", type=int, default=100)
    e.add_argument("--p", type=float, default=0.05)
    e.add_argument("--lambda-grid", default="0:1:0.05", help="start:stop:step or comma list")
    e.add_argument("--replicas", type=int, default=100)
    e.add_argument("--max-steps", type=int, default=10**6)
    e.set_defaults(func=cmd_evolve)

    s = sub.add_parser("stats", help="network statistics battery (JSON)")
    s.add_argument("input")
    s.add_argument("--exclude", nargs="*", metavar="NODE")
    s.add_argument("--undirected", action="store_true", help="input lines are undirected edges")
    s.add_argument("--out", default=None, help="output directory (default: print JSON)")
    s.set_defaults(func=cmd_stats)

    ps = sub.add_parser("presheaf", help="presheaf engine demos (JSON)")
    ps.add_argument("action", choices=["fibers", "stability", "gluing", "standard-rep"])
    ps.add_argument("input", nargs="?", help="edge list, or base-graph JSON for standard-rep")
    ps.add_argument("--rep", default="m0", help="builtin name or representation JSON file")
    ps.add_argument("--object", type=int, default=1)
    ps.add_argument("--bound", type=int, default=10**6, help="hom enumeration candidate bound")
    ps.add_argument("--exclude", nargs="*", metavar="NODE")
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=cmd_presheaf)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        if getattr(args, "jobs", 1) < 1:
            raise ConfigError("--jobs must be at least 1")
        return args.func(args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, ConfigError, FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LateralNetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
