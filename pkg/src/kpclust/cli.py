"""Command-line entry point.

    kpclust solve      --points four.csv --k 2 --p 2 --domain support
    kpclust elbow      --points four.csv --p 2
    kpclust experiment iid  --config iid.json --seed 1
    kpclust experiment mc   --chain three_state_chain.json --forget log --seed 1
    kpclust --print-defaults

Exit codes: 0 success, 1 invalid input, 2 refusal (budget, singular or
tied target), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .clustering import (
    AMBIENT,
    ORACLE_MAX_ATOMS,
    SUPPORT,
    ExplicitFinite,
    elbow_report,
    solve_ambient,
    solve_exact,
)
from .errors import RefusalError, ValidationError
from .io import load_measure, load_points, load_space, measure_from_json, read_table, write_json
from .lab import (
    DEFAULT_N_GRID,
    PopulationSpec,
    MarkovChainSpec,
    count_inversions,
    medians_by_n,
    three_state_chain,
    run_continuity,
    run_elbow,
    run_iid,
    run_ldp,
    run_mc,
    write_csv,
)
from .lab.records import ExperimentRecord
from .measures import DiscreteMeasure

log = logging.getLogger("kpclust")

EXIT_OK, EXIT_INVALID, EXIT_REFUSED, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "p": 2.0,
    "k": 2,
    "k_max": None,  # min(#atoms, 10), at least 2
    "tol": 1e-9,
    "tie_tol": 1e-9,
    "budget": 5_000_000,
    "oracle_max_atoms": ORACLE_MAX_ATOMS,
    "domain": "ambient",
    "restarts": 16,
    "eps": 1.0,
    "n_grid": list(DEFAULT_N_GRID),
    "trials": 50,
    "trials_per_n": 10_000,
    "mc_n_grid": [100, 1000, 20000],
    "mc_trials": 100,
    "mc_k": 1,
    "forget": "log",
    "format": "json",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kpclust", description="Exact (k,p)-clustering and consistency experiments.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--print-defaults", action="store_true", help="print all default parameters and exit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def data_args(p):
        p.add_argument("--points", help="CSV, one point per row (header 'weight' for a weight column)")
        p.add_argument("--measure", help="measure file: JSON {atoms, weights} or CSV coords..., weight")
        p.add_argument("--space", help="finite space JSON {labels, dist} for label-valued measures")
        p.add_argument("--p", type=float)
        p.add_argument("--tol", type=float)
        p.add_argument("--output", "-o", help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    s = sub.add_parser("solve", help="solve one clustering problem")
    data_args(s)
    s.add_argument("--k", type=int)
    s.add_argument("--domain", choices=["ambient", "support", "grid"])
    s.add_argument("--grid", help="candidate points for --domain grid (CSV, or JSON list of labels)")
    s.add_argument("--heuristic", action="store_true", help="allow the Lloyd heuristic beyond exact caps")
    s.add_argument("--restarts", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int)

    e = sub.add_parser("elbow", help="elbow-method choice of k")
    data_args(e)
    e.add_argument("--k-max", type=int)
    e.add_argument("--tie-tol", type=float)

    x = sub.add_parser("experiment", help="run a seeded consistency experiment")
    x.add_argument("kind", choices=["iid", "continuity", "elbow", "mc", "ldp"])
    x.add_argument("--config", help="experiment config JSON")
    x.add_argument("--seed", type=int, help="master seed (required)")
    x.add_argument("--chain", help="Markov chain JSON, or 'builtin' for the built-in three-state chain")
    x.add_argument("--forget", help="burn-in schedule: none | log")
    x.add_argument("--eps", type=float)
    x.add_argument("--k", type=int)
    x.add_argument("--p", type=float)
    x.add_argument("--trials", type=int)
    x.add_argument("--n-grid", type=int, nargs="+")
    x.add_argument("--workers", type=int, help="worker processes (env KPCLUST_WORKERS)")
    x.add_argument("--output", "-o", help="output prefix; writes PREFIX.csv and PREFIX.json")
    return ap


def _validate(cfg: dict, keys) -> None:
    problems = []
    checks = {
        "k": lambda v: isinstance(v, int) and v >= 1 or "k must be >= 1",
        "k_max": lambda v: v is None or isinstance(v, int) and v >= 2 or "k_max must be >= 2",
        "p": lambda v: isinstance(v, (int, float)) and math.isfinite(v) and v >= 1 or "p must be a finite real >= 1",
        "tol": lambda v: isinstance(v, (int, float)) and v >= 0 or "tol must be >= 0",
        "tie_tol": lambda v: isinstance(v, (int, float)) and v >= 0 or "tie_tol must be >= 0",
        "eps": lambda v: isinstance(v, (int, float)) and math.isfinite(v) and v > 0 or "eps must be > 0",
        "trials": lambda v: isinstance(v, int) and v >= 1 or "trials must be >= 1",
        "restarts": lambda v: isinstance(v, int) and v >= 1 or "restarts must be >= 1",
        "budget": lambda v: isinstance(v, int) and v >= 1 or "budget must be >= 1",
        "n_grid": lambda v: isinstance(v, list) and v and all(isinstance(n, int) and n >= 1 for n in v)
        or "n_grid must be a nonempty list of positive integers",
        "forget": lambda v: v in ("none", "log") or isinstance(v, list) or "forget must be none or log",
    }
    for key in keys:
        if key in checks:
            ok = checks[key](cfg.get(key))
            if ok is not True:
                problems.append(ok)
    if problems:
        raise ValidationError("invalid configuration: " + "; ".join(problems))


def _resolve(args, keys, config: dict | None = None) -> dict:
    cfg = {key: DEFAULTS.get(key) for key in keys}
    if config:
        cfg.update({k: v for k, v in config.items() if k in keys})
    for key in keys:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def _load_data(args) -> DiscreteMeasure:
    if bool(args.points) == bool(args.measure):
        raise ValidationError("give exactly one of --points or --measure")
    if args.points:
        return load_points(args.points)
    space = load_space(args.space) if args.space else None
    return load_measure(args.measure, space)


def _load_grid(path, mu: DiscreteMeasure):
    if path is None:
        raise ValidationError("--domain grid needs --grid")
    if str(path).endswith(".json"):
        with open(path) as fh:
            pts = json.load(fh)
    else:
        _, data = read_table(path)
        pts = list(data)
    return ExplicitFinite(tuple(mu.space.point(x) for x in pts))


def _emit(obj: dict, output, fmt: str = "json", table=None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(table)
        text = buf.getvalue()
    else:
        text = json.dumps(obj, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    cfg = _resolve(args, ["k", "p", "tol", "domain", "restarts", "budget"])
    _validate(cfg, cfg)
    mu = _load_data(args)
    domain = {"ambient": AMBIENT, "support": SUPPORT}.get(cfg["domain"])
    if cfg["domain"] == "grid":
        domain = _load_grid(args.grid, mu)
    try:
        sol = solve_exact(mu, cfg["k"], domain, cfg["p"], cfg["tol"], cfg["budget"])
    except RefusalError:
        if not (args.heuristic and cfg["domain"] == "ambient"):
            raise
        sol = solve_ambient(mu, cfg["k"], cfg["p"], cfg["restarts"], args.seed, cfg["tol"], confirm=False)
    cfg.update(seed=args.seed, heuristic=args.heuristic, points=args.points, measure=args.measure,
               grid=args.grid, format=args.format)
    out = sol.to_json()
    out["config"] = cfg
    table = [["set", "center", "coords", "value"]]
    for i, S in enumerate(out["optima"]):
        for j, c in enumerate(S):
            table.append([i, j, " ".join(map(repr, c)) if isinstance(c, list) else c, repr(sol.value)])
    _emit(out, args.output, args.format, table)
    return EXIT_OK


def cmd_elbow(args) -> int:
    cfg = _resolve(args, ["p", "tol", "k_max", "tie_tol"])
    _validate(cfg, cfg)
    mu = _load_data(args)
    rep = elbow_report(mu, cfg["k_max"], cfg["p"], cfg["tie_tol"], tol=cfg["tol"])
    cfg["k_max"] = len(rep.m_curve)
    out = rep.to_json()
    out["warning"] = None if rep.tail_valid else "second differences beyond k_max may exceed the maximum found"
    out["config"] = cfg
    d2 = list(rep.delta2) + [rep.delta2_at_k_max if rep.delta2_at_k_max is not None else ""]
    table = [["k", "m", "delta2"]] + [[k, repr(m), d if d == "" else repr(d)]
                                     for k, (m, d) in enumerate(zip(rep.m_curve, d2), start=1)]
    _emit(out, args.output, args.format, table)
    return EXIT_OK


def _population(cfg: dict, base: Path) -> DiscreteMeasure:
    pop = cfg.get("population")
    if pop is None:
        raise ValidationError("config needs a 'population' entry")
    if isinstance(pop, str):
        path = base / pop
        return load_measure(path) if path.suffix == ".json" or _has_weight(path) else load_points(path)
    return measure_from_json(pop)


def _has_weight(path) -> bool:
    header, _ = read_table(path)
    return header is not None and header[-1].lower() == "weight"


def _domain(name):
    if name in (None, "ambient"):
        return AMBIENT
    if name == "support":
        return SUPPORT
    if isinstance(name, dict) and "explicit" in name:
        return name
    raise ValidationError(f"unknown domain {name!r}")


def _resolve_domain(spec, mu: DiscreteMeasure):
    d = _domain(spec)
    if isinstance(d, dict):
        pts = d["explicit"]
        if pts == "population-support":
            pts = list(mu.atoms)
        return ExplicitFinite(tuple(mu.space.point(x) for x in pts))
    return d


def _load_config(path) -> tuple[dict, Path]:
    if path is None:
        return {}, Path.cwd()
    with open(path) as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return cfg, Path(path).resolve().parent


def _write_outputs(prefix: str, records, summary: dict) -> None:
    if records is not None:
        write_csv(f"{prefix}.csv", records)
    write_json(f"{prefix}.json", summary)


def cmd_experiment(args) -> int:
    file_cfg, base = _load_config(args.config)
    if args.seed is None:
        raise ValidationError("--seed is required for experiments")
    kind = args.kind
    common = ["p", "tol", "n_grid", "trials"]
    if kind == "mc":
        keys = common + ["k", "forget"]
        cfg = {"k": DEFAULTS["mc_k"], "n_grid": DEFAULTS["mc_n_grid"], "trials": DEFAULTS["mc_trials"],
               "p": 1.0, "tol": DEFAULTS["tol"], "forget": DEFAULTS["forget"]}
        cfg.update({k: v for k, v in file_cfg.items() if k in keys})
        cfg.update({k: getattr(args, k) for k in keys if getattr(args, k, None) is not None})
    else:
        keys = common + ["k", "k_max", "domain", "eps", "trials_per_n", "z"]
        cfg = _resolve(args, keys, file_cfg)
        if kind == "ldp" and args.trials is not None:
            cfg["trials_per_n"] = args.trials
    _validate(cfg, [k for k in cfg if k != "trials" or kind != "continuity"])
    cfg["seed"] = args.seed
    cfg["kind"] = kind
    prefix = args.output or file_cfg.get("output") or f"kpclust_{kind}"
    cfg["output"] = prefix

    if kind == "mc":
        chain_src = args.chain or file_cfg.get("chain") or "builtin"
        if chain_src == "builtin":
            chain = three_state_chain()
        elif isinstance(chain_src, dict):
            chain = MarkovChainSpec.from_json(chain_src)
        else:
            with open(base / chain_src if args.chain is None else chain_src) as fh:
                chain = MarkovChainSpec.from_json(json.load(fh))
        window = tuple(file_cfg.get("window", (min(cfg["n_grid"]), max(cfg["n_grid"]))))
        res = run_mc(chain, cfg["k"], cfg["p"], cfg["n_grid"], cfg["trials"], args.seed,
                     forget=cfg["forget"], window=window, tol=cfg["tol"], workers=args.workers)
        cfg["chain"] = chain.to_json()
        records = res.records() + res.records(forget=True)
        summary = {"config": cfg, **res.summary()}
        for n in sorted(set(cfg["n_grid"])):
            plain = [r.D_n for r in res.records() if r.n == n]
            forg = [r.D_n for r in res.records(forget=True) if r.n == n]
            print(f"n={n}: D_n=0 in {sum(d == 0 for d in plain)}/{len(plain)} runs without burn-in, "
                  f"{sum(d == 0 for d in forg)}/{len(forg)} with burn-in")
        start = chain.space.label(chain.start)
        print(f"medoid family {{{{{start}}}}} seen in window {list(window)}: {res.event_frequency:.3f} of runs")
        _write_outputs(prefix, records, summary)
        return EXIT_OK

    mu = _population(file_cfg, base)
    domain = _resolve_domain(cfg["domain"], mu)
    cfg["population"] = mu.to_json()
    pop = PopulationSpec(mu, cfg["k"], float(cfg["p"]), domain, cfg["tol"])

    if kind == "iid":
        records = run_iid(pop, cfg["n_grid"], cfg["trials"], args.seed, cfg["k_max"], workers=args.workers)
        med = medians_by_n(records)
        summary = {"config": cfg, "reference": pop.reference_family().to_json(),
                   "median_D_n": {str(n): v for n, v in med.items()},
                   "median_inversions": count_inversions(list(med.values()))}
        for n, v in med.items():
            print(f"n={n}: median D_n={v:.6g} over {cfg['trials']} trials")
    elif kind == "elbow":
        res = run_elbow(pop, cfg["n_grid"], cfg["trials"], args.seed, cfg["k_max"], workers=args.workers)
        records = list(res.records)
        summary = {"config": cfg, "population_k": res.population_k,
                   "population_delta2": list(res.population_delta2),
                   "match_frequency": {str(n): f for n, f in res.frequency.items()}}
        for n, f in res.frequency.items():
            print(f"n={n}: elbow matches population k={res.population_k} in {f:.3f} of trials")
    elif kind == "continuity":
        z = cfg.get("z")
        if z is None:
            raise ValidationError("continuity needs a contamination point 'z'")
        pairs = run_continuity(mu, z, cfg["k"], float(cfg["p"]), cfg["n_grid"], domain, cfg["tol"])
        records = [ExperimentRecord("continuity", args.seed, 0, n, d) for n, d in pairs]
        summary = {"config": cfg, "D_n": {str(n): d for n, d in pairs}}
        for n, d in pairs:
            print(f"n={n}: D_n={d:.6g}")
    else:
        res = run_ldp(pop, cfg["eps"], cfg["n_grid"], cfg["trials_per_n"], args.seed, workers=args.workers)
        records = None
        summary = {"config": cfg, **res.to_json()}
        for r in res.rows:
            if r.hits:
                print(f"n={r.n}: {r.hits}/{r.trials} hits, log-frequency {r.log_frequency:.4f}")
            else:
                print(f"n={r.n}: 0/{r.trials} hits, probability <= {r.upper_bound:.3g} (95%)")
        print(f"fitted slope: {res.slope}")
    _write_outputs(prefix, records, summary)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.INFO)
        if args.print_defaults:
            json.dump(DEFAULTS, sys.stdout, indent=2)
            sys.stdout.write("\n")
            return EXIT_OK
        if args.command is None:
            raise ValidationError("a subcommand is required: solve, elbow or experiment")
        handler = {"solve": cmd_solve, "elbow": cmd_elbow, "experiment": cmd_experiment}[args.command]
        return handler(args)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValidationError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
