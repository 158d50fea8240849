"""Batch experiment runner: sectors, run, verify, and orbits subcommands.

Configs are JSON files; outputs are a canonical JSON record (floats printed
with 17 significant digits) plus a CSV summary for runs.  Exit codes:
0 success, 1 config error, 2 cap or guard refusal, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import datetime
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import Partition
from .errors import ConfigError, DimensionCapError, SymmetryViolationError
from .hamiltonians import ProblemSpec, default_epsilon, problem_hamiltonian, reduced_mixer, standard_mixer
from .qaoa_engine import (
    CHAIN_ORDERS,
    check_site_permutation_symmetry,
    optimize,
    run_reduced,
)
from .schur_weyl import admissible_shapes, sector_table
from .symmetry import (
    generator_symmetry_report,
    orbit_count,
    orbit_invariance_check,
    orbits,
    string_group_from_site_generators,
)
from .tensor_ops import index_to_string, pf_check, uniform_state
from .verification import default_suite


# ---------------------------------------------------------------------------
# config parsing

@dataclass
class RunSettings:
    p: int = 1
    epsilon: float | None = None
    budget: int = 200
    seed: int = 0
    chain_order: str = "problem_first"
    sectors: str | list[tuple[int, ...]] = "all"


@dataclass
class VerifySettings:
    nmax: int = 6
    dmax: int = 3


@dataclass
class ExperimentConfig:
    problem: ProblemSpec | None = None
    run: RunSettings | None = None  # None when the config had no run section
    symmetry_generators: list[tuple[int, ...]] | None = None
    output: str | None = None
    verify: VerifySettings = field(default_factory=VerifySettings)

    def run_settings(self) -> RunSettings:
        return self.run if self.run is not None else RunSettings()


def _reject_unknown(section: dict, allowed: set[str], where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)}", field=where)


def _require(section: dict, key: str, kind, where: str):
    if key not in section:
        raise ConfigError("missing required key", field=f"{where}.{key}")
    value = section[key]
    if isinstance(value, bool):
        raise ConfigError(f"expected {kind.__name__}, got {value!r}", field=f"{where}.{key}")
    if kind is float:
        if not isinstance(value, (int, float)):
            raise ConfigError(f"expected a number, got {value!r}", field=f"{where}.{key}")
        return float(value)
    if not isinstance(value, kind):
        raise ConfigError(f"expected {kind.__name__}, got {value!r}", field=f"{where}.{key}")
    return value


def _parse_problem(section: dict) -> ProblemSpec:
    _reject_unknown(section, {"n", "d", "constant", "linear", "quadratic", "table"}, "problem")
    n = _require(section, "n", int, "problem")
    d = _require(section, "d", int, "problem")
    try:
        if "table" in section:
            for bad in ("constant", "linear", "quadratic"):
                if bad in section:
                    raise ConfigError("table and coefficients are mutually exclusive", field=f"problem.{bad}")
            table = section["table"]
            if not isinstance(table, list):
                raise ConfigError("expected a list of numbers", field="problem.table")
            return ProblemSpec(n=n, d=d, table=tuple(float(v) for v in table))
        linear = section.get("linear")
        if linear is not None:
            if not isinstance(linear, list):
                raise ConfigError("expected a list of numbers", field="problem.linear")
            linear = tuple(float(v) for v in linear)
        quadratic = None
        if "quadratic" in section:
            quadratic = {}
            entries = section["quadratic"]
            if not isinstance(entries, list):
                raise ConfigError("expected a list of [i, j, value] triples", field="problem.quadratic")
            for k, triple in enumerate(entries):
                if not (isinstance(triple, list) and len(triple) == 3):
                    raise ConfigError(f"entry {k} is not an [i, j, value] triple", field="problem.quadratic")
                i, j, v = triple
                quadratic[(int(i), int(j))] = float(v)
        return ProblemSpec(
            n=n, d=d, constant=float(section.get("constant", 0.0)), linear=linear, quadratic=quadratic
        )
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), field="problem") from exc


def _parse_run(section: dict) -> RunSettings:
    _reject_unknown(section, {"p", "epsilon", "budget", "seed", "chain_order", "sectors"}, "run")
    settings = RunSettings()
    if "p" in section:
        settings.p = _require(section, "p", int, "run")
    if "epsilon" in section:
        settings.epsilon = _require(section, "epsilon", float, "run")
    if "budget" in section:
        settings.budget = _require(section, "budget", int, "run")
    if "seed" in section:
        settings.seed = _require(section, "seed", int, "run")
    if "chain_order" in section:
        order = section["chain_order"]
        if order not in CHAIN_ORDERS:
            raise ConfigError(f"must be one of {list(CHAIN_ORDERS)}, got {order!r}", field="run.chain_order")
        settings.chain_order = order
    if "sectors" in section:
        sectors = section["sectors"]
        if sectors == "all":
            settings.sectors = "all"
        elif isinstance(sectors, list):
            parsed = []
            for k, parts in enumerate(sectors):
                if not isinstance(parts, list) or not all(isinstance(p, int) for p in parts):
                    raise ConfigError(f"sector {k} is not a list of integers", field="run.sectors")
                parsed.append(tuple(parts))
            settings.sectors = parsed
        else:
            raise ConfigError('expected "all" or a list of partitions', field="run.sectors")
    return settings


def _parse_symmetry(section: dict, n: int | None) -> list[tuple[int, ...]]:
    _reject_unknown(section, {"generators"}, "symmetry")
    gens = _require(section, "generators", list, "symmetry")
    parsed = []
    for k, g in enumerate(gens):
        if not isinstance(g, list) or not all(isinstance(v, int) for v in g):
            raise ConfigError(f"generator {k} is not a list of integers", field="symmetry.generators")
        if n is not None and sorted(g) != list(range(1, n + 1)):
            raise ConfigError(
                f"generator {k} = {g} is not a permutation of sites 1..{n}",
                field="symmetry.generators",
            )
        parsed.append(tuple(g))
    return parsed


def _parse_verify(section: dict) -> VerifySettings:
    _reject_unknown(section, {"nmax", "dmax"}, "verify")
    settings = VerifySettings()
    if "nmax" in section:
        settings.nmax = _require(section, "nmax", int, "verify")
    if "dmax" in section:
        settings.dmax = _require(section, "dmax", int, "verify")
    return settings


def parse_config(path: str) -> ExperimentConfig:
    """Load and strictly validate an experiment config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object")
    _reject_unknown(raw, {"problem", "run", "symmetry", "output", "verify"}, "config")
    cfg = ExperimentConfig()
    if "problem" in raw:
        if not isinstance(raw["problem"], dict):
            raise ConfigError("expected an object", field="problem")
        cfg.problem = _parse_problem(raw["problem"])
    if "run" in raw:
        if not isinstance(raw["run"], dict):
            raise ConfigError("expected an object", field="run")
        cfg.run = _parse_run(raw["run"])
    if "symmetry" in raw:
        if not isinstance(raw["symmetry"], dict):
            raise ConfigError("expected an object", field="symmetry")
        cfg.symmetry_generators = _parse_symmetry(
            raw["symmetry"], cfg.problem.n if cfg.problem else None
        )
    if "output" in raw:
        if not isinstance(raw["output"], str):
            raise ConfigError("expected a string path prefix", field="output")
        cfg.output = raw["output"]
    if "verify" in raw:
        if not isinstance(raw["verify"], dict):
            raise ConfigError("expected an object", field="verify")
        cfg.verify = _parse_verify(raw["verify"])
    return cfg


# ---------------------------------------------------------------------------
# canonical output

def canonical_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits for round-trip fidelity."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {canonical_json(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{canonical_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)}")


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _emit(payload: dict, prefix: str | None, log):
    text = canonical_json(payload) + "\n"
    if prefix:
        parent = os.path.dirname(prefix)
        if parent:
            os.makedirs(parent, exist_ok=True)
        path = f"{prefix}.json"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        log(f"wrote {path}")
    else:
        sys.stdout.write(text)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


# ---------------------------------------------------------------------------
# subcommands

def cmd_sectors(cfg: ExperimentConfig, prefix: str | None, log) -> int:
    if cfg.problem is None:
        raise ConfigError("sectors requires a problem section (n, d)")
    n, d = cfg.problem.n, cfg.problem.d
    table = sector_table(n, d)
    entries = []
    for shape, (ds, dv, product) in table.entries.items():
        note = ""
        if shape.is_hook():
            k = len(shape) - 1
            note = f"hook k={k}: sector dim polynomial in n of degree at most {d + k - 1}"
        entries.append(
            {
                "partition": list(shape.parts),
                "perm_irrep_dim": ds,
                "unitary_irrep_dim": dv,
                "sector_dim": product,
                "note": note,
            }
        )
    payload = {
        "command": "sectors",
        "n": n,
        "d": d,
        "entries": entries,
        "total": table.total,
        "dimension_check": table.total == d**n,
        "timestamp": _timestamp(),
    }
    width = max(len(str(e["partition"])) for e in entries)
    print(f"{'partition':<{width + 2}}{'perm_dim':>9}{'unitary_dim':>12}{'sector_dim':>11}  note")
    for e in entries:
        print(
            f"{str(e['partition']):<{width + 2}}{e['perm_irrep_dim']:>9}"
            f"{e['unitary_irrep_dim']:>12}{e['sector_dim']:>11}  {e['note']}"
        )
    print(f"total sector dimension {table.total} = {d}^{n}")
    _emit(payload, prefix, log)
    return 0


def _full_run_record(spec: ProblemSpec, run: RunSettings, seed: int):
    H_P = problem_hamiltonian(spec)
    H_M = standard_mixer(spec.n, spec.d)
    xi = uniform_state(spec.n, spec.d)
    params, result = optimize(H_P, H_M, xi, run.p, run.budget, seed, run.chain_order)
    rep = pf_check(-1.0 * H_M.matrix)  # ground-state selection argument applies to -H_M
    probs = result.probabilities
    return {
        "sector": "full",
        "sector_min": float(np.min(spec.values())),
        "achieved": result.expectation,
        "leakage": 0.0,
        "best_index": result.best_string,
        "best_string": "".join(str(v) for v in index_to_string(result.best_string, spec.n, spec.d)),
        "probability": float(probs[result.best_string]),
        "params": {"gammas": list(params.gammas), "betas": list(params.betas)},
        "evaluations": result.evaluations,
        "best_trace": result.best_so_far(),
        "seed": seed,
        "pf_target": "negated_mixer",
        "pf_nonnegative": rep.nonnegative,
        "pf_irreducible": rep.irreducible,
    }


def _reduced_run_record(spec: ProblemSpec, run: RunSettings, shape, seed: int):
    epsilon = run.epsilon if run.epsilon is not None else default_epsilon(spec.n, spec.d)
    report = run_reduced(shape, spec, run.p, epsilon, run.budget, seed, run.chain_order)
    rep = pf_check(reduced_mixer(report.shape, spec.n, spec.d, epsilon))
    probs = report.result.probabilities
    best = report.result.best_string
    return {
        "sector": list(report.shape.parts),
        "sector_min": report.sector_min,
        "achieved": report.achieved,
        "leakage": report.leakage,
        "best_index": best,
        "best_string": "".join(str(v) for v in index_to_string(best, spec.n, spec.d)),
        "probability": float(probs[best]),
        "params": {"gammas": list(report.params.gammas), "betas": list(report.params.betas)},
        "evaluations": report.result.evaluations,
        "best_trace": report.result.best_so_far(),
        "seed": seed,
        "epsilon": epsilon,
        "pf_target": "mixer",
        "pf_nonnegative": rep.nonnegative,
        "pf_irreducible": rep.irreducible,
    }


def cmd_run(cfg: ExperimentConfig, prefix: str | None, log, jobs: int = 1,
            seed_override: int | None = None) -> int:
    if cfg.problem is None:
        raise ConfigError("run requires a problem section")
    spec = cfg.problem
    run = cfg.run_settings()
    seed = run.seed if seed_override is None else seed_override
    if run.sectors == "all":
        shapes = admissible_shapes(spec.n, spec.d)
    else:
        shapes = [Partition(parts) for parts in run.sectors]
    if shapes:
        check_site_permutation_symmetry(spec)
    log(f"full-space run (p={run.p}, budget={run.budget}, seed={seed})")
    records = [_full_run_record(spec, run, seed)]
    if jobs > 1 and len(shapes) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_reduced_run_record, spec, run, s, seed) for s in shapes]
            records.extend(f.result() for f in futures)
    else:
        for shape in shapes:
            log(f"reduced run in sector {shape.parts}")
            records.append(_reduced_run_record(spec, run, shape, seed))
    payload = {
        "command": "run",
        "problem": {"n": spec.n, "d": spec.d},
        "run": {
            "p": run.p,
            "budget": run.budget,
            "seed": seed,
            "chain_order": run.chain_order,
        },
        "records": records,
        "timestamp": _timestamp(),
    }
    _emit(payload, prefix, log)
    if prefix:
        path = f"{prefix}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["sector", "sector_min", "achieved", "leakage", "best_string", "probability"])
            for r in records:
                sector = "full" if r["sector"] == "full" else "(" + ",".join(map(str, r["sector"])) + ")"
                writer.writerow(
                    [sector, _fmt(r["sector_min"]), _fmt(r["achieved"]), _fmt(r["leakage"]),
                     r["best_string"], _fmt(r["probability"])]
                )
        log(f"wrote {path}")
    return 0


def cmd_orbits(cfg: ExperimentConfig, prefix: str | None, log) -> int:
    if cfg.problem is None:
        raise ConfigError("orbits requires a problem section (n, d)")
    if not cfg.symmetry_generators:
        raise ConfigError("orbits requires symmetry generators")
    spec = cfg.problem
    group = string_group_from_site_generators(spec.n, spec.d, cfg.symmetry_generators)
    H_P = problem_hamiltonian(spec)
    gen_report = generator_symmetry_report(group, H_P=H_P, H_M=standard_mixer(spec.n, spec.d))
    for site_gen, entry in zip(cfg.symmetry_generators, gen_report):
        if not entry["commutes_with_problem"]:
            raise ConfigError(
                f"generator {list(site_gen)} does not commute with the problem Hamiltonian "
                f"(objective spread {entry['problem_commutator']:.3e})",
                field="symmetry.generators",
            )
    oset = orbits(group)
    m, crosscheck = orbit_count(oset)
    histogram: dict[str, int] = {}
    for orbit in oset.orbits:
        histogram[str(len(orbit))] = histogram.get(str(len(orbit)), 0) + 1
    payload = {
        "command": "orbits",
        "degree": oset.degree,
        "orbit_count": m,
        "inverse_size_sum": float(crosscheck),
        "inverse_size_sum_exact": str(crosscheck),
        "size_histogram": histogram,
        "orbits": [list(o) for o in oset.orbits],
        "generators": [
            {
                "sites": list(site_gen),
                "commutes_with_problem": entry["commutes_with_problem"],
                "commutes_with_mixer": entry["commutes_with_mixer"],
            }
            for site_gen, entry in zip(cfg.symmetry_generators, gen_report)
        ],
        "timestamp": _timestamp(),
    }
    if cfg.run is not None:
        run = cfg.run
        H_M = standard_mixer(spec.n, spec.d)
        xi = uniform_state(spec.n, spec.d)
        _, result = optimize(H_P, H_M, xi, run.p, run.budget, run.seed, run.chain_order)
        verdict = orbit_invariance_check(result.probabilities, oset, tol=1e-10)
        payload["run_invariance"] = {
            "passed": verdict.passed,
            "max_spread": verdict.max_spread,
            "tol": verdict.tol,
        }
    print(f"orbits: {m} (cross-check sum {crosscheck})")
    for size, count in sorted(histogram.items(), key=lambda kv: int(kv[0])):
        print(f"  size {size}: {count} orbit(s)")
    _emit(payload, prefix, log)
    return 0


def cmd_verify(cfg: ExperimentConfig | None, prefix: str | None, log) -> int:
    settings = cfg.verify if cfg is not None else VerifySettings()
    log(f"running invariant battery (nmax={settings.nmax}, dmax={settings.dmax})")
    results = default_suite(settings.nmax, settings.dmax)
    for res in results:
        print(f"[{res.status}] {res.name}: {res.detail} ({res.elapsed:.2f}s)")
    all_ok = all(res.passed for res in results if res.assertive)
    payload = {
        "command": "verify",
        "nmax": settings.nmax,
        "dmax": settings.dmax,
        "checks": [
            {
                "name": res.name,
                "status": res.status,
                "passed": res.passed,
                "assertive": res.assertive,
                "detail": res.detail,
                "elapsed_s": res.elapsed,
            }
            for res in results
        ],
        "all_assertive_passed": all_ok,
        "timestamp": _timestamp(),
    }
    _emit(payload, prefix, log)
    print("verification: " + ("all assertive checks passed" if all_ok else "FAILURES present"))
    return 0 if all_ok else 3


# ---------------------------------------------------------------------------
# driver

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sectorqaoa",
        description="Exact desk-scale simulator for symmetry-reduced QAOA on qudits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in [
        ("sectors", "emit the sector dimension table"),
        ("run", "run full and sector-reduced QAOA"),
        ("verify", "run the invariant battery"),
        ("orbits", "enumerate symmetry orbits"),
    ]:
        p = sub.add_parser(name, help=desc)
        p.add_argument("--config", help="path to a JSON experiment config")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="output path prefix (overrides config)")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for sector runs")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    def log(msg: str):
        print(f"[sectorqaoa] {msg}", file=sys.stderr)

    try:
        cfg = parse_config(args.config) if args.config else None
        if cfg is None and args.command != "verify":
            raise ConfigError(f"{args.command} requires --config")
        if cfg is not None and args.seed is not None and cfg.run is not None:
            cfg.run.seed = args.seed
        prefix = args.out or (cfg.output if cfg else None)
        if args.command == "sectors":
            return cmd_sectors(cfg, prefix, log)
        if args.command == "run":
            return cmd_run(cfg, prefix, log, jobs=max(1, args.jobs), seed_override=args.seed)
        if args.command == "orbits":
            return cmd_orbits(cfg, prefix, log)
        return cmd_verify(cfg, prefix, log)
    except ConfigError as exc:
        log(f"config error: {exc}")
        return 1
    except SymmetryViolationError as exc:
        log(f"symmetry violation: {exc}")
        return 1
    except DimensionCapError as exc:
        log(f"refused: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
