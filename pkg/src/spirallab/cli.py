"""Batch driver: build functions, run verification suites and searches
from JSON configs, and write deterministic CSV/JSON reports.

Exit status: 0 all checks passed, 1 usage or config error, 2 at least
one bound violation (red alert).  All angles are radians everywhere.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .classes import (
    AtomicMeasure,
    ClassSpec,
    InvalidParams,
    UnknownName,
    alexander_forward,
    member_from_measure,
    named,
)
from .extremal import SearchProblem, default_target, search
from .inequalities import (
    ONE_SIDED_THEOREMS,
    ChainInequalityViolation,
    InvalidIndices,
    OrderTooLow,
    bound_rhs,
    one_sided_diff,
    proof_trace,
    successive_diff,
)
from .membership import (
    TOL_MEMBER,
    CriticalPointOnGrid,
    Grid,
    ZeroOnGrid,
    check_convex,
    check_spirallike,
)
from .series import ORDER_DEFAULT

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VIOLATION = 2

CSV_COLUMNS = (
    "theorem_id",
    "function_id",
    "seed",
    "gamma",
    "alpha",
    "n",
    "m",
    "lhs",
    "rhs",
    "slack",
    "pass",
)

class ConfigError(ValueError):
    """Config file or flag contents outside the accepted schema."""


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _merged(args: argparse.Namespace) -> dict:
    cfg = _load_config(args.config) if args.config else {}
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    for key in ("seed", "order", "out", "format"):
        override = getattr(args, key, None)
        if override is not None:
            cfg[key] = override
    cfg["command"] = args.command
    return cfg


def _require(cfg: dict, key: str, kind=None):
    if key not in cfg:
        raise ConfigError(f"field '{key}' is required for command '{cfg['command']}'")
    value = cfg[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError(f"field '{key}' has the wrong type")
    return value


def _class_spec(cfg: dict) -> ClassSpec:
    doc = _require(cfg, "spec", dict)
    if "kind" not in doc or not isinstance(doc["kind"], str):
        raise ConfigError("field 'spec.kind' is required")
    try:
        return ClassSpec(doc["kind"], float(doc.get("gamma", 0.0)), float(doc.get("alpha", 0.0)))
    except InvalidParams as exc:
        raise ConfigError(f"field 'spec': {exc}") from None


def _n_range(cfg: dict) -> range:
    raw = _require(cfg, "n")
    if isinstance(raw, int):
        return range(raw, raw + 1)
    if isinstance(raw, list) and len(raw) == 2 and all(isinstance(v, int) for v in raw):
        lo, hi = raw
        if hi < lo:
            raise ConfigError("field 'n': empty range")
        return range(lo, hi + 1)
    raise ConfigError("field 'n' must be an integer or [lo, hi]")


def _seed(cfg: dict) -> int:
    seed = _require(cfg, "seed")
    if not isinstance(seed, int):
        raise ConfigError("field 'seed' must be an integer (no wall-clock defaults)")
    return seed


def _build_functions(cfg: dict, spec: ClassSpec | None, order: int):
    """Yield (function_id, FunctionSeries, seed-or-None) per config entry."""
    entries = _require(cfg, "functions", list)
    out = []
    for entry in entries:
        if not isinstance(entry, dict):
            raise ConfigError("entries of 'functions' must be objects")
        if "name" in entry:
            params = entry.get("params", {})
            if not isinstance(params, dict):
                raise ConfigError("field 'params' must be an object")
            try:
                f = named(entry["name"], order, **params)
            except UnknownName as exc:
                raise ConfigError(f"unknown function name {exc}") from None
            except InvalidParams as exc:
                raise ConfigError(str(exc)) from None
            tag = entry["name"]
            if params:
                inner = ",".join(f"{k}={_fmt(v)}" for k, v in sorted(params.items()))
                tag = f"{tag}({inner})"
            out.append((tag, f, None))
        elif "sampled" in entry:
            if spec is None:
                raise ConfigError("sampled functions need a 'spec'")
            block = entry["sampled"]
            trials = block.get("trials", 1)
            k_atoms = block.get("k_atoms", 2)
            seed = _seed(cfg)
            rng = np.random.default_rng(seed)
            for t in range(trials):
                k = int(rng.integers(1, k_atoms + 1))
                w = rng.dirichlet(np.ones(k))
                measure = AtomicMeasure(
                    tuple(rng.uniform(0.0, 2.0 * math.pi, k)), tuple(w / w.sum())
                )
                f = member_from_measure(measure, spec, order)
                out.append((f"sample-{t:04d}", f, seed))
        else:
            raise ConfigError("each function entry needs 'name' or 'sampled'")
    return out


def _write_rows(rows: list, cfg: dict) -> None:
    fmt = cfg.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("field 'format' must be 'csv' or 'json'")
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for row in rows:
            lines.append(",".join(_fmt(row[col]) for col in CSV_COLUMNS))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    out = cfg.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diff_for(theorem: str, f, n: int) -> float:
    return one_sided_diff(f, n) if theorem in ONE_SIDED_THEOREMS else successive_diff(f, n)


def _rhs_for(theorem: str, f, spec: ClassSpec, n: int) -> float:
    """Bound value, computing the per-function M where the theorem needs it."""
    if theorem == "thm_main":
        return proof_trace(f, spec.gamma, spec.alpha, n).final_bound
    if theorem == "cor_convex_gamma" and spec.alpha != 0.0:
        trace = proof_trace(alexander_forward(f), spec.gamma, spec.alpha, n)
        return trace.final_bound / (n + 1)
    return bound_rhs(theorem, n, alpha=spec.alpha, gamma=spec.gamma)


def _row(theorem, fid, seed, spec, n, m, lhs, rhs):
    slack = rhs - lhs
    return {
        "theorem_id": theorem,
        "function_id": fid,
        "seed": seed,
        "gamma": spec.gamma if spec else None,
        "alpha": spec.alpha if spec else None,
        "n": n,
        "m": m,
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "pass": slack >= -1e-8,
    }


def _cmd_verify(cfg: dict) -> int:
    order = cfg.get("order", ORDER_DEFAULT)
    spec = _class_spec(cfg)
    theorem = _require(cfg, "theorem", str)
    ns = _n_range(cfg)
    functions = _build_functions(cfg, spec, order)

    rows = []
    for fid, f, seed in functions:
        if cfg.get("membership"):
            block = cfg["membership"] if isinstance(cfg["membership"], dict) else {}
            grid = Grid(tuple(block.get("radii", (0.5, 0.9, 0.99))), block.get("m", 4096))
            check = check_convex if spec.is_convex_kind else check_spirallike
            try:
                lhs = -check(f, spec, grid).margin
            except (ZeroOnGrid, CriticalPointOnGrid):
                # a vanishing f or f' on the grid rules the class out outright
                lhs = math.inf
            rows.append(_row("membership", fid, seed, spec, None, None, lhs, TOL_MEMBER))
        for n in ns:
            if theorem == "thm_robertson":
                m = _require(cfg, "m", int)
                lhs = abs(n * abs(f.a(n)) - m * abs(f.a(m)))
                rhs = bound_rhs(theorem, n, m)
                rows.append(_row(theorem, fid, seed, spec, n, m, lhs, rhs))
            else:
                lhs = _diff_for(theorem, f, n)
                try:
                    rhs = _rhs_for(theorem, f, spec, n)
                except ChainInequalityViolation:
                    # a broken derivation chain is a red-alert row, not a crash
                    rhs = math.nan
                rows.append(_row(theorem, fid, seed, spec, n, None, lhs, rhs))
    rows.sort(key=lambda r: (r["function_id"], r["n"] if r["n"] is not None else -1))
    _write_rows(rows, cfg)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VIOLATION


def _cmd_trace(cfg: dict) -> int:
    order = cfg.get("order", ORDER_DEFAULT)
    spec = _class_spec(cfg)
    ns = _n_range(cfg)
    functions = _build_functions(cfg, spec, order)
    docs = []
    red = False
    for fid, f, seed in functions:
        for n in ns:
            doc = {"function_id": fid, "seed": seed}
            try:
                doc.update(proof_trace(f, spec.gamma, spec.alpha, n).to_json())
            except ChainInequalityViolation as exc:
                doc.update({"n": n, "violation": str(exc)})
                red = True
            docs.append(doc)
    docs.sort(key=lambda d: (d["function_id"], d["n"]))
    text = json.dumps(docs, indent=2, sort_keys=True) + "\n"
    out = cfg.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if red else EXIT_OK


def _cmd_search(cfg: dict) -> int:
    spec = _class_spec(cfg)
    n = _require(cfg, "n", int)
    try:
        problem = SearchProblem(
            spec=spec,
            n=n,
            functional=cfg.get("functional", "two_sided_diff"),
            m=cfg.get("m"),
            k_atoms=cfg.get("k_atoms", 2),
            budget=cfg.get("budget", 5000),
            restarts=cfg.get("restarts", 8),
            seed=_seed(cfg),
            minimize=bool(cfg.get("minimize", False)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    def stream(evals: int, value: float):
        sys.stdout.write(json.dumps({"evaluations": evals, "incumbent": value}) + "\n")

    result = search(problem, on_improve=stream)
    doc = result.to_json()
    doc["problem"] = problem.to_json()

    violated = False
    if not problem.minimize:
        theorem, two_sided = default_target(spec)
        applies = (theorem in ONE_SIDED_THEOREMS) == (problem.functional == "one_sided_diff")
        if problem.functional != "robertson" and applies:
            rhs = bound_rhs(theorem, n, alpha=spec.alpha if theorem == "thm_C" else 0.0)
            doc["bound"] = {"theorem_id": theorem, "rhs": rhs}
            violated = result.best_value > rhs + 1e-8
            doc["bound"]["violated"] = violated
    out = cfg.get("out")
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if violated else EXIT_OK


def _cmd_sample(cfg: dict) -> int:
    order = cfg.get("order", ORDER_DEFAULT)
    spec = _class_spec(cfg)
    trials = _require(cfg, "trials", int)
    k_atoms = cfg.get("k_atoms", 2)
    seed = _seed(cfg)
    rng = np.random.default_rng(seed)
    docs = []
    for t in range(trials):
        k = int(rng.integers(1, k_atoms + 1))
        w = rng.dirichlet(np.ones(k))
        measure = AtomicMeasure(tuple(rng.uniform(0.0, 2.0 * math.pi, k)), tuple(w / w.sum()))
        f = member_from_measure(measure, spec, order)
        docs.append(
            {
                "trial": t,
                "seed": seed,
                "kind": spec.kind,
                "gamma": spec.gamma,
                "alpha": spec.alpha,
                "atoms": [{"t": a, "w": b} for a, b in zip(measure.angles, measure.weights)],
                "coefficients": [[c.real, c.imag] for c in f.series.coeffs],
            }
        )
    text = json.dumps(docs, indent=2, sort_keys=True) + "\n"
    out = cfg.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_table(cfg: dict) -> int:
    """Golden table: the named extremal functions against their theorems."""
    ns = _n_range(cfg) if "n" in cfg else range(2, 21)
    order = cfg.get("order", max(ORDER_DEFAULT, max(ns) + 1))
    rows = []

    koebe = named("koebe", order)
    chalf = named("c_half_extremal", order)
    cube = named("power_map", order, beta=3.0)
    star_spec = ClassSpec("starlike")
    chalf_spec = ClassSpec("c_half", alpha=-0.5)
    starneg_spec = ClassSpec("starlike", alpha=-0.5)
    convex_spec = ClassSpec("convex")
    for n in ns:
        rows.append(
            _row("thm_A", "koebe", None, star_spec, n, None, successive_diff(koebe, n), 1.0)
        )
        rows.append(
            _row(
                "thm_c_half",
                "c_half_extremal",
                None,
                chalf_spec,
                n,
                None,
                one_sided_diff(chalf, n),
                1.0,
            )
        )
        rows.append(
            _row(
                "thm_C",
                "power_map(beta=3)",
                None,
                starneg_spec,
                n,
                None,
                successive_diff(cube, n),
                bound_rhs("thm_C", n, alpha=-0.5),
            )
        )
        sharp = named("l_phi", order, phi=math.pi / n)
        rows.append(
            _row(
                "thm_B",
                "l_phi(pi/n)",
                None,
                convex_spec,
                n,
                None,
                one_sided_diff(sharp, n),
                bound_rhs("thm_B", n),
            )
        )
    rows.sort(key=lambda r: (r["function_id"], r["n"]))
    _write_rows(rows, cfg)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VIOLATION


_COMMANDS = {
    "verify": _cmd_verify,
    "trace": _cmd_trace,
    "search": _cmd_search,
    "sample": _cmd_sample,
    "table": _cmd_table,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spirallab",
        description="verification suites for successive-coefficient bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("verify", "membership and bound suites over named or sampled functions"),
        ("trace", "derivation-chain traces per function"),
        ("search", "sharpness search over atomic measures"),
        ("sample", "write sampled measures and their coefficients"),
        ("table", "golden table of the named extremal functions"),
    ):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--config", help="JSON config path")
        p.add_argument("--seed", type=int, help="override config seed")
        p.add_argument("--order", type=int, help="override truncation order")
        p.add_argument("--out", help="override output path")
        p.add_argument("--format", choices=("csv", "json"), help="override output format")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merged(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OrderTooLow, InvalidIndices) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
