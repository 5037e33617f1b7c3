"""Command-line front end: ``generate``, ``solve``, ``compare`` and ``verify``.

Settings come from an optional flat ``key = value`` config file
(``--config``); command-line flags override it.  Exit codes: 0 success,
1 a verification check failed, 2 usage, configuration or I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Optional

import numpy as np

from . import io as kio
from . import oracle as _oracle
from .control import MaxResidual, ScheduleError, WeightedRandom
from .core import ContractError, Problem, ProblemMeta, RelaxationParams
from .diagnostics import REPORT_HEADER, Recorder, applicable_checks, verify_run
from .problems import GeneratorSpec, example_p1, generate
from .solvers import preset, run

VARIANTS = ("k", "ek", "rek", "mrek", "acek")


class ConfigError(ValueError):
    pass


def _on_off(s: str) -> bool:
    s = s.strip().lower()
    if s in ("on", "true", "yes", "1"):
        return True
    if s in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"expected on/off, got {s!r}")


def _variant(s: str) -> str:
    s = s.strip().lower()
    if s not in VARIANTS:
        raise ValueError(f"unknown variant {s!r}; expected one of {', '.join(VARIANTS)}")
    return s


def _variant_list(s: str) -> list[str]:
    return [_variant(v) for v in s.split(",") if v.strip()]


def _words(s: str) -> list[str]:
    return [w.strip() for w in s.split(",") if w.strip()]


def _positive_int(s) -> int:
    v = int(s)
    if v < 1:
        raise ValueError(f"must be >= 1, got {v}")
    return v


def _nonneg_float(s) -> float:
    v = float(s)
    if not v >= 0:
        raise ValueError(f"must be >= 0, got {s}")
    return v


# key -> (parser, default)
SCHEMA: dict[str, tuple[Callable[[str], Any], Any]] = {
    "variant": (_variant, "mrek"),
    "variants": (_variant_list, ["k", "rek", "mrek", "acek"]),
    "alpha": (float, 1.0),
    "omega": (float, 1.0),
    "kmax": (_positive_int, 1000),
    "tol": (_nonneg_float, None),
    "tol_residual": (_nonneg_float, 0.0),
    "tol_column": (_nonneg_float, 0.0),
    "target": (_nonneg_float, 1e-8),
    "seed": (int, 0),
    "schedule": (str, None),
    "window_rows": (_positive_int, None),
    "window_cols": (_positive_int, None),
    "normalized_residual": (_on_off, False),
    "oracle": (_on_off, True),
    "out": (str, "."),
    "problem": (str, None),
    "matrix": (str, None),
    "rhs": (str, None),
    "meta": (str, None),
    "x0": (str, None),
    "m": (_positive_int, None),
    "n": (_positive_int, None),
    "rank": (_positive_int, None),
    "cond": (float, 1.0),
    "noise": (_nonneg_float, 0.0),
    "gen_seed": (int, None),
    "checks": (_words, ["all"]),
    "trials": (_positive_int, 100),
}


def read_config(path) -> dict[str, Any]:
    """Parse and validate a ``key = value`` file; ``#`` starts a comment."""
    cfg: dict[str, Any] = {}
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {s!r}")
            key, value = (t.strip() for t in s.split("=", 1))
            if key not in SCHEMA:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                cfg[key] = SCHEMA[key][0](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key}: {exc}") from None
    return cfg


def _settings(args) -> dict[str, Any]:
    cfg = {k: d for k, (_, d) in SCHEMA.items()}
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in SCHEMA:
        v = getattr(args, key, None)
        if v is not None:
            try:
                cfg[key] = SCHEMA[key][0](str(v))
            except ValueError as exc:
                raise ConfigError(f"--{key.replace('_', '-')}: {exc}") from None
    if cfg["tol"] is not None:
        cfg["tol_residual"] = cfg["tol_column"] = cfg["tol"]
    return cfg


def load_problem(cfg) -> Problem:
    if cfg["problem"]:
        if cfg["problem"].lower() != "p1":
            raise ConfigError(f"unknown built-in problem {cfg['problem']!r}")
        return example_p1()
    if cfg["matrix"]:
        if not cfg["rhs"]:
            raise ConfigError("'matrix' needs 'rhs'")
        A = kio.read_matrix_market(cfg["matrix"])
        b = kio.read_vector(cfg["rhs"])
        meta = None
        if cfg["meta"]:
            with open(cfg["meta"], "r", encoding="utf-8") as fh:
                d = json.load(fh)
            meta = ProblemMeta(np.array(d["x_true"]), np.array(d["r_injected"]))
        return Problem(A, b, meta)
    return generate(_generator_spec(cfg)).problem


def _generator_spec(cfg) -> GeneratorSpec:
    if cfg["m"] is None or cfg["n"] is None:
        raise ConfigError("no problem given: set 'problem', 'matrix'/'rhs', or 'm'/'n'")
    seed = cfg["gen_seed"] if cfg["gen_seed"] is not None else cfg["seed"]
    return GeneratorSpec(cfg["m"], cfg["n"], cfg["rank"], cfg["cond"], cfg["noise"], seed)


def build_config(cfg, variant: Optional[str] = None, problem: Optional[Problem] = None):
    variant = variant or cfg["variant"]
    relax = RelaxationParams(cfg["alpha"], cfg["omega"])
    control = None
    if variant == "acek" and cfg["schedule"]:
        control = kio.read_schedule(cfg["schedule"], cfg["window_rows"], cfg["window_cols"])
        if problem is not None:
            control.validate(problem.m, problem.n)
    elif variant in ("k", "rek"):
        control = WeightedRandom(cfg["seed"])
    elif variant == "mrek":
        control = MaxResidual(cfg["normalized_residual"])
    return preset(variant, control, relax=relax, k_max=cfg["kmax"],
                  tol_residual=cfg["tol_residual"], tol_column=cfg["tol_column"])


def _x0(cfg, n):
    if not cfg["x0"]:
        return None
    x0 = kio.read_vector(cfg["x0"])
    if x0.size != n:
        raise ConfigError(f"x0 has {x0.size} entries, expected {n}")
    return x0


def _summary_text(items) -> str:
    return "".join(f"{k}={v}\n" for k, v in items)


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


# -- commands --------------------------------------------------------------------

def cmd_generate(cfg) -> int:
    spec = _generator_spec(cfg)
    g = generate(spec)
    out = cfg["out"]
    kio.write_matrix_market(os.path.join(out, "A.mtx"), g.problem.A)
    kio.write_vector(os.path.join(out, "b.txt"), g.problem.b_hat)
    meta = {
        "m": spec.m, "n": spec.n, "rank": spec.rank, "cond": spec.cond,
        "noise": spec.noise, "seed": spec.seed,
        "sigma": [float(s) for s in g.sigma],
        "x_true": [float(v) for v in g.problem.meta.x_true],
        "r_injected": [float(v) for v in g.problem.meta.r_injected],
    }
    with open(os.path.join(out, "meta.json"), "w", encoding="ascii", newline="\n") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {os.path.join(out, 'A.mtx')}, b.txt, meta.json")
    return 0


def _solve_one(problem, config, cfg, with_oracle):
    o = _oracle.solve(problem.A, problem.b_hat) if with_oracle else None
    rec = Recorder(problem.A, problem.b_hat, o)
    result = run(problem, config, _x0(cfg, problem.n), rec)
    return result, o


def cmd_solve(cfg) -> int:
    problem = load_problem(cfg)
    config = build_config(cfg, problem=problem)
    result, o = _solve_one(problem, config, cfg, cfg["oracle"])
    out = cfg["out"]
    kio.write_history_csv(os.path.join(out, "history.csv"), result.history)
    kio.write_vector(os.path.join(out, "x.txt"), result.final_x)
    A = problem.A
    items = [
        ("variant", cfg["variant"]),
        ("stop_reason", result.stop_reason.value),
        ("iterations_used", result.iterations_used),
        ("residual_norm", repr(float(np.linalg.norm(A.data @ result.final_x - problem.b_hat)))),
    ]
    if o is not None:
        items += [
            ("final_dist_lss", _fmt(_oracle.distance_to_lss(o, A, result.final_x))),
            ("final_x_err", _fmt(np.linalg.norm(result.final_x - o.x_ls_min_norm))),
            ("final_y_err", _fmt(None if result.final_y is None
                                 else np.linalg.norm(result.final_y - o.r))),
        ]
    text = _summary_text(items)
    kio._write_text(os.path.join(out, "summary.txt"), text)
    sys.stdout.write(text)
    return 0


def cmd_compare(cfg) -> int:
    variants = cfg["variants"]
    if len(variants) < 2:
        raise ConfigError("compare needs at least two variants")
    problem = load_problem(cfg)
    o = _oracle.solve(problem.A, problem.b_hat)
    rows, table = [], []
    for v in variants:
        config = build_config(cfg, v, problem)
        rec = Recorder(problem.A, problem.b_hat, o)
        result = run(problem, config, _x0(cfg, problem.n), rec)
        dists = [h.dist_lss for h in result.history]
        rows += [[v, str(h.k), repr(h.dist_lss)] for h in result.history]
        hit = next((h.k for h in result.history if h.dist_lss <= cfg["target"]), None)
        table.append([v, "" if hit is None else str(hit), repr(dists[-1]),
                      str(result.iterations_used)])
    out = cfg["out"]
    kio.write_csv(os.path.join(out, "compare.csv"), ("variant", "k", "dist_lss"), rows)
    kio.write_csv(os.path.join(out, "compare_summary.csv"),
                  ("variant", "iterations_to_target", "final_dist_lss", "iterations_used"), table)
    radius = _oracle.noise_radius(o, problem.A)
    print(f"noise_radius={radius!r} target={cfg['target']!r}")
    for row in table:
        print(f"{row[0]:>5}  iterations_to_target={row[1] or '-':>7}  final_dist_lss={row[2]}")
    return 0


def cmd_verify(cfg) -> int:
    problem = load_problem(cfg)
    config = build_config(cfg, problem=problem)
    checks = cfg["checks"]
    if checks == ["all"]:
        checks = applicable_checks(config)
    _, reports = verify_run(problem, config, checks, x0=_x0(cfg, problem.n),
                            rek_trials=cfg["trials"], seed=cfg["seed"])
    kio.write_csv(os.path.join(cfg["out"], "verify.csv"), REPORT_HEADER,
                  [r.csv_row() for r in reports])
    for r in reports:
        print(r.to_line())
    ok = all(r.passed for r in reports)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "compare": cmd_compare,
            "verify": cmd_verify}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value settings file")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int)
    g = common.add_argument_group("problem")
    g.add_argument("--problem", help="built-in problem (p1)")
    g.add_argument("--matrix", help="Matrix Market file for A")
    g.add_argument("--rhs", help="vector file for b_hat")
    g.add_argument("--meta", help="metadata JSON written by 'generate'")
    g.add_argument("--x0", help="vector file with the starting point")
    for name, typ in (("m", int), ("n", int), ("rank", int), ("cond", float),
                      ("noise", float), ("gen-seed", int)):
        g.add_argument(f"--{name}", type=typ)
    s = common.add_argument_group("solver")
    s.add_argument("--variant", choices=VARIANTS)
    s.add_argument("--alpha", type=float)
    s.add_argument("--omega", type=float)
    s.add_argument("--kmax", type=int)
    s.add_argument("--tol", type=float, help="sets both stopping tolerances")
    s.add_argument("--tol-residual", type=float)
    s.add_argument("--tol-column", type=float)
    s.add_argument("--schedule", help="almost-cyclic schedule file (acek)")
    s.add_argument("--window-rows", type=int)
    s.add_argument("--window-cols", type=int)
    s.add_argument("--normalized-residual", choices=("on", "off"))
    s.add_argument("--oracle", choices=("on", "off"))

    p = argparse.ArgumentParser(prog="extkaczmarz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="write a seeded random problem")
    sub.add_parser("solve", parents=[common], help="run one method, write CSV history")
    c = sub.add_parser("compare", parents=[common], help="run several methods side by side")
    c.add_argument("--variants", help="comma-separated list, e.g. k,rek,mrek,acek")
    c.add_argument("--target", type=float, help="dist_lss threshold for the summary table")
    v = sub.add_parser("verify", parents=[common], help="check the convergence identities")
    v.add_argument("--checks", help="comma-separated check names or 'all'")
    v.add_argument("--trials", type=int)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _settings(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ScheduleError, ContractError, kio.FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
