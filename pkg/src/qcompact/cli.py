"""Batch command-line front end.

Twelve subcommands load JSON instances, run one computation or theorem
verification, and write a deterministic report: same config, inputs, and
seed always produce byte-identical output.  Exit codes: 0 success, 1 input
error, 2 hard verification failure, 3 inconclusive sandwich.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .ball import chebyshev_center, jung_check
from .cover import cover_profile
from .errors import InternalConsistencyError, VerificationError
from .metric import FiniteMetricSpace
from .paths import PLPath, aa_net, modulus, verify_qaa
from .prokhorov import (
    DiscreteMeasure,
    prokhorov_distance,
    prokhorov_oracle,
    mu_ut,
    tv_distance,
    verify_qprokh,
)
from .serialize import dumps_deterministic, csv_text, sha256_file, write_atomic
from .stochastic import PathEnsemble, sample_walks, verify_qsaa

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILED = 2
EXIT_INCONCLUSIVE = 3

#: commands that can emit CSV (everything else is JSON-only)
CSV_COMMANDS = {"prokhorov-dist", "cover-profile", "aa-net"}

#: spaces small enough to cross-check against the subset-enumeration oracle
ORACLE_LIMIT = 12


class CLIError(Exception):
    """Bad input: malformed file, unknown field, violated precondition."""


# ---------------------------------------------------------------------------
# config plumbing
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    out: Optional[str] = None
    format: str = "json"
    seed: Optional[int] = None
    threads: int = 0


def _reject_unknown(obj: dict, allowed, where: str) -> None:
    unknown = set(obj) - set(allowed)
    if unknown:
        raise CLIError(f"{where}: unknown field {sorted(unknown)[0]!r}")


def _as_grid(value, name: str) -> list[float]:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        grid = [float(v) for v in value]
    except (TypeError, ValueError):
        raise CLIError(f"{name}: expected a list of numbers")
    if not grid:
        raise CLIError(f"{name}: must be nonempty")
    if any(not np.isfinite(g) or g <= 0.0 for g in grid):
        raise CLIError(f"{name}: entries must be finite and > 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise CLIError(f"{name}: must be strictly increasing")
    return grid


def _as_pos_real(value, name: str) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise CLIError(f"{name}: expected a number")
    if not np.isfinite(x) or x <= 0.0:
        raise CLIError(f"{name}: must be finite and > 0")
    return x


def _as_nonneg_real(value, name: str) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise CLIError(f"{name}: expected a number")
    if not np.isfinite(x) or x < 0.0:
        raise CLIError(f"{name}: must be finite and >= 0")
    return x


def _as_pos_int(value, name: str) -> int:
    try:
        k = int(value)
    except (TypeError, ValueError):
        raise CLIError(f"{name}: expected an integer")
    if k < 1:
        raise CLIError(f"{name}: must be >= 1")
    return k


def _as_bool(value, name: str) -> bool:
    if isinstance(value, bool):
        return value
    raise CLIError(f"{name}: expected true or false")


# validator, required flag — drives both the config file and the flag parser
PARAM_SPECS: dict[str, dict[str, tuple]] = {
    "prokhorov-dist": {"lambda_grid": (_as_grid, True)},
    "tv-dist": {},
    "mu-ut": {"eps_grid": (_as_grid, True), "k_max": (_as_pos_int, True)},
    "cover-profile": {"k_max": (_as_pos_int, True)},
    "modulus": {"delta_grid": (_as_grid, True)},
    "cheby": {},
    "jung-check": {},
    "aa-net": {
        "delta": (_as_pos_real, True),
        "alpha": (_as_nonneg_real, True),
        "bound_m": (_as_pos_real, True),
        "eps": (_as_pos_real, True),
        "list_lattice": (_as_bool, False),
    },
    "verify-qprokh": {
        "lambda_grid": (_as_grid, True),
        "eps": (_as_pos_real, True),
        "mu_eps_grid": (_as_grid, False),
        "k_max": (_as_pos_int, False),
    },
    "verify-qaa": {
        "delta_grid": (_as_grid, True),
        "bound_m": (_as_pos_real, True),
        "eps": (_as_pos_real, True),
    },
    "verify-qsaa": {
        "lambda_grid": (_as_grid, True),
        "eps_grid": (_as_grid, True),
        "delta_grid": (_as_grid, True),
        "m_grid": (_as_grid, True),
        "eps": (_as_pos_real, True),
    },
    "gen-walks": {
        "n_steps": (_as_pos_int, True),
        "n_paths": (_as_pos_int, True),
        "scale": (_as_nonneg_real, True),
    },
}

INPUT_SPECS: dict[str, list[tuple[str, bool]]] = {
    # (role, is_list)
    "prokhorov-dist": [("p", False), ("q", False)],
    "tv-dist": [("p", False), ("q", False)],
    "mu-ut": [("measures", True)],
    "cover-profile": [("space", False)],
    "modulus": [("path", False)],
    "cheby": [("points", False)],
    "jung-check": [("points", False)],
    "aa-net": [("family", False)],
    "verify-qprokh": [("measures", True)],
    "verify-qaa": [("family", False)],
    "verify-qsaa": [("ensembles", True)],
    "gen-walks": [],
}


def _validate_params(command: str, raw: dict) -> dict:
    spec = PARAM_SPECS[command]
    _reject_unknown(raw, spec, f"params for {command}")
    out = {}
    for name, (validator, required) in spec.items():
        if name in raw and raw[name] is not None:
            out[name] = validator(raw[name], name)
        elif required:
            raise CLIError(f"params for {command}: missing {name!r}")
    return out


def _validate_inputs(command: str, raw: dict) -> dict:
    spec = INPUT_SPECS[command]
    _reject_unknown(raw, [r for r, _ in spec], f"inputs for {command}")
    out = {}
    for role, is_list in spec:
        if role not in raw:
            raise CLIError(f"inputs for {command}: missing {role!r}")
        value = raw[role]
        if is_list:
            if not isinstance(value, list) or not value or not all(
                isinstance(v, str) for v in value
            ):
                raise CLIError(
                    f"inputs for {command}: {role!r} must be a nonempty list of paths"
                )
        elif not isinstance(value, str):
            raise CLIError(f"inputs for {command}: {role!r} must be a path string")
        out[role] = value
    return out


def load_config_file(path: str) -> RunConfig:
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise CLIError(f"{path}: config must be a JSON object")
    _reject_unknown(
        obj,
        {"command", "inputs", "params", "out", "format", "seed", "threads"},
        path,
    )
    command = obj.get("command")
    if command not in PARAM_SPECS:
        raise CLIError(f"{path}: unknown command {command!r}")
    fmt = obj.get("format", "json")
    if fmt not in ("json", "csv"):
        raise CLIError(f"{path}: format must be 'json' or 'csv'")
    seed = obj.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or seed < 0):
        raise CLIError(f"{path}: seed must be a nonnegative integer")
    threads = obj.get("threads", 0)
    if not isinstance(threads, int) or isinstance(threads, bool) or threads < 0:
        raise CLIError(f"{path}: threads must be a nonnegative integer")
    base = os.path.dirname(os.path.abspath(path))
    inputs = _validate_inputs(command, obj.get("inputs", {}))
    resolved = {
        role: (
            [os.path.join(base, p) for p in v]
            if isinstance(v, list)
            else os.path.join(base, v)
        )
        for role, v in inputs.items()
    }
    return RunConfig(
        command=command,
        inputs=resolved,
        params=_validate_params(command, obj.get("params", {})),
        out=obj.get("out"),
        format=fmt,
        seed=seed,
        threads=threads,
    )


# ---------------------------------------------------------------------------
# instance loading
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, "r") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise CLIError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")


def _load_space_obj(obj, where: str) -> FiniteMetricSpace:
    try:
        return FiniteMetricSpace.from_dict(obj)
    except ValueError as exc:
        raise CLIError(f"{where}: {exc}")


def _load_measure(path: str, space_cache: dict) -> tuple[DiscreteMeasure, str]:
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise CLIError(f"{path}: measure must be a JSON object")
    _reject_unknown(obj, {"space", "mass"}, path)
    if "space" not in obj or "mass" not in obj:
        raise CLIError(f"{path}: need 'space' and 'mass'")
    spec = obj["space"]
    if isinstance(spec, str):
        ref = os.path.join(os.path.dirname(os.path.abspath(path)), spec)
        if ref not in space_cache:
            space_cache[ref] = _load_space_obj(_load_json(ref), ref)
        space = space_cache[ref]
    else:
        space = _load_space_obj(spec, f"{path}: space")
    try:
        return DiscreteMeasure(space, obj["mass"]), path
    except ValueError as exc:
        raise CLIError(f"{path}: {exc}")


def _common_space(measures: list[DiscreteMeasure], paths: list[str]) -> None:
    for m, p in zip(measures[1:], paths[1:]):
        if m.space is not measures[0].space and not m.space.same_as(measures[0].space):
            raise CLIError(f"{p}: space differs from {paths[0]}")


def _load_coords(path: str) -> np.ndarray:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "coords" not in obj:
        raise CLIError(f"{path}: need a 'coords' array")
    _reject_unknown(obj, {"coords"}, path)
    coords = np.asarray(obj["coords"], dtype=float)
    if coords.ndim == 1:
        coords = coords[:, None]
    if coords.ndim != 2 or coords.shape[0] == 0 or not np.isfinite(coords).all():
        raise CLIError(f"{path}: coords must be a nonempty finite 2-d array")
    return coords


def _load_path(path: str) -> PLPath:
    obj = _load_json(path)
    try:
        return PLPath.from_dict(obj)
    except ValueError as exc:
        raise CLIError(f"{path}: {exc}")


def _load_family(path: str) -> list[PLPath]:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "paths" not in obj:
        raise CLIError(f"{path}: need a 'paths' array")
    _reject_unknown(obj, {"paths"}, path)
    if not isinstance(obj["paths"], list) or not obj["paths"]:
        raise CLIError(f"{path}: 'paths' must be a nonempty array")
    out = []
    for i, entry in enumerate(obj["paths"]):
        try:
            out.append(PLPath.from_dict(entry))
        except ValueError as exc:
            raise CLIError(f"{path}: paths[{i}]: {exc}")
    return out


def _load_ensemble(path: str) -> PathEnsemble:
    obj = _load_json(path)
    try:
        return PathEnsemble.from_dict(obj)
    except ValueError as exc:
        raise CLIError(f"{path}: {exc}")


def _hash_entry(path: str) -> dict:
    return {"path": os.path.basename(path), "sha256": sha256_file(path)}


def _input_hashes(cfg: RunConfig) -> dict:
    out: dict[str, Any] = {}
    for role, value in cfg.inputs.items():
        if isinstance(value, list):
            out[role] = [_hash_entry(p) for p in value]
        else:
            out[role] = _hash_entry(value)
    return out


# ---------------------------------------------------------------------------
# command handlers: return (results, csv payload or None, exit code)
# ---------------------------------------------------------------------------


def _run_prokhorov_dist(cfg: RunConfig):
    cache: dict = {}
    P, p_path = _load_measure(cfg.inputs["p"], cache)
    Q, q_path = _load_measure(cfg.inputs["q"], cache)
    _common_space([P, Q], [p_path, q_path])
    n = P.space.n_points
    rows = []
    for lam in cfg.params["lambda_grid"]:
        res = prokhorov_distance(P, Q, lam)
        oracle_checked = n <= ORACLE_LIMIT
        if oracle_checked:
            ref = prokhorov_oracle(P, Q, lam)
            if abs(ref - res.alpha_star) > 1e-9:
                raise InternalConsistencyError(
                    f"sweep value {res.alpha_star!r} disagrees with the "
                    f"subset oracle {ref!r} at lam={lam!r}"
                )
        rows.append(
            {
                "lambda": lam,
                "alpha_star": res.alpha_star,
                "certificate_kind": "coupling",
                "certificate": res.certificate,
                "oracle_checked": oracle_checked,
            }
        )
    csv = (["lambda", "alpha_star"], [(r["lambda"], r["alpha_star"]) for r in rows])
    return {"n_points": n, "rows": rows}, csv, EXIT_OK


def _run_tv_dist(cfg: RunConfig):
    cache: dict = {}
    P, p_path = _load_measure(cfg.inputs["p"], cache)
    Q, q_path = _load_measure(cfg.inputs["q"], cache)
    _common_space([P, Q], [p_path, q_path])
    return {"tv": tv_distance(P, Q)}, None, EXIT_OK


def _run_mu_ut(cfg: RunConfig):
    cache: dict = {}
    loaded = [_load_measure(p, cache) for p in cfg.inputs["measures"]]
    measures = [m for m, _ in loaded]
    _common_space(measures, [p for _, p in loaded])
    result = mu_ut(measures, cfg.params["eps_grid"], cfg.params["k_max"])
    return {"mu_ut": result}, None, EXIT_OK


def _run_cover_profile(cfg: RunConfig):
    space = _load_space_obj(_load_json(cfg.inputs["space"]), cfg.inputs["space"])
    try:
        profile = cover_profile(space.dist, cfg.params["k_max"], coords=space.coords)
    except ValueError as exc:
        raise CLIError(str(exc))
    csv = (
        ["k", "r_k", "p_k"],
        [(e.k, e.radius, e.packing) for e in profile.entries],
    )
    return {"profile": profile}, csv, EXIT_OK


def _run_modulus(cfg: RunConfig):
    path = _load_path(cfg.inputs["path"])
    rows = [
        {"delta": d, "modulus": modulus(path, d)}
        for d in cfg.params["delta_grid"]
    ]
    return {"sup_norm": path.sup_norm, "rows": rows}, None, EXIT_OK


def _run_cheby(cfg: RunConfig):
    coords = _load_coords(cfg.inputs["points"])
    try:
        cert = chebyshev_center(coords)
    except ValueError as exc:
        raise CLIError(str(exc))
    return {"ball": cert}, None, EXIT_OK


def _run_jung_check(cfg: RunConfig):
    coords = _load_coords(cfg.inputs["points"])
    if coords.shape[0] < 2:
        raise CLIError("jung-check needs at least 2 points")
    try:
        check = jung_check(coords)
    except ValueError as exc:
        raise CLIError(str(exc))
    return {"jung": check}, None, EXIT_OK if check.ok else EXIT_FAILED


def _run_aa_net(cfg: RunConfig):
    family = _load_family(cfg.inputs["family"])
    p = cfg.params
    try:
        net = aa_net(
            family,
            p["delta"],
            p["alpha"],
            p["bound_m"],
            p["eps"],
            materialize_lattice=p.get("list_lattice", False),
        )
    except ValueError as exc:
        raise CLIError(str(exc))
    csv = (
        ["sample", "achieved", "bound"],
        [(i, s.achieved, s.bound) for i, s in enumerate(net.per_sample)],
    )
    return {"net": net}, csv, EXIT_OK


def _run_verify_qprokh(cfg: RunConfig):
    cache: dict = {}
    loaded = [_load_measure(p, cache) for p in cfg.inputs["measures"]]
    measures = [m for m, _ in loaded]
    _common_space(measures, [p for _, p in loaded])
    p = cfg.params
    report = verify_qprokh(
        measures,
        p["lambda_grid"],
        p["eps"],
        eps_grid=p.get("mu_eps_grid"),
        k_max=p.get("k_max"),
    )
    code = {
        "verified": EXIT_OK,
        "inconclusive": EXIT_INCONCLUSIVE,
        "failed": EXIT_FAILED,
    }[report.status]
    return {"report": report}, None, code


def _run_verify_qaa(cfg: RunConfig):
    family = _load_family(cfg.inputs["family"])
    p = cfg.params
    try:
        report = verify_qaa(family, p["delta_grid"], p["bound_m"], p["eps"])
    except ValueError as exc:
        raise CLIError(str(exc))
    code = EXIT_OK if report.status == "verified" else EXIT_FAILED
    return {"report": report}, None, code


def _run_verify_qsaa(cfg: RunConfig):
    ensembles = [_load_ensemble(p) for p in cfg.inputs["ensembles"]]
    p = cfg.params
    try:
        report = verify_qsaa(
            ensembles,
            p["lambda_grid"],
            p["eps_grid"],
            p["delta_grid"],
            p["m_grid"],
            p["eps"],
        )
    except ValueError as exc:
        raise CLIError(str(exc))
    code = {
        "verified": EXIT_OK,
        "inconclusive": EXIT_INCONCLUSIVE,
        "failed": EXIT_FAILED,
    }[report.status]
    return {"report": report}, None, code


HANDLERS = {
    "prokhorov-dist": _run_prokhorov_dist,
    "tv-dist": _run_tv_dist,
    "mu-ut": _run_mu_ut,
    "cover-profile": _run_cover_profile,
    "modulus": _run_modulus,
    "cheby": _run_cheby,
    "jung-check": _run_jung_check,
    "aa-net": _run_aa_net,
    "verify-qprokh": _run_verify_qprokh,
    "verify-qaa": _run_verify_qaa,
    "verify-qsaa": _run_verify_qsaa,
}


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    if cfg.format == "csv" and cfg.command not in CSV_COMMANDS:
        raise CLIError(
            f"{cfg.command} has no CSV form; use --format json "
            f"(CSV is available for: {', '.join(sorted(CSV_COMMANDS))})"
        )

    if cfg.command == "gen-walks":
        # the artifact is the ensemble itself, directly loadable as an input
        if cfg.seed is None:
            raise CLIError("gen-walks requires --seed")
        p = cfg.params
        ensemble = sample_walks(p["n_steps"], p["n_paths"], p["scale"], cfg.seed)
        _emit(cfg, dumps_deterministic(ensemble.to_dict()))
        return EXIT_OK

    results, csv_payload, code = HANDLERS[cfg.command](cfg)
    if cfg.format == "csv":
        header, rows = csv_payload
        _emit(cfg, csv_text(header, rows))
        return code
    report = {
        "command": cfg.command,
        "inputs": _input_hashes(cfg),
        "params": cfg.params,
        "seed": cfg.seed,
        "threads": cfg.threads,
        "results": results,
        "status_code": code,
    }
    _emit(cfg, dumps_deterministic(report))
    return code


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--threads", type=int, default=0,
                     help="worker threads, 0 = auto (recorded; execution is serial)")


def build_parser() -> _Parser:
    parser = _Parser(prog="qcompact", description=__doc__)
    subs = parser.add_subparsers(dest="command", parser_class=_Parser)

    def new(name, **kwargs):
        sub = subs.add_parser(name, **kwargs)
        _add_common(sub)
        return sub

    s = new("prokhorov-dist", help="scaled Prokhorov distance between two measures")
    s.add_argument("p"), s.add_argument("q")
    s.add_argument("--lambda-grid", required=True, dest="lambda_grid")

    s = new("tv-dist", help="total variation distance between two measures")
    s.add_argument("p"), s.add_argument("q")

    s = new("mu-ut", help="uniform-tightness defect bracket for a family")
    s.add_argument("measures", nargs="+")
    s.add_argument("--eps-grid", required=True, dest="eps_grid")
    s.add_argument("--k-max", required=True, dest="k_max")

    s = new("cover-profile", help="greedy covering/packing profile of a space")
    s.add_argument("space")
    s.add_argument("--k-max", required=True, dest="k_max")

    s = new("modulus", help="oscillation of a PL path at window widths")
    s.add_argument("path")
    s.add_argument("--delta-grid", required=True, dest="delta_grid")

    s = new("cheby", help="minimal enclosing ball of a point set")
    s.add_argument("points")

    s = new("jung-check", help="diameter/radius sandwich for a point set")
    s.add_argument("points")

    s = new("aa-net", help="interpolation net for a bounded equicontinuous family")
    s.add_argument("family")
    s.add_argument("--delta", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--bound-m", required=True, dest="bound_m")
    s.add_argument("--eps", required=True)
    s.add_argument("--list-lattice", action="store_true", dest="list_lattice")

    s = new("verify-qprokh", help="tightness vs covering-radius sandwich for measures")
    s.add_argument("measures", nargs="+")
    s.add_argument("--lambda-grid", required=True, dest="lambda_grid")
    s.add_argument("--eps", required=True)
    s.add_argument("--mu-eps-grid", dest="mu_eps_grid")
    s.add_argument("--k-max", dest="k_max")

    s = new("verify-qaa", help="equicontinuity vs covering sandwich for paths")
    s.add_argument("family")
    s.add_argument("--delta-grid", required=True, dest="delta_grid")
    s.add_argument("--bound-m", required=True, dest="bound_m")
    s.add_argument("--eps", required=True)

    s = new("verify-qsaa", help="stochastic sandwich for path ensembles")
    s.add_argument("ensembles", nargs="+")
    s.add_argument("--lambda-grid", required=True, dest="lambda_grid")
    s.add_argument("--eps-grid", required=True, dest="eps_grid")
    s.add_argument("--delta-grid", required=True, dest="delta_grid")
    s.add_argument("--m-grid", required=True, dest="m_grid")
    s.add_argument("--eps", required=True)

    s = new("gen-walks", help="sample a seeded ensemble of scaled random walks")
    s.add_argument("--n-steps", required=True, dest="n_steps")
    s.add_argument("--n-paths", required=True, dest="n_paths")
    s.add_argument("--scale", required=True)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    inputs: dict[str, Any] = {}
    for role, is_list in INPUT_SPECS[command]:
        value = getattr(args, role)
        inputs[role] = [os.path.abspath(v) for v in value] if is_list else os.path.abspath(value)
    raw_params = {
        name: getattr(args, name, None) for name in PARAM_SPECS[command]
    }
    if command == "aa-net":
        raw_params["list_lattice"] = bool(args.list_lattice)
    seed = args.seed
    if seed is not None and seed < 0:
        raise CLIError("seed: must be a nonnegative integer")
    if args.threads < 0:
        raise CLIError("threads: must be a nonnegative integer")
    return RunConfig(
        command=command,
        inputs=inputs,
        params=_validate_params(command, raw_params),
        out=args.out,
        format=args.format,
        seed=seed,
        threads=args.threads,
    )


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if any(a == "--config" or a.startswith("--config=") for a in argv):
            parser = _Parser(prog="qcompact")
            parser.add_argument("--config", required=True)
            _add_common(parser)
            args = parser.parse_args(argv)
            cfg = load_config_file(args.config)
            if args.out is not None:
                cfg.out = args.out
            if args.seed is not None:
                cfg.seed = args.seed
            if args.threads:
                cfg.threads = args.threads
            if "--format" in argv or any(a.startswith("--format=") for a in argv):
                cfg.format = args.format
        else:
            parser = build_parser()
            args = parser.parse_args(argv)
            if args.command is None:
                parser.print_help()
                return EXIT_INPUT
            cfg = _config_from_args(args)
        return run(cfg)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationError, InternalConsistencyError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
