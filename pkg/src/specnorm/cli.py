"""Command-line surface: norms, witnesses, oracles, graph audits, generators.

Every reporting command emits either readable text or one line of JSON
(``--json``) with ``schema_version`` 1 and natural-log convention; identical
arguments, files, and seed produce byte-identical JSON.  Exit codes: 0 on
success, 1 on any validation or input error (a machine-readable error object
goes to stderr), and 2 when a computed witness lands below its certified
floor, which signals a bug rather than bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .errors import SpecnormError
from .extremal import (
    entropy_analysis,
    gen_invsqrt,
    gen_tensor_power,
    kneser_norm_audit,
    tau_max_scan,
)
from .graphs import (
    centered_witnesses,
    delta_subset_witness,
    edge_count,
    graph_profile,
    neighborhood_energy,
    read_graph,
)
from .linalg import (
    DEFAULT_MAX_ITER,
    DEFAULT_SEED,
    DEFAULT_TOL,
    NormProfile,
    norm_profile,
)
from .matio import format_matrix, read_matrix
from .oracle import (
    DELTA_CAP,
    RHO_PAIR_CAP,
    RHO_REAL_CAP,
    exact_delta,
    exact_rho,
)
from .witness import (
    BinaryVector,
    delta_floor,
    delta_witness,
    rho_floor,
    rho_witness,
)

SCHEMA_VERSION = 1
FLOOR_SLACK = 1e-6


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    oracle_caps: tuple = (DELTA_CAP, RHO_REAL_CAP, RHO_PAIR_CAP)
    output_mode: str = "text"
    log_convention: str = "ln"

    def __post_init__(self):
        if not self.tol > 0.0:
            raise SpecnormError("tol must be positive")
        if self.max_iter < 1:
            raise SpecnormError("max-iter must be at least 1")
        if any(c < 1 for c in self.oracle_caps):
            raise SpecnormError("oracle caps must be at least 1")
        if self.output_mode not in ("text", "json"):
            raise SpecnormError("output mode must be text or json")


def _config(args) -> RunConfig:
    caps = (DELTA_CAP, RHO_REAL_CAP, RHO_PAIR_CAP)
    cap = getattr(args, "cap", None)
    if cap is not None:
        caps = (cap, cap, cap)
    return RunConfig(
        seed=getattr(args, "seed", DEFAULT_SEED),
        tol=getattr(args, "tol", DEFAULT_TOL),
        max_iter=getattr(args, "max_iter", DEFAULT_MAX_ITER),
        oracle_caps=caps,
        output_mode="json" if getattr(args, "json", False) else "text",
    )


def _partitions() -> int:
    raw = os.environ.get("SPECNORM_THREADS", "0")
    try:
        parts = int(raw)
    except ValueError:
        raise SpecnormError(f"SPECNORM_THREADS must be an integer, got {raw!r}") from None
    return max(parts, 1)  # 0 = auto = single partition; ranges still merge the same


def _base_payload() -> dict:
    return {"schema_version": SCHEMA_VERSION, "log_convention": "ln"}


def _profile_dict(p: NormProfile) -> dict:
    return {
        "col_norm": p.col_norm,
        "row_norm": p.row_norm,
        "spectral": p.spectral,
        "spectral_residual": p.spectral_residual,
        "iterations": p.iterations,
        "height": p.height,
    }


def _text_lines(payload: dict, prefix: str = "") -> list:
    lines = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_text_lines(value, prefix=f"{name}."))
        elif isinstance(value, (list, tuple)):
            lines.append(f"{name}: {' '.join(str(v) for v in value)}")
        else:
            lines.append(f"{name}: {value}")
    return lines


def _emit(payload: dict, cfg: RunConfig) -> None:
    if cfg.output_mode == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in _text_lines(payload):
            print(line)


def _error(exc: BaseException) -> None:
    blob = {
        "schema_version": SCHEMA_VERSION,
        "error": type(exc).__name__,
        "message": str(exc),
    }
    print(json.dumps(blob, sort_keys=True), file=sys.stderr)


def _below_floor(value: float, floor: float) -> bool:
    return value < floor * (1.0 - FLOOR_SLACK)


def random_subset(rng, n: int) -> BinaryVector:
    """Uniform nonempty subset of [0, n) as a BinaryVector (bigint-safe)."""
    bits = int.from_bytes(rng.bytes((n + 7) // 8), "little") % (1 << n)
    return BinaryVector(n, bits or 1)


def _cmd_norms(args) -> int:
    cfg = _config(args)
    a = read_matrix(args.file)
    profile = norm_profile(a, cfg.tol, cfg.max_iter, cfg.seed)
    payload = _base_payload()
    payload["norm_profile"] = _profile_dict(profile)
    _emit(payload, cfg)
    return 0


def _cmd_witness(args) -> int:
    cfg = _config(args)
    a = read_matrix(args.file)
    payload = _base_payload()
    if args.kind == "delta":
        w = delta_witness(a, cfg.tol, cfg.max_iter, cfg.seed)
        payload["norm_profile"] = _profile_dict(w.profile)
        payload["xi_bits_hex"] = w.xi.bits_hex()
        payload["ratio"] = w.ratio
        payload["floor_thm"] = w.floor_thm
        payload["floor_sharp"] = w.floor_sharp
        payload["provenance"] = w.provenance
        value, floor = w.ratio, w.floor_thm
    else:
        w = rho_witness(a, cfg.tol, cfg.max_iter, cfg.seed)
        payload["norm_profile"] = _profile_dict(w.profile)
        payload["xi_bits_hex"] = w.xi.bits_hex()
        payload["eta_bits_hex"] = w.eta.bits_hex()
        payload["ratio"] = w.value
        payload["floor_thm"] = w.floor_thm
        payload["provenance"] = w.provenance
        value, floor = w.value, w.floor_thm
    _emit(payload, cfg)
    if _below_floor(value, floor):
        _error(AssertionError(f"witness {value} below certified floor {floor}"))
        return 2
    return 0


def _cmd_oracle(args) -> int:
    cfg = _config(args)
    a = read_matrix(args.file)
    parts = _partitions()
    profile = norm_profile(a, cfg.tol, cfg.max_iter, cfg.seed)
    payload = _base_payload()
    payload["norm_profile"] = _profile_dict(profile)
    if args.kind == "delta":
        r = exact_delta(a, cap=cfg.oracle_caps[0], parts=parts)
        floor = delta_floor(profile.spectral, profile.height)
        payload["xi_bits_hex"] = r.argmax_xi.bits_hex()
        payload["floor_thm"] = floor
    else:
        r = exact_rho(a, cap_real=cfg.oracle_caps[1], cap_pair=cfg.oracle_caps[2],
                      parts=parts)
        floor = rho_floor(profile.spectral, profile.height)
        payload["xi_bits_hex"] = r.argmax_xi.bits_hex()
        payload["eta_bits_hex"] = r.argmax_eta.bits_hex()
        payload["floor_thm"] = floor
    payload["ratio"] = r.value
    payload["enumerated"] = r.enumerated
    payload["provenance"] = "oracle"
    _emit(payload, cfg)
    if _below_floor(r.value, floor):
        _error(AssertionError(f"oracle value {r.value} below certified floor {floor}"))
        return 2
    return 0


def _graph_common(g, gp) -> dict:
    return {
        "n": g.n,
        "edges": len(g.edges),
        "max_degree": gp.max_degree,
        "avg_degree": gp.avg_degree,
        "rho": gp.rho,
        "sigma": gp.sigma,
    }


def _cmd_graph(args) -> int:
    cfg = _config(args)
    g = read_graph(args.file)
    gp = graph_profile(g, cfg.tol, cfg.max_iter, cfg.seed)
    payload = _base_payload()
    payload.update(_graph_common(g, gp))
    if args.mode == "audit":
        # Forward checks: random nonempty subset pairs against the spectral
        # caps (the count functions raise on any violation).
        rng = np.random.default_rng(cfg.seed)
        pairs = 200
        for _ in range(pairs):
            x = random_subset(rng, g.n)
            y = random_subset(rng, g.n)
            neighborhood_energy(g, x, profile=gp)
            edge_count(g, x, y, profile=gp)
        payload["forward_pairs_checked"] = pairs
        _emit(payload, cfg)
        return 0
    x, energy_per_vertex, floor = delta_subset_witness(g, cfg.tol, cfg.max_iter, cfg.seed)
    ca = centered_witnesses(g, cfg.tol, cfg.max_iter, cfg.seed)
    payload["subset"] = {
        "x_bits_hex": x.bits_hex(),
        "size": x.popcount,
        "energy_per_vertex": energy_per_vertex,
        "floor": floor,
    }
    payload["centered"] = {
        "x_bits_hex": ca.x.bits_hex(),
        "size": ca.x.popcount,
        "lhs": ca.lhs,
        "floor": ca.floor,
        "sigma": ca.sigma,
        "height_bound": ca.height_bound,
        "floor_delta_matrix": ca.floor_delta_matrix,
        "floor_rho_matrix": ca.floor_rho_matrix,
        "mixing": {
            "x_bits_hex": ca.mixing.x.bits_hex(),
            "y_bits_hex": ca.mixing.y.bits_hex(),
            "discrepancy": ca.mixing.discrepancy,
            "floor": ca.mixing.floor,
            "upper": ca.mixing.upper,
        },
    }
    _emit(payload, cfg)
    return 0


def _cmd_gen(args) -> int:
    if args.family == "invsqrt":
        matrix, _ = gen_invsqrt(args.size)
    else:
        matrix = gen_tensor_power(args.size).matrix
    text = format_matrix(matrix)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_kneser(args) -> int:
    cfg = _config(args)
    audit = kneser_norm_audit(args.m)
    payload = _base_payload()
    payload.update({
        "m": audit.m,
        "phi_power": audit.phi_power,
        "exact_delta": audit.delta_exact,
        "exact_rho": audit.rho_exact,
        "delta_witness": audit.delta_witness_ratio,
        "rho_witness": audit.rho_witness_value,
        "r_delta": audit.r_delta,
        "r_rho": audit.r_rho,
        "full_set_delta": audit.full_set_delta,
        "full_set_rho": audit.full_set_rho,
        "tau_max_scaled": tau_max_scan(audit.m).max_scaled,
    })
    _emit(payload, cfg)
    return 0


def _cmd_entropy(args) -> int:
    cfg = _config(args)
    ea = entropy_analysis(args.step)
    payload = _base_payload()
    payload.update({
        "x0": ea.x0,
        "z0": ea.z0,
        "fmax": ea.fmax,
        "grid_margin": ea.grid_margin,
        "grid_step": ea.grid_step,
    })
    _emit(payload, cfg)
    return 0


def _cmd_tau(args) -> int:
    cfg = _config(args)
    table = tau_max_scan(args.m)
    payload = _base_payload()
    payload.update({
        "m": table.m,
        "values": list(table.values),
        "max_scaled": table.max_scaled,
    })
    _emit(payload, cfg)
    return 0


def _add_solver_flags(p) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="solver start seed (default 0x5EED)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="solver residual tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                   help="solver iteration cap (default 10000)")


def _add_json_flag(p) -> None:
    p.add_argument("--json", action="store_true",
                   help="emit one line of sorted-key JSON instead of text")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specnorm",
        description="Binary witnesses and exact oracles for discrete matrix norms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norms", help="column/row/spectral norms and height of a matrix file")
    p.add_argument("file")
    _add_solver_flags(p)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_norms)

    p = sub.add_parser("witness", help="certified binary witness for a matrix file")
    p.add_argument("kind", choices=("delta", "rho"))
    p.add_argument("file")
    _add_solver_flags(p)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("oracle", help="exhaustive Gray-code maximum for a matrix file")
    p.add_argument("kind", choices=("delta", "rho"))
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None,
                   help="override the enumeration cap for this run")
    _add_solver_flags(p)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("graph", help="spectral audits of an edge-list file")
    p.add_argument("mode", choices=("audit", "witness"),
                   help="audit: profile + forward caps on sampled subsets; "
                        "witness: certified subset and mixing witnesses")
    p.add_argument("file")
    _add_solver_flags(p)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("gen", help="write a generated matrix in the text format")
    p.add_argument("family", choices=("invsqrt", "tensor"))
    p.add_argument("size", type=int,
                   help="matrix order for invsqrt; tensor exponent m for tensor")
    p.add_argument("-o", "--output", default=None,
                   help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("kneser-audit",
                       help="exact discrete norms of the order-2^m disjointness matrix")
    p.add_argument("m", type=int)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_kneser)

    p = sub.add_parser("entropy", help="grid audit of the double entropy function")
    p.add_argument("--step", type=float, default=1e-3,
                   help="grid step on the simplex (default 1e-3)")
    _add_json_flag(p)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("tau", help="exact double-binomial table tau_m(j), j = 0..m")
    p.add_argument("m", type=int)
    _add_json_flag(p)
    p.set_defaults(func=_cmd_tau)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code is reserved for
        # invariant violations here, so remap to the validation exit.
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except SpecnormError as exc:
        _error(exc)
        return 1
    except OSError as exc:
        _error(exc)
        return 1
    except AssertionError as exc:
        _error(exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
