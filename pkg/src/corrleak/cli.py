"""Command-line front end: load a scenario, run an analysis, emit CSV/JSON.

Commands::

    analyze        info summary, golden syndromes, prototype-condition gaps
    curves         min/max leakage grid plus the Z-observation trace
    verify-bounds  identity residuals and bound verdicts over random patterns
    region         admissible-rate-region membership for scenario queries
    cipher-sim     measured cipher security levels per key branch
    decode         joint decode of a syndrome pair; candidates as hex strings

Every command takes ``--scenario`` (a path or a bundled name such as
``reference_k7``), ``--out``, ``--format csv|json`` and ``--verbose``.
``--seed`` only affects the randomized pattern sweep of ``verify-bounds``;
all reproduction commands are deterministic, and identical scenario input
yields byte-identical output.

Exit status: 0 on success, 2 on a validation/usage error, 3 when an
enumeration would exceed the support guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .cipher import (
    RegionQuery,
    desk_scheme,
    guaranteed_level,
    measure_security,
    region_membership,
    security_verdict,
)
from .errors import CapacityError, ToolkitError, UsageError, ValidationError
from .leakage import WiretapAnalyzer, grid_curve_rows, sample_patterns, z_trace_rows
from .seqmodel import build_model, sequence_summary
from .swcodec import (
    PartitionScheme,
    Syndrome,
    encode_x,
    encode_y,
    joint_decode,
    prototype_condition_report,
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _write_csv(path: Path, fieldnames, rows, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(fieldnames))
    for row in rows:
        lines.append(",".join(_fmt(row[name]) for name in fieldnames))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_scenario(ref: str) -> dict:
    """Load a scenario from a file path or a bundled name."""
    p = Path(ref)
    if p.exists():
        text = p.read_text()
    else:
        name = ref if ref.endswith(".json") else f"{ref}.json"
        try:
            text = resources.files("corrleak.scenarios").joinpath(name).read_text()
        except (FileNotFoundError, ModuleNotFoundError) as exc:
            raise ValidationError(f"scenario: {ref!r} is neither a file nor a bundled name") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scenario: malformed JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ValidationError("scenario: top level must be a JSON object")
    return data


class _Context:
    """Parsed scenario pieces shared by the commands."""

    def __init__(self, scenario: dict, verbose: bool):
        self.scenario = scenario
        self.verbose = verbose
        if "model" not in scenario:
            raise ValidationError("scenario.model: missing")
        if "scheme" not in scenario:
            raise ValidationError("scenario.scheme: missing")
        self.model = build_model(scenario["model"])
        self.scheme = PartitionScheme.from_json(scenario["scheme"])
        self._analyzer = None

    @property
    def analyzer(self) -> WiretapAnalyzer:
        if self._analyzer is None:
            self.log("building enumeration engine")
            self._analyzer = WiretapAnalyzer(self.scheme, self.model)
        return self._analyzer

    def sweep(self, key: str, default):
        return self.scenario.get("sweep", {}).get(key, default)

    def log(self, msg: str):
        if self.verbose:
            print(f"corrleak: {msg}", file=sys.stderr)


def _golden_comments(ctx: _Context) -> list[str]:
    golden = ctx.scenario.get("golden")
    if not golden:
        return []
    x = [int(b) for b in golden["x"]]
    y = [int(b) for b in golden["y"]]
    tx = encode_x(x, ctx.scheme).as_string()
    ty = encode_y(y, ctx.scheme).as_string()
    return [f"x={golden['x']} y={golden['y']}", f"t_x={tx} t_y={ty}"]


def cmd_analyze(ctx: _Context, out: Path, fmt: str) -> list[Path]:
    comments = [f"scenario={ctx.scenario.get('name', '?')}"] + _golden_comments(ctx)
    info = sequence_summary(ctx.model)
    K = ctx.model.K
    summary_rows = [
        {"quantity": name, "per_symbol_bits": val, "total_bits": val * K}
        for name, val in vars(info).items()
    ]
    ctx.log("evaluating prototype-code conditions")
    cond_rows = [
        {
            "label": r.label,
            "lhs_name": r.lhs_name,
            "lhs_bits": r.lhs_bits,
            "rhs_name": r.rhs_name,
            "rhs_bits": r.rhs_bits,
            "gap": r.gap,
        }
        for r in prototype_condition_report(ctx.scheme, ctx.model)
    ]
    if fmt == "json":
        path = out / "analyze.json"
        _write_json(
            path,
            {"header": comments, "summary": summary_rows, "conditions": cond_rows},
        )
        return [path]
    p1 = out / "analyze.csv"
    _write_csv(p1, ["quantity", "per_symbol_bits", "total_bits"], summary_rows, comments)
    p2 = out / "conditions.csv"
    _write_csv(
        p2, ["label", "lhs_name", "lhs_bits", "rhs_name", "rhs_bits", "gap"], cond_rows, comments
    )
    return [p1, p2]


def cmd_curves(ctx: _Context, out: Path, fmt: str) -> list[Path]:
    ctx.log("sweeping the wiretap grid against the brute-force oracle")
    rows = grid_curve_rows(
        ctx.analyzer, int(ctx.sweep("mu_tx_max", 5)), int(ctx.sweep("mu_ty_max", 5))
    )
    trace_cfg = ctx.scenario.get("z_trace", {})
    rows += z_trace_rows(
        ctx.analyzer,
        [int(v) for v in ctx.sweep("mu_z_values", range(ctx.model.K + 1))],
        h_xy=trace_cfg.get("h_xy_bits"),
        h_x_given_y=trace_cfg.get("h_x_given_y_bits"),
    )
    dicts = [r.as_dict() for r in rows]
    fields = list(dicts[0].keys())
    disagree = sorted(
        {
            (r.mu_tx, r.mu_ty)
            for r in rows
            if abs(r.formula_max - r.formula_max_verbatim) > 1e-12
        }
    )
    comments = [f"scenario={ctx.scenario.get('name', '?')}"]
    comments.append(
        "max-formula variants disagree at: "
        + (";".join(f"({a},{b})" for a, b in disagree) if disagree else "none")
        + "; see variant_match for the oracle-confirmed variant"
    )
    if fmt == "json":
        path = out / "curves.json"
        _write_json(path, {"header": comments, "rows": dicts})
        return [path]
    path = out / "curves.csv"
    _write_csv(path, fields, dicts, comments)
    return [path]


def cmd_verify_bounds(ctx: _Context, out: Path, fmt: str, seed: int) -> list[Path]:
    count = int(ctx.sweep("random_patterns", 100))
    mu_values = [int(v) for v in ctx.sweep("mu_z_values", range(ctx.model.K + 1))]
    patterns = sample_patterns(ctx.scheme, count, seed, mu_values)
    if not patterns:
        raise ValidationError("scenario.sweep.random_patterns: sweep produced no patterns")
    ctx.log(f"checking {len(patterns)} patterns")
    rows = []
    for i, pattern in enumerate(patterns):
        check = ctx.analyzer.pattern_checks(pattern)
        for target, bound, residual in (
            ("y", check.bound_y, check.residual_y),
            ("x", check.bound_x, check.residual_x),
        ):
            rows.append(
                {
                    "pattern": i,
                    "tx_positions": ";".join(str(p) for p in sorted(pattern.tx_positions)),
                    "ty_positions": ";".join(str(p) for p in sorted(pattern.ty_positions)),
                    "mu_z": pattern.mu,
                    "target": target,
                    "lhs_bits": bound.lhs_bits,
                    "rhs_bits": bound.rhs_bits,
                    "delta": bound.delta,
                    "holds": bound.holds,
                    "identity_residual": residual,
                }
            )
    comments = [f"scenario={ctx.scenario.get('name', '?')}", f"seed={seed}"]
    if fmt == "json":
        path = out / "bounds.json"
        _write_json(path, {"header": comments, "rows": rows})
        return [path]
    path = out / "bounds.csv"
    _write_csv(path, list(rows[0].keys()), rows, comments)
    return [path]


def cmd_region(ctx: _Context, out: Path, fmt: str) -> list[Path]:
    queries = ctx.scenario.get("region_queries", [])
    if not queries:
        raise ValidationError("scenario.region_queries: missing or empty")
    info = sequence_summary(ctx.model)
    rows = []
    for entry in queries:
        try:
            case = entry["case"]
            q = RegionQuery.from_json(entry["query"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"scenario.region_queries: bad entry ({exc})") from exc
        verdict = region_membership(q, case, info)
        flags = {c.name: c.satisfied for c in verdict.constraints}
        rows.append(
            {
                "case": case,
                **{k: getattr(q, k) for k in (
                    "r_x", "r_y", "r_kx", "r_ky", "h_x", "h_y", "h_xy",
                    "alpha_cx", "alpha_cy", "alpha_z", "i_xyz",
                )},
                "status": verdict.status,
                "rate_x_ok": flags.get("r_x >= h(x|y)", ""),
                "rate_y_ok": flags.get("r_y >= h(y|x)", ""),
                "rate_sum_ok": flags.get("r_x + r_y >= h(x,y)", ""),
                "key_sum_ok": next(
                    (ok for name, ok in flags.items() if name.startswith("r_kx + r_ky")), ""
                ),
                "violated": ";".join(verdict.violated),
                "domain_note": verdict.domain_note,
            }
        )
    comments = [f"scenario={ctx.scenario.get('name', '?')}"]
    if fmt == "json":
        path = out / "region.json"
        _write_json(path, {"header": comments, "rows": rows})
        return [path]
    path = out / "region.csv"
    _write_csv(path, list(rows[0].keys()), rows, comments)
    return [path]


def cmd_decode(ctx: _Context, out: Path, fmt: str, tx: str, ty: str) -> list[Path]:
    s = ctx.scheme
    if tx is None or ty is None:
        golden = ctx.scenario.get("golden")
        if not golden:
            raise ValidationError("decode: pass --tx/--ty or add scenario.golden")
        tx = encode_x([int(b) for b in golden["x"]], s).as_string()
        ty = encode_y([int(b) for b in golden["y"]], s).as_string()
    if len(tx) != s.syndrome_len("x") or any(c not in "01" for c in tx):
        raise UsageError(f"--tx must be {s.syndrome_len('x')} bits of 0/1, got {tx!r}")
    if len(ty) != s.syndrome_len("y") or any(c not in "01" for c in ty):
        raise UsageError(f"--ty must be {s.syndrome_len('y')} bits of 0/1, got {ty!r}")
    result = joint_decode(
        Syndrome(tuple(int(b) for b in tx), s.x_info_len, s.parity_len),
        Syndrome(tuple(int(b) for b in ty), s.y_info_len, s.parity_len),
        ctx.model,
        s,
    )
    rows = [
        {
            "candidate": i,
            "x_bits": "".join(str(b) for b in x),
            "y_bits": "".join(str(b) for b in y),
            "x_hex": format(int("".join(str(b) for b in x), 2), "#04x"),
            "y_hex": format(int("".join(str(b) for b in y), 2), "#04x"),
        }
        for i, (x, y) in enumerate(result.candidates)
    ]
    comments = [
        f"scenario={ctx.scenario.get('name', '?')}",
        f"t_x={tx} t_y={ty} candidates={len(rows)} unique={str(result.unique).lower()}",
    ]
    if fmt == "json":
        path = out / "decode.json"
        _write_json(path, {"header": comments, "rows": rows})
        return [path]
    path = out / "decode.csv"
    _write_csv(path, ["candidate", "x_bits", "y_bits", "x_hex", "y_hex"], rows, comments)
    return [path]


def cmd_cipher_sim(ctx: _Context, out: Path, fmt: str) -> list[Path]:
    cfg = ctx.scenario.get("cipher", {})
    mu = int(cfg.get("mu", 0))
    branches = cfg.get("branches", ["none", "reused-pad", "independent-pads"])
    if not branches:
        raise ValidationError("scenario.cipher.branches: must name at least one branch")
    info = sequence_summary(ctx.model)
    target = cfg.get("h_target_xy")
    guaranteed = ""
    if target is not None:
        guaranteed = guaranteed_level(
            float(target),
            float(cfg.get("alpha_cx", 0.0)),
            float(cfg.get("alpha_cy", 0.0)),
            float(cfg.get("i_xyz", 0.0)),
        )
    rows = []
    for branch in branches:
        ctx.log(f"measuring branch {branch}")
        scheme = desk_scheme(ctx.scheme, branch=branch)
        m = measure_security(scheme, ctx.model, ctx.scheme, mu=mu)
        rows.append(
            {
                "branch": branch,
                "mu_z": mu,
                "h_x_hat": m.h_x_hat,
                "h_y_hat": m.h_y_hat,
                "h_xy_hat": m.h_xy_hat,
                "key_bits_per_symbol": m.key_bits,
                "h_xy_upper": info.h_xy,
                "guaranteed_xy": guaranteed,
                "meets_target": (
                    security_verdict(m.h_xy_hat, guaranteed) if target is not None else ""
                ),
            }
        )
    comments = [f"scenario={ctx.scenario.get('name', '?')}"]
    if fmt == "json":
        path = out / "cipher.json"
        _write_json(path, {"header": comments, "rows": rows})
        return [path]
    path = out / "cipher.csv"
    _write_csv(path, list(rows[0].keys()), rows, comments)
    return [path]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrleak",
        description="Exact leakage analysis for correlated sources over an eavesdropped channel",
    )
    parser.add_argument(
        "command",
        choices=["analyze", "curves", "verify-bounds", "region", "cipher-sim", "decode"],
    )
    parser.add_argument("--scenario", required=True, help="scenario file or bundled name")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    parser.add_argument("--tx", help="decode: syndrome bits transmitted for X")
    parser.add_argument("--ty", help="decode: syndrome bits transmitted for Y")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        ctx = _Context(scenario, args.verbose)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "analyze":
            files = cmd_analyze(ctx, out, args.format)
        elif args.command == "curves":
            files = cmd_curves(ctx, out, args.format)
        elif args.command == "verify-bounds":
            files = cmd_verify_bounds(ctx, out, args.format, args.seed)
        elif args.command == "region":
            files = cmd_region(ctx, out, args.format)
        elif args.command == "decode":
            files = cmd_decode(ctx, out, args.format, args.tx, args.ty)
        else:
            files = cmd_cipher_sim(ctx, out, args.format)
    except CapacityError as exc:
        print(f"corrleak: capacity guard: {exc}", file=sys.stderr)
        return 3
    except ToolkitError as exc:
        print(f"corrleak: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"corrleak: {exc}", file=sys.stderr)
        return 2
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
