"""Command-line surface for the library.

Subcommands mirror the library modules: zeros, volume, expand, bounds,
coeffs, oracle, and validate.  Every command can emit JSON (stable
field order) or CSV (RFC 4180, header row); reals are printed with 17
significant digits so reruns with an identical configuration produce
byte-identical files.  Exit codes: 0 success, 1 validation or output
failure, 2 usage error.

Flags can be collected in a file and passed as @path (one token per
line).  The KOCHSPRAY_OUTPUT_DIR environment variable supplies the
directory for relative --output paths.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .expansion import (
    ExpansionModel,
    spray_parallel_volume_closed,
    square_generator,
    spray_counting,
    spray_counting_brute,
    table_prefactors,
    volume_expansion,
    weyl_term,
)
from .ifs import (
    LATTICE_A,
    SNOWFLAKE_AREA_FACTOR,
    SprayConfig,
    exponent_histogram,
    prefractal_boundary,
    spray_volume,
)
from .oracle import (
    distance_to_boundary,
    parallel_volume_estimate,
    spray_parallel_volume_estimate,
)
from .snowflake import (
    default_model,
    gamma_volume,
    generator_parallel_volume,
    snowflake_parallel_volume,
)
from .zeros import correspondence_check, similarity_dimension, zero_set

_A = LATTICE_A
OUTPUT_DIR_ENV = "KOCHSPRAY_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    """Everything a command run depends on; equal configs must yield
    byte-identical output."""

    command: str
    k1: int | None = None
    k2: int | None = None
    kind: str = "C"
    beta: float = 0.0
    epsilon: float | None = None
    ell_min: int = 0
    ell_max: int = 0
    target: str = "snowflake"
    suite: str = "all"
    tol: float = 0.01
    seed: int = 0
    budget: int = 1_000_000
    depth: int | None = None
    replicates: int = 8
    workers: int = 1
    base_length: float = 1.0
    fmt: str = "json"
    output: str | None = None


def _fmt_real(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite real in output: %r" % (x,))
    return format(x, ".17g")


def _json_token(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_real(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_token(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = (
            json.dumps(str(k)) + ": " + _json_token(v)
            for k, v in value.items()
        )
        return "{" + ", ".join(parts) + "}"
    raise TypeError("cannot serialize %r" % (type(value),))


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_real(value)
    return str(value)


def _render(payload: dict, columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _json_token(payload) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _write_output(text: str, output: str | None) -> int:
    if output is None:
        sys.stdout.write(text)
        return 0
    path = output
    if not os.path.isabs(path):
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = os.path.join(base, path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print("error: cannot write %s: %s" % (path, exc), file=sys.stderr)
        return 1
    return 0


def cmd_report(rc: RunConfig, payload: dict, columns: list[str], rows: list[dict]) -> int:
    """Render a command result in the configured format and place."""
    text = _render(payload, columns, rows, rc.fmt)
    return _write_output(text, rc.output)


def _require_config(rc: RunConfig) -> SprayConfig:
    if rc.k1 is None or rc.k2 is None:
        raise ValueError("this command needs --k1 and --k2")
    return SprayConfig(rc.k1, rc.k2)


def _cmd_zeros(rc: RunConfig) -> int:
    cfg = _require_config(rc)
    zs = zero_set(cfg.k1, cfg.k2, rc.kind)
    rows = [
        {
            "re": z.z.real,
            "im": z.z.imag,
            "folded_im": z.folded.imag,
            "residual": z.residual,
            "conjugate": z.conjugate,
        }
        for z in zs
    ]
    payload = {
        "command": "zeros",
        "k1": cfg.k1,
        "k2": cfg.k2,
        "kind": zs.kind,
        "similarity_dimension": zs.similarity_dimension,
        "strip_height": zs.strip_height,
        "zeros": rows,
    }
    return cmd_report(rc, payload, ["re", "im", "folded_im", "residual", "conjugate"], rows)


def _cmd_volume(rc: RunConfig) -> int:
    if rc.epsilon is None:
        raise ValueError("volume needs --epsilon")
    if rc.k1 is not None or rc.k2 is not None:
        cfg = _require_config(rc)
        value, err = generator_parallel_volume(cfg, rc.epsilon)
        k1, k2 = cfg.k1, cfg.k2
        base = None
    else:
        value, err = snowflake_parallel_volume(rc.epsilon, rc.base_length)
        k1 = k2 = None
        base = rc.base_length
    payload = {
        "command": "volume",
        "epsilon": rc.epsilon,
        "k1": k1,
        "k2": k2,
        "base_length": base,
        "value": value,
        "error_bound": err,
    }
    row = dict(payload)
    del row["command"]
    cols = ["epsilon", "k1", "k2", "base_length", "value", "error_bound"]
    return cmd_report(rc, payload, cols, [row])


def _cmd_expand(rc: RunConfig) -> int:
    cfg = _require_config(rc)
    if not 0.0 <= rc.beta < _A:
        raise ValueError("--beta must lie in [0, %.6f)" % _A)
    if rc.ell_max < rc.ell_min:
        raise ValueError("--ell-max must be >= --ell-min")
    rows = []
    for ell in range(rc.ell_min, rc.ell_max + 1):
        predicted = volume_expansion(cfg, ell, rc.beta)
        eps = math.exp(-_A * ell - rc.beta)
        est = spray_parallel_volume_estimate(
            cfg,
            eps,
            depth=rc.depth,
            budget=rc.budget,
            seed=rc.seed,
            replicates=rc.replicates,
            workers=rc.workers,
        )
        rows.append(
            {
                "ell": ell,
                "beta": rc.beta,
                "predicted": predicted,
                "oracle": est.value,
                "abs_err": abs(predicted - est.value),
            }
        )
    payload = {
        "command": "expand",
        "k1": cfg.k1,
        "k2": cfg.k2,
        "beta": rc.beta,
        "seed": rc.seed,
        "budget": rc.budget,
        "rows": rows,
    }
    return cmd_report(rc, payload, ["ell", "beta", "predicted", "oracle", "abs_err"], rows)


def _cmd_bounds(rc: RunConfig) -> int:
    cfg = _require_config(rc)
    model = ExpansionModel(cfg)
    dim = similarity_dimension(cfg.k1, cfg.k2)
    rows = [
        {
            "k1": cfg.k1,
            "k2": cfg.k2,
            "dimension": dim,
            "re": z.real,
            "im": z.imag,
            "sup_bound": bound,
        }
        for z, bound in model.counting_bound_table()
    ]
    payload = {
        "command": "bounds",
        "k1": cfg.k1,
        "k2": cfg.k2,
        "dimension": dim,
        "rows": rows,
    }
    cols = ["k1", "k2", "dimension", "re", "im", "sup_bound"]
    return cmd_report(rc, payload, cols, rows)


def _cmd_coeffs(rc: RunConfig) -> int:
    cfg = _require_config(rc)
    pre = table_prefactors(cfg)
    rows = []
    for name in ("z2", "z2_delta"):
        value, exact = pre[name]
        rows.append(
            {
                "name": name,
                "numerator": exact.numerator,
                "denominator": exact.denominator,
                "value": value,
            }
        )
    payload = {"command": "coeffs", "k1": cfg.k1, "k2": cfg.k2, "rows": rows}
    return cmd_report(rc, payload, ["name", "numerator", "denominator", "value"], rows)


def _cmd_oracle(rc: RunConfig) -> int:
    if rc.epsilon is None:
        raise ValueError("oracle needs --epsilon")
    if rc.target == "snowflake":
        est = parallel_volume_estimate(
            rc.epsilon,
            base_length=rc.base_length,
            depth=rc.depth,
            budget=rc.budget,
            seed=rc.seed,
            replicates=rc.replicates,
            workers=rc.workers,
        )
        k1 = k2 = None
    elif rc.target == "generator":
        cfg = _require_config(rc)
        est = parallel_volume_estimate(
            rc.epsilon,
            config=cfg,
            depth=rc.depth,
            budget=rc.budget,
            seed=rc.seed,
            replicates=rc.replicates,
            workers=rc.workers,
        )
        k1, k2 = cfg.k1, cfg.k2
    else:
        cfg = _require_config(rc)
        est = spray_parallel_volume_estimate(
            cfg,
            rc.epsilon,
            depth=rc.depth,
            budget=rc.budget,
            seed=rc.seed,
            replicates=rc.replicates,
            workers=rc.workers,
        )
        k1, k2 = cfg.k1, cfg.k2
    payload = {
        "command": "oracle",
        "target": rc.target,
        "epsilon": rc.epsilon,
        "k1": k1,
        "k2": k2,
        "base_length": rc.base_length,
        "value": est.value,
        "deterministic_bound": est.deterministic_bound,
        "stochastic_bound": est.stochastic_bound,
        "samples": est.samples,
        "depth": est.depth,
        "seed": rc.seed,
        "budget": rc.budget,
        "replicates": rc.replicates,
        "workers": rc.workers,
    }
    row = dict(payload)
    del row["command"]
    cols = [
        "target",
        "epsilon",
        "k1",
        "k2",
        "base_length",
        "value",
        "deterministic_bound",
        "stochastic_bound",
        "samples",
        "depth",
        "seed",
        "budget",
        "replicates",
        "workers",
    ]
    return cmd_report(rc, payload, cols, [row])


# --------------------------------------------------------------------
# validate: every module invariant, itemized.

_TABLE1_ZEROS = {
    (0, 0): [complex(-0.952455, 0.0)],
    (0, 6): [complex(-0.928326, 0.0), complex(-0.71134, 2.58082)],
    (6, 6): [
        complex(-0.888243, 0.0),
        complex(-0.839089, 1.34671),
        complex(-0.666227, 2.8596),
    ],
}


def _check_table1_zeros(rc: RunConfig):
    worst = 0.0
    worst_res = 0.0
    for (k1, k2), expected in _TABLE1_ZEROS.items():
        zs = zero_set(k1, k2, "C")
        got = [z.z for z in zs]
        for e in expected:
            gap = min(min(abs(g - e), abs(g.conjugate() - e)) for g in got)
            worst = max(worst, gap)
        worst_res = max(worst_res, max(z.residual for z in zs))
    ok = worst <= 1e-5 and worst_res <= 1e-10
    return ok, "max gap %.2e (tol 1e-5), max residual %.2e (tol 1e-10)" % (worst, worst_res)


def _check_correspondence(rc: RunConfig):
    worst = 0.0
    for k1 in range(7):
        for k2 in range(7):
            gap = correspondence_check(
                zero_set(k1, k2, "C"), zero_set(k1, k2, "P")
            )
            worst = max(worst, gap)
    return worst <= 1e-9, "max folded mismatch over 49 configs %.2e (tol 1e-9)" % worst


_TABLE2 = {
    (0, 0): ((-1, 22), (-2, 5)),
    (0, 6): ((-1, 82), (-10, 13)),
    (6, 6): ((-1, 142), (-22, 19)),
}


def _check_table2(rc: RunConfig):
    worst = 0.0
    for (k1, k2), (f2, f2d) in _TABLE2.items():
        pre = table_prefactors(SprayConfig(k1, k2))
        v2, e2 = pre["z2"]
        v2d, e2d = pre["z2_delta"]
        if (e2.numerator, e2.denominator) != f2:
            return False, "(%d,%d) z2 exact %s != %s" % (k1, k2, e2, f2)
        if (e2d.numerator, e2d.denominator) != f2d:
            return False, "(%d,%d) z2_delta exact %s != %s" % (k1, k2, e2d, f2d)
        worst = max(worst, abs(v2 - f2[0] / f2[1]), abs(v2d - f2d[0] / f2d[1]))
    return worst <= 1e-12, "exact rationals match, float gap %.2e (tol 1e-12)" % worst


def _check_breakpoints(rc: RunConfig):
    model = default_model()
    h = 1e-9
    worst = 0.0
    for b in (1.0 / 3.0, math.sqrt(3.0) / 9.0, 1.0 / 9.0, 3.0 ** -4.5):
        lo, le = model.parallel_volume(b - h, 1.0)
        hi, he = model.parallel_volume(b + h, 1.0)
        worst = max(worst, abs(hi - lo) - le - he)
    return worst <= 2e-8, "max breakpoint jump %.2e (tol 2e-8)" % worst


def _check_gamma_scaling(rc: RunConfig):
    worst = 0.0
    for i in range(20):
        eps = 10.0 ** (-1.0 - 2.5 * i / 19.0) / 9.0
        g1, e1 = gamma_volume(eps)
        g3, e3 = gamma_volume(3.0 * eps)
        worst = max(worst, abs(g1 - g3 / 9.0) - e1 - e3 / 9.0)
    return worst <= 0.0 or worst <= 1e-15, "max scaling defect beyond bounds %.2e" % worst


def _check_saturation(rc: RunConfig):
    model = default_model()
    full = SNOWFLAKE_AREA_FACTOR
    for eps in (0.34, 1.0 / 3.0 + 1e-9, 5.0):
        v, _ = model.parallel_volume(eps, 1.0)
        if v != full:
            return False, "V(%.3g) = %.17g != 2*sqrt(3)/5" % (eps, v)
    return True, "V(eps) == 2*sqrt(3)/5 for eps > 1/3"


def _check_spray_volume(rc: RunConfig):
    target = 18.0 * math.sqrt(3.0) / 5.0
    worst = 0.0
    for k1 in range(7):
        for k2 in range(7):
            cfg = SprayConfig(k1, k2)
            worst = max(worst, abs(spray_volume(cfg) - target))
            wd = abs(weyl_term(cfg) - spray_volume(cfg) / (4.0 * math.pi))
            worst = max(worst, wd)
    return worst <= 1e-12, "max defect over 49 configs %.2e (tol 1e-12)" % worst


def _check_renewal_reconstruction(rc: RunConfig):
    worst = 0.0
    for cfg in [(0, 0), (6, 6), (3, 1)]:
        for ell in (0, 2, 5, 8):
            for beta in (0.0, 0.5 * _A):
                eps = math.exp(-_A * ell - beta)
                closed, _ = spray_parallel_volume_closed(cfg, eps)
                pred = volume_expansion(cfg, ell, beta, include_alternating=True)
                worst = max(worst, abs(pred - closed) / (1.0 + abs(closed)))
    return worst <= 1e-9, "max relative reconstruction gap %.2e (tol 1e-9)" % worst


def _check_square_counting(rc: RunConfig):
    g = square_generator(1.0)
    for cfg in [(0, 0), (2, 1)]:
        for t in np.arange(2.0, 12.01, 0.5):
            a = spray_counting(g, cfg, float(t))
            b = spray_counting_brute(g, cfg, float(t))
            if a != b:
                return False, "(%d,%d) t=%.2f: %r != %r" % (*cfg, t, a, b)
    return True, "renewal sum equals brute enumeration for t <= 12"


def _check_square_remainder(rc: RunConfig):
    g = square_generator(1.0)
    worst = 0.0
    for cfg in [(0, 0), (2, 1)]:
        k1, k2 = cfg
        dim = similarity_dimension(k1, k2)
        hist = exponent_histogram(k1, k2)
        scale = 1.0 / (1.0 - sum(c * 3.0 ** -nu for nu, c in hist.items()))
        for t in np.arange(2.0, 12.01, 0.25):
            lead = g.weyl_area / (4.0 * math.pi) * math.exp(t) * scale
            r = (spray_counting(g, cfg, float(t)) - lead) * math.exp(-t * dim / 2.0)
            worst = max(worst, abs(r))
    return worst <= 1.5, "max normalized remainder %.3f (bound 1.5)" % worst


def _check_oracle_snowflake(rc: RunConfig):
    model = default_model()
    worst_gap = 0.0
    worst_rel = 0.0
    for eps in np.logspace(np.log10(1.5e-3), np.log10(1.0 / 3.0), 8):
        est = parallel_volume_estimate(
            float(eps), budget=rc.budget, seed=rc.seed
        )
        exact, _ = model.parallel_volume(float(eps), 1.0)
        tol = est.total_bound + 1e-4
        worst_gap = max(worst_gap, abs(exact - est.value) / tol)
        worst_rel = max(worst_rel, est.total_bound / est.value)
    ok = worst_gap <= 1.0 and worst_rel <= rc.tol
    return ok, "worst gap/bound %.2f, worst relative bound %.2e (tol %.2e)" % (
        worst_gap,
        worst_rel,
        rc.tol,
    )


def _check_oracle_spray(rc: RunConfig):
    worst = 0.0
    for cfg in [(0, 0), (6, 6)]:
        eps = math.exp(-_A * 6)
        est = spray_parallel_volume_estimate(
            cfg, eps, budget=rc.budget, seed=rc.seed
        )
        closed, cb = spray_parallel_volume_closed(cfg, eps)
        gap = abs(est.value - closed)
        worst = max(worst, gap / (est.total_bound + cb + 1e-4))
    return worst <= 1.0, "worst gap/bound %.2f" % worst


def _check_oracle_honesty(rc: RunConfig):
    b1 = 64 * 4096
    e1 = parallel_volume_estimate(
        0.05, budget=b1, seed=rc.seed, replicates=64, strata=4096
    )
    e2 = parallel_volume_estimate(
        0.05, budget=4 * b1, seed=rc.seed, replicates=64, strata=4096
    )
    ratio = e1.stochastic_bound / e2.stochastic_bound
    return 1.6 <= ratio <= 2.4, "4x budget shrink ratio %.3f (want 2.0 +- 20%%)" % ratio


def _check_oracle_saturated_spray(rc: RunConfig):
    est = spray_parallel_volume_estimate((2, 5), 10.0)
    target = 18.0 * math.sqrt(3.0) / 5.0
    ok = (
        est.value == target
        and est.deterministic_bound == 0.0
        and est.stochastic_bound == 0.0
    )
    return ok, "saturated spray estimate %.17g (exact %.17g)" % (est.value, target)


def _check_distance_basics(rc: RunConfig):
    b0 = prefractal_boundary(1.0, 0)
    d_vertex = distance_to_boundary((0.0, 0.0), b0)
    center = (0.5, math.sqrt(3.0) / 6.0)
    d_center = distance_to_boundary(center, b0)
    if d_vertex != 0.0:
        return False, "vertex distance %.3e != 0" % d_vertex
    if abs(d_center - math.sqrt(3.0) / 6.0) > 1e-12:
        return False, "incenter distance %.17g != sqrt(3)/6" % d_center
    probes = [(-0.3, -0.3), (1.4, 0.5), (0.5, 1.1), (0.5, -0.4)]
    prev = [distance_to_boundary(p, b0) for p in probes]
    for depth in (1, 2, 3, 4):
        b = prefractal_boundary(1.0, depth)
        cur = [distance_to_boundary(p, b) for p in probes]
        if any(c > p + 1e-12 for c, p in zip(cur, prev)):
            return False, "exterior distance grew at depth %d" % depth
        prev = cur
    return True, "vertex 0, incenter sqrt(3)/6, exterior distances decrease"


_SUITES = {
    "zeros": [
        ("table1-zero-values", _check_table1_zeros),
        ("zero-correspondence", _check_correspondence),
    ],
    "coeffs": [
        ("table2-prefactors", _check_table2),
    ],
    "volume": [
        ("volume-breakpoints", _check_breakpoints),
        ("gamma-scaling", _check_gamma_scaling),
        ("volume-saturation", _check_saturation),
    ],
    "expansion": [
        ("spray-volume-invariance", _check_spray_volume),
        ("renewal-reconstruction", _check_renewal_reconstruction),
        ("square-counting-exact", _check_square_counting),
        ("square-remainder-bounded", _check_square_remainder),
    ],
    "oracle": [
        ("oracle-snowflake-agreement", _check_oracle_snowflake),
        ("oracle-spray-agreement", _check_oracle_spray),
        ("oracle-budget-honesty", _check_oracle_honesty),
        ("oracle-spray-saturated", _check_oracle_saturated_spray),
        ("distance-oracle-basics", _check_distance_basics),
    ],
}


def _cmd_validate(rc: RunConfig) -> int:
    if rc.suite == "all":
        checks = [c for suite in _SUITES.values() for c in suite]
    else:
        checks = _SUITES[rc.suite]
    results = []
    all_ok = True
    for name, fn in checks:
        try:
            ok, detail = fn(rc)
        except Exception as exc:  # itemize rather than abort the suite
            ok, detail = False, "raised %s: %s" % (type(exc).__name__, exc)
        all_ok = all_ok and ok
        results.append({"name": name, "passed": ok, "detail": detail})
        print("%s %s: %s" % ("PASS" if ok else "FAIL", name, detail), file=sys.stderr)
    payload = {
        "command": "validate",
        "suite": rc.suite,
        "tol": rc.tol,
        "seed": rc.seed,
        "budget": rc.budget,
        "passed": all_ok,
        "results": results,
    }
    code = cmd_report(rc, payload, ["name", "passed", "detail"], results)
    if code != 0:
        return code
    return 0 if all_ok else 1


_HANDLERS = {
    "zeros": _cmd_zeros,
    "volume": _cmd_volume,
    "expand": _cmd_expand,
    "bounds": _cmd_bounds,
    "coeffs": _cmd_coeffs,
    "oracle": _cmd_oracle,
    "validate": _cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kochspray",
        description="Inner parallel volumes and spectral-pole data for "
        "lattice sprays of Koch snowflakes.",
        fromfile_prefix_chars="@",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=False):
        p.add_argument("--k1", type=int, choices=range(7), default=None,
                       required=config_required)
        p.add_argument("--k2", type=int, choices=range(7), default=None,
                       required=config_required)
        p.add_argument("--format", dest="fmt", choices=["json", "csv"],
                       default="json")
        p.add_argument("--output", default=None,
                       help="output file (relative paths resolve against "
                       "$%s)" % OUTPUT_DIR_ENV)

    p = sub.add_parser("zeros", help="complex pole sets of one configuration")
    add_common(p, config_required=True)
    p.add_argument("--kind", choices=["C", "P"], default="C")

    p = sub.add_parser("volume", help="closed-form inner parallel volume")
    add_common(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--base-length", dest="base_length", type=float, default=1.0)

    p = sub.add_parser("expand", help="volume expansion sweep vs the oracle")
    add_common(p, config_required=True)
    p.add_argument("--ell-min", dest="ell_min", type=int, default=0)
    p.add_argument("--ell-max", dest="ell_max", type=int, default=6)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=400_000)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--replicates", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bounds", help="counting-coefficient bounds per pole")
    add_common(p, config_required=True)

    p = sub.add_parser("coeffs", help="exact expansion prefactors")
    add_common(p, config_required=True)

    p = sub.add_parser("oracle", help="brute-force geometric estimate")
    add_common(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--target", choices=["snowflake", "generator", "spray"],
                   default="snowflake")
    p.add_argument("--base-length", dest="base_length", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--replicates", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("validate", help="run the property suites")
    add_common(p)
    p.add_argument("--suite", choices=sorted(_SUITES) + ["all"], default="all")
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--budget", type=int, default=400_000)

    return parser


def cmd_dispatch(argv) -> int:
    """Parse argv (no program name) and run one command."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    fields = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {k: v for k, v in vars(ns).items() if k in fields and v is not None}
    rc = RunConfig(**kwargs)
    try:
        return _HANDLERS[rc.command](rc)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        print("run 'kochspray %s --help' for usage" % rc.command, file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return cmd_dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
