"""Command-line front end.

Subcommands
    compute   evaluate a partition function by one route or by all routes of
              the chosen model, cross-checking the results pairwise
    check     run a named verification suite: symmetry, recursion, character,
              dybe, degeneration, appendix, or all
    bench     time every route of a model over sizes n = 1..cap and report
              term counts

Complex flags accept plain reals, `a+bi` forms, the token `i`, and
`[re, im]` pairs.  Seeded parameter lists are drawn componentwise from the
box [0.1, 0.9] + i*[-0.05, 0.05] using numpy's PCG64 generator, so a seed
pins the exact inputs across machines.

Exit status: 0 pass, 1 parameter or domain error, 2 tolerance failure.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
import time
from dataclasses import dataclass
from math import factorial

import numpy as np

from .closedform import recursion_factor, weight_kernel, z_6v_sum, \
    z_izergin, z_sos_elliptic, z_trig_sos
from .ellpoly import Character, interpolate, membership_residual, \
    addition_formula_residual, qj_interpolation_residual, theta_product_poly, \
    vandermonde_ratio
from .enumeration import asm_number, column_transfer_6v, \
    column_transfer_trig, column_transfer_z, enumerate_6v, enumerate_sos, \
    enumerate_trig_sos
from .errors import DwbcError, InvalidParameter
from .rmatrix import EllipticParams, TrigParams, dybe_residual, \
    dybe_residual_trig, gauge_rescale, sixv_rmatrix, sos_rmatrix, \
    trig_nondyn_rmatrix, trig_sos_rmatrix, ybe_residual_nondyn
from .theta import ThetaContext

MODELS = ("sos-elliptic", "sos-trig", "six-vertex")
ROUTES = ("enumerate", "transfer", "sum", "determinant", "all")
SUITES = ("symmetry", "recursion", "character", "dybe", "degeneration",
          "appendix", "all")
PROXY_TOL = 1e-6
ENUM_CAP = 6
SUM_CAP = 9

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "config", "results", "comparisons", "verdict",
                 "residuals"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": ["compute", "check", "bench"]},
        "config": {"type": "object"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["route", "value", "time_ms"],
                "additionalProperties": False,
                "properties": {
                    "route": {"type": "string"},
                    "value": {"type": "array", "items": {"type": "number"},
                              "minItems": 2, "maxItems": 2},
                    "time_ms": {"type": "number"},
                    "n": {"type": "integer"},
                    "terms": {"type": "number"},
                },
            },
        },
        "comparisons": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "b", "rel_diff"],
                "additionalProperties": False,
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "rel_diff": {"type": "number"},
                },
            },
        },
        "verdict": {"enum": ["pass", "fail"]},
        "residuals": {"type": "object",
                      "additionalProperties": {"type": "number"}},
    },
}


def parse_complex(text: str) -> complex:
    """Parse `0.3`, `0.3+0.8i`, `i`, `-i`, or `[re, im]`."""
    s = text.strip().replace(" ", "")
    if s.startswith("[") and s.endswith("]"):
        parts = json.loads(s)
        if not isinstance(parts, list) or len(parts) != 2:
            raise ValueError(f"expected [re, im], got {text!r}")
        return complex(float(parts[0]), float(parts[1]))
    s = s.replace("i", "j")
    s = re.sub(r"(?<![\dj.])j", "1j", s)  # bare j forms: j, +j, 1+j, ...
    return complex(s)


@dataclass
class RunConfig:
    """Everything one invocation needs; a given config (with its seed) fixes
    the numerical output exactly."""

    command: str
    model: str = "six-vertex"
    route: str = "all"
    suite: str = "all"
    n: int = 3
    seed: int = 0
    tau: complex = 1j
    lam: complex = 0.31
    hbar: complex = 0.17
    q: complex = 1.3
    mu: complex = 0.7
    u: list | None = None
    v: list | None = None
    z: list | None = None
    w: list | None = None
    tolerance: float = 1e-9
    output_format: str = "text"
    parallel: bool = False

    def validate(self) -> None:
        if self.n < 1:
            raise InvalidParameter(f"n must be >= 1, got {self.n}")
        if self.tolerance <= 0:
            raise InvalidParameter(f"tolerance must be positive, got {self.tolerance}")
        if self.route == "determinant" and self.model != "six-vertex":
            raise InvalidParameter(
                "route 'determinant' applies only to model 'six-vertex'")
        if self.model == "sos-trig" and self.route == "determinant":
            raise InvalidParameter(
                "model 'sos-trig' has no determinant route")
        for name in ("u", "v", "z", "w"):
            lst = getattr(self, name)
            if lst is not None and len(lst) != self.n:
                raise InvalidParameter(
                    f"--{name} lists {len(lst)} values but n = {self.n}")
        pair = ("u", "v") if self.model == "sos-elliptic" else ("z", "w")
        given = [name for name in pair if getattr(self, name) is not None]
        if len(given) == 1:
            raise InvalidParameter(
                f"--{pair[0]} and --{pair[1]} must be given together")


def _draw_box(rng, n: int) -> list:
    re_part = rng.uniform(0.1, 0.9, n)
    im_part = rng.uniform(-0.05, 0.05, n)
    return [complex(a, b) for a, b in zip(re_part, im_part)]


def draw_parameters(n: int, seed: int) -> tuple:
    """Two reproducible length-n lists from the documented box."""
    rng = np.random.default_rng(seed)
    return _draw_box(rng, n), _draw_box(rng, n)


def _rel(a: complex, b: complex) -> float:
    a, b = complex(a), complex(b)
    denom = max(abs(a), abs(b))
    return abs(a - b) / denom if denom > 0 else 0.0


def _rel_matrix(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(a))), 1e-300)
    return float(np.max(np.abs(a - b))) / scale


def _timed(fn):
    t0 = time.perf_counter()
    val = fn()
    return val, (time.perf_counter() - t0) * 1000.0


def _cjson(x: complex) -> list:
    x = complex(x)
    return [x.real, x.imag]


def _config_echo(cfg: RunConfig) -> dict:
    out = {
        "command": cfg.command, "model": cfg.model, "n": cfg.n,
        "seed": cfg.seed, "tolerance": cfg.tolerance,
        "format": cfg.output_format, "parallel": cfg.parallel,
        "tau": _cjson(cfg.tau), "lambda": _cjson(cfg.lam),
        "hbar": _cjson(cfg.hbar), "q": _cjson(cfg.q), "mu": _cjson(cfg.mu),
    }
    if cfg.command == "compute":
        out["route"] = cfg.route
    if cfg.command == "check":
        out["suite"] = cfg.suite
    for name in ("u", "v", "z", "w"):
        lst = getattr(cfg, name)
        if lst is not None:
            out[name] = [_cjson(x) for x in lst]
    return out


def _elliptic_setup(cfg: RunConfig):
    ctx = ThetaContext(cfg.tau)
    if cfg.u is not None:
        u, v = cfg.u, cfg.v
    else:
        u, v = draw_parameters(cfg.n, cfg.seed)
    return ctx, EllipticParams(u, v, cfg.lam, cfg.hbar)


def _trig_setup(cfg: RunConfig, with_mu: bool) -> TrigParams:
    if cfg.z is not None:
        z, w = cfg.z, cfg.w
    else:
        z, w = draw_parameters(cfg.n, cfg.seed)
    return TrigParams(z, w, cfg.q, cfg.mu if with_mu else None)


def _compute_routes(cfg: RunConfig) -> list:
    """(name, thunk) pairs for the routes of cfg.model admitted at size n."""
    n = cfg.n
    want_all = cfg.route == "all"
    routes = []
    if cfg.model == "sos-elliptic":
        ctx, p = _elliptic_setup(cfg)
        cfg.u, cfg.v = list(p.u), list(p.v)
        cands = [
            ("enumerate", n <= ENUM_CAP,
             lambda: enumerate_sos(ctx, p, parallel=cfg.parallel)),
            ("transfer", n <= ENUM_CAP, lambda: column_transfer_z(ctx, p)),
            ("sum", n <= SUM_CAP,
             lambda: z_sos_elliptic(ctx, p, parallel=cfg.parallel)),
        ]
    elif cfg.model == "sos-trig":
        p = _trig_setup(cfg, with_mu=True)
        cfg.z, cfg.w = list(p.z), list(p.w)
        cands = [
            ("enumerate", n <= ENUM_CAP,
             lambda: enumerate_trig_sos(p, parallel=cfg.parallel)),
            ("transfer", n <= ENUM_CAP, lambda: column_transfer_trig(p)),
            ("sum", n <= SUM_CAP, lambda: z_trig_sos(p, parallel=cfg.parallel)),
        ]
    else:
        p = _trig_setup(cfg, with_mu=False)
        cfg.z, cfg.w = list(p.z), list(p.w)
        cands = [
            ("enumerate", n <= ENUM_CAP,
             lambda: enumerate_6v(p, parallel=cfg.parallel)),
            ("transfer", n <= ENUM_CAP, lambda: column_transfer_6v(p)),
            ("determinant", True, lambda: z_izergin(p)),
            ("sum", n <= SUM_CAP, lambda: z_6v_sum(p, parallel=cfg.parallel)),
        ]
    for name, fits, thunk in cands:
        if want_all:
            if fits:
                routes.append((name, thunk))
        elif name == cfg.route:
            routes.append((name, thunk))  # over-cap single route raises SizeCap
    if not routes:
        raise InvalidParameter(
            f"model '{cfg.model}' has no route '{cfg.route}' at n = {n}")
    return routes


def cmd_compute(cfg: RunConfig):
    routes = _compute_routes(cfg)
    results = []
    values = {}
    for name, thunk in routes:
        val, ms = _timed(thunk)
        values[name] = val
        results.append({"route": name, "value": _cjson(val), "time_ms": ms})
    comparisons = []
    names = [name for name, _ in routes]
    worst = 0.0
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            d = _rel(values[names[i]], values[names[j]])
            worst = max(worst, d)
            comparisons.append({"a": names[i], "b": names[j], "rel_diff": d})
    verdict = "pass" if worst <= cfg.tolerance else "fail"
    report = {
        "command": "compute", "config": _config_echo(cfg), "results": results,
        "comparisons": comparisons, "verdict": verdict, "residuals": {},
    }
    return report, (0 if verdict == "pass" else 2)


# ---------------------------------------------------------------------------
# check suites: each returns a list of (name, residual, tolerance) rows.

def _suite_symmetry(cfg: RunConfig) -> list:
    ctx = ThetaContext(cfg.tau)
    rng = np.random.default_rng(cfg.seed)
    n = max(2, min(cfg.n, 4))
    u, v = _draw_box(rng, n), _draw_box(rng, n)
    base = z_sos_elliptic(ctx, EllipticParams(u, v, cfg.lam, cfg.hbar))
    rows = []
    for t in range(3):
        pu = rng.permutation(n)
        zu = z_sos_elliptic(ctx, EllipticParams([u[k] for k in pu], v,
                                                cfg.lam, cfg.hbar))
        rows.append((f"symmetry.u_perm_{t}", _rel(zu, base), cfg.tolerance))
        pv = rng.permutation(n)
        zv = z_sos_elliptic(ctx, EllipticParams(u, [v[k] for k in pv],
                                                cfg.lam, cfg.hbar))
        rows.append((f"symmetry.v_perm_{t}", _rel(zv, base), cfg.tolerance))
    return rows


def _suite_recursion(cfg: RunConfig) -> list:
    ctx = ThetaContext(cfg.tau)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for m in range(2, max(2, min(cfg.n, 5)) + 1):
        u, v = _draw_box(rng, m), _draw_box(rng, m)
        u[m - 1] = v[m - 1] - cfg.hbar
        p = EllipticParams(u, v, cfg.lam, cfg.hbar)
        sub = EllipticParams(u[:m - 1], v[:m - 1], cfg.lam, cfg.hbar)
        lhs = z_sos_elliptic(ctx, p)
        rhs = recursion_factor(ctx, p) * z_sos_elliptic(ctx, sub)
        rows.append((f"recursion.n{m}", _rel(lhs, rhs), cfg.tolerance))
    return rows


def _suite_character(cfg: RunConfig) -> list:
    ctx = ThetaContext(cfg.tau)
    rng = np.random.default_rng(cfg.seed)
    n = max(1, min(cfg.n, 3))
    u, v = _draw_box(rng, n), _draw_box(rng, n)
    lam, hbar = cfg.lam, cfg.hbar
    rows = []
    for i in range(n):
        def f_u(x, i=i):
            uu = list(u)
            uu[i] = x
            return z_sos_elliptic(ctx, EllipticParams(uu, v, lam, hbar))

        chi = Character(n, lam + sum(v))
        res = membership_residual(ctx, f_u, chi, samples=5,
                                  rng=np.random.default_rng(cfg.seed + 11 + i))
        rows.append((f"character.u{i + 1}", res, cfg.tolerance))
    for i in range(n):
        def f_v(x, i=i):
            vv = list(v)
            vv[i] = x
            return z_sos_elliptic(ctx, EllipticParams(u, vv, lam, hbar))

        chi = Character(n, -lam + sum(u))
        res = membership_residual(ctx, f_v, chi, samples=5,
                                  rng=np.random.default_rng(cfg.seed + 41 + i))
        rows.append((f"character.v{i + 1}", res, cfg.tolerance))
    return rows


def _suite_dybe(cfg: RunConfig) -> list:
    ctx = ThetaContext(cfg.tau)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for t in range(5):
        t1, t2, t3 = _draw_box(rng, 3)
        res = dybe_residual(ctx, t1, t2, t3, cfg.lam, cfg.hbar)
        rows.append((f"dybe.elliptic_{t}", res, cfg.tolerance))
    for t in range(5):
        z1, z2, z3 = _draw_box(rng, 3)
        res = dybe_residual_trig(z1, z2, z3, cfg.mu, cfg.q)
        rows.append((f"dybe.trig_{t}", res, cfg.tolerance))
    for t in range(2):
        z1, z2, z3 = _draw_box(rng, 3)
        res = ybe_residual_nondyn(z1, z2, z3, cfg.q)
        rows.append((f"ybe.nondyn_{t}", res, cfg.tolerance))
    return rows


def _suite_degeneration(cfg: RunConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    lam, hbar = cfg.lam, cfg.hbar
    q = cmath.exp(1j * math.pi * complex(hbar))
    mu = cmath.exp(2j * math.pi * complex(lam))
    ctx40 = ThetaContext(40j)
    rows = []

    # entrywise R-matrix chain at a random spectral point
    u0, v0 = _draw_box(rng, 2)
    z0, w0 = cmath.exp(2j * math.pi * u0), cmath.exp(2j * math.pi * v0)
    fac = 2j * math.pi * cmath.exp(1j * math.pi * (u0 + v0))
    r_ell = sos_rmatrix(ctx40, u0 - v0, lam, hbar).m * fac
    r_trig = trig_sos_rmatrix(z0, w0, mu, q).m
    rows.append(("rmatrix.elliptic_to_trig", _rel_matrix(r_trig, r_ell),
                 PROXY_TOL))
    r_big = trig_sos_rmatrix(z0, w0, 1e8, q).m
    r_nd = trig_nondyn_rmatrix(z0, w0, q).m
    rows.append(("rmatrix.trig_to_nondyn", _rel_matrix(r_nd, r_big),
                 PROXY_TOL))
    r_gauged = gauge_rescale(trig_nondyn_rmatrix(z0, w0, q), 1.0 / q).m
    rows.append(("rmatrix.nondyn_gauge_to_sixv",
                 _rel_matrix(sixv_rmatrix(z0, w0, q).m, r_gauged),
                 cfg.tolerance))

    # partition-function chain
    n = max(1, min(cfg.n, 3))
    u, v = _draw_box(rng, n), _draw_box(rng, n)
    z = [cmath.exp(2j * math.pi * x) for x in u]
    w = [cmath.exp(2j * math.pi * x) for x in v]
    z_ell = z_sos_elliptic(ctx40, EllipticParams(u, v, lam, hbar))
    fac = (2j * math.pi) ** (n * n) \
        * cmath.exp(1j * math.pi * n * (sum(u) + sum(v)))
    z_tr = z_trig_sos(TrigParams(z, w, q, mu))
    rows.append(("pf.elliptic_to_trig", _rel(fac * z_ell, z_tr), PROXY_TOL))
    z_tr_inf = z_trig_sos(TrigParams(z, w, q, 1e8))
    z_6v = z_6v_sum(TrigParams(z, w, q))
    rows.append(("pf.trig_to_sixv", _rel(z_tr_inf, z_6v), PROXY_TOL))

    # gauge invariance of the partition sums
    ctx = ThetaContext(cfg.tau)
    rho = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.3, 0.3))
    pe = EllipticParams(u, v, lam, hbar)
    base = enumerate_sos(ctx, pe)
    gauged = enumerate_sos(
        ctx, pe,
        rmatrix_fn=lambda c, x, l, h: gauge_rescale(sos_rmatrix(c, x, l, h), rho))
    rows.append(("gauge.sos", _rel(gauged, base), 1e-10))
    pt = TrigParams(z, w, q)
    rows.append(("gauge.sixv",
                 _rel(enumerate_6v(pt, rmatrix_fn=trig_nondyn_rmatrix),
                      enumerate_6v(pt)), 1e-10))
    return rows


def _suite_appendix(cfg: RunConfig) -> list:
    ctx = ThetaContext(cfg.tau)
    rng = np.random.default_rng(cfg.seed)
    rows = []

    for n in (2, max(2, min(cfg.n, 6))):
        zeros = _draw_box(rng, n)
        nodes = _draw_box(rng, n)
        alpha = sum(zeros)
        values = [theta_product_poly(ctx, zeros, x) for x in nodes]
        worst = 0.0
        for x in _draw_box(rng, 4):
            want = theta_product_poly(ctx, zeros, x)
            got = interpolate(ctx, nodes, values, alpha, x)
            worst = max(worst, _rel(got, want))
        rows.append((f"appendix.interpolation_n{n}", worst, cfg.tolerance))

    n = max(2, min(cfg.n, 5))
    lambdas = [x + 0.05 for x in _draw_box(rng, n)]
    us = _draw_box(rng, n)
    v0 = complex(rng.uniform(-0.4, -0.1), rng.uniform(-0.05, 0.05))
    rows.append((f"appendix.addition_n{n}",
                 addition_formula_residual(ctx, lambdas, us, v0),
                 cfg.tolerance))

    us = _draw_box(rng, n)
    x0 = complex(rng.uniform(-0.4, -0.1), rng.uniform(-0.05, 0.05))
    for j in range(2, n + 1):
        rows.append((f"appendix.qj_interpolation_j{j}",
                     qj_interpolation_residual(ctx, us, cfg.lam, cfg.hbar, j, x0),
                     cfg.tolerance))

    n = max(2, min(cfg.n, 4))
    alpha = complex(0.27, 0.03)
    basis = []
    for _ in range(n):
        zeros = _draw_box(rng, n - 1) if n > 1 else []
        zeros = list(zeros) + [alpha - sum(zeros)]
        basis.append(lambda x, zs=tuple(zeros): theta_product_poly(ctx, zs, x))
    nodes_a = _draw_box(rng, n)
    nodes_b = _draw_box(rng, n)
    ra = vandermonde_ratio(ctx, basis, nodes_a, alpha)
    rb = vandermonde_ratio(ctx, basis, nodes_b, alpha)
    rows.append((f"appendix.vandermonde_n{n}", _rel(ra, rb), 1e-8))
    return rows


_SUITE_FNS = {
    "symmetry": _suite_symmetry,
    "recursion": _suite_recursion,
    "character": _suite_character,
    "dybe": _suite_dybe,
    "degeneration": _suite_degeneration,
    "appendix": _suite_appendix,
}


def cmd_check(cfg: RunConfig):
    names = list(_SUITE_FNS) if cfg.suite == "all" else [cfg.suite]
    rows = []
    for name in names:
        rows.extend(_SUITE_FNS[name](cfg))
    verdict = "pass" if all(val <= tol for _, val, tol in rows) else "fail"
    report = {
        "command": "check", "config": _config_echo(cfg), "results": [],
        "comparisons": [],
        "verdict": verdict,
        "residuals": {name: val for name, val, _ in rows},
        # tolerances rendered in text mode; json keeps the values only
    }
    report["_rows"] = rows
    return report, (0 if verdict == "pass" else 2)


def cmd_bench(cfg: RunConfig):
    results = []
    det_time = {}
    sum_time = {}
    for n in range(1, cfg.n + 1):
        rng = np.random.default_rng([cfg.seed, n])
        a, b = _draw_box(rng, n), _draw_box(rng, n)
        if cfg.model == "sos-elliptic":
            ctx = ThetaContext(cfg.tau)
            p = EllipticParams(a, b, cfg.lam, cfg.hbar)
            cands = [
                ("enumerate", n <= ENUM_CAP, asm_number(n),
                 lambda: enumerate_sos(ctx, p)),
                ("transfer", n <= ENUM_CAP, 2 ** n,
                 lambda: column_transfer_z(ctx, p)),
                ("sum", n <= SUM_CAP, factorial(n),
                 lambda: z_sos_elliptic(ctx, p)),
            ]
        elif cfg.model == "sos-trig":
            p = TrigParams(a, b, cfg.q, cfg.mu)
            cands = [
                ("enumerate", n <= ENUM_CAP, asm_number(n),
                 lambda: enumerate_trig_sos(p)),
                ("transfer", n <= ENUM_CAP, 2 ** n,
                 lambda: column_transfer_trig(p)),
                ("sum", n <= SUM_CAP, factorial(n), lambda: z_trig_sos(p)),
            ]
        else:
            p = TrigParams(a, b, cfg.q)
            cands = [
                ("enumerate", n <= ENUM_CAP, asm_number(n),
                 lambda: enumerate_6v(p)),
                ("transfer", n <= ENUM_CAP, 2 ** n,
                 lambda: column_transfer_6v(p)),
                ("determinant", True, n ** 3, lambda: z_izergin(p)),
                ("sum", n <= SUM_CAP, factorial(n), lambda: z_6v_sum(p)),
            ]
        for name, fits, terms, thunk in cands:
            if not fits:
                continue
            val, ms = _timed(thunk)
            results.append({"route": name, "value": _cjson(val),
                            "time_ms": ms, "n": n, "terms": terms})
            if name == "determinant":
                det_time[n] = ms
            elif name == "sum":
                sum_time[n] = ms
    crossover = -1.0
    for n in sorted(det_time):
        if n in sum_time and det_time[n] < sum_time[n]:
            crossover = float(n)
            break
    report = {
        "command": "bench", "config": _config_echo(cfg), "results": results,
        "comparisons": [], "verdict": "pass",
        "residuals": {"crossover_n": crossover},
    }
    return report, 0


# ---------------------------------------------------------------------------
# rendering and entry point

def _fmt_value(pair) -> str:
    return f"{pair[0]:+.16e} {pair[1]:+.16e}i"


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    cfgd = report["config"]
    head = [f"model: {cfgd['model']}", f"n: {cfgd['n']}", f"seed: {cfgd['seed']}"]
    if "route" in cfgd:
        head.insert(1, f"route: {cfgd['route']}")
    if "suite" in cfgd:
        head.insert(0, f"suite: {cfgd['suite']}")
    lines.append("  ".join(head))
    if report["command"] == "bench":
        lines.append(f"{'n':>3}  {'route':<12}{'terms':>10}  {'time_ms':>10}  value")
        for row in report["results"]:
            lines.append(
                f"{row['n']:>3}  {row['route']:<12}{row['terms']:>10}  "
                f"{row['time_ms']:>10.3f}  {_fmt_value(row['value'])}")
        cx = report["residuals"]["crossover_n"]
        lines.append(
            f"crossover: determinant overtakes sum at n = {int(cx)}" if cx > 0
            else "crossover: none observed in this range")
    else:
        for row in report["results"]:
            lines.append(f"route={row['route']:<12} value = "
                         f"{_fmt_value(row['value'])}  [{row['time_ms']:.3f} ms]")
        for cmp_ in report["comparisons"]:
            lines.append(f"compare {cmp_['a']} | {cmp_['b']}: rel_diff = "
                         f"{cmp_['rel_diff']:.3e}")
        for name, val, tol in report.get("_rows", []):
            flag = "pass" if val <= tol else "FAIL"
            lines.append(f"{name:<34} residual = {val:.3e}  tol = {tol:.0e}  {flag}")
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> None:
    report = dict(report)
    rows = report.pop("_rows", None)
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        if rows is not None:
            report["_rows"] = rows
        print(_render_text(report))


def _add_common(sub: argparse.ArgumentParser, default_n: int) -> None:
    sub.add_argument("--model", choices=MODELS, default="six-vertex")
    sub.add_argument("--n", type=int, default=None)
    sub.set_defaults(default_n=default_n)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--tau", type=parse_complex, default=1j)
    sub.add_argument("--lambda", dest="lam", type=parse_complex, default=0.31)
    sub.add_argument("--hbar", type=parse_complex, default=0.17)
    sub.add_argument("--q", type=parse_complex, default=1.3)
    sub.add_argument("--mu", type=parse_complex, default=0.7)
    sub.add_argument("--tolerance", type=float, default=1e-9)
    sub.add_argument("--format", dest="output_format",
                     choices=("text", "json"), default="text")
    sub.add_argument("--parallel", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwbc",
        description="Domain-wall partition functions of the elliptic SOS, "
                    "trigonometric SOS and six-vertex models, cross-checked "
                    "across independent routes.")
    subs = parser.add_subparsers(dest="command", required=True)

    pc = subs.add_parser("compute", help="evaluate one or all routes")
    _add_common(pc, default_n=3)
    pc.add_argument("--route", choices=ROUTES, default="all")
    pc.add_argument("--u", nargs="+", type=parse_complex)
    pc.add_argument("--v", nargs="+", type=parse_complex)
    pc.add_argument("--z", nargs="+", type=parse_complex)
    pc.add_argument("--w", nargs="+", type=parse_complex)

    pk = subs.add_parser("check", help="run a verification suite")
    pk.add_argument("suite", nargs="?", choices=SUITES, default="all")
    _add_common(pk, default_n=3)

    pb = subs.add_parser("bench", help="time every route over n = 1..cap")
    _add_common(pb, default_n=5)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("model", "seed", "tau", "lam", "hbar", "q", "mu",
                 "tolerance", "output_format", "parallel", "route", "suite",
                 "u", "v", "z", "w"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    explicit = next((getattr(cfg, k) for k in ("u", "v", "z", "w")
                     if getattr(cfg, k) is not None), None)
    if args.n is not None:
        cfg.n = args.n
    elif explicit is not None:
        cfg.n = len(explicit)
    else:
        cfg.n = args.default_n
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        cfg = _config_from_args(args)
        if args.command == "compute":
            report, code = cmd_compute(cfg)
        elif args.command == "check":
            report, code = cmd_check(cfg)
        else:
            report, code = cmd_bench(cfg)
    except DwbcError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 1
    _emit(report, cfg.output_format)
    return code


if __name__ == "__main__":
    sys.exit(main())
