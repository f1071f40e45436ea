"""Command-line interface.

Commands:

* ``wright --rho R --beta B --z Z``    print one Wright value
* ``mainardi --nu N --x X``            print one Mainardi value
* ``solve --problem P``                solve the problem on its grid
* ``oracle --problem P``               finite-difference solve
* ``sweep --problem P``                distance to the classical limit per alpha
* ``check --seed N``                   run the shipped property suite
* ``report --problem P --out BASE``    delimited output plus rendered figures

Fields are written as CSV (columns x, t, value, error_estimate,
provenance; 17 significant digits; header mandatory) or as JSON
mirroring SolutionField.  Diagnostics go to stderr; data goes only to
--out or stdout.  Exit status: 0 success, 1 tolerance or validation
failure, 2 usage error.  Identical inputs produce byte-identical
CSV/JSON output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import oracle as oracle_mod
from . import solvers
from .kernels import get_profile
from .problems import (
    ErrorReport,
    EvalGrid,
    FunctionSpec,
    ProblemFormatError,
    ProblemSpec,
    SolutionField,
    load_problem,
    loads_problem,
    problem_document,
)
from .quadrature import TailBound, integrate, integrate_to_infinity
from .specfun import (
    AccuracyError,
    EvalPolicy,
    WrightIndex,
    caputo_l1,
    erfc,
    l1_weights,
    mainardi,
    recip_gamma,
    rl_integral,
    wright,
)

# one-off scalar prints are cheap: ask for every double digit, which
# pushes moderate arguments onto the escalated path
_PRINT_POLICY = EvalPolicy(rel_tol=5e-17)

__all__ = ["RunConfig", "build_parser", "main", "run"]

_COMMANDS = ("wright", "mainardi", "solve", "oracle", "sweep", "check", "report")


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line request."""

    command: str
    problem_file: str | None = None
    output: str | None = None
    format: str = "csv"
    rel_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subdiff",
        description="Closed-form and finite-difference solutions of "
        "time-fractional diffusion on the half line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pw = sub.add_parser("wright", help="evaluate W(z; rho, beta)")
    pw.add_argument("--rho", type=float, required=True)
    pw.add_argument("--beta", type=float, required=True)
    pw.add_argument("--z", type=float, required=True)

    pm = sub.add_parser("mainardi", help="evaluate M_nu(x)")
    pm.add_argument("--nu", type=float, required=True)
    pm.add_argument("--x", type=float, required=True)

    def add_io(p, fmt=True):
        p.add_argument("--problem", required=True, help="problem file (JSON)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--rel-tol", type=float, default=1e-8, dest="rel_tol")

    ps = sub.add_parser("solve", help="solve the problem on its grid")
    add_io(ps)
    ps.add_argument("--alpha-override", type=float, default=None, dest="alpha_override")
    ps.add_argument(
        "--compare",
        choices=("heat-limit", "oracle"),
        default=None,
        help="emit an error report against a reference instead of the field",
    )

    po = sub.add_parser("oracle", help="finite-difference solve")
    add_io(po)

    pv = sub.add_parser("sweep", help="distance to the classical limit per alpha")
    add_io(pv)
    pv.add_argument(
        "--alphas",
        default=None,
        help="comma-separated increasing orders in (0, 1); "
        f"default {','.join(str(a) for a in solvers.DEFAULT_SWEEP)}",
    )

    pc = sub.add_parser("check", help="run the shipped property suite")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--out", default=None, help="write the table here too")

    pr = sub.add_parser("report", help="delimited output plus rendered figures")
    add_io(pr)
    pr.add_argument("--alpha-override", type=float, default=None, dest="alpha_override")
    return parser


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


class _Sink:
    """Write data to --out or stdout; never mix with diagnostics."""

    def __init__(self, path: str | None):
        self.path = path

    def write(self, text: str) -> None:
        if self.path is None:
            sys.stdout.write(text)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _field_csv(field: SolutionField) -> str:
    lines = ["x,t,value,error_estimate,provenance"]
    xs, ts = field.grid.xs, field.grid.ts
    for i in range(xs.size):
        for j in range(ts.size):
            lines.append(
                f"{_fmt(xs[i])},{_fmt(ts[j])},{_fmt(field.values[i, j])},"
                f"{_fmt(field.error_estimates[i, j])},{field.provenance}"
            )
    return "\n".join(lines) + "\n"


def _field_json(field: SolutionField) -> str:
    doc = {
        "grid": {
            "xs": [float(v) for v in field.grid.xs],
            "ts": [float(v) for v in field.grid.ts],
        },
        "values": [[float(v) for v in row] for row in field.values],
        "error_estimates": [[float(v) for v in row] for row in field.error_estimates],
        "provenance": field.provenance,
    }
    return json.dumps(doc, indent=2) + "\n"


def _report_csv(rep: ErrorReport) -> str:
    lines = ["x,t,abs_error"]
    xs, ts = rep.grid.xs, rep.grid.ts
    for i in range(xs.size):
        for j in range(ts.size):
            lines.append(f"{_fmt(xs[i])},{_fmt(ts[j])},{_fmt(rep.pointwise[i, j])}")
    return "\n".join(lines) + "\n"


def _report_json(rep: ErrorReport) -> str:
    doc = {
        "linf": float(rep.linf),
        "l2": float(rep.l2),
        "grid": {
            "xs": [float(v) for v in rep.grid.xs],
            "ts": [float(v) for v in rep.grid.ts],
        },
        "pointwise": [[float(v) for v in row] for row in rep.pointwise],
    }
    return json.dumps(doc, indent=2) + "\n"


def _load(args) -> tuple:
    spec, grid, oracle_doc = load_problem(args.problem)
    if getattr(args, "alpha_override", None) is not None:
        a = args.alpha_override
        if not (0.0 < a <= 1.0):
            raise ProblemFormatError("alpha", f"override must lie in (0, 1], got {a}")
        spec = replace(spec, alpha=a)
    return spec, grid, oracle_doc


def _oracle_config(spec: ProblemSpec, oracle_doc) -> oracle_mod.OracleConfig:
    if oracle_doc is not None:
        return oracle_mod.OracleConfig.from_document(oracle_doc)
    return oracle_mod.default_config(spec)


def _cmd_wright(args) -> int:
    try:
        idx = WrightIndex(args.rho, args.beta)
        if args.z > 0.0:
            raise ValueError("z must be <= 0")
    except ValueError as exc:
        _diag(f"error: {exc}")
        return 2
    print(_fmt(wright(args.z, idx, _PRINT_POLICY)))
    return 0


def _cmd_mainardi(args) -> int:
    try:
        v = mainardi(args.x, args.nu, _PRINT_POLICY)
    except ValueError as exc:
        _diag(f"error: {exc}")
        return 2
    print(_fmt(v))
    return 0


def _oracle_comparison_grid(
    spec: ProblemSpec, grid: EvalGrid, fd: SolutionField
) -> EvalGrid:
    """Problem xs at a spread of oracle time levels (later seven eighths)."""
    ts = fd.grid.ts
    lo = np.searchsorted(ts, ts[-1] / 8.0)
    idx = np.unique(np.round(np.linspace(lo, ts.size - 1, 12)).astype(int))
    return EvalGrid(xs=grid.xs, ts=ts[idx])


def _cmd_solve(args, cfg: RunConfig) -> int:
    spec, grid, oracle_doc = _load(args)
    if args.compare is None:
        field = solvers.solve_problem(spec, grid, cfg.rel_tol)
        text = _field_csv(field) if cfg.format == "csv" else _field_json(field)
        _Sink(cfg.output).write(text)
        return 0

    if args.compare == "heat-limit":
        field = solvers.solve_problem(spec, grid, cfg.rel_tol)
        if spec.kind == "dirichlet":
            ref = solvers.heat_dirichlet_limit(spec.g, spec.f, grid, spec.lam, cfg.rel_tol)
        else:
            ref = solvers.heat_flux_limit(spec.g, spec.f, grid, spec.lam, cfg.rel_tol)
        rep = oracle_mod.compare(field, ref)
    else:
        fdcfg = _oracle_config(spec, oracle_doc)
        _diag(f"oracle: L={fdcfg.L:g} Nx={fdcfg.Nx} Nt={fdcfg.Nt}")
        fd = oracle_mod.fd_solve(spec, fdcfg)
        cgrid = _oracle_comparison_grid(spec, grid, fd)
        field = solvers.solve_problem(spec, cgrid, cfg.rel_tol)
        rep = oracle_mod.compare(field, fd)
    _diag(f"linf={rep.linf:.6g} l2={rep.l2:.6g}")
    text = _report_csv(rep) if cfg.format == "csv" else _report_json(rep)
    _Sink(cfg.output).write(text)
    return 0


def _cmd_oracle(args, cfg: RunConfig) -> int:
    spec, _grid, oracle_doc = _load(args)
    fdcfg = _oracle_config(spec, oracle_doc)
    _diag(f"oracle: L={fdcfg.L:g} Nx={fdcfg.Nx} Nt={fdcfg.Nt}")
    field = oracle_mod.fd_solve(spec, fdcfg)
    text = _field_csv(field) if cfg.format == "csv" else _field_json(field)
    _Sink(cfg.output).write(text)
    return 0


def _cmd_sweep(args, cfg: RunConfig) -> int:
    spec, grid, _oracle_doc = _load(args)
    if spec.kind == "neumann_zero":
        raise ValueError("sweep requires a boundary-driven problem (dirichlet or flux)")
    if args.alphas is None:
        alphas = solvers.DEFAULT_SWEEP
    else:
        try:
            alphas = tuple(float(tok) for tok in args.alphas.split(",") if tok.strip())
        except ValueError:
            _diag(f"error: --alphas must be a comma-separated number list, got {args.alphas!r}")
            return 2
    rows = solvers.alpha_sweep(spec, grid, alphas, cfg.rel_tol)
    if cfg.format == "csv":
        lines = ["alpha,linf,l2"]
        for a, rep in rows:
            lines.append(f"{_fmt(a)},{_fmt(rep.linf)},{_fmt(rep.l2)}")
        text = "\n".join(lines) + "\n"
    else:
        text = (
            json.dumps(
                [{"alpha": a, "linf": rep.linf, "l2": rep.l2} for a, rep in rows],
                indent=2,
            )
            + "\n"
        )
    _Sink(cfg.output).write(text)
    return 0


def _cmd_report(args, cfg: RunConfig) -> int:
    if cfg.output is None:
        _diag("error: report requires --out (figures need file paths)")
        return 2
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    spec, grid, _oracle_doc = _load(args)
    field = solvers.solve_problem(spec, grid, cfg.rel_tol)
    base = cfg.output
    for suffix in (".csv", ".json"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    data_path = base + (".csv" if cfg.format == "csv" else ".json")
    text = _field_csv(field) if cfg.format == "csv" else _field_json(field)
    _Sink(data_path).write(text)

    ts = field.grid.ts
    pick = np.unique(np.round(np.linspace(0, ts.size - 1, 8)).astype(int))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for j in pick:
        ax.plot(field.grid.xs, field.values[:, j], label=f"t = {ts[j]:.4g}")
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.set_title(f"{spec.kind} field, alpha = {spec.alpha:g}")
    ax.legend(fontsize="small")
    fig.tight_layout()
    field_png = base + "_field.png"
    fig.savefig(field_png, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    err = np.maximum(field.error_estimates, 1e-18)
    ax.semilogy(field.grid.xs, err.max(axis=1), marker=".")
    ax.set_xlabel("x")
    ax.set_ylabel("max error estimate over t")
    ax.set_title("quadrature error estimates")
    fig.tight_layout()
    err_png = base + "_errors.png"
    fig.savefig(err_png, dpi=120)
    plt.close(fig)

    _diag(f"wrote {data_path}, {field_png}, {err_png}")
    return 0


# --------------------------------------------------------------------------
# check: the shipped property suite
# --------------------------------------------------------------------------


def _prop_wright_bounds(rng) -> None:
    alpha = float(rng.uniform(0.1, 0.95))
    nu = alpha / 2.0
    xs = np.sort(rng.uniform(0.0, 12.0, 64))
    prof = get_profile(nu)
    w = prof.tail_mass(xs)
    m = prof.mainardi(xs)
    assert np.all((w > 0.0) & (w <= 1.0)), "tail mass must lie in (0, 1]"
    assert np.all(np.diff(w) <= 0.0), "tail mass must decrease"
    assert np.all(m < 1.0 / math.gamma(1.0 - nu) + 1e-12), "density bound"


def _prop_gaussian_reduction(rng) -> None:
    xs = rng.uniform(0.0, 8.0, 16)
    ref = np.exp(-(xs**2) / 4.0) / math.sqrt(math.pi)
    vals = mainardi(xs, 0.5)
    assert np.max(np.abs(vals - ref)) < 1e-12, "M_1/2 must equal the Gaussian"
    zs = rng.uniform(0.0, 6.0, 16)
    assert np.max(np.abs(wright(-zs, (-0.5, 1.0)) - erfc(zs / 2.0))) < 1e-12


def _prop_l1_weights(rng) -> None:
    alpha = float(rng.uniform(0.05, 0.99))
    b = l1_weights(alpha, 300)
    assert b[0] == 1.0 and np.all(b > 0.0) and np.all(np.diff(b) < 0.0)
    assert abs(b.sum() - 300 ** (1.0 - alpha)) < 1e-9 * 300


def _prop_caputo_linear(rng) -> None:
    alpha = float(rng.uniform(0.1, 0.9))
    dt = float(rng.uniform(0.005, 0.05))
    c = float(rng.uniform(-2.0, 2.0))
    n = 40
    t = dt * np.arange(n)
    d = caputo_l1(c * t, alpha, dt)
    ref = c * t ** (1.0 - alpha) * recip_gamma(2.0 - alpha)
    assert np.max(np.abs(d - ref)) < 1e-10 * max(1.0, abs(c)), "L1 exact on linear"
    r = rl_integral(np.ones(n), 1.0 - alpha, dt)
    ref2 = t ** (1.0 - alpha) * recip_gamma(2.0 - alpha)
    assert np.max(np.abs(r - ref2)) < 1e-10


def _prop_quadrature_polynomial(rng) -> None:
    coeffs = rng.uniform(-1.0, 1.0, 5)
    a, b = sorted(rng.uniform(-2.0, 2.0, 2))
    p = np.polynomial.Polynomial(coeffs)
    res = integrate(p, a, b, rel_tol=1e-12, abs_tol=1e-13)
    exact = p.integ()(b) - p.integ()(a)
    assert abs(res.value - exact) <= max(1e-11, 10 * res.abs_error_estimate)


def _prop_tail_inversion(rng) -> None:
    bound = TailBound(
        kind="stretched-exponential",
        rate=float(rng.uniform(0.2, 2.0)),
        prefactor=float(rng.uniform(0.5, 3.0)),
        exponent=float(rng.uniform(1.0, 2.5)),
    )
    tol = 10.0 ** float(rng.uniform(-10.0, -4.0))
    x = bound.truncation_point(tol)
    assert bound.tail_mass(x) <= tol * (1.0 + 1e-9)


def _prop_unit_mass(rng) -> None:
    alpha = float(rng.uniform(0.1, 0.99))
    prof = get_profile(alpha / 2.0)
    res = integrate_to_infinity(
        prof.mainardi, 0.0, prof.decay_bound(2.0), rel_tol=1e-10, abs_tol=1e-12
    )
    assert abs(res.value - 1.0) < 1e-8, "Mainardi density has unit mass"


def _prop_profile_matches_direct(rng) -> None:
    alpha = float(rng.uniform(0.1, 0.95))
    nu = alpha / 2.0
    prof = get_profile(nu)
    xs = rng.uniform(0.05, 6.0, 8)
    direct = mainardi(xs, nu)
    assert np.max(np.abs(prof.mainardi(xs) - direct) / np.abs(direct)) < 1e-9


def _prop_document_roundtrip(rng) -> None:
    kinds = ("dirichlet", "neumann_zero", "flux")
    kind = kinds[int(rng.integers(0, 3))]
    f = FunctionSpec.exp_decay(float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.0, 2.0)))
    g = None if kind == "neumann_zero" else FunctionSpec.polynomial(
        [float(rng.uniform(-1.0, 1.0)), float(rng.uniform(-1.0, 1.0))]
    )
    spec = ProblemSpec(
        kind=kind,
        alpha=float(rng.uniform(0.05, 1.0)),
        lam=float(rng.uniform(0.2, 3.0)),
        horizon=float(rng.uniform(0.5, 4.0)),
        f=f,
        g=g,
    )
    grid = EvalGrid(
        xs=np.sort(rng.uniform(0.0, 5.0, 4)), ts=np.sort(rng.uniform(1e-3, 1.0, 3)) * spec.horizon
    )
    doc = problem_document(spec, grid)
    spec2, grid2, _ = loads_problem(json.dumps(doc))
    assert spec2 == spec, "round trip must preserve the problem"
    assert np.array_equal(grid2.xs, grid.xs) and np.array_equal(grid2.ts, grid.ts)


def _prop_neumann_constant(rng) -> None:
    c = float(rng.uniform(0.5, 4.0))
    p = ProblemSpec(
        kind="neumann_zero", alpha=0.5, lam=1.0, horizon=1.0, f=FunctionSpec.constant(c)
    )
    grid = EvalGrid(xs=np.array([0.0, 0.7, 2.1]), ts=np.array([0.4, 1.0]))
    fld = solvers.solve_neumann_zero(p, grid, tol=1e-9)
    assert np.max(np.abs(fld.values - c)) < 1e-7 * c


def _prop_flux_matches_neumann(rng) -> None:
    f = FunctionSpec.exp_decay(1.0, float(rng.uniform(0.3, 2.0)))
    alpha = float(rng.uniform(0.2, 0.9))
    grid = EvalGrid(xs=np.array([0.0, 0.5, 1.5]), ts=np.array([0.5, 1.0]))
    pn = ProblemSpec(kind="neumann_zero", alpha=alpha, lam=1.0, horizon=1.0, f=f)
    pf = ProblemSpec(
        kind="flux", alpha=alpha, lam=1.0, horizon=1.0, f=f, g=FunctionSpec.constant(0.0)
    )
    a = solvers.solve_neumann_zero(pn, grid, tol=1e-8)
    b = solvers.solve_flux(pf, grid, tol=1e-8)
    assert np.array_equal(a.values, b.values), "zero flux must equal reflecting wall"


def _prop_superposition(rng) -> None:
    alpha = float(rng.uniform(0.3, 0.9))
    grid = EvalGrid(xs=np.array([0.0, 0.4, 1.2]), ts=np.array([0.6]))
    fa = FunctionSpec.constant(float(rng.uniform(0.5, 2.0)))
    gb = FunctionSpec.constant(float(rng.uniform(0.5, 2.0)))
    zero = FunctionSpec.constant(0.0)
    mk = lambda f, g: ProblemSpec(
        kind="dirichlet", alpha=alpha, lam=1.0, horizon=1.0, f=f, g=g
    )
    both = solvers.solve_dirichlet(mk(fa, gb), grid, tol=1e-10)
    only_f = solvers.solve_dirichlet(mk(fa, zero), grid, tol=1e-10)
    only_g = solvers.solve_dirichlet(mk(zero, gb), grid, tol=1e-10)
    gap = np.max(np.abs(both.values - only_f.values - only_g.values))
    assert gap < 1e-8, f"superposition violated by {gap:g}"


def _prop_oracle_mass(rng) -> None:
    p = ProblemSpec(
        kind="neumann_zero",
        alpha=float(rng.uniform(0.3, 0.9)),
        lam=1.0,
        horizon=1.0,
        f=FunctionSpec.exp_decay(1.0, 2.0),
    )
    cfg = oracle_mod.OracleConfig(L=8.0, Nx=64, Nt=32, far_boundary="homogeneous-neumann")
    fld = oracle_mod.fd_solve(p, cfg)
    xs = fld.grid.xs
    m0 = np.trapezoid(p.f(xs), xs)
    masses = np.array(
        [np.trapezoid(fld.values[:, j], xs) for j in range(fld.grid.ts.size)]
    )
    assert np.max(np.abs(masses - m0)) <= 1e-10 * abs(m0), "discrete mass must persist"


def _prop_residual_flags_corruption(rng) -> None:
    n = 48
    xs = np.linspace(0.0, 4.0, n)
    ts = np.linspace(1.0 / n, 1.0, n)
    from .kernels import step_response

    xx, tt = np.meshgrid(xs, ts, indexing="ij")
    vals = step_response(xx, tt, 0.5, 1.0)
    grid = EvalGrid(xs=xs, ts=ts)
    clean = SolutionField(grid, vals, np.zeros_like(vals), "analytic-fractional")
    dirty = SolutionField(grid, vals + xx * tt, np.zeros_like(vals), "analytic-fractional")
    rc = solvers.residual_check(clean, 0.5, 1.0)
    rd = solvers.residual_check(dirty, 0.5, 1.0)
    assert rd.linf > 10.0 * rc.linf, "corruption must dominate the clean residual"


PROPERTY_CHECKS = (
    ("wright-bounds-and-monotonicity", _prop_wright_bounds),
    ("gaussian-and-erfc-reductions", _prop_gaussian_reduction),
    ("l1-weights-positive-decreasing", _prop_l1_weights),
    ("caputo-and-rl-on-polynomials", _prop_caputo_linear),
    ("quadrature-polynomial-exactness", _prop_quadrature_polynomial),
    ("tail-bound-inversion", _prop_tail_inversion),
    ("mainardi-unit-mass", _prop_unit_mass),
    ("profile-matches-direct-evaluation", _prop_profile_matches_direct),
    ("problem-document-roundtrip", _prop_document_roundtrip),
    ("neumann-constant-preserved", _prop_neumann_constant),
    ("zero-flux-equals-reflecting-wall", _prop_flux_matches_neumann),
    ("dirichlet-superposition", _prop_superposition),
    ("oracle-mass-conservation", _prop_oracle_mass),
    ("residual-flags-corruption", _prop_residual_flags_corruption),
)


def _cmd_check(args, cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    failures = 0
    for name, prop in PROPERTY_CHECKS:
        try:
            prop(rng)
        except AssertionError as exc:
            failures += 1
            rows.append(f"FAIL  {name}: {exc}")
        else:
            rows.append(f"PASS  {name}")
    rows.append(
        f"{len(PROPERTY_CHECKS) - failures}/{len(PROPERTY_CHECKS)} properties passed"
        f" (seed {cfg.seed})"
    )
    text = "\n".join(rows) + "\n"
    _Sink(cfg.output).write(text)
    return 1 if failures else 0


def run(argv=None) -> int:
    """Parse argv and execute; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code) if exc.code is not None else 0

    if args.command == "wright":
        return _cmd_wright(args)
    if args.command == "mainardi":
        return _cmd_mainardi(args)

    try:
        cfg = RunConfig(
            command=args.command,
            problem_file=getattr(args, "problem", None),
            output=getattr(args, "out", None),
            format=getattr(args, "format", "csv"),
            rel_tol=getattr(args, "rel_tol", 1e-8),
            seed=getattr(args, "seed", 0),
        )
    except ValueError as exc:
        _diag(f"error: {exc}")
        return 2

    try:
        if cfg.command == "solve":
            return _cmd_solve(args, cfg)
        if cfg.command == "oracle":
            return _cmd_oracle(args, cfg)
        if cfg.command == "sweep":
            return _cmd_sweep(args, cfg)
        if cfg.command == "check":
            return _cmd_check(args, cfg)
        return _cmd_report(args, cfg)
    except ProblemFormatError as exc:
        _diag(f"error: {exc}")
        return 2
    except FileNotFoundError as exc:
        _diag(f"error: {exc}")
        return 2
    except AccuracyError as exc:
        _diag(f"error: accuracy target not reachable: {exc}")
        return 1
    except ValueError as exc:
        _diag(f"error: {exc}")
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
