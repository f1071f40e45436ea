"""Finite-difference reference solver and field comparison."""

import numpy as np
import pytest
from scipy.linalg import solve_banded
from scipy.special import rgamma

from subdiff import (
    EvalGrid,
    FunctionSpec,
    OracleConfig,
    ProblemFormatError,
    ProblemSpec,
    SolutionField,
    compare,
    default_config,
    fd_solve,
    step_response,
)

CONST = FunctionSpec.constant
ZERO = FunctionSpec.constant(0.0)


def dirichlet_step(alpha=0.5, lam=1.0, horizon=1.0):
    return ProblemSpec(kind="dirichlet", alpha=alpha, lam=lam, horizon=horizon,
                       f=ZERO, g=CONST(1.0))


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(L=0.0, Nx=16, Nt=16)
    with pytest.raises(ValueError):
        OracleConfig(L=4.0, Nx=4, Nt=16)
    with pytest.raises(ValueError):
        OracleConfig(L=4.0, Nx=16, Nt=16.5)
    with pytest.raises(ValueError):
        OracleConfig(L=4.0, Nx=16, Nt=16, far_boundary="absorbing")
    cfg = OracleConfig(L=4.0, Nx=16.0, Nt=16)
    assert cfg.Nx == 16 and isinstance(cfg.Nx, int)


def test_config_from_document_field_paths():
    with pytest.raises(ProblemFormatError) as err:
        OracleConfig.from_document({"L": 4.0, "Nt": 16})
    assert err.value.field == "oracle.Nx"
    with pytest.raises(ProblemFormatError) as err:
        OracleConfig.from_document({"L": "wide", "Nx": 16, "Nt": 16})
    assert err.value.field == "oracle.L"
    with pytest.raises(ProblemFormatError):
        OracleConfig.from_document({"L": 4.0, "Nx": 16, "Nt": 16, "far_boundary": "x"})
    cfg = OracleConfig.from_document({"L": 4.0, "Nx": 16, "Nt": 16})
    assert cfg.far_boundary == "dirichlet-from-f-tail"


def test_default_config_domain_covers_diffusion_range():
    p = dirichlet_step()
    cfg = default_config(p)
    assert cfg.L >= 1.0
    # the wall step must be numerically dead at the far boundary
    assert step_response(cfg.L, p.horizon, p.alpha, p.lam) <= 1e-8
    longer = default_config(ProblemSpec(kind="dirichlet", alpha=0.5, lam=1.0,
                                        horizon=16.0, f=ZERO, g=CONST(1.0)))
    assert longer.L > cfg.L


def test_fd_constant_preserved_under_reflecting_walls():
    p = ProblemSpec(kind="neumann_zero", alpha=0.5, lam=1.0, horizon=1.0, f=CONST(3.0))
    sol = fd_solve(p, OracleConfig(L=4.0, Nx=32, Nt=32, far_boundary="homogeneous-neumann"))
    assert sol.provenance == "oracle-fd"
    assert np.max(np.abs(sol.values - 3.0)) <= 1e-12


def test_fd_mass_conservation():
    p = ProblemSpec(kind="neumann_zero", alpha=0.6, lam=1.0, horizon=1.0,
                    f=FunctionSpec.exp_decay(1.0, 2.0))
    cfg = OracleConfig(L=6.0, Nx=96, Nt=64, far_boundary="homogeneous-neumann")
    sol = fd_solve(p, cfg)
    xs = sol.grid.xs
    m0 = np.trapezoid(p.f(xs), xs)
    masses = np.trapezoid(sol.values, xs, axis=0)
    assert np.max(np.abs(masses - m0)) <= 1e-10 * abs(m0)


def test_fd_degenerates_to_backward_euler_as_alpha_approaches_one():
    alpha = 1.0 - 1e-12
    p = ProblemSpec(kind="dirichlet", alpha=alpha, lam=1.0, horizon=1.0,
                    f=ZERO, g=CONST(1.0))
    cfg = OracleConfig(L=4.0, Nx=32, Nt=16)
    sol = fd_solve(p, cfg)

    # classical implicit Euler on the same mesh
    dx = cfg.L / cfg.Nx
    dt = p.horizon / cfg.Nt
    mu = dt ** (-alpha) * rgamma(2.0 - alpha)
    s = (p.lam / dx) ** 2
    n = cfg.Nx + 1
    ab = np.zeros((3, n))
    ab[0, 2:] = -s
    ab[1, :] = mu + 2.0 * s
    ab[2, :-2] = -s
    ab[1, 0] = 1.0
    ab[0, 1] = 0.0
    ab[1, -1] = 1.0
    ab[2, -2] = 0.0
    u = np.zeros(n)
    for _ in range(cfg.Nt):
        rhs = mu * u
        rhs[0] = 1.0
        rhs[-1] = 0.0
        u = solve_banded((1, 1), ab, rhs)
    assert np.max(np.abs(sol.values[:, -1] - u)) <= 1e-8


def test_fd_tracks_analytic_step_response():
    p = dirichlet_step()
    sol = fd_solve(p, OracleConfig(L=10.0, Nx=100, Nt=200))
    keep = sol.grid.ts >= 0.1
    x, t = np.meshgrid(sol.grid.xs, sol.grid.ts[keep], indexing="ij")
    ref = step_response(x, t, p.alpha, p.lam)
    rel = np.max(np.abs(sol.values[:, keep] - ref)) / np.max(np.abs(ref))
    assert rel <= 2e-2


def test_fd_dirichlet_wall_row_follows_drive():
    g = FunctionSpec.polynomial([1.0, 1.0])
    p = ProblemSpec(kind="dirichlet", alpha=0.4, lam=1.0, horizon=1.0, f=ZERO, g=g)
    sol = fd_solve(p, OracleConfig(L=4.0, Nx=32, Nt=16))
    assert np.max(np.abs(sol.values[0] - g(sol.grid.ts))) <= 1e-12


def test_fd_flux_wall_slope_follows_drive():
    p = ProblemSpec(kind="flux", alpha=0.5, lam=1.0, horizon=1.0, f=ZERO, g=CONST(1.0))
    sol = fd_solve(p, OracleConfig(L=8.0, Nx=200, Nt=400))
    dx = sol.grid.xs[1] - sol.grid.xs[0]
    u = sol.values
    slope = (-3.0 * u[0, -1] + 4.0 * u[1, -1] - u[2, -1]) / (2.0 * dx)
    assert abs(slope - 1.0) <= 2e-2


def field_from(fn, xs, ts, provenance="analytic-fractional"):
    grid = EvalGrid(xs=np.asarray(xs, float), ts=np.asarray(ts, float))
    x, t = np.meshgrid(grid.xs, grid.ts, indexing="ij")
    vals = fn(x, t)
    return SolutionField(grid, vals, np.zeros_like(vals), provenance)


def test_compare_identical_fields():
    f = field_from(lambda x, t: x + t, np.linspace(0, 2, 9), [0.5, 1.0])
    rep = compare(f, f)
    assert rep.linf == 0.0 and rep.l2 == 0.0


def test_compare_interpolates_finer_onto_coarser():
    fn = lambda x, t: np.sin(x) * t
    fine = field_from(fn, np.linspace(0, 3, 301), [0.25, 0.5, 1.0])
    coarse = field_from(fn, np.linspace(0, 3, 11), [0.5, 1.0])
    rep = compare(fine, coarse)
    assert np.array_equal(rep.grid.xs, coarse.grid.xs)
    assert np.array_equal(rep.grid.ts, [0.5, 1.0])
    assert rep.linf <= 1e-4  # pure interpolation error on the fine side
    assert compare(coarse, fine).linf == rep.linf


def test_compare_requires_matching_time_levels():
    a = field_from(lambda x, t: x * t, np.linspace(0, 1, 5), [0.3, 0.6])
    b = field_from(lambda x, t: x * t, np.linspace(0, 1, 5), [0.4, 0.8])
    with pytest.raises(ValueError, match="matching time levels"):
        compare(a, b)


def test_compare_rejects_extrapolation():
    a = field_from(lambda x, t: x * t, np.linspace(0, 1, 5), [0.5])
    b = field_from(lambda x, t: x * t, np.linspace(0, 2, 3), [0.5])
    with pytest.raises(ValueError, match="extend past"):
        compare(a, b)
