"""Finite-difference oracle for the half-line problems.

An implicit one-step scheme: the memory derivative is discretized with
the standard first-order product rule on a uniform time grid, space with
the centered second difference, and each time level solves one tridiagonal
system.  The half line is truncated at x = L, far enough that the
similarity kernel's stretched-exponential tail is negligible over the
horizon; the far boundary either pins the initial datum's tail value or
reflects.  Wall rows mirror the analytic conventions: value g(t) for the
absorbing wall, a second-order ghost point enforcing slope g(t) (or 0)
otherwise.

The scheme is independent of every closed-form path in this package
except l1_weights, so agreement between fd_solve and the solvers is a
genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .kernels import get_profile
from .problems import (
    ErrorReport,
    EvalGrid,
    ProblemFormatError,
    ProblemSpec,
    SolutionField,
)
from .specfun import l1_weights, recip_gamma

__all__ = [
    "ErrorReport",
    "OracleConfig",
    "compare",
    "default_config",
    "fd_solve",
]

_FAR_BOUNDARIES = ("dirichlet-from-f-tail", "homogeneous-neumann")


@dataclass(frozen=True)
class OracleConfig:
    """Truncated-domain discretization: x in [0, L], Nx cells, Nt steps."""

    L: float
    Nx: int
    Nt: int
    far_boundary: str = "dirichlet-from-f-tail"

    def __post_init__(self) -> None:
        if not (self.L > 0.0 and math.isfinite(self.L)):
            raise ValueError("L must be positive and finite")
        if int(self.Nx) != self.Nx or self.Nx < 8:
            raise ValueError("Nx must be an integer >= 8")
        if int(self.Nt) != self.Nt or self.Nt < 8:
            raise ValueError("Nt must be an integer >= 8")
        object.__setattr__(self, "Nx", int(self.Nx))
        object.__setattr__(self, "Nt", int(self.Nt))
        if self.far_boundary not in _FAR_BOUNDARIES:
            raise ValueError(
                f"far_boundary must be one of {', '.join(_FAR_BOUNDARIES)}"
            )

    @classmethod
    def from_document(cls, doc: dict) -> "OracleConfig":
        """Build from the optional ``oracle`` object of a problem file."""
        out = {}
        for key in ("L", "Nx", "Nt"):
            if key not in doc:
                raise ProblemFormatError(f"oracle.{key}", "missing required field")
            v = doc[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ProblemFormatError(f"oracle.{key}", f"expected a number, got {v!r}")
            out[key] = v
        fb = doc.get("far_boundary", "dirichlet-from-f-tail")
        try:
            return cls(L=float(out["L"]), Nx=out["Nx"], Nt=out["Nt"], far_boundary=fb)
        except ValueError as exc:
            raise ProblemFormatError("oracle", str(exc)) from exc


def default_config(p: ProblemSpec, Nx: int = 256, Nt: int = 256) -> OracleConfig:
    """Config whose domain length makes the truncation error negligible.

    L is chosen so the kernel tail bound at r = L / (lam T**nu) is below
    1e-8; diffusion from the wall cannot reach the far boundary at a
    visible level within the horizon.
    """
    tail = get_profile(p.nu).decay_bound()
    r_cut = tail.truncation_point(1e-8)
    L = max(1.0, r_cut * p.lam * p.horizon**p.nu)
    return OracleConfig(L=L, Nx=Nx, Nt=Nt, far_boundary="dirichlet-from-f-tail")


def fd_solve(p: ProblemSpec, cfg: OracleConfig) -> SolutionField:
    """March the implicit scheme and return the field on its own grid.

    The returned grid holds every spatial node and the time levels
    dt, 2 dt, ..., horizon; values at t = 0 equal f and are not part of
    the field.
    """
    dt = p.horizon / cfg.Nt
    dx = cfg.L / cfg.Nx
    xs = np.linspace(0.0, cfg.L, cfg.Nx + 1)
    ts = dt * np.arange(1, cfg.Nt + 1)

    mu = dt ** (-p.alpha) * recip_gamma(2.0 - p.alpha)
    s = (p.lam * p.lam) / (dx * dx)
    b = l1_weights(p.alpha, cfg.Nt)
    w = b[:-1] - b[1:]  # history weights, newest level first

    # banded matrix: rows are (upper, main, lower) for solve_banded
    n = cfg.Nx + 1
    upper = np.full(n, -s)
    main = np.full(n, mu + 2.0 * s)
    lower = np.full(n, -s)

    wall_dirichlet = p.kind == "dirichlet"
    if wall_dirichlet:
        main[0] = 1.0
        upper[1] = 0.0
    else:
        upper[1] = -2.0 * s  # ghost-point slope row
    if cfg.far_boundary == "dirichlet-from-f-tail":
        main[-1] = 1.0
        lower[-2] = 0.0
        far_value = p.f(cfg.L)
    else:
        lower[-2] = -2.0 * s
        far_value = 0.0
    ab = np.vstack(
        [np.concatenate([[0.0], upper[1:]]), main, np.concatenate([lower[:-1], [0.0]])]
    )

    g = p.g if p.kind != "neumann_zero" else None
    U = np.empty((cfg.Nt + 1, n))
    U[0] = p.f(xs)

    for m in range(1, cfg.Nt + 1):
        hist = b[m - 1] * U[0]
        if m > 1:
            hist = hist + w[: m - 1] @ U[m - 1 : 0 : -1]
        rhs = mu * hist
        if wall_dirichlet:
            rhs[0] = g(ts[m - 1])
        elif p.kind == "flux":
            rhs[0] -= 2.0 * s * dx * g(ts[m - 1])
        if cfg.far_boundary == "dirichlet-from-f-tail":
            rhs[-1] = far_value
        U[m] = solve_banded((1, 1), ab, rhs)

    grid = EvalGrid(xs=xs, ts=ts)
    values = U[1:].T  # (nx, nt)
    return SolutionField(grid, values, np.zeros_like(values), "oracle-fd")


def _common_times(ta: np.ndarray, tb: np.ndarray):
    """Indices of matching time levels (relative tolerance 1e-9)."""
    ia, ib = [], []
    j = 0
    for i, t in enumerate(ta):
        while j < tb.size and tb[j] < t * (1.0 - 1e-9):
            j += 1
        if j < tb.size and abs(tb[j] - t) <= 1e-9 * max(t, tb[j]):
            ia.append(i)
            ib.append(j)
            j += 1
    return np.array(ia, dtype=int), np.array(ib, dtype=int)


def compare(a: SolutionField, b: SolutionField) -> ErrorReport:
    """Difference of two fields on their common grid.

    Time levels must coincide; in space the finer field is linearly
    interpolated onto the coarser, which must not extend past it.
    """
    ia, ib = _common_times(a.grid.ts, b.grid.ts)
    if ia.size == 0:
        raise ValueError("incompatible grids: no matching time levels")

    if a.grid.xs.size >= b.grid.xs.size:
        fine, coarse = a, b
        vf, vc = a.values[:, ia], b.values[:, ib]
        ts = b.grid.ts[ib]
    else:
        fine, coarse = b, a
        vf, vc = b.values[:, ib], a.values[:, ia]
        ts = a.grid.ts[ia]
    fx, cx = fine.grid.xs, coarse.grid.xs
    if cx[0] < fx[0] - 1e-12 or cx[-1] > fx[-1] * (1.0 + 1e-12) + 1e-12:
        raise ValueError("incompatible grids: coarser xs extend past the finer field")

    diff = np.empty((cx.size, ts.size))
    for j in range(ts.size):
        diff[:, j] = np.interp(cx, fx, vf[:, j]) - vc[:, j]
    grid = EvalGrid(xs=cx, ts=ts)
    return ErrorReport.from_difference(diff, grid)
