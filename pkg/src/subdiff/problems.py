"""Problem descriptions, evaluation grids, solution fields, and their
JSON-compatible document form.

A problem file is a JSON object with keys kind, alpha, lambda, horizon,
f, g, grid and optionally oracle.  Data functions are tagged unions, e.g.

    {"family": "constant", "value": 3.0}
    {"family": "polynomial", "coeffs": [1.0, 1.0]}
    {"family": "exp_decay", "a": 2.0, "b": 0.5}
    {"family": "tabulated", "points": [[0.0, 1.0], [1.0, 0.0]]}

Validation errors name the offending field path (e.g. ``f.points``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import Diffusivity
from .specfun import FractionalOrder

__all__ = [
    "ErrorReport",
    "EvalGrid",
    "FunctionSpec",
    "ProblemFormatError",
    "ProblemSpec",
    "SolutionField",
    "load_problem",
    "loads_problem",
    "problem_document",
]

_KINDS = ("dirichlet", "neumann_zero", "flux")
_FAMILIES = ("constant", "polynomial", "exp_decay", "tabulated")
_PROVENANCES = ("analytic-fractional", "analytic-heat", "oracle-fd")


class ProblemFormatError(ValueError):
    """Problem document violates the schema or a type invariant.

    ``field`` holds the dotted path of the offending entry.
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.field = path


@dataclass(frozen=True)
class FunctionSpec:
    """One bounded scalar data function s -> value on [0, inf) or [0, T].

    Tabulated data interpolates linearly between its points and extends
    by the nearest value beyond either end, which keeps it bounded.
    """

    family: str
    value: float = 0.0
    coeffs: tuple = ()
    a: float = 0.0
    b: float = 0.0
    points: tuple = ()

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown function family {self.family!r}")
        if self.family == "polynomial":
            c = tuple(float(v) for v in self.coeffs)
            if not c:
                raise ValueError("polynomial needs at least one coefficient")
            object.__setattr__(self, "coeffs", c)
        elif self.family == "exp_decay":
            if not self.b >= 0.0:
                raise ValueError("exp_decay rate must be nonnegative")
        elif self.family == "tabulated":
            pts = tuple((float(s), float(v)) for s, v in self.points)
            if len(pts) < 2:
                raise ValueError("tabulated needs at least two points")
            ss = [s for s, _ in pts]
            if any(s2 <= s1 for s1, s2 in zip(ss, ss[1:])):
                raise ValueError("tabulated abscissae must be strictly increasing")
            object.__setattr__(self, "points", pts)

    @classmethod
    def constant(cls, value: float) -> "FunctionSpec":
        return cls(family="constant", value=float(value))

    @classmethod
    def polynomial(cls, coeffs) -> "FunctionSpec":
        return cls(family="polynomial", coeffs=tuple(coeffs))

    @classmethod
    def exp_decay(cls, a: float, b: float) -> "FunctionSpec":
        return cls(family="exp_decay", a=float(a), b=float(b))

    @classmethod
    def tabulated(cls, points) -> "FunctionSpec":
        return cls(family="tabulated", points=tuple(points))

    @property
    def bounded_on_half_line(self) -> bool:
        """Whether |self(s)| stays bounded as s -> inf."""
        if self.family == "polynomial":
            return not any(c != 0.0 for c in self.coeffs[1:])
        return True  # constant, exp_decay (b >= 0), tabulated (clamped)

    @property
    def is_zero(self) -> bool:
        if self.family == "constant":
            return self.value == 0.0
        if self.family == "polynomial":
            return all(c == 0.0 for c in self.coeffs)
        if self.family == "exp_decay":
            return self.a == 0.0
        return all(v == 0.0 for _, v in self.points)

    def bound_on(self, hi: float) -> float:
        """Upper bound for |self| on [0, hi]."""
        if self.family == "constant":
            return abs(self.value)
        if self.family == "exp_decay":
            return abs(self.a)
        if self.family == "tabulated":
            return max(abs(v) for _, v in self.points)
        s = np.linspace(0.0, hi, 257)
        return float(np.max(np.abs(self(s))))  # polynomial: monotone tail

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        if self.family == "constant":
            out = np.full(s.shape, self.value)
        elif self.family == "polynomial":
            out = np.polynomial.polynomial.polyval(s, self.coeffs)
        elif self.family == "exp_decay":
            out = self.a * np.exp(-self.b * s)
        else:
            ss = np.array([p[0] for p in self.points])
            vv = np.array([p[1] for p in self.points])
            out = np.interp(s, ss, vv)  # clamps beyond both ends
        return float(out) if scalar else np.asarray(out, dtype=float)


@dataclass(frozen=True)
class ProblemSpec:
    """One initial-boundary-value problem on the half line."""

    kind: str
    alpha: float
    lam: float
    horizon: float
    f: FunctionSpec
    g: FunctionSpec | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        FractionalOrder(self.alpha)
        Diffusivity(self.lam)
        if not self.horizon > 0.0 or not math.isfinite(self.horizon):
            raise ValueError("horizon must be positive and finite")
        if not isinstance(self.f, FunctionSpec):
            raise TypeError("f must be a FunctionSpec")
        if not self.f.bounded_on_half_line:
            raise ValueError("initial datum f must be bounded on [0, inf)")
        if self.kind == "neumann_zero":
            if self.g is not None:
                raise ValueError("neumann_zero takes no boundary datum g")
        else:
            if not isinstance(self.g, FunctionSpec):
                raise TypeError(f"{self.kind} requires a boundary datum g")

    @property
    def nu(self) -> float:
        return 0.5 * self.alpha


@dataclass(frozen=True)
class EvalGrid:
    """Strictly increasing evaluation abscissae: xs >= 0, ts > 0."""

    xs: np.ndarray
    ts: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ts = np.asarray(self.ts, dtype=float)
        if xs.ndim != 1 or ts.ndim != 1 or xs.size == 0 or ts.size == 0:
            raise ValueError("grid axes must be nonempty 1-d arrays")
        if not np.all(np.isfinite(xs)) or not np.all(np.isfinite(ts)):
            raise ValueError("grid entries must be finite")
        if xs[0] < 0.0:
            raise ValueError("xs must start at or above 0")
        if ts[0] <= 0.0:
            raise ValueError("ts must be strictly positive")
        if np.any(np.diff(xs) <= 0.0) or np.any(np.diff(ts) <= 0.0):
            raise ValueError("grid axes must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ts", ts)

    @property
    def shape(self) -> tuple:
        return (self.xs.size, self.ts.size)


@dataclass(frozen=True)
class SolutionField:
    """Solution values on a grid: values[i, j] at (xs[i], ts[j])."""

    grid: EvalGrid
    values: np.ndarray
    error_estimates: np.ndarray
    provenance: str

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        errs = np.asarray(self.error_estimates, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid {self.grid.shape}"
            )
        if errs.shape != values.shape:
            raise ValueError("error_estimates shape must match values")
        if errs.size and not np.all(errs >= 0.0):
            raise ValueError("error_estimates must be nonnegative")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "error_estimates", errs)


@dataclass(frozen=True)
class ErrorReport:
    """Norms and pointwise magnitudes of a field difference or residual."""

    linf: float
    l2: float
    pointwise: np.ndarray
    grid: EvalGrid

    def __post_init__(self) -> None:
        pw = np.asarray(self.pointwise, dtype=float)
        if not self.linf >= 0.0 or not self.l2 >= 0.0:
            raise ValueError("norms must be nonnegative")
        if pw.size and self.linf < np.max(np.abs(pw)) * (1.0 - 1e-12):
            raise ValueError("linf must dominate the pointwise magnitudes")
        object.__setattr__(self, "pointwise", pw)

    @classmethod
    def from_difference(cls, diff: np.ndarray, grid: EvalGrid) -> "ErrorReport":
        diff = np.abs(np.asarray(diff, dtype=float))
        return cls(
            linf=float(diff.max()) if diff.size else 0.0,
            l2=float(np.sqrt(np.mean(diff**2))) if diff.size else 0.0,
            pointwise=diff,
            grid=grid,
        )


# --------------------------------------------------------------------------
# document form
# --------------------------------------------------------------------------


def _need(obj: dict, key: str, path: str):
    if key not in obj:
        raise ProblemFormatError(f"{path}{key}", "missing required field")
    return obj[key]


def _as_number(v, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ProblemFormatError(path, f"expected a number, got {v!r}")
    return float(v)


def _function_from_document(doc, path: str) -> FunctionSpec:
    if not isinstance(doc, dict):
        raise ProblemFormatError(path, "expected a function object")
    family = _need(doc, "family", f"{path}.")
    if family not in _FAMILIES:
        raise ProblemFormatError(f"{path}.family", f"unknown family {family!r}")
    try:
        if family == "constant":
            return FunctionSpec.constant(
                _as_number(_need(doc, "value", f"{path}."), f"{path}.value")
            )
        if family == "polynomial":
            coeffs = _need(doc, "coeffs", f"{path}.")
            if not isinstance(coeffs, list) or not coeffs:
                raise ProblemFormatError(
                    f"{path}.coeffs", "expected a nonempty list of numbers"
                )
            return FunctionSpec.polynomial(
                [_as_number(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
            )
        if family == "exp_decay":
            return FunctionSpec.exp_decay(
                _as_number(_need(doc, "a", f"{path}."), f"{path}.a"),
                _as_number(_need(doc, "b", f"{path}."), f"{path}.b"),
            )
        pts = _need(doc, "points", f"{path}.")
        if not isinstance(pts, list):
            raise ProblemFormatError(f"{path}.points", "expected a list of pairs")
        pairs = []
        for i, p in enumerate(pts):
            if not isinstance(p, list) or len(p) != 2:
                raise ProblemFormatError(
                    f"{path}.points[{i}]", "expected an [s, value] pair"
                )
            pairs.append(
                (
                    _as_number(p[0], f"{path}.points[{i}][0]"),
                    _as_number(p[1], f"{path}.points[{i}][1]"),
                )
            )
        return FunctionSpec.tabulated(pairs)
    except ProblemFormatError:
        raise
    except ValueError as exc:
        # map constructor invariants onto the document path
        key = {"polynomial": "coeffs", "tabulated": "points", "exp_decay": "b"}[family]
        raise ProblemFormatError(f"{path}.{key}", str(exc)) from exc


def _grid_from_document(doc, path: str) -> EvalGrid:
    if not isinstance(doc, dict):
        raise ProblemFormatError(path, "expected a grid object")
    axes = {}
    for key in ("xs", "ts"):
        arr = _need(doc, key, f"{path}.")
        if not isinstance(arr, list) or not arr:
            raise ProblemFormatError(
                f"{path}.{key}", "expected a nonempty list of numbers"
            )
        axes[key] = [
            _as_number(v, f"{path}.{key}[{i}]") for i, v in enumerate(arr)
        ]
    try:
        return EvalGrid(xs=np.array(axes["xs"]), ts=np.array(axes["ts"]))
    except ValueError as exc:
        raise ProblemFormatError(path, str(exc)) from exc


def loads_problem(text: str):
    """Parse a problem document string.

    Returns ``(ProblemSpec, EvalGrid, oracle_doc)`` where ``oracle_doc`` is
    the raw optional oracle-configuration object (or None); the oracle
    module turns it into an OracleConfig.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError("<document>", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProblemFormatError("<document>", "top level must be an object")

    kind = _need(doc, "kind", "")
    if kind not in _KINDS:
        raise ProblemFormatError("kind", f"must be one of {', '.join(_KINDS)}")
    alpha = _as_number(_need(doc, "alpha", ""), "alpha")
    if not (0.0 < alpha <= 1.0):
        raise ProblemFormatError("alpha", f"must lie in (0, 1], got {alpha}")
    lam = _as_number(_need(doc, "lambda", ""), "lambda")
    if not lam > 0.0:
        raise ProblemFormatError("lambda", f"must be positive, got {lam}")
    horizon = _as_number(_need(doc, "horizon", ""), "horizon")
    if not horizon > 0.0:
        raise ProblemFormatError("horizon", f"must be positive, got {horizon}")

    f = _function_from_document(_need(doc, "f", ""), "f")
    g = None
    if kind == "neumann_zero":
        if "g" in doc and doc["g"] is not None:
            raise ProblemFormatError("g", "must be absent for neumann_zero")
    else:
        g = _function_from_document(_need(doc, "g", ""), "g")

    grid = _grid_from_document(_need(doc, "grid", ""), "grid")
    if grid.ts[-1] > horizon * (1.0 + 1e-12):
        raise ProblemFormatError("grid.ts", "grid times exceed the horizon")

    try:
        spec = ProblemSpec(kind=kind, alpha=alpha, lam=lam, horizon=horizon, f=f, g=g)
    except ValueError as exc:
        raise ProblemFormatError("f" if "datum f" in str(exc) else "<document>",
                                 str(exc)) from exc

    oracle_doc = doc.get("oracle")
    if oracle_doc is not None and not isinstance(oracle_doc, dict):
        raise ProblemFormatError("oracle", "expected an object")
    return spec, grid, oracle_doc


def load_problem(path: str):
    """Read and validate a problem file; see ``loads_problem``."""
    with open(path, "r", encoding="utf-8") as fh:
        return loads_problem(fh.read())


def _function_document(fn: FunctionSpec) -> dict:
    if fn.family == "constant":
        return {"family": "constant", "value": fn.value}
    if fn.family == "polynomial":
        return {"family": "polynomial", "coeffs": list(fn.coeffs)}
    if fn.family == "exp_decay":
        return {"family": "exp_decay", "a": fn.a, "b": fn.b}
    return {"family": "tabulated", "points": [[s, v] for s, v in fn.points]}


def problem_document(spec: ProblemSpec, grid: EvalGrid, oracle_doc=None) -> dict:
    """Normalized document form; inverse of ``loads_problem``."""
    doc = {
        "kind": spec.kind,
        "alpha": spec.alpha,
        "lambda": spec.lam,
        "horizon": spec.horizon,
        "f": _function_document(spec.f),
    }
    if spec.g is not None:
        doc["g"] = _function_document(spec.g)
    doc["grid"] = {"xs": list(map(float, grid.xs)), "ts": list(map(float, grid.ts))}
    if oracle_doc is not None:
        doc["oracle"] = dict(oracle_doc)
    return doc
