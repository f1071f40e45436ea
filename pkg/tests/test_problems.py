"""Problem documents, grids, fields, and their validation paths."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdiff import (
    ErrorReport,
    EvalGrid,
    FunctionSpec,
    ProblemFormatError,
    ProblemSpec,
    SolutionField,
    loads_problem,
    problem_document,
)

MINIMAL_DIRICHLET = {
    "kind": "dirichlet",
    "alpha": 0.5,
    "lambda": 1.0,
    "horizon": 1.0,
    "f": {"family": "constant", "value": 0.0},
    "g": {"family": "constant", "value": 1.0},
    "grid": {"xs": [0.0, 1.0], "ts": [0.5, 1.0]},
}


def test_function_families_evaluate():
    c = FunctionSpec.constant(3.5)
    assert c(0.0) == 3.5 and c(100.0) == 3.5
    p = FunctionSpec.polynomial([1.0, 2.0, 3.0])
    assert p(2.0) == 1.0 + 4.0 + 12.0
    e = FunctionSpec.exp_decay(2.0, 0.5)
    assert e(0.0) == 2.0
    assert e(2.0) == pytest.approx(2.0 * np.exp(-1.0), rel=1e-15)
    t = FunctionSpec.tabulated([(0.0, 1.0), (1.0, 3.0), (2.0, 0.0)])
    assert t(0.5) == 2.0
    # constant extrapolation on both sides
    assert t(-5.0) == 1.0 and t(10.0) == 0.0
    out = t(np.array([0.0, 1.5, 2.0]))
    assert out.shape == (3,) and out[1] == 1.5


def test_function_validation():
    with pytest.raises(ValueError):
        FunctionSpec(family="sinusoid")
    with pytest.raises(ValueError):
        FunctionSpec.polynomial([])
    with pytest.raises(ValueError):
        FunctionSpec.exp_decay(1.0, -0.5)
    with pytest.raises(ValueError):
        FunctionSpec.tabulated([(0.0, 1.0)])
    with pytest.raises(ValueError):
        FunctionSpec.tabulated([(0.0, 1.0), (0.0, 2.0)])


def test_boundedness_rule():
    # growing polynomial cannot be an initial datum but may drive the wall
    grow = FunctionSpec.polynomial([1.0, 1.0])
    assert not grow.bounded_on_half_line
    with pytest.raises(ValueError):
        ProblemSpec(kind="dirichlet", alpha=0.5, lam=1.0, horizon=1.0,
                    f=grow, g=FunctionSpec.constant(0.0))
    ok = ProblemSpec(kind="dirichlet", alpha=0.5, lam=1.0, horizon=1.0,
                     f=FunctionSpec.constant(0.0), g=grow)
    assert ok.g is grow
    # degree-0 polynomial is just a constant
    assert FunctionSpec.polynomial([2.0]).bounded_on_half_line


def test_problem_spec_invariants():
    f = FunctionSpec.constant(1.0)
    g = FunctionSpec.constant(0.0)
    with pytest.raises(ValueError):
        ProblemSpec(kind="robin", alpha=0.5, lam=1.0, horizon=1.0, f=f, g=g)
    with pytest.raises(ValueError):
        ProblemSpec(kind="dirichlet", alpha=1.5, lam=1.0, horizon=1.0, f=f, g=g)
    with pytest.raises(ValueError):
        ProblemSpec(kind="dirichlet", alpha=0.5, lam=0.0, horizon=1.0, f=f, g=g)
    with pytest.raises(ValueError):
        ProblemSpec(kind="dirichlet", alpha=0.5, lam=1.0, horizon=0.0, f=f, g=g)
    with pytest.raises(ValueError):
        ProblemSpec(kind="neumann_zero", alpha=0.5, lam=1.0, horizon=1.0, f=f, g=g)
    with pytest.raises(TypeError):
        ProblemSpec(kind="flux", alpha=0.5, lam=1.0, horizon=1.0, f=f, g=None)
    p = ProblemSpec(kind="neumann_zero", alpha=0.6, lam=2.0, horizon=3.0, f=f)
    assert p.nu == 0.3


def test_eval_grid_invariants():
    with pytest.raises(ValueError):
        EvalGrid(xs=np.array([]), ts=np.array([1.0]))
    with pytest.raises(ValueError):
        EvalGrid(xs=np.array([-0.1, 1.0]), ts=np.array([1.0]))
    with pytest.raises(ValueError):
        EvalGrid(xs=np.array([0.0, 1.0]), ts=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        EvalGrid(xs=np.array([0.0, 0.0]), ts=np.array([1.0]))
    with pytest.raises(ValueError):
        EvalGrid(xs=np.array([0.0, 1.0]), ts=np.array([1.0, np.inf]))
    g = EvalGrid(xs=np.array([0.0, 2.0, 5.0]), ts=np.array([0.1, 0.2]))
    assert g.shape == (3, 2)


def test_solution_field_invariants():
    g = EvalGrid(xs=np.array([0.0, 1.0]), ts=np.array([1.0]))
    vals = np.zeros((2, 1))
    with pytest.raises(ValueError):
        SolutionField(g, np.zeros((1, 2)), vals, "analytic-fractional")
    with pytest.raises(ValueError):
        SolutionField(g, vals, -np.ones((2, 1)), "analytic-fractional")
    with pytest.raises(ValueError):
        SolutionField(g, vals, vals, "hand-made")
    f = SolutionField(g, vals, np.abs(vals), "oracle-fd")
    assert f.provenance == "oracle-fd"


def test_error_report_invariants():
    g = EvalGrid(xs=np.array([0.0, 1.0]), ts=np.array([1.0]))
    pw = np.array([[0.5], [2.0]])
    with pytest.raises(ValueError):
        ErrorReport(linf=1.0, l2=0.5, pointwise=pw, grid=g)
    r = ErrorReport.from_difference(np.array([[0.5], [-2.0]]), g)
    assert r.linf == 2.0
    assert r.l2 == pytest.approx(np.sqrt((0.25 + 4.0) / 2.0))


def test_minimal_document_accepted():
    spec, grid, oracle_doc = loads_problem(json.dumps(MINIMAL_DIRICHLET))
    assert spec.kind == "dirichlet" and spec.alpha == 0.5 and spec.lam == 1.0
    assert grid.shape == (2, 2)
    assert oracle_doc is None


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda d: d.update(alpha=1.5), "alpha"),
        (lambda d: d.update(alpha="half"), "alpha"),
        (lambda d: d.pop("lambda"), "lambda"),
        (lambda d: d.update({"lambda": -1.0}), "lambda"),
        (lambda d: d.update(horizon=0.0), "horizon"),
        (lambda d: d.update(kind="wave"), "kind"),
        (lambda d: d.update(f={"family": "constant"}), "f.value"),
        (lambda d: d.update(f={"family": "spline"}), "f.family"),
        (
            lambda d: d.update(
                f={"family": "tabulated", "points": [[1.0, 0.0], [0.5, 1.0]]}
            ),
            "f.points",
        ),
        (
            lambda d: d.update(
                f={"family": "tabulated", "points": [[0.0, 1.0], ["x", 1.0]]}
            ),
            "f.points[1][0]",
        ),
        (lambda d: d.update(f={"family": "polynomial", "coeffs": []}), "f.coeffs"),
        (lambda d: d.update(grid={"xs": [0.0, 1.0]}), "grid.ts"),
        (lambda d: d.update(grid={"xs": [0.0, 1.0], "ts": [2.0]}), "grid.ts"),
        (lambda d: d.update(grid={"xs": [1.0, 0.0], "ts": [0.5]}), "grid"),
        (lambda d: d.update(oracle=[1, 2]), "oracle"),
    ],
)
def test_document_errors_name_field(mutate, path):
    doc = json.loads(json.dumps(MINIMAL_DIRICHLET))
    mutate(doc)
    with pytest.raises(ProblemFormatError) as err:
        loads_problem(json.dumps(doc))
    assert err.value.field == path


def test_neumann_rejects_boundary_datum():
    doc = json.loads(json.dumps(MINIMAL_DIRICHLET))
    doc["kind"] = "neumann_zero"
    with pytest.raises(ProblemFormatError) as err:
        loads_problem(json.dumps(doc))
    assert err.value.field == "g"
    del doc["g"]
    spec, _, _ = loads_problem(json.dumps(doc))
    assert spec.g is None


def test_not_json_and_not_object():
    with pytest.raises(ProblemFormatError):
        loads_problem("{nope")
    with pytest.raises(ProblemFormatError):
        loads_problem("[1, 2]")


def test_unbounded_f_in_document():
    doc = json.loads(json.dumps(MINIMAL_DIRICHLET))
    doc["f"] = {"family": "polynomial", "coeffs": [0.0, 2.0]}
    with pytest.raises(ProblemFormatError) as err:
        loads_problem(json.dumps(doc))
    assert err.value.field == "f"


def test_document_roundtrip_preserves_semantics():
    doc = {
        "kind": "flux",
        "alpha": 0.75,
        "lambda": 0.4,
        "horizon": 2.0,
        "f": {"family": "tabulated", "points": [[0.0, 1.0], [1.0, 0.5], [4.0, 0.0]]},
        "g": {"family": "exp_decay", "a": 1.5, "b": 0.25},
        "grid": {"xs": [0.0, 0.5, 2.0], "ts": [0.4, 2.0]},
        "oracle": {"L": 12.0, "Nx": 64, "Nt": 32},
    }
    spec, grid, oracle_doc = loads_problem(json.dumps(doc))
    emitted = problem_document(spec, grid, oracle_doc)
    spec2, grid2, oracle2 = loads_problem(json.dumps(emitted))
    assert spec2 == spec
    assert np.array_equal(grid2.xs, grid.xs) and np.array_equal(grid2.ts, grid.ts)
    assert oracle2 == oracle_doc


def test_grid_beyond_horizon_rejected():
    doc = json.loads(json.dumps(MINIMAL_DIRICHLET))
    doc["grid"]["ts"] = [0.5, 1.5]
    with pytest.raises(ProblemFormatError) as err:
        loads_problem(json.dumps(doc))
    assert err.value.field == "grid.ts"


@given(
    pts=st.lists(
        st.tuples(
            st.floats(-10.0, 10.0, allow_nan=False),
            st.floats(-5.0, 5.0, allow_nan=False),
        ),
        min_size=2,
        max_size=8,
        unique_by=lambda p: p[0],
    ),
    xs=st.lists(st.floats(-20.0, 20.0, allow_nan=False), min_size=1, max_size=16),
)
@settings(max_examples=60, deadline=None)
def test_tabulated_stays_within_value_range(pts, xs):
    pts = sorted(pts)
    fn = FunctionSpec.tabulated(pts)
    lo = min(v for _, v in pts)
    hi = max(v for _, v in pts)
    out = fn(np.array(xs))
    assert np.all(out >= lo - 1e-12) and np.all(out <= hi + 1e-12)
