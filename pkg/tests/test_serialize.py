import json

import pytest

from paretoscope.core import GoalSpec, ObjectiveVector, ResourcePoint
from paretoscope.errors import ValidationError
from paretoscope.grids import GridSpec
from paretoscope.sampler import Front, FrontPoint, sample_front
from paretoscope.scalarize import ScalarSolution
from paretoscope import serialize

TOY_GRID = GridSpec.counts(101, 101)


@pytest.fixture(scope="module")
def toy_front(toy):
    return sample_front(toy, count=5, eps=1e-6, search=toy.default_grid,
                        created_at="2026-08-08T00:00:00+00:00")


def test_json_round_trip_byte_identical(toy_front):
    data = serialize.front_to_json_bytes(toy_front)
    again = serialize.front_to_json_bytes(serialize.front_from_json_bytes(data))
    assert again == data


def test_json_field_order_fixed(toy_front):
    doc = json.loads(serialize.front_to_json_bytes(toy_front))
    assert list(doc.keys()) == [
        "problem", "method", "eps", "refinement_version", "points", "created_at",
    ]
    assert list(doc["points"][0].keys()) == ["x", "g", "lambda", "direction", "boundary_kind"]


def test_json_numbers_full_precision(toy_front):
    doc = json.loads(serialize.front_to_json_bytes(toy_front))
    for point, original in zip(doc["points"], toy_front.points):
        assert tuple(point["g"]) == original.g.values
        assert point["lambda"] == original.lam


def test_grid_front_points_omit_ray_fields():
    front = Front(
        problem="p", method="grid",
        points=[FrontPoint(ResourcePoint((0.5,)), ObjectiveVector((1.0,)))],
        created_at="2026-01-01T00:00:00+00:00",
    )
    doc = json.loads(serialize.front_to_json_bytes(front))
    assert list(doc["points"][0].keys()) == ["x", "g", "boundary_kind"]


def test_csv_column_count_mimo(mimo):
    # 3 resource dims + 3 objectives + lambda + boundary kind = 8 columns
    front = sample_front(mimo, count=2, eps=1e-3,
                         search=GridSpec.values([1, 50, 100], [2, 200, 500], [0.0, 1.0, 100.0]))
    data = serialize.front_to_csv_bytes(front).decode()
    header = data.splitlines()[0].split(",")
    assert header == ["x_1", "x_2", "x_3", "g_1", "g_2", "g_3", "lambda", "boundary_kind"]
    assert len(data.splitlines()) == len(front.points) + 1


def test_csv_full_precision_round_trip(toy_front):
    data = serialize.front_to_csv_bytes(toy_front).decode()
    row = data.splitlines()[1].split(",")
    assert float(row[2]) == toy_front.points[0].g.values[0]
    assert float(row[4]) == toy_front.points[0].lam


def test_empty_front_csv_headers_only():
    front = Front(problem="p", method="grid", points=[], parameters={"D": 2, "M": 2},
                  created_at="2026-01-01T00:00:00+00:00")
    data = serialize.front_to_csv_bytes(front).decode()
    assert data == "x_1,x_2,g_1,g_2,lambda,boundary_kind\n"


def test_empty_front_csv_without_dims_errors():
    front = Front(problem="p", method="grid", points=[], created_at="t")
    with pytest.raises(ValidationError):
        serialize.front_to_csv_bytes(front)


def test_unknown_format_rejected(toy_front):
    with pytest.raises(ValidationError):
        serialize.export_front(toy_front, "parquet")


def test_scalar_solution_dict():
    sol = ScalarSolution(
        x_star=ResourcePoint((0.5, 0.5)),
        g_star=ObjectiveVector((0.5, 0.5)),
        value=0.5,
        goal=GoalSpec("chebyshev", weights=(1.0, 1.0)),
        diagnostics={"grid_points": 4},
    )
    doc = serialize.scalar_solution_to_dict(sol)
    assert doc["x"] == [0.5, 0.5]
    assert doc["goal"] == {"kind": "chebyshev", "weights": [1.0, 1.0]}
    assert doc["diagnostics"]["grid_points"] == 4


def test_scalar_solution_distance_goal_dict():
    sol = ScalarSolution(
        x_star=ResourcePoint((0.0,)),
        g_star=ObjectiveVector((0.0, 0.0)),
        value=-1.0,
        goal=GoalSpec("distance", reference=ObjectiveVector((1.0, 0.0)), p=float("inf")),
    )
    doc = serialize.scalar_solution_to_dict(sol)
    assert doc["goal"] == {"kind": "distance", "reference": [1.0, 0.0], "p": "inf"}
