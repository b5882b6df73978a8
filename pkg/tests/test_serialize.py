import json
import math

import pytest
from hypothesis import given, strategies as st

from econ_ensemble.numdiff import central_difference
from econ_ensemble.serialize import format_float, sweep_csv, to_json
from econ_ensemble.svgplot import line_chart


class TestFormatFloat:
    def test_integral_values_keep_one_decimal(self):
        assert format_float(1.0) == "1.0"
        assert format_float(-3.0) == "-3.0"
        assert format_float(0.0) == "0.0"

    def test_seventeen_digits_round_trip(self):
        x = 0.038126408538395766
        assert float(format_float(x)) == x

    def test_non_finite_become_null(self):
        assert format_float(math.nan) == "null"
        assert format_float(math.inf) == "null"
        assert format_float(-math.inf) == "null"

    @given(st.floats(allow_nan=False, allow_infinity=False,
                     min_value=-1e15, max_value=1e15))
    def test_round_trip_property(self, x):
        assert float(format_float(x)) == x


class TestToJson:
    def test_insertion_order_preserved(self):
        out = to_json({"b": 1, "a": 2})
        assert out.index('"b"') < out.index('"a"')

    def test_is_valid_json(self):
        doc = {"x": [1.5, None, True], "s": 'he said "hi"\n', "empty": {}}
        assert json.loads(to_json(doc)) == {
            "x": [1.5, None, True], "s": 'he said "hi"\n', "empty": {}}

    def test_trailing_newline(self):
        assert to_json({}).endswith("\n")

    def test_unserializable_type(self):
        with pytest.raises(TypeError):
            to_json({"x": object()})


class TestSweepCsv:
    def test_header_and_rows(self):
        out = sweep_csv([(1.0, 0.5, 0.25, 0.5, 0.125)])
        assert out == "T,ln_z,U,N,p\n1.0,0.5,0.25,0.5,0.125\n"

    def test_empty(self):
        assert sweep_csv([]) == "T,ln_z,U,N,p\n"


class TestLineChart:
    def test_structure(self):
        svg = line_chart([0.0, 1.0, 2.0], [0.0, 1.0, 4.0], "x", "y", "demo")
        assert svg.startswith("<svg")
        assert svg.rstrip().endswith("</svg>")
        assert "polyline" in svg
        assert "demo" in svg

    def test_deterministic(self):
        args = ([0.0, 0.5, 1.0], [1.0, 3.0, 2.0], "T", "U", "t")
        assert line_chart(*args) == line_chart(*args)

    def test_constant_series_does_not_divide_by_zero(self):
        svg = line_chart([0.0, 1.0], [2.0, 2.0], "x", "y", "flat")
        assert "nan" not in svg.lower()


class TestCentralDifference:
    def test_quadratic_is_exact_to_roundoff(self):
        d = central_difference(lambda x: x * x, 3.0)
        assert d == pytest.approx(6.0, rel=1e-8)

    def test_richardson_beats_plain_step_on_exp(self):
        d = central_difference(math.exp, 1.0, h=1e-4)
        assert d == pytest.approx(math.e, rel=1e-12)
