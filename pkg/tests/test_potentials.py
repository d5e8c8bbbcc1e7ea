import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from numerov import (
    CustomTable,
    DomainError,
    Grid,
    Harmonic,
    HydrogenRadial,
    effective_potential,
    eps_to_ev,
    harmonic_k2,
    hydrogen_coeffs,
    load_potential_table,
    potential_minimum,
)
from numerov.potentials import Form

reals = st.floats(-1e3, 1e3, allow_nan=False)


@pytest.mark.parametrize("x, eps, expected", [(0.0, 0.5, 1.0), (1.0, 0.5, 0.0), (2.0, 1.5, -1.0)])
def test_harmonic_k2(x, eps, expected):
    assert harmonic_k2(x, eps) == expected


@pytest.mark.parametrize(
    "x, eps, l, expected",
    [(1.0, -1.0, 0, (2.0, -2.0, 1.0)), (2.0, -0.25, 1, (1.0, -0.5, 0.25))],
)
def test_hydrogen_coeffs(x, eps, l, expected):
    assert hydrogen_coeffs(x, eps, l) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("l, x, expected", [(0, 1.0, -2.0), (1, 2.0, -0.5), (1, 1.0, 0.0)])
def test_effective_potential(l, x, expected):
    assert effective_potential(x, l) == expected


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_singular_point_rejected(x):
    with pytest.raises(DomainError):
        effective_potential(x, 0)
    with pytest.raises(DomainError):
        hydrogen_coeffs(x, -1.0, 0)


def test_domain_error_is_value_error():
    with pytest.raises(ValueError):
        effective_potential(np.array([1.0, 0.0]), 2)


@pytest.mark.parametrize(
    "eps, expected, tol", [(-0.25, -3.40, 0.01), (0.0, 0.0, 0.0), (-1 / 9, -1.51, 0.01)]
)
def test_eps_to_ev(eps, expected, tol):
    assert abs(eps_to_ev(eps) - expected) <= tol


def test_forms():
    assert Harmonic().form is Form.NORMAL
    assert HydrogenRadial(2).form is Form.GENERALIZED
    assert CustomTable([0, 1], [0, 0]).form is Form.NORMAL


@pytest.mark.parametrize("l", [-1, 11, 1.0])
def test_hydrogen_rejects_bad_l(l):
    with pytest.raises(ValueError):
        HydrogenRadial(l)


def test_minimum_harmonic():
    assert potential_minimum(Harmonic(), Grid.from_step(-10, 10, 0.01)) == (0.0, 0.0)


def test_minimum_hydrogen():
    grid = Grid.from_step(0.004, 80, 0.004)
    x_min, v_min = potential_minimum(HydrogenRadial(1), grid)
    assert abs(x_min - 2.0) <= grid.delta
    assert v_min == pytest.approx(-0.5, abs=1e-5)


def test_minimum_custom_table():
    table = CustomTable([1.0, 2.0, 3.0], [5.0, 3.0, 4.0])
    assert potential_minimum(table, Grid.from_step(1.0, 3.0, 0.25)) == (2.0, 3.0)


@pytest.mark.parametrize(
    "model, grid",
    [
        (Harmonic(), Grid.from_step(1.0, 4.0, 0.01)),
        (HydrogenRadial(3), Grid.from_step(0.01, 40.0, 0.01)),
        (CustomTable([0, 1, 2, 3], [2, -1, 4, 0]), Grid.from_step(0.0, 3.0, 0.01)),
    ],
)
def test_minimum_is_lower_bound(model, grid):
    _, v_min = potential_minimum(model, grid)
    assert np.all(v_min <= model.potential(grid.x))


@given(reals, reals)
def test_harmonic_k2_even(x, eps):
    assert harmonic_k2(x, eps) == harmonic_k2(-x, eps)


@given(st.floats(1e-6, 1e4), reals, st.integers(0, 10))
def test_s_is_eps_minus_effective_potential(x, eps, l):
    assert hydrogen_coeffs(x, eps, l)[2] == eps - effective_potential(x, l)


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_eps_to_ev_linear(a, eps):
    assert eps_to_ev(a * eps) == pytest.approx(a * eps_to_ev(eps), rel=1e-15, abs=1e-300)


def test_custom_table_interpolates_linearly():
    table = CustomTable([0.0, 1.0, 3.0], [0.0, 2.0, 0.0])
    assert table.potential(0.5) == 1.0
    assert table.potential(2.0) == 1.0
    assert table.k2(2.0, 3.0) == 2.0


@pytest.mark.parametrize(
    "x, v",
    [([0.0], [0.0]), ([0.0, 0.0], [1.0, 2.0]), ([1.0, 0.0], [0.0, 0.0]), ([0, math.inf], [0, 0])],
)
def test_custom_table_validation(x, v):
    with pytest.raises(ValueError):
        CustomTable(x, v)


def test_custom_table_is_read_only():
    table = CustomTable([0.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        table.v[0] = 1.0


def test_load_table(tmp_path):
    path = tmp_path / "well.txt"
    path.write_text("# x V\n0.0  1.0\n\n0.5 -1.0  # bottom\n1.0\t1.0\n")
    table = load_potential_table(path)
    np.testing.assert_array_equal(table.x, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(table.v, [1.0, -1.0, 1.0])
    assert table.covers(0.0, 1.0)
    assert not table.covers(-0.1, 1.0)


@pytest.mark.parametrize("text", ["", "# only a comment\n", "0 1 2\n", "0 one\n", "1 0\n0 0\n"])
def test_load_table_errors(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_potential_table(path)
