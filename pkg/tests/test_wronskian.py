import numpy as np
import pytest

from src.errors import SingularWronskian
from src.jet import Jet
from src.wronskian import (
    WronskiFrame,
    cramer_sums,
    replaced_wronskian,
    variation_integrand,
    wronskian,
)
from src.wronskian.determinant import bareiss_determinant, cofactor_determinant, determinant
from src.wronskian.maps import LinearCombination, as_map

LEGENDRE3 = WronskiFrame(["1", "x", "x^2/2 - 1/6"])


def test_triangular_frame_has_unit_wronskian():
    for x in (-0.8, 0.0, 0.37, 1.0):
        assert wronskian(LEGENDRE3, x).value == pytest.approx(1.0, abs=1e-15)
    assert wronskian(WronskiFrame(["1", "x"]), 0.3).value == pytest.approx(1.0, abs=1e-15)


def test_single_function_wronskian_is_its_jet():
    frame = WronskiFrame(["exp(x) + x^3"])
    w = wronskian(frame, 0.4, jet_order=2)
    assert list(w) == pytest.approx(list(frame.functions[0].eval_jet(0.4, 2)), rel=1e-15)


def test_wronskian_jet_order_gives_derivative():
    frame = WronskiFrame(["exp(x)", "exp(2 * x)"])  # W = exp(3x)
    w = wronskian(frame, 0.2, jet_order=2)
    e = np.exp(0.6)
    assert list(w) == pytest.approx([e, 3 * e, 9 * e], rel=1e-13)


def test_replaced_wronskians():
    assert replaced_wronskian(LEGENDRE3, 1, 1.0).value == pytest.approx(2 / 3, abs=1e-15)
    assert replaced_wronskian(LEGENDRE3, 2, 1.0).value == pytest.approx(-1.0, abs=1e-15)
    for x in (-0.5, 0.9):
        assert replaced_wronskian(LEGENDRE3, 3, x).value == pytest.approx(1.0, abs=1e-15)


def test_variation_integrands():
    assert list(variation_integrand(WronskiFrame(["1"]), "1", 1, 0.2, jet_order=2)) == [1.0, 0.0, 0.0]
    frame = WronskiFrame(["1", "x"])
    assert variation_integrand(frame, "1", 1, 0.5).value == pytest.approx(-0.5, abs=1e-15)
    assert list(variation_integrand(frame, "1", 2, 0.5, jet_order=2)) == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)


def test_singular_wronskian_raised():
    frame = WronskiFrame(["x", "x^2"])  # W = x^2
    with pytest.raises(SingularWronskian) as info:
        variation_integrand(frame, "1", 1, 0.0)
    assert info.value.x == 0.0


def test_cramer_sums_are_unit_vector():
    frame = WronskiFrame(["exp(x)", "exp(2 * x)", "exp(3 * x)", "1"])
    for x in (-0.6, 0.1, 0.8):
        assert cramer_sums(frame, x) == pytest.approx([0.0, 0.0, 0.0, 1.0], abs=1e-10)


def test_swapping_columns_flips_sign():
    frame = WronskiFrame(["exp(x)", "x^2 + 1", "sin(x)"])
    assert wronskian(frame.swapped(0, 2), 0.3).value == pytest.approx(-wronskian(frame, 0.3).value, rel=1e-12, abs=1e-14)


def _const_matrix(values):
    return [[Jet(0.0, [v, 0.0]) for v in row] for row in values]


def test_elimination_agrees_with_cofactors():
    rng = np.random.default_rng(3)
    values = rng.normal(size=(6, 6))
    matrix = [[Jet(0.0, [v, 1.0 + v]) for v in row] for row in values]
    assert list(bareiss_determinant(matrix)) == pytest.approx(list(cofactor_determinant(matrix)), rel=1e-10, abs=1e-10)
    assert determinant(matrix).value == pytest.approx(np.linalg.det(values), rel=1e-10)


def test_elimination_singular_pivot_falls_back():
    values = np.eye(5)
    values[:, 2] = 0.0
    assert determinant(_const_matrix(values)).value == 0.0


def test_large_frame_uses_elimination():
    frame = WronskiFrame(["1", "x", "x^2/2", "x^3/6", "x^4/24", "x^5/120"])
    assert wronskian(frame, 0.7).value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_adding_multiple_of_another_column_keeps_wronskian(seed):
    rng = np.random.default_rng(seed)
    functions = [as_map(text) for text in ("exp(x)", "sin(x)", "1 + x^2", "log(3 + x)")]
    i, j = rng.choice(len(functions), size=2, replace=False)
    c = float(rng.normal())
    mixed = list(functions)
    mixed[j] = LinearCombination([(1.0, functions[j]), (c, functions[i])])
    for x in rng.uniform(-0.9, 0.9, size=5):
        expected = wronskian(WronskiFrame(functions), x, jet_order=1)
        actual = wronskian(WronskiFrame(mixed), x, jet_order=1)
        np.testing.assert_allclose(actual.coeffs, expected.coeffs, rtol=1e-11,
                                   atol=1e-12 * np.max(np.abs(expected.coeffs)))
