import math

import numpy as np
import pytest

from src.errors import DomainError, ExpressionSyntaxError, UnknownFunctionError
from src.expr import nodes, parse


def test_constant_parses_to_single_node():
    e = parse("1")
    assert e.root == nodes.Const(1.0)
    assert e.is_constant


def test_precedence_and_sexpr():
    assert parse("x^2/2 - 1/6").to_sexpr() == "(sub (div (pow x 2) 2) (div 1 6))"
    assert parse("1 + 2 * x").to_sexpr() == "(add 1 (mul 2 x))"
    assert parse("8 / 4 / 2").to_sexpr() == "(div (div 8 4) 2)"


def test_implicit_multiplication_rejected():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("exp(2x)")
    assert info.value.offset == 5
    assert ")" in info.value.expected


def test_unary_minus_rejected():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("-x")
    assert info.value.offset == 0


def test_exponent_must_be_integer():
    with pytest.raises(ExpressionSyntaxError):
        parse("x^y")
    with pytest.raises(ExpressionSyntaxError):
        parse("x^1.5")


def test_unknown_function():
    with pytest.raises(UnknownFunctionError) as info:
        parse("1 + tan(x)")
    assert info.value.name == "tan"
    assert info.value.offset == 4


def test_empty_text_rejected():
    with pytest.raises(ExpressionSyntaxError):
        parse("   ")


def test_serialize_round_trip_preserves_tree():
    for text in ["x^2/2 - 1/6", "exp(sin(x)) * (1 + x)^3", "1.5e-3 + sqrt(2 + cos(x))"]:
        e = parse(text)
        assert parse(e.serialize()) == e


def test_eval_jet_hand_derivatives():
    assert list(parse("x^2/2 - 1/6").eval_jet(1.0, 2)) == pytest.approx([1 / 3, 1.0, 1.0], abs=1e-15)
    assert list(parse("1").eval_jet(0.7, 3)) == [1.0, 0.0, 0.0, 0.0]
    assert list(parse("exp(x)").eval_jet(0.0, 4)) == pytest.approx([1.0] * 5, abs=1e-15)


def test_eval_jet_matches_value():
    e = parse("log(2 + x) * cos(x) / sqrt(1 + x^2)")
    for x in (-0.9, 0.0, 0.4, 1.0):
        assert e.eval_jet(x, 3).value == pytest.approx(e.value(x), rel=1e-14)


def test_sin_derivatives():
    jet = parse("sin(x)").eval_jet(0.3, 4)
    expected = [math.sin(0.3), math.cos(0.3), -math.sin(0.3), -math.cos(0.3), math.sin(0.3)]
    assert list(jet) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("text, x", [("log(x)", 0.0), ("sqrt(x)", -1.0), ("1/x", 0.0)])
def test_domain_errors(text, x):
    e = parse(text)
    with pytest.raises(DomainError):
        e.eval_jet(x, 2)
    with pytest.raises(DomainError):
        e.value(x)


def random_polynomial(rng, degree):
    """Expression text for a random polynomial; the grammar has no unary minus"""
    coefficients = rng.uniform(0.5, 2.0, size=degree + 1) * rng.choice([-1.0, 1.0], size=degree + 1)
    text = "0"
    for k, c in enumerate(coefficients):
        text += f" {'+' if c > 0 else '-'} {abs(c)!r} * x^{k}"
    return text, coefficients


@pytest.mark.parametrize("seed", range(6))
def test_eval_jet_prefix_and_finite_differences(seed):
    rng = np.random.default_rng(seed)
    degree = int(rng.integers(0, 7))
    text, coefficients = random_polynomial(rng, degree)
    e = parse(text)
    polynomial = np.polynomial.Polynomial(coefficients)
    for x in rng.uniform(-1.0, 1.0, size=5):
        for m in range(4):
            shorter, longer = e.eval_jet(x, m), e.eval_jet(x, m + 1)
            np.testing.assert_allclose(longer.coeffs[: m + 1], shorter.coeffs, rtol=1e-13, atol=1e-13)
        step = 1e-5
        central = (polynomial(x + step) - polynomial(x - step)) / (2 * step)
        assert e.eval_jet(x, 1)[1] == pytest.approx(central, rel=1e-6, abs=1e-7)
        assert e.eval_jet(x, 1)[1] == pytest.approx(polynomial.deriv()(x), rel=1e-12, abs=1e-12)


def test_power_overflow_is_a_domain_error():
    with pytest.raises(DomainError):
        parse("(x + 10)^400").value(0.5)
