import math
import threading

import numpy as np
import pytest
from pydantic import ValidationError

from src.analysis import (
    CumulativeIntegral,
    InnerProduct,
    cumulative,
    distance,
    gram_matrix,
    inner,
    integrate,
    interior_grid,
    norm,
)
from src.errors import NonFiniteIntegrand, SubdivisionLimit, ZeroNorm


def test_integrate_polynomials():
    assert integrate(lambda t: t * t, -1.0, 1.0) == pytest.approx(2 / 3, abs=1e-12)
    assert integrate(lambda t: t ** 4 / 6, -1.0, 1.0) == pytest.approx(1 / 15, abs=1e-12)


def test_integrate_empty_and_signed():
    assert integrate(lambda t: 1.0 / 0.0 if t else 0.0, 0.0, 0.0) == 0.0
    forward = integrate(math.exp, 0.0, 1.0)
    assert integrate(math.exp, 1.0, 0.0) == pytest.approx(-forward, rel=1e-14)
    assert forward == pytest.approx(math.e - 1, rel=1e-12)


def test_integrate_non_finite():
    with pytest.raises(NonFiniteIntegrand):
        integrate(lambda t: math.nan, 0.0, 1.0)


def test_integrate_subdivision_limit():
    with pytest.raises(SubdivisionLimit):
        integrate(lambda t: math.sin(1.0 / t) / t if t else 0.0, 1e-6, 1.0, tol=1e-14, max_subdivisions=5)


def test_inner_product_validation():
    with pytest.raises(ValidationError):
        InnerProduct(a=1.0, b=-1.0)
    with pytest.raises(ValidationError):
        InnerProduct(a=-1.0, b=1.0, quad_tol=0.0)
    ip = InnerProduct(a=0.0, b=2.0, weight="1 + x")
    assert not ip.unit_weight
    assert ip.weight.value(1.0) == 2.0


def test_inner_examples(unit_ip):
    assert inner("1", "x", unit_ip) == pytest.approx(0.0, abs=1e-12)
    assert inner("x", "x^3/6", unit_ip) == pytest.approx(1 / 15, abs=1e-12)
    assert inner("1", "1", unit_ip) == pytest.approx(2.0, abs=1e-12)


def test_weighted_inner():
    ip = InnerProduct(a=0.0, b=1.0, weight="exp(x)")
    assert inner("1", "x", ip) == pytest.approx(1.0, rel=1e-12)  # integral of x e^x on [0, 1]


def test_norm_examples(unit_ip):
    assert norm("1", unit_ip) == pytest.approx(math.sqrt(2), rel=1e-12)
    assert norm("x", unit_ip) == pytest.approx(math.sqrt(2 / 3), rel=1e-12)
    assert norm("x^2/2 - 1/6", unit_ip) == pytest.approx(math.sqrt(2 / 45), rel=1e-11)


def test_zero_norm(unit_ip):
    with pytest.raises(ZeroNorm):
        norm("x - x", unit_ip)


def test_distance(unit_ip):
    assert distance("x", "x", unit_ip) == 0.0
    assert distance("1 + x", "x", unit_ip) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_symmetry_and_cauchy_schwarz(unit_ip):
    fs = ["exp(x)", "sin(3 * x) + x", "1 + x^2/4", "cos(x) * x^3"]
    for f in fs:
        for g in fs:
            fg, gf = inner(f, g, unit_ip), inner(g, f, unit_ip)
            assert fg == pytest.approx(gf, rel=1e-13, abs=1e-15)
            assert abs(fg) <= norm(f, unit_ip) * norm(g, unit_ip) * (1 + 1e-10)


def test_gram_matrix(unit_ip):
    gram = gram_matrix(["1", "x", "x^2"], unit_ip)
    expected = np.array([[2, 0, 2 / 3], [0, 2 / 3, 0], [2 / 3, 0, 2 / 5]])
    assert np.allclose(gram, expected, atol=1e-12)
    assert np.array_equal(gram, gram.T)


def test_interior_grid():
    grid = interior_grid(-1.0, 1.0, 257)
    assert len(grid) == 257
    assert grid[128] == 0.0
    assert -1.0 < grid[0] and grid[-1] < 1.0


def test_cumulative_examples():
    ones = CumulativeIntegral(lambda t: 1.0, 0.0, (-1.0, 1.0))
    assert cumulative(ones, 0.0) == 0.0
    assert cumulative(ones, 0.8) == pytest.approx(0.8, abs=1e-13)
    minus_t = CumulativeIntegral(lambda t: -t, 0.0, (-1.0, 1.0))
    assert cumulative(minus_t, 1.0) == pytest.approx(-0.5, abs=1e-13)
    assert cumulative(minus_t, -1.0) == pytest.approx(-0.5, abs=1e-13)


def test_cumulative_base_point_exact_zero():
    ci = CumulativeIntegral(math.exp, 0.3, (-1.0, 2.0))
    assert ci.value(0.3) == 0.0
    assert ci.checkpoints[0.3] == 0.0


def test_cumulative_additivity():
    f = lambda t: math.exp(t) * math.cos(3 * t)
    ci = CumulativeIntegral(f, -0.2, (-1.0, 1.0), tol=1e-11)
    rng = np.random.default_rng(11)
    for x, y in np.sort(rng.uniform(-1.0, 1.0, size=(20, 2)), axis=1):
        lhs = cumulative(ci, x) + integrate(f, x, y, tol=1e-11)
        assert lhs == pytest.approx(cumulative(ci, y), abs=2e-11)


def test_cumulative_refines_hard_integrands():
    ci = CumulativeIntegral(lambda t: 1.0 / (1e-2 + t * t), 0.0, (-1.0, 1.0), tol=1e-10)
    exact = 10.0 * math.atan(10.0)
    assert ci.value(1.0) == pytest.approx(exact, rel=1e-10)
    assert ci.value(-1.0) == pytest.approx(-exact, rel=1e-10)
    assert len(ci.panels) > 2


def test_cumulative_subdivision_limit():
    ci = CumulativeIntegral(lambda t: abs(t - 0.1234567) ** 0.5, 0.0, (-1.0, 1.0), max_subdivisions=4)
    with pytest.raises(SubdivisionLimit):
        ci.value(0.5)


def test_cumulative_caches_values():
    calls = []

    def f(t):
        calls.append(t)
        return math.sin(t)

    ci = CumulativeIntegral(f, 0.0, (-1.0, 1.0))
    first = ci.value(0.7)
    count = len(calls)
    assert ci.value(0.7) == first
    ci.value(-0.4)
    assert len(calls) == count
    assert first == pytest.approx(1 - math.cos(0.7), abs=1e-13)


def test_cumulative_concurrent_reads():
    ci = CumulativeIntegral(math.cos, 0.0, (-1.0, 1.0))
    xs = list(np.linspace(-1.0, 1.0, 41))
    results = {}

    def work(offset):
        results[offset] = [ci.value(x) for x in xs]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for values in results.values():
        assert values == results[0]
    assert results[0][-1] == pytest.approx(math.sin(1.0), abs=1e-13)
