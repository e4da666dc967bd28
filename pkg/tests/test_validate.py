import numpy as np
import pytest

from src.analysis import InnerProduct, gram_matrix, interior_grid
from src.models import BASE_POINT_CONVENTION
from src.orthogonalize import BuildConfig, OrthoSystem, build_system
from src.validate import (
    WronskianTable,
    check_base_point,
    check_independence,
    check_ode,
    check_orthogonality,
    check_wronskian_identity,
    default_grid,
    identity_reference,
    perturb_system,
    validate_system,
)
from src.wronskian import WronskiFrame, wronskian
from src.wronskian.maps import as_map


def test_default_grid(legendre4_system):
    grid = default_grid(legendre4_system)
    assert len(grid) == 257
    assert grid == interior_grid(-1.0, 1.0, 257)
    assert len(default_grid(legendre4_system, 33)) == 33


def test_orthogonality_legendre(legendre4_system):
    report = check_orthogonality(legendre4_system)
    assert report.passed
    assert len(report.pairs) == 6
    assert report.max_residual <= 1e-10


def test_orthogonality_single_function():
    system = build_system(BuildConfig(seed="1", N=1, ip=InnerProduct(a=-1.0, b=1.0)))
    report = check_orthogonality(system)
    assert report.passed
    assert report.pairs == []


def test_orthogonality_detects_perturbation(legendre4_system):
    perturbed = perturb_system(legendre4_system, 0.1)
    report = check_orthogonality(perturbed)
    assert not report.passed
    pair = next(p for p in report.pairs if (p.i, p.j) == (1, 2))
    # rho(1, x + 0.1) = 0.2, ||1|| = sqrt(2), ||x + 0.1|| = sqrt(2/3 + 0.02)
    assert pair.residual == pytest.approx(0.2 / (np.sqrt(2) * np.sqrt(2 / 3 + 0.02)), rel=1e-9)


def test_wronskian_identity_legendre(legendre4_system):
    report = check_wronskian_identity(legendre4_system)
    assert report.passed
    assert [s.stage for s in report.stages] == [1, 2, 3, 4]
    assert report.stages[0].residual == 0.0
    assert report.max_residual <= 1e-9


def test_wronskian_identity_exp_seed(exp_system):
    report = check_wronskian_identity(exp_system, interior_grid(-1.0, 1.0, 65))
    assert report.stages[1].residual <= 1e-9
    assert report.passed


def test_ode_residuals_legendre(legendre4_system):
    report = check_ode(legendre4_system)
    assert [s.stage for s in report.stages] == [2, 3, 4]
    assert report.stages[0].residual <= 1e-10
    assert report.stages[2].residual <= 1e-8
    assert report.passed


def test_ode_detects_wrong_function():
    ip = InnerProduct(a=-1.0, b=1.0)
    config = BuildConfig(seed="1", N=2, h_specs=["1"], x0=0.0, ip=ip)
    functions = [as_map("1"), as_map("x^2")]
    wrong = OrthoSystem(functions=functions, config=config, gram=gram_matrix(functions, ip),
                        norms=[2 ** 0.5, 0.4 ** 0.5], coefficients=[[], [0.0]], scales=[1.0, 1.0])
    report = check_ode(wrong, interior_grid(-1.0, 1.0, 9))
    assert not report.passed
    # W(1, x^2) - 1 = 2x - 1, largest at the left end of the grid
    assert report.max_residual == pytest.approx(abs(2 * (-0.8) - 1), rel=1e-12)


def test_independence_legendre(legendre4_system):
    report = check_independence(legendre4_system)
    assert report.passed
    assert report.min_abs_wronskian == pytest.approx(1.0, rel=1e-9)
    assert report.gram_determinant == pytest.approx(2 * (2 / 3) * (2 / 45) * (2 / 175), rel=1e-8)


def test_independence_detects_dependent_set():
    ip = InnerProduct(a=-1.0, b=1.0)
    config = BuildConfig(seed="1", N=3, h_specs=["1", "1"], x0=0.0, ip=ip)
    functions = [as_map("1"), as_map("x"), as_map("2 * x")]
    system = OrthoSystem(functions=functions, config=config, gram=gram_matrix(functions, ip),
                         norms=[1.0, 1.0, 1.0], coefficients=[[], [0.0], [0.0, 0.0]], scales=[1.0] * 3)
    report = check_independence(system, interior_grid(-1.0, 1.0, 9))
    assert not report.passed
    assert abs(report.gram_determinant) < 1e-10


def test_base_point_report(legendre4_system):
    report = check_base_point(legendre4_system)
    assert report.convention == BASE_POINT_CONVENTION == "F(x0) = 0"
    assert [s.stage for s in report.stages] == [2, 3, 4]
    assert report.passed


@pytest.mark.parametrize("fixture", ["legendre4_system", "exp_system", "nonconstant_h_system"])
def test_all_checks_pass_on_presets(fixture, request):
    system = request.getfixturevalue(fixture)
    report = validate_system(system)
    assert report.grid_points == 257
    assert report.orthogonality.max_residual <= 1e-8
    assert report.wronskian_identity.max_residual <= 1e-7
    assert report.ode.max_residual <= 1e-7
    assert report.independence.passed
    assert report.base_point.passed
    assert report.passed


def test_stage_residuals_nonconstant_h(nonconstant_h_system):
    grid = interior_grid(-1.0, 1.0, 33)
    identity = check_wronskian_identity(nonconstant_h_system, grid)
    ode = check_ode(nonconstant_h_system, grid)
    for stage in ode.stages:
        assert stage.residual <= 1e-7
        assert identity.stages[stage.stage - 1].residual <= 1e-7


def test_validation_with_perturbation_fails(legendre4_system):
    report = validate_system(perturb_system(legendre4_system, 0.1), interior_grid(-1.0, 1.0, 33))
    assert not report.passed
    assert not report.orthogonality.passed
    assert report.wronskian_identity.passed


def test_perturbation_needs_two_functions():
    system = build_system(BuildConfig(seed="1", N=1, ip=InnerProduct(a=-1.0, b=1.0)))
    with pytest.raises(ValueError):
        perturb_system(system, 0.1)


def test_legendre_six_validates(legendre_system):
    report = validate_system(legendre_system, interior_grid(-1.0, 1.0, 65))
    assert report.passed


def test_wronskian_table_matches_frame_determinants(exp_system):
    grid = interior_grid(-1.0, 1.0, 7)
    table = WronskianTable(exp_system, grid)
    for n in range(1, exp_system.N + 1):
        frame = WronskiFrame(exp_system.functions[:n])
        expected = [wronskian(frame, x).value for x in grid]
        np.testing.assert_allclose(table.stage(n), expected, rtol=1e-10, atol=1e-14)


def test_ode_residual_telescopes_identity_residual(nonconstant_h_system):
    system = nonconstant_h_system
    table = WronskianTable(system, interior_grid(-1.0, 1.0, 17))
    for k in range(2, system.N + 1):
        h = system.h[k - 2]
        for i, x in enumerate(table.grid):
            factor = h.value(x) * system.scales[k - 1]
            outer, lower = table.stage(k)[i], table.stage(k - 1)[i]
            identity_outer = outer - identity_reference(system, k, x)
            identity_lower = lower - identity_reference(system, k - 1, x)
            ode = outer - factor * lower
            slack = 1e-14 * (abs(outer) + abs(factor * lower))
            assert abs(ode) <= abs(identity_outer) + abs(factor) * abs(identity_lower) + slack
            assert ode == pytest.approx(identity_outer - factor * identity_lower, abs=slack)


def test_grid_count_zero_is_not_ignored(legendre4_system):
    with pytest.raises(ValueError):
        default_grid(legendre4_system, 0)
