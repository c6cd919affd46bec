import numpy as np
import pytest

from papperitz.closed_form import (
    BasisMember,
    EquationParams,
    Jet2,
    derive_params,
    eval_basis,
    eval_basis_t_jet,
)
from papperitz.errors import PathTooCloseToSingularity, StepLimitExceeded
from papperitz.mobius import z_to_t
from papperitz.oracle import (
    IntegrationControl,
    PathSpec,
    compare_closed_numeric,
    finite_difference_jet,
    integrate_ivp,
    residual_scale,
    residual_t,
    residual_z,
)
from papperitz.selftest import random_generic_equation, sample_reachable_point


def test_residual_z_values():
    p = EquationParams(0, 0, 0)
    jet = Jet2(3 - 1j, 1, 0)  # y = z - i at z = 3
    assert residual_z(p, jet, 3.0) == 0
    p = EquationParams(0, 1, 1)
    assert abs(residual_z(p, Jet2(1, 0, 0), 2.0) - 12) < 1e-14


def test_residual_t_values():
    p = EquationParams(0, 0, 0)
    # y(t) = t/(1-t): y(0.5)=1, y'=1/(1-t)^2=4, y''=2/(1-t)^3=16
    jet = Jet2(1, 4, 16, coord="t")
    assert abs(residual_t(p, jet, 0.5)) < 1e-14
    p = EquationParams(0.3, 1.1, -0.4)
    t = 0.2 + 0.1j
    expected = (p.b - 1j * p.c) * t - (p.b + 1j * p.c)
    assert abs(residual_t(p, Jet2(1, 0, 0, coord="t"), t) - expected) < 1e-14


def test_residual_coordinate_mismatch():
    p = EquationParams(0, 0, 0)
    with pytest.raises(ValueError):
        residual_t(p, Jet2(1, 0, 0, coord="z"), 0.5)


def test_residuals_vanish_together():
    rng = np.random.default_rng(31)
    for _ in range(20):
        p, d = random_generic_equation(rng)
        z = sample_reachable_point(d, rng)
        t = z_to_t(z)
        for which in BasisMember:
            jz = eval_basis(d, p, which, z)
            jt = eval_basis_t_jet(d, which, t)
            assert abs(residual_z(p, jz, z)) <= 1e-8 * residual_scale(z, jz)
            scale_t = (abs(t) ** 2 * abs(1 - t) + 1) * (
                abs(jt.y) + abs(jt.dy) + abs(jt.d2y))
            assert abs(residual_t(p, jt, t)) <= 1e-8 * scale_t


def test_path_validation():
    PathSpec([0, 2.0])
    with pytest.raises(ValueError):
        PathSpec([0])
    with pytest.raises(PathTooCloseToSingularity):
        PathSpec([0.95j, 1.05j])
    # segment passing near +i even though endpoints are far from it
    with pytest.raises(PathTooCloseToSingularity):
        PathSpec([-2 + 1j, 2 + 1j])


def test_integration_control_validation():
    with pytest.raises(ValueError):
        IntegrationControl(rel_tol=0)
    with pytest.raises(ValueError):
        IntegrationControl(max_steps=0)


def test_integrate_trivial_dynamics():
    p = EquationParams(0, 0, 0)  # y'' = 0 along any path
    path = PathSpec([0, 2.0])
    out = integrate_ivp(p, path, 1.0, 0.0)
    z, y, dy = out[-1]
    assert z == 2.0
    assert abs(y - 1) < 1e-12 and abs(dy) < 1e-12
    out = integrate_ivp(p, path, 0.0, 1.0)
    assert abs(out[-1][1] - 2.0) < 1e-10


def test_integrate_step_limit():
    p = EquationParams(0, 1, 0)
    with pytest.raises(StepLimitExceeded):
        integrate_ivp(p, PathSpec([0, 1.0]), 1.0, 0.0,
                      IntegrationControl(max_steps=3))


def test_integrate_self_convergence_single():
    p = EquationParams(0, 1, 0)
    path = PathSpec([0, 1.0])
    a = integrate_ivp(p, path, 1.0, 0.5, IntegrationControl(rel_tol=1e-9))[-1]
    b = integrate_ivp(p, path, 1.0, 0.5, IntegrationControl(rel_tol=5e-10))[-1]
    assert abs(a[1] - b[1]) <= 1e-9 * max(abs(a[1]), 1.0)


def test_integrate_tolerance_ladder():
    # tightening rel_tol never worsens the endpoint error against a
    # tight-tolerance reference
    rng = np.random.default_rng(32)
    path = PathSpec([2j, 1 + 2j])
    for _ in range(10):
        p, d = random_generic_equation(rng)
        ref = integrate_ivp(p, path, 1.0, 0.2,
                            IntegrationControl(rel_tol=1e-13, abs_tol=1e-14))[-1][1]
        errs = []
        for tol in (1e-5, 1e-7, 1e-9, 1e-11):
            end = integrate_ivp(p, path, 1.0, 0.2,
                                IntegrationControl(rel_tol=tol,
                                                   abs_tol=tol * 1e-2))[-1][1]
            errs.append(abs(end - ref))
        for worse, better in zip(errs, errs[1:]):
            assert better <= worse + 1e-14 * max(abs(ref), 1.0)


def test_path_independence():
    rng = np.random.default_rng(33)
    direct = PathSpec([2j, 2 + 2j])
    detour = PathSpec([2j, 1 + 3j, 2 + 2j])
    ctrl = IntegrationControl(rel_tol=1e-11)
    for _ in range(5):
        p, _ = random_generic_equation(rng)
        a = integrate_ivp(p, direct, 1.0, 0.3, ctrl)[-1][1]
        b = integrate_ivp(p, detour, 1.0, 0.3, ctrl)[-1][1]
        assert abs(a - b) <= 1e-8 * max(abs(a), 1.0)


def test_integrator_output_satisfies_ode_reconstruction():
    rng = np.random.default_rng(34)
    p, _ = random_generic_equation(rng)
    out = integrate_ivp(p, PathSpec([2j, 1 + 2j, 2 + 2j]), 1.0, 0.0)
    for z, y, dy in out:
        q = 1 + z * z
        d2y = -(2 * p.a * z * q * dy + 4 * (p.b + p.c * z) * y) / (q * q)
        jet = Jet2(y, dy, d2y)
        assert abs(residual_z(p, jet, z)) <= 1e-8 * residual_scale(z, jet)


def test_compare_closed_numeric_elementary():
    p = EquationParams(0, 0, 0)
    d = derive_params(p)
    report = compare_closed_numeric(p, d, 2j, 0, PathSpec([2j, 1 + 2j]))
    assert report.max_abs_err <= 1e-9
    # both sides are y = z - i
    for z, closed, *_ in report.samples:
        assert abs(closed - (z - 1j)) <= 1e-10


def test_compare_closed_numeric_generic():
    p = EquationParams(1, 0, 1)
    d = derive_params(p)
    report = compare_closed_numeric(p, d, 1.0, 0.0,
                                    PathSpec([2j, 1 + 2j, 2 + 2j]))
    assert report.max_rel_err <= 1e-6
    assert report.max_abs_err == max(s[3] for s in report.samples)


def test_compare_closed_numeric_degenerate():
    from papperitz.errors import DegenerateBasis

    p = EquationParams(0, -0.25, 0)
    d = derive_params(p)
    with pytest.raises(DegenerateBasis):
        compare_closed_numeric(p, d, 1.0, 1.0, PathSpec([2j, 1 + 2j]))


def test_finite_difference_jet_polynomials():
    jet = finite_difference_jet(lambda z: z, 0.7 + 0.2j, 1e-4)
    assert abs(jet.y - (0.7 + 0.2j)) < 1e-14
    assert abs(jet.dy - 1) < 1e-8
    assert abs(jet.d2y) < 1e-6
    jet = finite_difference_jet(lambda z: z * z, 1 + 1j, 1e-4)
    assert abs(jet.y - 2j) < 1e-14
    assert abs(jet.dy - 2 * (1 + 1j)) <= 1e-7 * abs(2 * (1 + 1j))
    assert abs(jet.d2y - 2) < 1e-5


def test_finite_difference_matches_analytic_jets():
    rng = np.random.default_rng(35)
    count = 0
    while count < 20:
        p, d = random_generic_equation(rng)
        z = sample_reachable_point(d, rng)
        which = BasisMember.FIRST if rng.uniform() < 0.5 else BasisMember.SECOND
        analytic = eval_basis(d, p, which, z)
        fd = finite_difference_jet(
            lambda w: eval_basis(d, p, which, w).y, z, 1e-4)
        assert abs(fd.dy - analytic.dy) <= 1e-5 * max(abs(analytic.dy), 1.0)
        assert abs(fd.d2y - analytic.d2y) <= 1e-4 * max(abs(analytic.d2y), 1.0)
        count += 1
