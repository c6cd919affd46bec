"""Seeded self-check suites shared by the CLI and the test suite.

Every suite draws its own values from a caller-provided generator, so a
fixed seed reproduces the exact same report byte for byte.
"""

from typing import Callable, List, Tuple

import numpy as np

from . import closed_form, hypergeom
from .closed_form import (
    BasisMember,
    DegeneracyClass,
    EquationParams,
    eval_basis,
)
from .hypergeom import (
    HypParams,
    SeriesControl,
    gauss_2f1,
    gauss_2f1_derivative,
)
from .mobius import principal_power
from .oracle import (
    IntegrationControl,
    PathSpec,
    compare_closed_numeric,
    residual_scale,
    residual_z,
)

DEFAULT_PATH = (2j, 1 + 2j, 2 + 2j)


def _rand_complex(rng, lo=-2.0, hi=2.0) -> complex:
    return complex(rng.uniform(lo, hi), rng.uniform(lo, hi))


def random_equation(rng) -> EquationParams:
    return EquationParams(_rand_complex(rng), _rand_complex(rng),
                          _rand_complex(rng))


def random_generic_equation(rng):
    """(params, derived) pair with Generic degeneracy."""
    while True:
        p = random_equation(rng)
        d = closed_form.derive_params(p)
        if d.degeneracy is DegeneracyClass.GENERIC:
            return p, d


def random_hyp_params(rng) -> HypParams:
    """Valid non-polynomial parameter triple with components in [-2, 2]."""
    while True:
        alpha = _rand_complex(rng)
        beta = _rand_complex(rng)
        gamma = _rand_complex(rng)
        if hypergeom.nonpositive_integer_near(gamma) is not None:
            continue
        if hypergeom._truncation_degree(alpha, beta) is not None:
            continue
        return HypParams(alpha, beta, gamma)


def sample_reachable_point(d, rng, ctrl: SeriesControl = SeriesControl()) -> complex:
    """Random upper-half-plane point where both basis members evaluate."""
    while True:
        z = complex(rng.uniform(-3.0, 3.0), rng.uniform(0.3, 3.0))
        if abs(z - 1j) < 0.3:
            continue
        if closed_form.is_reachable(d, z, ctrl):
            return z


Check = Tuple[str, int, int]  # (suite name, failures, total)


def suite_parameter_identities(rng, n: int) -> Check:
    """Algebraic relations among the derived parameters."""
    fails = 0
    for _ in range(n):
        p = random_equation(rng)
        d = closed_form.derive_params(p)
        a, b, c = p.a, p.b, p.c
        scale = 1.0 + abs(d.lam) ** 2 + abs(b) + abs(c)
        ok = abs(d.lam ** 2 - (1 - a) * d.lam - (b + 1j * c)) <= 1e-12 * scale
        ok &= abs(d.lam2 ** 2 - (1 - a) * d.lam2 - (b + 1j * c)) <= 1e-12 * scale
        ok &= abs(d.gamma - (2 * d.lam + a)) <= 1e-12 * (1 + abs(d.gamma))
        ok &= abs(d.alpha + d.beta - (1 + 2 * d.lam - a)) <= 1e-12 * (
            1 + abs(d.alpha) + abs(d.beta))
        ok &= abs(d.alpha * d.beta
                  - (d.lam ** 2 + (1 - a) * d.lam - (b - 1j * c))) <= 1e-12 * scale
        ok &= abs(d.delta ** 2 - ((1 - a) ** 2 + 4 * (b + 1j * c))) <= 1e-12 * (
            1 + abs(d.delta) ** 2)
        ok &= abs(d.delta_star ** 2 - ((1 - a) ** 2 + 4 * (b - 1j * c))) <= 1e-12 * (
            1 + abs(d.delta_star) ** 2)
        ok &= abs(d.lam + d.lam2 - (1 - a)) <= 1e-12 * (1 + abs(d.lam))
        ok &= abs(d.lam - d.lam2 - d.delta) <= 1e-12 * (1 + abs(d.delta))
        if not ok:
            fails += 1
    return ("parameter-identities", fails, n)


def suite_hypergeom_identities(rng, n: int) -> Check:
    """Symmetry, Euler and Pfaff identities plus a derivative cross-check."""
    ctrl = SeriesControl()
    fails = 0
    for _ in range(n):
        p = random_hyp_params(rng)
        ok = True
        # symmetry, |t| <= 0.6
        r = 0.6 * np.sqrt(rng.uniform(0, 1))
        t = r * np.exp(1j * rng.uniform(-np.pi, np.pi))
        f = gauss_2f1(p, t, ctrl)
        ok &= abs(f - gauss_2f1(HypParams(p.beta, p.alpha, p.gamma), t, ctrl)) \
            <= 1e-13 * max(abs(f), 1.0)
        # Euler
        s = p.gamma - p.alpha - p.beta
        eul = (principal_power(1 - t, s)
               * gauss_2f1(HypParams(p.gamma - p.alpha, p.gamma - p.beta,
                                     p.gamma), t, ctrl))
        ok &= abs(f - eul) <= 1e-12 * max(abs(f), 1.0)
        # Pfaff, |t| <= 0.5 and Re t < 0.5
        while True:
            r = 0.5 * np.sqrt(rng.uniform(0, 1))
            tp = r * np.exp(1j * rng.uniform(-np.pi, np.pi))
            if tp.real < 0.5:
                break
        fp = gauss_2f1(p, tp, ctrl)
        pf = (principal_power(1 - tp, -p.beta)
              * hypergeom.raw_series(HypParams(p.gamma - p.alpha, p.beta,
                                               p.gamma), tp / (tp - 1), ctrl))
        ok &= abs(fp - pf) <= 1e-12 * max(abs(fp), 1.0)
        # derivative vs central difference, real h along the real direction
        h = 1e-6
        fd = (gauss_2f1(p, t + h, ctrl) - gauss_2f1(p, t - h, ctrl)) / (2 * h)
        dv = gauss_2f1_derivative(p, t, ctrl)
        ok &= abs(dv - fd) <= 1e-6 * max(abs(dv), 1.0)
        if not ok:
            fails += 1
    return ("hypergeom-identities", fails, n)


def suite_residuals(rng, n_draws: int, n_points: int) -> Check:
    """Closed-form basis jets satisfy the ODE pointwise."""
    ctrl = SeriesControl()
    fails = 0
    total = 0
    for _ in range(n_draws):
        p, d = random_generic_equation(rng)
        for _ in range(n_points):
            z = sample_reachable_point(d, rng, ctrl)
            for which in BasisMember:
                total += 1
                jet = eval_basis(d, p, which, z, ctrl)
                res = abs(residual_z(p, jet, z))
                if res > 1e-8 * residual_scale(z, jet):
                    fails += 1
    return ("closed-form-residuals", fails, total)


def suite_oracle_agreement(rng, n_draws: int) -> Check:
    """Closed form vs independent integration along the standard path."""
    ictrl = IntegrationControl()
    path = PathSpec(DEFAULT_PATH)
    fails = 0
    for _ in range(n_draws):
        p, d = random_generic_equation(rng)
        report = compare_closed_numeric(p, d, 1.0, 0.3, path, ictrl)
        if report.max_rel_err > 1e-6:
            fails += 1
    return ("oracle-agreement", fails, n_draws)


def run_selftest(seed: int = 0, quick: bool = False,
                 emit: Callable[[str], None] = print) -> bool:
    """Run all suites; prints one line per suite and returns overall pass."""
    rng = np.random.default_rng(seed)
    if quick:
        checks = [
            suite_parameter_identities(rng, 200),
            suite_hypergeom_identities(rng, 30),
            suite_residuals(rng, 10, 5),
            suite_oracle_agreement(rng, 2),
        ]
    else:
        checks = [
            suite_parameter_identities(rng, 1000),
            suite_hypergeom_identities(rng, 200),
            suite_residuals(rng, 100, 10),
            suite_oracle_agreement(rng, 10),
        ]
    all_ok = True
    for name, fails, total in checks:
        status = "pass" if fails == 0 else "FAIL"
        emit(f"{name}: {total - fails}/{total} {status}")
        all_ok &= fails == 0
    return all_ok
