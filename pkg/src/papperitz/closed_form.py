"""Closed-form solution basis of (1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y = 0.

The substitution t = (z-i)/(z+i) turns the equation into a hypergeometric
one; each basis member is a principal power of t times a Gauss function,
with parameters derived from (a, b, c) by principal square roots.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateBasis, DegenerateWronskian, InvalidGamma
from .hypergeom import HypParams, SeriesControl, gauss_2f1_jet
from .mobius import d2t_dz2, dt_dz, principal_power, z_to_t

#: |delta| below this counts as a repeated Frobenius exponent.
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class EquationParams:
    """Coefficient triple (a, b, c) of the equation."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"coefficient {name}={v} is not finite")


class DegeneracyClass(Enum):
    GENERIC = "Generic"
    REPEATED_EXPONENT = "RepeatedExponent"
    FIRST_BASIS_INVALID = "FirstBasisInvalid"
    SECOND_BASIS_INVALID = "SecondBasisInvalid"


class BasisMember(Enum):
    FIRST = "First"
    SECOND = "Second"


@dataclass(frozen=True)
class Jet2:
    """Value with first and second derivatives, tagged by coordinate."""

    y: complex
    dy: complex
    d2y: complex
    coord: str = "z"

    def __post_init__(self):
        if self.coord not in ("z", "t"):
            raise ValueError(f"coord must be 'z' or 't', got {self.coord!r}")


@dataclass(frozen=True)
class DerivedParams:
    delta: complex
    delta_star: complex
    lam: complex
    lam2: complex
    alpha: complex
    beta: complex
    gamma: complex
    degeneracy: DegeneracyClass


def _principal_sqrt(w: complex) -> complex:
    w = complex(w)
    if w.imag == 0.0:
        # clear a signed zero: arg stays in (-pi, pi]
        w = complex(w.real, 0.0)
    return cmath.sqrt(w)


def _basis_ok(alpha, beta, gamma) -> bool:
    try:
        HypParams(alpha, beta, gamma)
        return True
    except InvalidGamma:
        return False


def derive_params(p: EquationParams) -> DerivedParams:
    """Frobenius exponents and hypergeometric parameters from (a, b, c).

    delta and delta* are principal square roots; with c = 0 their
    arguments coincide, so they are bit-identical.
    """
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    delta = _principal_sqrt((1 - a) ** 2 + 4 * (b + 1j * c))
    delta_star = _principal_sqrt((1 - a) ** 2 + 4 * (b - 1j * c))
    lam = (1 - a + delta) / 2
    lam2 = (1 - a - delta) / 2
    alpha = 1 - a + (delta + delta_star) / 2
    beta = 1 - a + (delta - delta_star) / 2
    gamma = 1 + delta

    if abs(delta) <= DEGENERACY_TOL:
        degeneracy = DegeneracyClass.REPEATED_EXPONENT
    elif not _basis_ok(alpha, beta, gamma):
        degeneracy = DegeneracyClass.FIRST_BASIS_INVALID
    elif not _basis_ok(alpha - gamma + 1, beta - gamma + 1, 2 - gamma):
        degeneracy = DegeneracyClass.SECOND_BASIS_INVALID
    else:
        degeneracy = DegeneracyClass.GENERIC

    return DerivedParams(delta, delta_star, lam, lam2,
                         alpha, beta, gamma, degeneracy)


def basis_hyp_params(d: DerivedParams, which: BasisMember) -> HypParams:
    """Hypergeometric parameters of one basis member; raises DegenerateBasis
    when that member does not exist."""
    if which is BasisMember.FIRST:
        try:
            return HypParams(d.alpha, d.beta, d.gamma)
        except InvalidGamma as exc:
            raise DegenerateBasis(f"first basis member invalid: {exc}") from exc
    if d.degeneracy is DegeneracyClass.REPEATED_EXPONENT:
        raise DegenerateBasis("repeated exponent: the second member "
                              "coincides with the first")
    try:
        return HypParams(d.alpha - d.gamma + 1, d.beta - d.gamma + 1,
                         2 - d.gamma)
    except InvalidGamma as exc:
        raise DegenerateBasis(f"second basis member invalid: {exc}") from exc


def basis_exponent(d: DerivedParams, which: BasisMember) -> complex:
    return d.lam if which is BasisMember.FIRST else d.lam2


def eval_basis_t_jet(d: DerivedParams, which: BasisMember, t: complex,
                     ctrl: SeriesControl = SeriesControl()) -> Jet2:
    """t-jet of t^e * F(params; t) for one basis member."""
    hp = basis_hyp_params(d, which)
    e = basis_exponent(d, which)
    f0, f1, f2 = gauss_2f1_jet(hp, t, ctrl)
    if e == 0:
        return Jet2(f0, f1, f2, coord="t")
    p0 = principal_power(t, e)
    p1 = principal_power(t, e - 1)
    p2 = principal_power(t, e - 2)
    y = p0 * f0
    dy = e * p1 * f0 + p0 * f1
    d2y = e * (e - 1) * p2 * f0 + 2 * e * p1 * f1 + p0 * f2
    return Jet2(y, dy, d2y, coord="t")


def eval_basis(d: DerivedParams, p: EquationParams, which: BasisMember,
               z: complex, ctrl: SeriesControl = SeriesControl()) -> Jet2:
    """z-jet of one basis member, by the chain rule through t(z)."""
    t = z_to_t(z)
    jt = eval_basis_t_jet(d, which, t, ctrl)
    tp = dt_dz(z)
    tpp = d2t_dz2(z)
    return Jet2(jt.y, jt.dy * tp, jt.d2y * tp * tp + jt.dy * tpp, coord="z")


def eval_solution(d: DerivedParams, p: EquationParams,
                  c1: complex, c2: complex, z: complex,
                  ctrl: SeriesControl = SeriesControl()) -> Jet2:
    """Jet of c1 * (first member) + c2 * (second member).

    A coefficient that is exactly zero skips its member, so a degenerate
    member is tolerated when it does not contribute.
    """
    y = dy = d2y = 0j
    if c1 != 0:
        j1 = eval_basis(d, p, BasisMember.FIRST, z, ctrl)
        y += c1 * j1.y
        dy += c1 * j1.dy
        d2y += c1 * j1.d2y
    if c2 != 0:
        j2 = eval_basis(d, p, BasisMember.SECOND, z, ctrl)
        y += c2 * j2.y
        dy += c2 * j2.dy
        d2y += c2 * j2.d2y
    return Jet2(y, dy, d2y, coord="z")


def wronskian(d: DerivedParams, p: EquationParams, z: complex,
              ctrl: SeriesControl = SeriesControl()) -> complex:
    """y1 y2' - y2 y1' at z."""
    j1 = eval_basis(d, p, BasisMember.FIRST, z, ctrl)
    j2 = eval_basis(d, p, BasisMember.SECOND, z, ctrl)
    return j1.y * j2.dy - j2.y * j1.dy


def fit_ivp(d: DerivedParams, p: EquationParams, z0: complex,
            y0: complex, dy0: complex,
            ctrl: SeriesControl = SeriesControl()):
    """Constants (c1, c2) matching (y0, dy0) at z0, by Cramer's rule."""
    if d.degeneracy is DegeneracyClass.REPEATED_EXPONENT:
        raise DegenerateWronskian("repeated exponent: the Wronskian of the "
                                  "closed-form pair vanishes identically")
    j1 = eval_basis(d, p, BasisMember.FIRST, z0, ctrl)
    j2 = eval_basis(d, p, BasisMember.SECOND, z0, ctrl)
    w = j1.y * j2.dy - j2.y * j1.dy
    scale = abs(j1.y) * abs(j2.dy) + abs(j2.y) * abs(j1.dy)
    if abs(w) < 1e-10 * scale:
        raise DegenerateWronskian(f"|W(z0)|={abs(w):.3g} below independence "
                                  f"threshold at z0={z0}")
    c1 = (y0 * j2.dy - j2.y * dy0) / w
    c2 = (j1.y * dy0 - y0 * j1.dy) / w
    return c1, c2


def is_reachable(d: DerivedParams, z: complex,
                 ctrl: SeriesControl = SeriesControl()) -> bool:
    """True when both basis members can be evaluated at z by the region
    policy (and z is off the map's pole and the branch cut)."""
    from .hypergeom import EvalStrategy, select_strategy
    from .errors import PoleAtMinusI

    try:
        t = z_to_t(z)
    except PoleAtMinusI:
        return False
    if abs(complex(t).imag) <= 1e-12 and complex(t).real >= 1.0 - 1e-12:
        return False
    for which in BasisMember:
        try:
            hp = basis_hyp_params(d, which)
        except DegenerateBasis:
            return False
        if select_strategy(hp, t, ctrl) is EvalStrategy.UNREACHABLE:
            return False
        # derivative identities shift gamma by +1/+2; same region applies
    return True
