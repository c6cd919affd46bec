"""Gauss hypergeometric function for complex parameters and argument.

Evaluation is by the Maclaurin series inside a disk, with Pfaff argument
reduction and the (1-t) connection formula extending coverage toward the
unit circle.  Everything stays on the principal branch; points no strategy
reaches raise a structured error instead of returning a bad value.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.special import gamma as _cgamma, rgamma as _crgamma

from .errors import (
    DegenerateGamma,
    EvaluationUnreachable,
    InvalidGamma,
    NoConvergence,
    OnBranchCut,
)
from .mobius import principal_power

#: Proximity rule for "is (numerically) an integer": both the distance to
#: the nearest integer and the imaginary part must be below this.
INTEGER_TOL = 1e-10

#: Half-width of the guard band around the branch cut t in [1, inf).
BRANCH_CUT_TOL = 1e-12


def near_integer(x: complex) -> bool:
    x = complex(x)
    return abs(x.imag) <= INTEGER_TOL and abs(x.real - round(x.real)) <= INTEGER_TOL


def nonpositive_integer_near(x: complex) -> Optional[int]:
    """If x is integer-close to -k with k >= 0, return k, else None."""
    if not near_integer(x):
        return None
    n = round(complex(x).real)
    return -n if n <= 0 else None


def _truncation_degree(alpha: complex, beta: complex) -> Optional[int]:
    """Degree at which the series terminates, or None if it does not."""
    ks = [k for k in (nonpositive_integer_near(alpha),
                      nonpositive_integer_near(beta)) if k is not None]
    return min(ks) if ks else None


@dataclass(frozen=True)
class HypParams:
    """Parameter triple (alpha, beta, gamma) of the hypergeometric series.

    A nonpositive-integer gamma = -m is rejected unless alpha or beta is a
    nonpositive integer -k with k <= m, in which case the series truncates
    before the vanishing denominator factor is reached.
    """

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        m = nonpositive_integer_near(self.gamma)
        if m is None:
            return
        k = _truncation_degree(self.alpha, self.beta)
        if k is None or k > m:
            raise InvalidGamma(
                f"gamma={self.gamma} is a nonpositive integer and neither "
                f"alpha={self.alpha} nor beta={self.beta} truncates the "
                f"series early enough"
            )

    def truncation_degree(self) -> Optional[int]:
        return _truncation_degree(self.alpha, self.beta)


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-15
    max_terms: int = 10000
    region_cutoff: float = 0.7

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not 0.0 < self.region_cutoff < 1.0:
            raise ValueError("region_cutoff must lie in (0, 1)")


class EvalStrategy(Enum):
    DIRECT_SERIES = "DirectSeries"
    PFAFF_ON_ALPHA = "PfaffOnAlpha"
    PFAFF_ON_BETA = "PfaffOnBeta"
    ONE_MINUS_T_CONNECTION = "OneMinusTConnection"
    POLYNOMIAL_TRUNCATION = "PolynomialTruncation"
    UNREACHABLE = "Unreachable"


def _term_update(p: HypParams, term: complex, n: int, w: complex) -> complex:
    return term * (p.alpha + n) * (p.beta + n) / ((p.gamma + n) * (n + 1)) * w


def raw_series(p: HypParams, w: complex,
               ctrl: SeriesControl = SeriesControl()) -> complex:
    """Plain series sum; |w| < 1 required unless the series truncates."""
    k = p.truncation_degree()
    if k is not None:
        return _truncated_jet(p, w, k)[0]
    if abs(w) >= 1.0:
        raise NoConvergence(f"series argument |w|={abs(w):.6g} not inside "
                            f"the unit disk and no truncation applies")
    term = 1.0 + 0j
    total = term
    small_run = 0
    for n in range(ctrl.max_terms):
        term = _term_update(p, term, n, w)
        total += term
        # two consecutive small terms guard against cancellation zeros
        if abs(term) <= ctrl.rel_tol * abs(total):
            small_run += 1
            if small_run >= 2:
                return total
        else:
            small_run = 0
    raise NoConvergence(f"series for {p} at w={w} did not converge "
                        f"within {ctrl.max_terms} terms")


def _truncated_jet(p: HypParams, w: complex, k: int):
    """(S, S', S'') of the degree-k truncated series, valid for all w."""
    s0 = 0j
    s1 = 0j
    s2 = 0j
    coef = 1.0 + 0j
    for n in range(k + 1):
        wn = w ** n
        s0 += coef * wn
        if n >= 1:
            s1 += n * coef * w ** (n - 1)
        if n >= 2:
            s2 += n * (n - 1) * coef * w ** (n - 2)
        if n < k:
            coef = _term_update(p, coef, n, 1.0)
    return s0, s1, s2


def select_strategy(p: HypParams, t: complex,
                    ctrl: SeriesControl = SeriesControl()) -> EvalStrategy:
    """Region policy choosing how F(p; t) will be computed."""
    if p.truncation_degree() is not None:
        return EvalStrategy.POLYNOMIAL_TRUNCATION
    cut = ctrl.region_cutoff
    if abs(t) <= cut:
        return EvalStrategy.DIRECT_SERIES
    if t != 1:
        # a Pfaff-transformed series that truncates works for any t
        if nonpositive_integer_near(p.gamma - p.beta) is not None:
            return EvalStrategy.PFAFF_ON_ALPHA
        if nonpositive_integer_near(p.gamma - p.alpha) is not None:
            return EvalStrategy.PFAFF_ON_BETA
    if t != 1 and abs(t / (t - 1)) <= cut:
        # keep the parameter whose partner transforms more tamely
        if abs(p.gamma - p.beta) <= abs(p.gamma - p.alpha):
            return EvalStrategy.PFAFF_ON_ALPHA
        return EvalStrategy.PFAFF_ON_BETA
    if abs(1 - t) <= cut and not near_integer(p.gamma - p.alpha - p.beta):
        return EvalStrategy.ONE_MINUS_T_CONNECTION
    return EvalStrategy.UNREACHABLE


def _on_branch_cut(t: complex) -> bool:
    t = complex(t)
    return abs(t.imag) <= BRANCH_CUT_TOL and t.real >= 1.0 - BRANCH_CUT_TOL


def gauss_2f1(p: HypParams, t: complex,
              ctrl: SeriesControl = SeriesControl()) -> complex:
    """F(alpha, beta, gamma; t) on the principal branch."""
    t = complex(t)
    strat = select_strategy(p, t, ctrl)
    if strat is EvalStrategy.POLYNOMIAL_TRUNCATION:
        return raw_series(p, t, ctrl)
    if _on_branch_cut(t):
        raise OnBranchCut(f"t={t} lies on the branch cut [1, inf)")
    if strat is EvalStrategy.DIRECT_SERIES:
        return raw_series(p, t, ctrl)
    if strat is EvalStrategy.PFAFF_ON_ALPHA:
        q = HypParams(p.alpha, p.gamma - p.beta, p.gamma)
        return principal_power(1 - t, -p.alpha) * raw_series(q, t / (t - 1), ctrl)
    if strat is EvalStrategy.PFAFF_ON_BETA:
        q = HypParams(p.gamma - p.alpha, p.beta, p.gamma)
        return principal_power(1 - t, -p.beta) * raw_series(q, t / (t - 1), ctrl)
    if strat is EvalStrategy.ONE_MINUS_T_CONNECTION:
        w = 1 - t
        s = p.gamma - p.alpha - p.beta
        c1 = (_cgamma(p.gamma) * _cgamma(s)
              * _crgamma(p.gamma - p.alpha) * _crgamma(p.gamma - p.beta))
        c2 = (_cgamma(p.gamma) * _cgamma(-s)
              * _crgamma(p.alpha) * _crgamma(p.beta))
        q1 = HypParams(p.alpha, p.beta, 1 - s)
        q2 = HypParams(p.gamma - p.alpha, p.gamma - p.beta, 1 + s)
        return (complex(c1) * raw_series(q1, w, ctrl)
                + complex(c2) * principal_power(w, s) * raw_series(q2, w, ctrl))
    raise EvaluationUnreachable(t, abs(t),
                                abs(t / (t - 1)) if t != 1 else float("inf"),
                                abs(1 - t))


def gauss_2f1_derivative(p: HypParams, t: complex,
                         ctrl: SeriesControl = SeriesControl()) -> complex:
    """dF/dt via the contiguous shift (alpha beta / gamma) F(+1,+1,+1)."""
    t = complex(t)
    k = p.truncation_degree()
    if k is not None:
        return _truncated_jet(p, t, k)[1]
    if abs(p.gamma) <= INTEGER_TOL:
        raise DegenerateGamma(f"gamma={p.gamma} too close to 0 for the "
                              f"derivative identity")
    q = HypParams(p.alpha + 1, p.beta + 1, p.gamma + 1)
    return p.alpha * p.beta / p.gamma * gauss_2f1(q, t, ctrl)


def gauss_2f1_second_derivative(p: HypParams, t: complex,
                                ctrl: SeriesControl = SeriesControl()) -> complex:
    """d2F/dt2 via the derivative identity applied twice."""
    t = complex(t)
    k = p.truncation_degree()
    if k is not None:
        return _truncated_jet(p, t, k)[2]
    if abs(p.gamma) <= INTEGER_TOL or abs(p.gamma + 1) <= INTEGER_TOL:
        raise DegenerateGamma(f"gamma={p.gamma} too close to {{0, -1}} for "
                              f"the second-derivative identity")
    q = HypParams(p.alpha + 2, p.beta + 2, p.gamma + 2)
    pref = (p.alpha * p.beta / p.gamma
            * (p.alpha + 1) * (p.beta + 1) / (p.gamma + 1))
    return pref * gauss_2f1(q, t, ctrl)


def gauss_2f1_jet(p: HypParams, t: complex,
                  ctrl: SeriesControl = SeriesControl()):
    """(F, F', F'') at t; the workhorse for chain-rule evaluations."""
    k = p.truncation_degree()
    if k is not None:
        return _truncated_jet(p, complex(t), k)
    return (gauss_2f1(p, t, ctrl),
            gauss_2f1_derivative(p, t, ctrl),
            gauss_2f1_second_derivative(p, t, ctrl))
