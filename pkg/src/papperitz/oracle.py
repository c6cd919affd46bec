"""Independent verification: ODE residuals and a complex-path integrator.

Nothing here touches the hypergeometric machinery: the integrator sees
only the raw ODE coefficients, so agreement with the closed form is a
genuine two-sided check.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

from .closed_form import DerivedParams, EquationParams, Jet2, eval_solution
from .errors import PathTooCloseToSingularity, StepLimitExceeded
from .hypergeom import SeriesControl

_SINGULARITIES = (1j, -1j)


def _segment_distance(z0: complex, z1: complex, w: complex) -> float:
    """Distance from point w to the segment [z0, z1]."""
    d = z1 - z0
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(w - z0)
    s = ((w - z0) * d.conjugate()).real / L2
    s = min(1.0, max(0.0, s))
    return abs(z0 + s * d - w)


@dataclass(frozen=True)
class PathSpec:
    """Polyline in the z-plane kept clear of the singular points +-i."""

    waypoints: Tuple[complex, ...]
    min_singularity_distance: float = 0.1

    def __init__(self, waypoints: Sequence[complex],
                 min_singularity_distance: float = 0.1):
        object.__setattr__(self, "waypoints", tuple(complex(w) for w in waypoints))
        object.__setattr__(self, "min_singularity_distance",
                           float(min_singularity_distance))
        if len(self.waypoints) < 2:
            raise ValueError("a path needs at least two waypoints")
        for z0, z1 in zip(self.waypoints, self.waypoints[1:]):
            for s in _SINGULARITIES:
                dist = _segment_distance(z0, z1, s)
                if dist < self.min_singularity_distance:
                    raise PathTooCloseToSingularity(
                        f"segment {z0} -> {z1} passes within {dist:.4g} "
                        f"of the singular point {s}"
                    )


@dataclass(frozen=True)
class IntegrationControl:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 10 ** 6

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass
class VerifyReport:
    """Per-waypoint closed-form vs numeric comparison."""

    samples: List[Tuple[complex, complex, complex, float]] = field(default_factory=list)
    max_abs_err: float = 0.0
    max_rel_err: float = 0.0


def residual_z(p: EquationParams, jet: Jet2, z: complex) -> complex:
    """(1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y for a z-jet."""
    if jet.coord != "z":
        raise ValueError("residual_z needs a z-jet")
    q = 1 + z * z
    return q * q * jet.d2y + 2 * p.a * z * q * jet.dy + 4 * (p.b + p.c * z) * jet.y


def residual_t(p: EquationParams, jet: Jet2, t: complex) -> complex:
    """t^2(1-t) y'' + t[a - (2-a)t] y' + [(b-ic)t - (b+ic)] y for a t-jet."""
    if jet.coord != "t":
        raise ValueError("residual_t needs a t-jet")
    return (t * t * (1 - t) * jet.d2y
            + t * (p.a - (2 - p.a) * t) * jet.dy
            + ((p.b - 1j * p.c) * t - (p.b + 1j * p.c)) * jet.y)


def residual_scale(z: complex, jet: Jet2) -> float:
    """Size reference for residual tolerance checks."""
    return ((1 + abs(z) ** 2) ** 2
            * (abs(jet.y) + abs(jet.dy) + abs(jet.d2y)))


# Dormand-Prince 5(4) tableau.
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
          -92097 / 339200, 187 / 2100, 1 / 40)


def _rhs(p: EquationParams, z: complex, y: complex, v: complex):
    q = 1 + z * z
    return v, -(2 * p.a * z * q * v + 4 * (p.b + p.c * z) * y) / (q * q)


def integrate_ivp(p: EquationParams, path: PathSpec,
                  y0: complex, dy0: complex,
                  ctrl: IntegrationControl = IntegrationControl()
                  ) -> List[Tuple[complex, complex, complex]]:
    """Integrate y'' from the ODE along the polyline; returns (z, y, y')
    at every waypoint, the start included."""
    y, v = complex(y0), complex(dy0)
    out = [(path.waypoints[0], y, v)]
    steps = 0
    for z0, z1 in zip(path.waypoints, path.waypoints[1:]):
        seg_len = abs(z1 - z0)
        if seg_len == 0.0:
            out.append((z1, y, v))
            continue
        u = (z1 - z0) / seg_len
        s = 0.0
        h = min(seg_len, 0.1)
        while s < seg_len:
            h = min(h, seg_len - s)
            if steps >= ctrl.max_steps:
                raise StepLimitExceeded(f"step budget {ctrl.max_steps} "
                                        f"exhausted at z={z0 + s * u}")
            steps += 1
            ky = [0j] * 7
            kv = [0j] * 7
            for i in range(7):
                yi, vi = y, v
                for j, aij in enumerate(_DP_A[i]):
                    if aij != 0.0:
                        yi += h * aij * ky[j]
                        vi += h * aij * kv[j]
                zi = z0 + (s + _DP_C[i] * h) * u
                fy, fv = _rhs(p, zi, yi, vi)
                ky[i] = u * fy
                kv[i] = u * fv
            y5 = y + h * sum(b * k for b, k in zip(_DP_B5, ky))
            v5 = v + h * sum(b * k for b, k in zip(_DP_B5, kv))
            ey = h * sum((b5 - b4) * k for b5, b4, k in zip(_DP_B5, _DP_B4, ky))
            ev = h * sum((b5 - b4) * k for b5, b4, k in zip(_DP_B5, _DP_B4, kv))
            err = 0.0
            for e_part, s_part in ((ey.real, y5.real), (ey.imag, y5.imag),
                                   (ev.real, v5.real), (ev.imag, v5.imag)):
                sc = ctrl.abs_tol + ctrl.rel_tol * abs(s_part)
                err = max(err, abs(e_part) / sc)
            if err <= 1.0:
                s += h
                y, v = y5, v5
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h *= factor
        out.append((z1, y, v))
    return out


def compare_closed_numeric(p: EquationParams, d: DerivedParams,
                           c1: complex, c2: complex, path: PathSpec,
                           ctrl: IntegrationControl = IntegrationControl(),
                           series_ctrl: SeriesControl = SeriesControl()
                           ) -> VerifyReport:
    """Seed the integrator with the closed-form jet at the path start and
    compare values at every waypoint."""
    start_jet = eval_solution(d, p, c1, c2, path.waypoints[0], series_ctrl)
    numeric = integrate_ivp(p, path, start_jet.y, start_jet.dy, ctrl)
    report = VerifyReport()
    for z, y_num, _ in numeric:
        y_closed = eval_solution(d, p, c1, c2, z, series_ctrl).y
        abs_err = abs(y_closed - y_num)
        rel_err = abs_err / max(abs(y_closed), 1e-300)
        report.samples.append((z, y_closed, y_num, abs_err))
        report.max_abs_err = max(report.max_abs_err, abs_err)
        report.max_rel_err = max(report.max_rel_err, rel_err)
    return report


def finite_difference_jet(f: Callable[[complex], complex], z: complex,
                          h: float, coord: str = "z") -> Jet2:
    """Central-difference jet of a pointwise function."""
    fp = f(z + h)
    fm = f(z - h)
    f0 = f(z)
    return Jet2(f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h),
                coord=coord)
