"""Bilinear map between the z-plane and the t-plane, and principal powers.

The map t = (z - i)/(z + i) sends the equation's singular points z = i, -i
to t = 0, infinity and the upper half plane onto the open unit disk.  All
complex powers in this package go through :func:`principal_power`, which
uses the principal logarithm (argument in (-pi, pi]).
"""

import cmath

from .errors import PoleAtMinusI, PoleAtOne, ZeroBaseNonpositiveExponent

_POLE_TOL = 1e-14


def z_to_t(z: complex) -> complex:
    """Forward map (z - i)/(z + i)."""
    if abs(z + 1j) <= _POLE_TOL * (1.0 + abs(z)):
        raise PoleAtMinusI(f"z={z} is at the pole z=-i of the forward map")
    return (z - 1j) / (z + 1j)


def t_to_z(t: complex) -> complex:
    """Inverse map i(1 + t)/(1 - t)."""
    if abs(1 - t) <= _POLE_TOL * (1.0 + abs(t)):
        raise PoleAtOne(f"t={t} is at the pole t=1 of the inverse map")
    return 1j * (1 + t) / (1 - t)


def dt_dz(z: complex) -> complex:
    """First derivative of the forward map: 2i/(z+i)^2."""
    if abs(z + 1j) <= _POLE_TOL * (1.0 + abs(z)):
        raise PoleAtMinusI(f"z={z} is at the pole z=-i of the forward map")
    return 2j / (z + 1j) ** 2


def d2t_dz2(z: complex) -> complex:
    """Second derivative of the forward map: -4i/(z+i)^3."""
    if abs(z + 1j) <= _POLE_TOL * (1.0 + abs(z)):
        raise PoleAtMinusI(f"z={z} is at the pole z=-i of the forward map")
    return -4j / (z + 1j) ** 3


def principal_power(w: complex, e: complex) -> complex:
    """w**e on the principal branch, exp(e * Log w).

    0**e is 0 when Re e > 0 and an error otherwise.
    """
    w = complex(w)
    if w == 0:
        if complex(e).real > 0:
            return 0j
        raise ZeroBaseNonpositiveExponent(f"0**({e}) is undefined")
    if w.imag == 0.0:
        # clear a signed zero so the negative real axis gets arg = +pi
        w = complex(w.real, 0.0)
    return cmath.exp(complex(e) * cmath.log(w))
