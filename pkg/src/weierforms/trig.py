"""Row-summed series for the lattice functions on a reduced period ratio.

Summing the defining lattice sums over d for each fixed c (legitimate by
absolute convergence) collapses every row to a closed trigonometric form:

  wp(tau, z)    = pi^2 [ 1/sin^2(pi z) - 1/3
                         + sum_{c>=1} ( 1/sin^2(pi(z-c tau)) + 1/sin^2(pi(z+c tau))
                                        - 2/sin^2(pi c tau) ) ]
  wzeta(tau, z) = pi cot(pi z) + (pi^2/3) z
                  + sum_{c>=1} ( pi [cot(pi(z-c tau)) + cot(pi(z+c tau))]
                                 + 2 pi^2 z / sin^2(pi c tau) )

With u = e(w) (whichever of e(w), e(-w) has modulus < 1):

  1/sin^2(pi w) = -4u/(1-u)^2,   cot(pi w) = -+ i (1+u)/(1-u)

so row c decays like exp(-2 pi (c Im tau - |Im z|)) and the tail beyond C
rows is bounded by an explicit geometric series.  Callers must supply
Im tau >= TAU_IM_MIN and |Im z| <= Im(tau)/2 (both guaranteed after
reduction), which keeps every row factor below exp(-pi Im tau).
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .arith import CertifiedValue
from .errors import DomainError, PrecisionError

__all__ = ["wp_strip", "wzeta_strip", "eta_pair_strip", "TAU_IM_MIN"]

_EPS = math.ulp(1.0)
_PI = math.pi
_PI2 = math.pi * math.pi
_MAX_ROWS = 1024
_ROUND_FACTOR = 64.0


def _inv_sin2_pi(w: complex) -> complex:
    """1/sin(pi w)^2, stable on both ends of the strip."""
    if abs(w.imag) < 0.25:
        s = cmath.sin(_PI * w)
        return 1.0 / (s * s)
    u = cmath.exp(2j * _PI * (w if w.imag > 0.0 else -w))
    om = 1.0 - u
    return -4.0 * u / (om * om)


def _cot_pi(w: complex) -> complex:
    """cot(pi w), stable on both ends of the strip."""
    if abs(w.imag) < 0.25:
        return cmath.cos(_PI * w) / cmath.sin(_PI * w)
    if w.imag > 0.0:
        u = cmath.exp(2j * _PI * w)
        return -1j * (1.0 + u) / (1.0 - u)
    v = cmath.exp(-2j * _PI * w)
    return 1j * (1.0 + v) / (1.0 - v)


TAU_IM_MIN = 0.5


def _check_strip(tau: complex, z: complex) -> tuple[float, float]:
    im_tau = tau.imag
    if im_tau < TAU_IM_MIN:
        raise DomainError(f"row-sum series needs Im tau >= {TAU_IM_MIN}, got {im_tau}")
    y = z.imag
    if abs(y) > 0.5 * im_tau * (1.0 + 1e-9) + 1e-300:
        raise DomainError("row-sum series needs |Im z| <= Im(tau)/2; reduce z first")
    return im_tau, y


def _geom_factors(im_tau: float, y: float, rows: int) -> tuple[float, float, float, float, float]:
    """Common tail quantities: rho, 1/(1-q), and the three leading moduli."""
    rho = math.exp(-2.0 * _PI * (im_tau - abs(y)))
    q_inv = 1.0 / (1.0 - math.exp(-2.0 * _PI * im_tau))
    a = 2.0 * _PI * im_tau * (rows + 1)
    plus = math.exp(2.0 * _PI * y - a)
    minus = math.exp(-2.0 * _PI * y - a)
    zero = math.exp(-a)
    return rho, q_inv, plus, minus, zero


def _wp_tail(im_tau: float, y: float, rows: int) -> float:
    rho, q_inv, plus, minus, zero = _geom_factors(im_tau, y, rows)
    return 4.0 * _PI2 * (plus + minus + 2.0 * zero) * q_inv / (1.0 - rho) ** 2


def _wzeta_tail(im_tau: float, y: float, abs_z: float, rows: int) -> float:
    rho, q_inv, plus, minus, zero = _geom_factors(im_tau, y, rows)
    cot_part = 2.0 * _PI * (plus + minus) / (1.0 - rho)
    sin_part = 8.0 * _PI2 * abs_z * zero / (1.0 - rho) ** 2
    return (cot_part + sin_part) * q_inv


def _rows_needed(tail_fn, target: float) -> int:
    for rows in range(_MAX_ROWS + 1):
        if tail_fn(rows) <= target:
            return rows
    raise PrecisionError("row-sum tail does not reach the requested tolerance")


def wp_strip(tau: complex, z: complex, tol: float) -> CertifiedValue:
    """wp on tau*Z + Z for z already reduced into the horizontal strip."""
    im_tau, y = _check_strip(tau, z)
    rows = _rows_needed(lambda c: _wp_tail(im_tau, y, c), 0.5 * tol)
    s_main = _inv_sin2_pi(z)
    acc = s_main - 1.0 / 3.0
    absacc = abs(s_main) + 1.0 / 3.0
    for c in range(1, rows + 1):
        ct = c * tau
        t1 = _inv_sin2_pi(z - ct)
        t2 = _inv_sin2_pi(z + ct)
        t3 = _inv_sin2_pi(ct)
        row = t1 + t2 - 2.0 * t3
        acc += row
        absacc += abs(t1) + abs(t2) + 2.0 * abs(t3)
    value = _PI2 * acc
    err = _wp_tail(im_tau, y, rows) + _ROUND_FACTOR * _EPS * _PI2 * absacc
    return CertifiedValue(value, err)


def wzeta_strip(tau: complex, z: complex, tol: float) -> CertifiedValue:
    """wzeta on tau*Z + Z for z already reduced into the horizontal strip."""
    im_tau, y = _check_strip(tau, z)
    abs_z = abs(z)
    rows = _rows_needed(lambda c: _wzeta_tail(im_tau, y, abs_z, c), 0.5 * tol)
    main = _PI * _cot_pi(z) + (_PI2 / 3.0) * z
    acc = main
    absacc = abs(main)
    for c in range(1, rows + 1):
        ct = c * tau
        t1 = _PI * (_cot_pi(z - ct) + _cot_pi(z + ct))
        t2 = 2.0 * _PI2 * z * _inv_sin2_pi(ct)
        acc += t1 + t2
        absacc += abs(t1) + abs(t2)
    err = _wzeta_tail(im_tau, y, abs_z, rows) + _ROUND_FACTOR * _EPS * absacc
    return CertifiedValue(acc, err)


@lru_cache(maxsize=512)
def eta_pair_strip(tau: complex, tol: float) -> tuple[CertifiedValue, CertifiedValue]:
    """Quasi-periods (eta1, eta2) of tau*Z + Z for a reduced tau.

    Both are differences of wzeta values whose endpoints straddle the strip:
    eta1 uses base points with Im = -Im(tau)/2 so that z and z + tau stay
    admissible; eta2 uses interior base points and z + 1.  A second base
    point certifies independence of the choice to within 4 tol.
    """
    if tau.imag < TAU_IM_MIN:
        raise DomainError(f"eta pair needs Im tau >= {TAU_IM_MIN}, got {tau.imag}")
    quarter = 0.25 * tol

    def diff(z0: complex, period: complex) -> CertifiedValue:
        hi = wzeta_strip(tau, z0 + period, quarter)
        lo = wzeta_strip(tau, z0, quarter)
        return hi - lo

    base1 = 0.25 - 0.5 * tau
    base1b = 0.375 - 0.5 * tau
    eta1 = diff(base1, tau)
    eta1b = diff(base1b, tau)
    if abs(eta1.value - eta1b.value) > 4.0 * tol + eta1.error + eta1b.error:
        raise PrecisionError("eta1 depends on the base point beyond tolerance")

    base2 = 0.21 + 0.13j
    base2b = 0.37 - 0.09j
    eta2 = diff(base2, 1.0)
    eta2b = diff(base2b, 1.0)
    if abs(eta2.value - eta2b.value) > 4.0 * tol + eta2.error + eta2b.error:
        raise PrecisionError("eta2 depends on the base point beyond tolerance")
    return eta1, eta2
