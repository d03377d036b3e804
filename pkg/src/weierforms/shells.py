"""Square-shell lattice summation with a provable truncation tail bound.

The direct sums run over square shells max(|c|,|d|) = n, n = 1..N, in the
(given or Lagrange-reduced) generator basis.  Each shell is symmetric under
omega -> -omega, and the paired summands decay like |omega|**-4:

  wp pair:    |f(w) + f(-w)| <= (88/9) |z|^2 / |w|^4    for |z/w| <= 1/2
  wzeta pair: |f(w) + f(-w)| <= (8/3)  |z|^3 / |w|^4    for |z/w| <= 1/2

(from the even/odd power series of the paired summand, with the geometric
majorant Sum (2k+1) 4^(1-k) = 44/9).  Per shell the pairs split into axis
points (modulus exactly n|omega_i|), corner pairs (>= n*max(e1,e2)) and edge
runs bounded via max(|c| h1, n e2) resp. max(|d| h2, n e1); summing the
resulting per-shell bounds over n > N gives the closed-form tail used by
``plan_truncation``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PrecisionError
from .lattice import Lattice

__all__ = ["TruncationPlan", "plan_truncation", "shell_sum", "SHELL_CAP"]

_EPS = math.ulp(1.0)

SHELL_CAP = 10**6

PAIR_COEFF_WP = 88.0 / 9.0
PAIR_COEFF_WZETA = 8.0 / 3.0


@dataclass(frozen=True)
class TruncationPlan:
    """Shell radius with a proven bound on the omitted tail.

    ``tail_bound`` bounds the absolute value of the full sum over all shells
    beyond ``shell_radius`` for any |z| <= z_bound; ``shell_constant`` is the
    uniform per-shell modulus lower bound delta (|omega| >= delta * shell).
    """

    shell_radius: int
    tail_bound: float
    shell_constant: float
    kind: str
    z_bound: float
    k: int

    @property
    def point_count(self) -> int:
        n = self.shell_radius
        return (2 * n + 1) ** 2 - 1


def _tail_bound(lat: Lattice, amplitude: float, p: int, n_shells: int) -> float:
    """Tail sum over shells n > n_shells of amplitude / L(c,d)**p, paired.

    Uses the per-point lower bounds documented in the module docstring.
    """
    g = lat.geometry
    w1a, w2a = abs(lat.omega1), abs(lat.omega2)
    nf = float(n_shells)
    axis_corner = (w1a**-p + w2a**-p + 2.0 * max(g.e1, g.e2) ** -p) * nf ** (1 - p) / (p - 1)
    edge_coeff = (p / (p - 1.0)) * (g.e2 ** (1 - p) / g.h1 + g.e1 ** (1 - p) / g.h2)
    edges = 2.0 * edge_coeff * nf ** (2 - p) / (p - 2)
    return amplitude * (axis_corner + edges)


def plan_truncation(
    lat: Lattice,
    z_bound: float,
    k: int = 3,
    tol: float = 1e-8,
    *,
    kind: str = "wp",
    shell_cap: int = SHELL_CAP,
) -> TruncationPlan:
    """Smallest shell radius whose proven tail bound is <= tol.

    ``k`` is the decay exponent of the unpaired summand (3 for both
    Weierstrass families); pairing improves the tail exponent by one.
    Requires z_bound <= delta so that |z/omega| <= 1/2 holds on every shell
    beyond the first, keeping the pair majorants valid on the tail.
    """
    if k < 3:
        raise DomainError(f"decay exponent must be >= 3, got {k}")
    if kind not in ("wp", "wzeta"):
        raise DomainError(f"unknown summand kind {kind!r}")
    z_bound = float(z_bound)
    if z_bound < 0.0:
        raise DomainError("z_bound must be nonnegative")
    g = lat.geometry
    if z_bound > g.delta * (1.0 + 1e-12):
        raise DomainError(
            f"z_bound {z_bound:.6g} exceeds the shell constant {g.delta:.6g}; "
            "the margin |z/omega| <= 1/2 would fail beyond the first shell"
        )
    if k == 3:
        p = 4
        if kind == "wp":
            amplitude = PAIR_COEFF_WP * z_bound**2
        else:
            amplitude = PAIR_COEFF_WZETA * z_bound**3
    else:
        # no pairing gain claimed for higher k; crude doubled point majorant
        p = k
        amplitude = 2.0 * 10.0 * z_bound

    n_margin = max(1, math.ceil(2.0 * z_bound / g.delta - 1.0))
    if not math.isfinite(tol):
        n = n_margin
        return TruncationPlan(n, _tail_bound(lat, amplitude, p, n), g.delta, kind, z_bound, k)
    if tol <= 0.0:
        raise DomainError("tol must be positive")

    lo, hi = n_margin, shell_cap
    if _tail_bound(lat, amplitude, p, hi) > tol:
        raise PrecisionError(
            f"tolerance {tol:.3g} unreachable within the shell cap {shell_cap}"
        )
    if _tail_bound(lat, amplitude, p, lo) <= tol:
        hi = lo
    while lo < hi:
        mid = (lo + hi) // 2
        if _tail_bound(lat, amplitude, p, mid) <= tol:
            hi = mid
        else:
            lo = mid + 1
    return TruncationPlan(hi, _tail_bound(lat, amplitude, p, hi), g.delta, kind, z_bound, k)


# ---------------------------------------------------------------------------
# Summation kernels.  The summands are the absolutely convergent single-term
# forms
#   wp:    1/(z-w)^2 - 1/w^2  ==  (2 - z/w) z / (1 - z/w)^2 * w^-3
#   wzeta: 1/(z-w) + 1/w + z/w^2  ==  -z^2 / (1 - z/w) * w^-3
# evaluated in the algebraically identical arrangements
#   wp:    ((w + (w-z)) * z) / ((w-z)^2 w^2)
#   wzeta: -z^2 / ((w-z) w^2)
# which cost fewer operations per point.  Kahan compensation keeps the
# accumulated rounding below ~4 eps * sum|term|.

try:  # pragma: no cover - exercised indirectly
    import numba as _numba

    @_numba.njit(cache=False, fastmath=False)
    def _kernel(w1, w2, z, n0, n1, wp_kind):
        total = 0.0 + 0.0j
        comp = 0.0 + 0.0j
        absacc = 0.0
        for n in range(n0, n1 + 1):
            # top/bottom rows d = +-n, then side columns c = +-n
            for c in range(-n, n + 1):
                for d in (n, -n):
                    w = c * w1 + d * w2
                    a = w - z
                    if wp_kind:
                        s = (w + a) * z / (a * a * w * w)
                    else:
                        s = -z * z / (a * w * w)
                    y = s - comp
                    t = total + y
                    comp = (t - total) - y
                    total = t
                    absacc += abs(s.real) + abs(s.imag)
            for d in range(-n + 1, n):
                for c in (n, -n):
                    w = c * w1 + d * w2
                    a = w - z
                    if wp_kind:
                        s = (w + a) * z / (a * a * w * w)
                    else:
                        s = -z * z / (a * w * w)
                    y = s - comp
                    t = total + y
                    comp = (t - total) - y
                    total = t
                    absacc += abs(s.real) + abs(s.imag)
        return total, absacc

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False


def _shell_arrays(n0: int, n1: int):
    cs, ds = [], []
    for n in range(n0, n1 + 1):
        row = np.arange(-n, n + 1)
        side = np.arange(-n + 1, n)
        cs += [row, row, np.full(side.size, n), np.full(side.size, -n)]
        ds += [np.full(row.size, n), np.full(row.size, -n), side, side]
    return np.concatenate(cs), np.concatenate(ds)


def _numpy_sum(w1, w2, z, n_shells, wp_kind, chunk_points=2_000_000):
    re_parts, im_parts = [], []
    absacc = 0.0
    n = 1
    while n <= n_shells:
        n1, pts = n, 0
        while n1 <= n_shells and pts < chunk_points:
            pts += 8 * n1
            n1 += 1
        c, d = _shell_arrays(n, n1 - 1)
        w = c * w1 + d * w2
        a = w - z
        if wp_kind:
            s = (w + a) * z / (a * a * w * w)
        else:
            s = -z * z / (a * w * w)
        re_parts.append(float(np.sum(s.real)))
        im_parts.append(float(np.sum(s.imag)))
        absacc += float(np.sum(np.abs(s.real)) + np.sum(np.abs(s.imag)))
        n = n1
    return complex(math.fsum(re_parts), math.fsum(im_parts)), absacc


def shell_sum(lat: Lattice, z: complex, n_shells: int, kind: str = "wp") -> tuple[complex, float]:
    """Sum the chosen summand over shells 1..n_shells in the basis of ``lat``.

    Returns (sum, rounding_bound).  The principal part (1/z^2 or 1/z) is not
    included.  Deterministic: fixed shell order and in-shell walk.
    """
    if kind not in ("wp", "wzeta"):
        raise DomainError(f"unknown summand kind {kind!r}")
    if n_shells < 0:
        raise DomainError("shell count must be nonnegative")
    if n_shells == 0:
        return 0.0 + 0.0j, 0.0
    w1, w2, zz = complex(lat.omega1), complex(lat.omega2), complex(z)
    if _HAVE_NUMBA:
        total, absacc = _kernel(w1, w2, zz, 1, int(n_shells), kind == "wp")
    else:
        total, absacc = _numpy_sum(w1, w2, zz, int(n_shells), kind == "wp")
    rounding = 64.0 * _EPS * absacc
    return total, rounding
