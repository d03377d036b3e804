"""Closed-form cusp values, the s = 0 series identity, and the explicit
double-sum bound used to control rows of lattice points.

The cusp of interest is i*infinity; values at other cusps are obtained by
transporting with the slash action, so only the limits below are needed in
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import CertifiedValue, as_rational, e_of, zeta_even, zeta_r_enclosure
from .errors import DomainError
from .evaluate import DEFAULT_TOL
from .forms import FormSpec, RationalPair, eval_f

__all__ = [
    "cusp_value_f",
    "cusp_value_f_series",
    "cusp_value_h",
    "cusp_value",
    "lemma_eies_bound",
    "lattice_row_sum_truncated",
    "verify_zeta2_recovery",
    "ZetaRecoveryRow",
    "ZetaRecoveryReport",
    "CuspValueReport",
    "cusp_report",
]

_EPS = math.ulp(1.0)
_PI = math.pi


def cusp_value_f(p: RationalPair) -> complex:
    """Limit of the weight-2 member at i*infinity (exact two-branch form).

    s integral: -(pi^2/3) (e(t) + 10 + e(-t)) / (e(t) - 2 + e(-t));
    s non-integral: -(pi^2/3).
    """
    if p.is_integral():
        raise DomainError(f"label {p} is integral")
    if p.s.denominator == 1:
        two_cos = 2.0 * math.cos(2.0 * _PI * float(p.t % 1))
        return complex(-(_PI**2) / 3.0 * (two_cos + 10.0) / (two_cos - 2.0))
    return complex(-(_PI**2) / 3.0)


def cusp_value_f_series(t, terms: int = 80) -> CertifiedValue:
    """The s = 0 cusp value as 1/t^2 + 2 sum_{n>=1} (2n+1) zeta_R(2n+2) t^(2n).

    Tail bound (zeta values decrease): 2 zeta_R(2) (2N+3) t^(2N+2)/(1-t^2)^2.
    """
    t = as_rational(t)
    if not (0 < t < 1):
        raise DomainError(f"series argument must satisfy 0 < t < 1, got {t}")
    if terms < 1:
        raise DomainError("need at least one series term")
    tf = float(t)
    acc = 1.0 / tf**2
    absacc = acc
    err = 0.0
    power = 1.0
    for n in range(1, terms + 1):
        power *= tf * tf
        zv = zeta_even(2 * n + 2)
        term = 2.0 * (2 * n + 1) * zv.value * power
        acc += term
        absacc += abs(term)
        err += 2.0 * (2 * n + 1) * zv.error * power
    z2 = math.pi**2 / 6.0
    tail = 2.0 * z2 * (2 * terms + 3) * tf ** (2 * terms + 2) / (1.0 - tf * tf) ** 2
    err += tail + 64.0 * _EPS * absacc
    return CertifiedValue(complex(acc), err)


def cusp_value_h(r: int, t) -> complex:
    """Limit of the weight-1 combination at i*infinity for s = 0 labels:

        2 pi i ( (r-1)/2 + r/(e(t)-1) - 1/(e(rt)-1) ).
    """
    if not isinstance(r, int) or isinstance(r, bool) or r == 0:
        raise DomainError(f"r must be a nonzero integer, got {r!r}")
    t = as_rational(t)
    if t.denominator == 1:
        raise DomainError(f"t = {t} is integral: e(t) = 1 is a pole of the formula")
    rt = r * t
    if rt.denominator == 1:
        raise DomainError(f"r*t = {rt} is integral: e(rt) = 1 is a pole of the formula")
    et = e_of(t)
    ert = e_of(rt)
    val = 2j * _PI * ((r - 1) / 2.0 + r / (et - 1.0) - 1.0 / (ert - 1.0))
    return val


def cusp_value(form: FormSpec) -> complex:
    """Closed-form i*infinity value for the supported form kinds."""
    if form.kind == "wp":
        return cusp_value_f(form.p)
    if form.kind == "h":
        if form.p.s != 0:
            raise DomainError(
                "closed cusp value implemented for s = 0 labels only; "
                "transport other cusps with the slash action"
            )
        return cusp_value_h(form.r, form.p.t)
    raise DomainError(f"no closed cusp value for kind {form.kind!r}")


# ---------------------------------------------------------------------------
# explicit bound on sum over c != 0 of |c tau + d|^(-k)


@lru_cache(maxsize=64)
def _zeta_r(k: int) -> CertifiedValue:
    if k % 2 == 0:
        return zeta_even(k)
    return zeta_r_enclosure(float(k))


def lemma_eies_bound(k: int, im_tau: float) -> float:
    """The closed bound 4 zeta_R(k)/Y^k + 2 pi zeta_R(k-1)/Y^(k-1), Y = Im tau.

    Valid for integer k >= 3; the truncated double sum must stay strictly
    below it.  Upper-biased by the zeta enclosures' error.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 3:
        raise DomainError(f"k must be an integer >= 3, got {k!r}")
    y = float(im_tau)
    if not y > 0.0:
        raise DomainError("Im tau must be positive")
    zk = _zeta_r(k)
    zk1 = _zeta_r(k - 1)
    return (
        4.0 * (zk.value.real + zk.error) / y**k
        + 2.0 * _PI * (zk1.value.real + zk1.error) / y ** (k - 1)
    )


def lattice_row_sum_truncated(k: int, tau: complex, shells: int = 500) -> float:
    """Truncated sum over c != 0, max(|c|,|d|) <= shells of |c tau + d|^(-k).

    All terms are positive, so any truncation is a strict lower bound for the
    full sum.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 3:
        raise DomainError(f"k must be an integer >= 3, got {k!r}")
    t = complex(tau)
    if not t.imag > 0.0:
        raise DomainError("Im tau must be positive")
    c = np.arange(1, shells + 1, dtype=np.float64)[:, None]
    d = np.arange(-shells, shells + 1, dtype=np.float64)[None, :]
    re = c * t.real + d
    im = c * t.imag
    mod2 = re * re + im * im
    # +-c pair off by d -> -d symmetry
    return float(2.0 * np.sum(mod2 ** (-k / 2.0)))


# ---------------------------------------------------------------------------
# recovery of zeta_R(2) from the s != 0 cusp limit


@dataclass(frozen=True)
class ZetaRecoveryRow:
    Y: float
    value: complex
    error: float
    limit_residual: float
    implied_zeta2: float
    zeta2_residual: float


@dataclass(frozen=True)
class ZetaRecoveryReport:
    rows: tuple[ZetaRecoveryRow, ...]
    target_limit: float
    zeta2: float
    passed: bool


def verify_zeta2_recovery(
    tolerance: float = 1e-8,
    label: RationalPair | None = None,
    heights: tuple[float, ...] = (5.0, 10.0, 20.0),
    tol: float = DEFAULT_TOL,
) -> ZetaRecoveryReport:
    """Evaluate the s != 0 member up the imaginary axis; its limit -pi^2/3
    forces the value of zeta_R(2) = pi^2/6, recovered here as -limit/2.

    Passes when the largest height gives the implied zeta within
    ``tolerance`` and the limit residual does not grow with Y (a small noise
    allowance covers the rounding floor once the series has converged).
    """
    p = label if label is not None else RationalPair.of(Fraction(1, 2), 0)
    if p.s.denominator == 1:
        raise DomainError("recovery needs a label with non-integral s")
    target = -(_PI**2) / 3.0
    z2 = _PI**2 / 6.0
    rows = []
    for y in heights:
        cv = eval_f(p, complex(0.0, y), tol)
        implied = -cv.value.real / 2.0
        rows.append(
            ZetaRecoveryRow(
                Y=float(y),
                value=cv.value,
                error=cv.error,
                limit_residual=abs(cv.value - target),
                implied_zeta2=implied,
                zeta2_residual=abs(implied - z2),
            )
        )
    noise = 64.0 * _EPS * abs(target)
    monotone = all(
        rows[i + 1].limit_residual <= rows[i].limit_residual + noise
        for i in range(len(rows) - 1)
    )
    passed = monotone and rows[-1].zeta2_residual < tolerance
    return ZetaRecoveryReport(tuple(rows), target, z2, passed)


# ---------------------------------------------------------------------------
# cusp-value reports (for the table command and the verification suites)


@dataclass(frozen=True)
class CuspValueReport:
    label: str
    closed_form: complex
    numeric: CertifiedValue
    Y: float
    residual: float
    slack: float

    @property
    def valid(self) -> bool:
        return self.residual <= self.numeric.error + self.slack


def cusp_report(form: FormSpec, Y: float, tol: float = DEFAULT_TOL, slack: float = 1e-6) -> CuspValueReport:
    """Compare the numeric value at tau = iY against the closed cusp value.

    ``slack`` covers the finite-height gap to the limit; at Y = 20 the gap is
    far below 1e-6 for every supported label.
    """
    if not Y > 0:
        raise DomainError("Y must be positive")
    closed = cusp_value(form)
    numeric = form.evaluate(complex(0.0, float(Y)), tol)
    return CuspValueReport(
        label=form.describe(),
        closed_form=closed,
        numeric=numeric,
        Y=float(Y),
        residual=abs(closed - numeric.value),
        slack=slack,
    )
