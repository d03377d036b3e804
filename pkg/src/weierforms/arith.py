"""Exact rational arithmetic, Bernoulli numbers, even zeta values and e(*).

Rational scalars are plain ``fractions.Fraction`` (arbitrary precision,
always in lowest terms, positive denominator), re-exported as ``Rational``.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational as _RationalABC

from .errors import DomainError

__all__ = [
    "Rational",
    "as_rational",
    "CertifiedValue",
    "bernoulli",
    "BERNOULLI_CAP",
    "zeta_even",
    "zeta_even_coefficient",
    "zeta_r_enclosure",
    "e_of",
    "TWO_PI",
]

Rational = Fraction

TWO_PI = 2.0 * math.pi

_EPS = math.ulp(1.0)


def as_rational(x) -> Fraction:
    """Coerce ``x`` (Fraction, int, or a 'p/q' string) to an exact Fraction.

    Floats and decimal strings are rejected: torsion labels and group
    arithmetic must stay exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise DomainError(f"rational expected as 'p/q', got decimal {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {x!r}") from exc
    raise DomainError(f"cannot interpret {type(x).__name__} as an exact rational")


@dataclass(frozen=True)
class CertifiedValue:
    """A complex value together with a rigorous absolute-error bound.

    Arithmetic combines bounds conservatively: errors add under addition,
    and |a|eb + |b|ea + ea*eb under multiplication.
    """

    value: complex
    error: float

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        err = float(self.error)
        if not (err >= 0.0) or math.isinf(err) or math.isnan(err):
            raise DomainError(f"error bound must be finite and nonnegative, got {self.error!r}")
        object.__setattr__(self, "error", err)

    @classmethod
    def exact(cls, value: complex) -> "CertifiedValue":
        return cls(complex(value), 0.0)

    def __add__(self, other):
        if isinstance(other, CertifiedValue):
            return CertifiedValue(self.value + other.value, self.error + other.error)
        return CertifiedValue(self.value + complex(other), self.error)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CertifiedValue):
            return CertifiedValue(self.value - other.value, self.error + other.error)
        return CertifiedValue(self.value - complex(other), self.error)

    def __rsub__(self, other):
        return CertifiedValue(complex(other) - self.value, self.error)

    def __neg__(self):
        return CertifiedValue(-self.value, self.error)

    def __mul__(self, other):
        if isinstance(other, CertifiedValue):
            return CertifiedValue(
                self.value * other.value,
                abs(self.value) * other.error + abs(other.value) * self.error + self.error * other.error,
            )
        c = complex(other)
        return CertifiedValue(self.value * c, abs(c) * self.error)

    __rmul__ = __mul__

    def scaled(self, factor: complex) -> "CertifiedValue":
        """Multiply by an exact complex scalar."""
        f = complex(factor)
        return CertifiedValue(self.value * f, abs(f) * self.error)

    def abs_bounds(self) -> tuple[float, float]:
        """Interval [lo, hi] guaranteed to contain |true value|."""
        a = abs(self.value)
        return max(0.0, a - self.error), a + self.error

    def agrees_with(self, other: "CertifiedValue", slack: float = 0.0) -> bool:
        """True when the two certified discs can contain a common value."""
        return abs(self.value - other.value) <= self.error + other.error + slack


# ---------------------------------------------------------------------------
# Bernoulli numbers (exact, memoized, thread-safe first initialization)

BERNOULLI_CAP = 256

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def _extend_bernoulli(n: int) -> None:
    # recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, with B_1 = -1/2
    table = _bernoulli_table
    while len(table) <= n:
        m = len(table)
        if m % 2 == 1:
            table.append(Fraction(0))
            continue
        acc = Fraction(0)
        for j in range(m):
            bj = table[j]
            if bj:
                acc += comb(m + 1, j) * bj
        table.append(-acc / (m + 1))


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n for even n >= 0 (B_1 convention: -1/2).

    The full table up to ``n`` is computed once by the defining recurrence of
    1/2 z + z/(e^z - 1) and cached.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError("bernoulli index must be an integer")
    if n < 0:
        raise DomainError(f"bernoulli index must be nonnegative, got {n}")
    if n % 2 != 0:
        raise DomainError(f"bernoulli is defined here for even indices only, got {n}")
    if n > BERNOULLI_CAP:
        raise DomainError(f"bernoulli index {n} exceeds cap {BERNOULLI_CAP}")
    if len(_bernoulli_table) <= n:
        with _bernoulli_lock:
            _extend_bernoulli(n)
    return _bernoulli_table[n]


def zeta_even_coefficient(n: int) -> Fraction:
    """Exact rational c with zeta_R(n) = c * pi**n, for even n >= 2."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2 or n % 2 != 0:
        raise DomainError(f"even integer >= 2 required, got {n!r}")
    half = n // 2
    sign = -1 if half % 2 == 0 else 1  # (-1)**(n/2 - 1)
    return Fraction(sign) * bernoulli(n) * Fraction(2**n, 2 * math.factorial(n))


def zeta_even(n: int) -> CertifiedValue:
    """zeta_R(n) for even n >= 2 via the Bernoulli closed form.

    The rational coefficient is exact; the only error is the final
    binary64 rounding of c * pi**n.
    """
    coeff = zeta_even_coefficient(n)
    value = float(coeff) * math.pi**n
    return CertifiedValue(value, 8.0 * _EPS * abs(value))


def zeta_r_enclosure(s: float, terms: int = 100_000) -> CertifiedValue:
    """Certified enclosure of zeta_R(s), s > 1, by direct partial summation.

    Tail bracket: (M+1)^(1-s)/(s-1) <= sum_{d>M} d^-s <= M^(1-s)/(s-1).
    Works for odd integer arguments, where the Bernoulli form does not apply.
    """
    s = float(s)
    if s <= 1.0:
        raise DomainError(f"zeta enclosure requires s > 1, got {s}")
    m = int(terms)
    partial = math.fsum(d ** (-s) for d in range(1, m + 1))
    hi = m ** (1.0 - s) / (s - 1.0)
    lo = (m + 1) ** (1.0 - s) / (s - 1.0)
    mid = partial + 0.5 * (lo + hi)
    err = 0.5 * (hi - lo) + 8.0 * _EPS * partial
    return CertifiedValue(mid, err)


def e_of(x) -> complex:
    """e(x) := exp(2 pi i x) for rational, real, or complex x.

    The real part is reduced modulo 1 first (an exact symmetry of e), which
    keeps the result accurate for large |Re x|.
    """
    if isinstance(x, (Fraction, _RationalABC)) and not isinstance(x, (float, complex)):
        frac = Fraction(x.numerator, x.denominator) % 1
        return cmath.exp(2j * math.pi * float(frac))
    z = complex(x)
    re = math.remainder(z.real, 1.0)
    return cmath.exp(2j * math.pi * complex(re, z.imag))
