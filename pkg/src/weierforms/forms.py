"""Torsion labels, the SL(2,Z) action, congruence subgroups, slash operator,
and the certified evaluators of the weight-2 and weight-1 families.

Exactness contract: every label, matrix action and group-membership test in
this module is exact integer/rational arithmetic; tolerances appear only in
the complex evaluators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Literal, Sequence

from .arith import CertifiedValue, as_rational
from .errors import DomainError
from .evaluate import DEFAULT_TOL, eta12, wp, wzeta

__all__ = [
    "RationalPair",
    "ModularMatrix",
    "IDENTITY",
    "S_MATRIX",
    "T_MATRIX",
    "Convention",
    "pair_act",
    "gamma_st_contains",
    "principal_congruence_contains",
    "hecke_contains",
    "gamma1_contains",
    "slash",
    "eval_f",
    "eval_g",
    "eval_h",
    "eval_hU",
    "defect_coefficients",
    "FormSpec",
    "random_sl2",
    "random_in_group",
]

Convention = Literal["paper-b", "standard-c"]
CONVENTIONS = ("paper-b", "standard-c")


@dataclass(frozen=True)
class RationalPair:
    """Exact rational label (s, t); the torsion point is z = s*tau + t."""

    s: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", as_rational(self.s))
        object.__setattr__(self, "t", as_rational(self.t))

    @classmethod
    def of(cls, s, t) -> "RationalPair":
        return cls(as_rational(s), as_rational(t))

    def is_integral(self) -> bool:
        return self.s.denominator == 1 and self.t.denominator == 1

    def canonical(self) -> "RationalPair":
        """Representative with 0 <= s < 1 and 0 <= t < 1."""
        return RationalPair(self.s % 1, self.t % 1)

    def level(self) -> int:
        """Common denominator L of s and t (the label's level)."""
        return lcm(self.s.denominator, self.t.denominator)

    def scaled(self, r: int) -> "RationalPair":
        return RationalPair(r * self.s, r * self.t)

    def shifted(self, m: int, n: int) -> "RationalPair":
        return RationalPair(self.s + m, self.t + n)

    def __neg__(self) -> "RationalPair":
        return RationalPair(-self.s, -self.t)

    def acted_by(self, mat: "ModularMatrix") -> "RationalPair":
        return pair_act(self, mat)

    def point(self, tau: complex) -> complex:
        return float(self.s) * tau + float(self.t)

    def __str__(self):
        return f"({self.s},{self.t})"


@dataclass(frozen=True)
class ModularMatrix:
    """Integer matrix (a, b; c, d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for entry in (self.a, self.b, self.c, self.d):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise DomainError("matrix entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(
                f"determinant must be 1, got {self.a * self.d - self.b * self.c}"
            )

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ModularMatrix":
        return ModularMatrix(self.d, -self.b, -self.c, self.a)

    def mobius(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def cocycle(self, tau: complex) -> complex:
        """The automorphy factor c*tau + d."""
        return self.c * tau + self.d

    def max_entry(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __str__(self):
        return f"[{self.a},{self.b};{self.c},{self.d}]"


IDENTITY = ModularMatrix(1, 0, 0, 1)
S_MATRIX = ModularMatrix(0, -1, 1, 0)
T_MATRIX = ModularMatrix(1, 1, 0, 1)


def pair_act(p: RationalPair, mat: ModularMatrix) -> RationalPair:
    """Right action (s, t) -> (s*a + t*c, s*b + t*d), exact and uncanonicalized."""
    return RationalPair(p.s * mat.a + p.t * mat.c, p.s * mat.b + p.t * mat.d)


def gamma_st_contains(p: RationalPair, mat: ModularMatrix) -> bool:
    """Exact test of (s,t)*A - (s,t) in Z^2 (the stabilizer of the label mod Z^2)."""
    moved = pair_act(p, mat)
    return (moved.s - p.s).denominator == 1 and (moved.t - p.t).denominator == 1


def _check_level(level: int) -> None:
    if not isinstance(level, int) or isinstance(level, bool) or level < 1:
        raise DomainError(f"level must be a positive integer, got {level!r}")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def principal_congruence_contains(level: int, mat: ModularMatrix) -> bool:
    """A == identity mod level."""
    _check_level(level)
    return (
        (mat.a - 1) % level == 0
        and mat.b % level == 0
        and mat.c % level == 0
        and (mat.d - 1) % level == 0
    )


def hecke_contains(level: int, mat: ModularMatrix, convention: Convention = "paper-b") -> bool:
    """Hecke congruence subgroup of the given level.

    ``paper-b`` tests b == 0 mod level, ``standard-c`` tests c == 0 mod level
    (the two sides of a transposition ambiguity; see the README).
    """
    _check_level(level)
    _check_convention(convention)
    entry = mat.b if convention == "paper-b" else mat.c
    return entry % level == 0


def gamma1_contains(level: int, mat: ModularMatrix, convention: Convention = "paper-b") -> bool:
    """a == d == 1 mod level together with the Hecke condition of the convention."""
    _check_level(level)
    _check_convention(convention)
    if (mat.a - 1) % level != 0 or (mat.d - 1) % level != 0:
        return False
    entry = mat.b if convention == "paper-b" else mat.c
    return entry % level == 0


def slash(
    evaluator: Callable[[complex, float], CertifiedValue],
    weight: int,
    mat: ModularMatrix,
    tau: complex,
    tol: float = DEFAULT_TOL,
) -> CertifiedValue:
    """Weight-k slash action: (c tau + d)^(-k) * value at the Mobius image."""
    tau = complex(tau)
    if not tau.imag > 0.0:
        raise DomainError("slash needs Im tau > 0")
    j = mat.cocycle(tau)
    cv = evaluator(mat.mobius(tau), tol)
    return cv.scaled(j ** (-weight))


# ---------------------------------------------------------------------------
# evaluators of the two families


def _require_noninteger(p: RationalPair, what: str) -> None:
    if p.is_integral():
        raise DomainError(f"{what} label {p} is integral; the torsion point is a pole")


def eval_f(p: RationalPair, tau: complex, tol: float = DEFAULT_TOL, **opts) -> CertifiedValue:
    """Weight-2 family member: wp(tau, s*tau + t).

    The label is reduced mod Z^2 before the point is formed; the value only
    depends on the class of (s, t), so this is exact label periodicity.
    """
    _require_noninteger(p, "weight-2")
    q = p.canonical()
    return wp(tau, q.point(complex(tau)), tol, **opts)


def eval_g(p: RationalPair, tau: complex, tol: float = DEFAULT_TOL, **opts) -> CertifiedValue:
    """Weight-1 building block: wzeta(tau, s*tau + t).

    No label reduction: shifting the label by (m, n) changes the value by
    m*eta1 + n*eta2, which the covariance law depends on.
    """
    _require_noninteger(p, "weight-1")
    return wzeta(tau, p.point(complex(tau)), tol, **opts)


def eval_h(r: int, p: RationalPair, tau: complex, tol: float = DEFAULT_TOL, **opts) -> CertifiedValue:
    """Modular weight-1 combination r*g_(s,t) - g_(rs,rt).

    Both parts are evaluated at tolerance tol/(|r|+1) so the certified error
    of the difference stays below tol despite the cancellation.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r == 0:
        raise DomainError(f"r must be a nonzero integer, got {r!r}")
    _require_noninteger(p, "weight-1")
    rp = p.scaled(r)
    if rp.is_integral():
        raise DomainError(f"label {p} scaled by {r} is integral; choose another r")
    part = tol / (abs(r) + 1)
    return eval_g(p, tau, part, **opts) * r - eval_g(rp, tau, part, **opts)


def eval_hU(labels: Sequence[RationalPair], tau: complex, tol: float = DEFAULT_TOL, **opts) -> CertifiedValue:
    """Sum of g over a tuple of labels whose exact sum is (0, 0)."""
    labels = tuple(labels)
    if not labels:
        raise DomainError("label list must be nonempty")
    total_s = sum((u.s for u in labels), Fraction(0))
    total_t = sum((u.t for u in labels), Fraction(0))
    if total_s != 0 or total_t != 0:
        raise DomainError(f"labels must sum to (0,0) exactly, got ({total_s},{total_t})")
    for u in labels:
        _require_noninteger(u, "weight-1")
    part = tol / len(labels)
    acc = CertifiedValue.exact(0.0)
    for u in labels:
        acc = acc + eval_g(u, tau, part, **opts)
    return acc


def defect_coefficients(p: RationalPair, mat: ModularMatrix) -> tuple[Fraction, Fraction]:
    """(u, v) = (s(a-1) + t c, s b + t(d-1)); integers exactly when A stabilizes the label."""
    u = p.s * (mat.a - 1) + p.t * mat.c
    v = p.s * mat.b + p.t * (mat.d - 1)
    return u, v


# ---------------------------------------------------------------------------
# tagged form descriptions


@dataclass(frozen=True)
class FormSpec:
    """Tagged description of one member of the evaluated families.

    kind 'wp' (weight 2), 'zeta'/'h'/'hU' (weight 1).  Construct through the
    factory classmethods, which validate the label constraints.
    """

    kind: str
    p: RationalPair | None = None
    r: int | None = None
    labels: tuple[RationalPair, ...] | None = None

    @classmethod
    def wp_form(cls, s, t) -> "FormSpec":
        p = RationalPair.of(s, t)
        _require_noninteger(p, "weight-2")
        return cls("wp", p=p.canonical())

    @classmethod
    def zeta_form(cls, s, t) -> "FormSpec":
        # kept uncanonicalized: label shifts move the value by quasi-periods
        p = RationalPair.of(s, t)
        _require_noninteger(p, "weight-1")
        return cls("zeta", p=p)

    @classmethod
    def h_form(cls, r: int, s, t) -> "FormSpec":
        p = RationalPair.of(s, t)
        _require_noninteger(p, "weight-1")
        if not isinstance(r, int) or r == 0:
            raise DomainError("r must be a nonzero integer")
        if p.scaled(r).is_integral():
            raise DomainError(f"(r s, r t) must not be integral for r={r}, label {p}")
        # the combination is invariant under label shifts, so canonicalize
        return cls("h", p=p.canonical(), r=r)

    @classmethod
    def hU_form(cls, labels: Sequence[RationalPair]) -> "FormSpec":
        labels = tuple(labels)
        total_s = sum((u.s for u in labels), Fraction(0))
        total_t = sum((u.t for u in labels), Fraction(0))
        if total_s != 0 or total_t != 0:
            raise DomainError("labels must sum to (0,0) exactly")
        for u in labels:
            _require_noninteger(u, "weight-1")
        return cls("hU", labels=labels)

    @property
    def weight(self) -> int:
        return 2 if self.kind == "wp" else 1

    def evaluate(self, tau: complex, tol: float = DEFAULT_TOL, **opts) -> CertifiedValue:
        if self.kind == "wp":
            return eval_f(self.p, tau, tol, **opts)
        if self.kind == "zeta":
            return eval_g(self.p, tau, tol, **opts)
        if self.kind == "h":
            return eval_h(self.r, self.p, tau, tol, **opts)
        if self.kind == "hU":
            return eval_hU(self.labels, tau, tol, **opts)
        raise DomainError(f"unknown form kind {self.kind!r}")

    def group_contains(self, mat: ModularMatrix) -> bool:
        """Membership in the invariance group attached to the form."""
        if self.kind == "hU":
            return all(gamma_st_contains(u, mat) for u in self.labels)
        return gamma_st_contains(self.p, mat)

    def describe(self) -> str:
        if self.kind == "wp":
            return f"f{self.p}"
        if self.kind == "zeta":
            return f"g{self.p}"
        if self.kind == "h":
            return f"h[r={self.r}]{self.p}"
        return "hU{" + ",".join(str(u) for u in self.labels) + "}"


# ---------------------------------------------------------------------------
# random sampling of group elements (coverage, not uniformity)


def random_sl2(rng: random.Random, max_entry: int = 20, max_len: int = 24) -> ModularMatrix:
    """Random word in the standard generators with all entries <= max_entry."""
    while True:
        length = rng.randint(0, max_len)
        mat = IDENTITY
        ok = True
        for _ in range(length):
            step = rng.choice((S_MATRIX, T_MATRIX, T_MATRIX.inverse()))
            nxt = mat @ step
            if nxt.max_entry() > max_entry:
                ok = False
                break
            mat = nxt
        if ok:
            return mat


def random_in_group(
    rng: random.Random,
    contains: Callable[[ModularMatrix], bool],
    max_entry: int = 20,
    max_tries: int = 20_000,
) -> ModularMatrix:
    """Rejection-sample a matrix satisfying ``contains``."""
    for _ in range(max_tries):
        mat = random_sl2(rng, max_entry=max_entry)
        if contains(mat):
            return mat
    raise DomainError("could not sample a group element within the try budget")
