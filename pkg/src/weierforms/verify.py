"""Named verification suites: each one checks a family of identities by
rigorous truncated computation and reports per-instance rows.

Suite names are part of the CLI contract:

  lemma-fsta    weight-2 slash covariance under all of SL(2,Z)
  lemma-gsta    weight-1 slash covariance
  defect-gstt   quasi-period defect of g under its stabilizer
  theorem-hrst  slash invariance of the weight-1 combination h
  theorem-hU    slash invariance of zero-sum label sums
  cusp-f        closed cusp values of the weight-2 family
  cusp-h        closed cusp value, phase resolution and boundedness of h
  zeta2         recovery of zeta_R(2) from the s != 0 cusp limit
  eies-bound    truncated double sums stay below the closed row bound
  identities    zeta-series identity and the Bernoulli bridge
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import CertifiedValue, bernoulli, zeta_even, zeta_even_coefficient, zeta_r_enclosure
from .config import RunConfig
from .cusp import (
    cusp_report,
    cusp_value_f_series,
    cusp_value_h,
    lattice_row_sum_truncated,
    lemma_eies_bound,
    verify_zeta2_recovery,
)
from .errors import DomainError
from .evaluate import eta12
from .forms import (
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    FormSpec,
    RationalPair,
    defect_coefficients,
    eval_f,
    eval_g,
    eval_h,
    eval_hU,
    gamma_st_contains,
    pair_act,
    principal_congruence_contains,
    random_in_group,
    random_sl2,
    slash,
)

__all__ = ["VerifyRow", "SuiteReport", "SUITES", "run_suite"]

_SQRT3_PI = math.sqrt(3.0) * math.pi


@dataclass(frozen=True)
class VerifyRow:
    id: str
    inputs: dict
    value: complex | None
    error: float | None
    bound: float | None
    residual: float | None
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    rows: tuple[VerifyRow, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.rows if r.passed)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _fmt_c(z: complex) -> str:
    return f"{z.real!r}{z.imag:+}i".replace("+-", "-")


def _random_tau(rng: random.Random) -> complex:
    return complex(rng.uniform(-1.5, 1.5), rng.uniform(0.5, 5.0))


_DENOMS = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


def _random_label(rng: random.Random) -> RationalPair:
    while True:
        qs = rng.choice(_DENOMS)
        qt = rng.choice(_DENOMS)
        p = RationalPair(Fraction(rng.randrange(qs), qs), Fraction(rng.randrange(qt), qt))
        if not p.is_integral():
            return p


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# covariance suites


def _covariance_suite(name: str, weight: int, config: RunConfig, instances: int = 200) -> SuiteReport:
    rng = random.Random(config.seed)
    tol = min(config.tolerance, 1e-9)
    slack = 1e-9
    evaluator = eval_f if weight == 2 else eval_g

    cases = []
    for idx in range(instances):
        cases.append((idx, _random_label(rng), random_sl2(rng), _random_tau(rng)))

    def check(case):
        idx, p, mat, tau = case
        lhs = slash(lambda w, tt: evaluator(p, w, tt), weight, mat, tau, tol)
        rhs = evaluator(pair_act(p, mat), tau, tol)
        residual = abs(lhs.value - rhs.value)
        bound = lhs.error + rhs.error + slack
        return VerifyRow(
            id=f"{name}-{idx:03d}",
            inputs={"p": str(p), "A": str(mat), "tau": _fmt_c(tau)},
            value=lhs.value,
            error=lhs.error + rhs.error,
            bound=bound,
            residual=residual,
            status="pass" if residual <= bound else "fail",
        )

    rows = _pmap(check, cases, config.jobs)
    return SuiteReport(name, config.seed, tuple(rows))


def suite_lemma_fsta(config: RunConfig) -> SuiteReport:
    return _covariance_suite("lemma-fsta", 2, config)


def suite_lemma_gsta(config: RunConfig) -> SuiteReport:
    return _covariance_suite("lemma-gsta", 1, config)


def suite_defect_gstt(config: RunConfig) -> SuiteReport:
    """g is not invariant under its stabilizer: the defect is u*eta1 + v*eta2
    with exact integers u, v read off the matrix."""
    rng = random.Random(config.seed)
    tol = min(config.tolerance, 1e-9)
    labels = [
        RationalPair.of(0, Fraction(1, 2)),
        RationalPair.of(0, Fraction(1, 3)),
        RationalPair.of(Fraction(1, 2), Fraction(1, 2)),
    ]
    cases = []
    for idx in range(50):
        p = labels[idx % len(labels)]
        mat = random_in_group(rng, lambda m, _p=p: gamma_st_contains(_p, m))
        cases.append((idx, p, mat, _random_tau(rng)))

    def check(case):
        idx, p, mat, tau = case
        u, v = defect_coefficients(p, mat)
        if u.denominator != 1 or v.denominator != 1:
            return VerifyRow(
                id=f"defect-{idx:03d}",
                inputs={"p": str(p), "A": str(mat)},
                value=None,
                error=None,
                bound=None,
                residual=None,
                status="fail",
                detail="stabilizer element produced non-integer defect coefficients",
            )
        lhs = slash(lambda w, tt: eval_g(p, w, tt), 1, mat, tau, tol)
        base = eval_g(p, tau, tol)
        eta1, eta2 = eta12(tau, tol)
        predicted = base + eta1 * int(u) + eta2 * int(v)
        residual = abs(lhs.value - predicted.value)
        bound = lhs.error + predicted.error
        return VerifyRow(
            id=f"defect-{idx:03d}",
            inputs={"p": str(p), "A": str(mat), "tau": _fmt_c(tau), "u": int(u), "v": int(v)},
            value=lhs.value,
            error=bound,
            bound=bound,
            residual=residual,
            status="pass" if residual <= bound else "fail",
        )

    rows = _pmap(check, cases, config.jobs)
    return SuiteReport("defect-gstt", config.seed, tuple(rows))


def suite_theorem_hrst(config: RunConfig) -> SuiteReport:
    rng = random.Random(config.seed)
    tol = min(config.tolerance, 1e-9)
    pairs = [
        (2, RationalPair.of(0, Fraction(1, 3))),
        (3, RationalPair.of(0, Fraction(1, 5))),
        (3, RationalPair.of(Fraction(1, 2), 0)),
    ]
    taus = [_random_tau(rng) for _ in range(10)]
    cases = []
    idx = 0
    for r, p in pairs:
        mats = [
            random_in_group(rng, lambda m, _p=p: gamma_st_contains(_p, m)) for _ in range(20)
        ]
        for mat in mats:
            for tau in taus:
                cases.append((idx, r, p, mat, tau))
                idx += 1

    def check(case):
        idx, r, p, mat, tau = case
        lhs = slash(lambda w, tt: eval_h(r, p, w, tt), 1, mat, tau, tol)
        rhs = eval_h(r, p, tau, tol)
        residual = abs(lhs.value - rhs.value)
        bound = lhs.error + rhs.error
        return VerifyRow(
            id=f"hrst-{idx:04d}",
            inputs={"r": r, "p": str(p), "A": str(mat), "tau": _fmt_c(tau)},
            value=rhs.value,
            error=bound,
            bound=bound,
            residual=residual,
            status="pass" if residual <= bound else "fail",
        )

    rows = _pmap(check, cases, config.jobs)
    return SuiteReport("theorem-hrst", config.seed, tuple(rows))


_HU_LABELS = (
    RationalPair.of(0, Fraction(1, 3)),
    RationalPair.of(0, Fraction(1, 3)),
    RationalPair.of(0, Fraction(-2, 3)),
)


def suite_theorem_hU(config: RunConfig) -> SuiteReport:
    rng = random.Random(config.seed)
    tol = min(config.tolerance, 1e-9)
    taus = [_random_tau(rng) for _ in range(10)]
    mats = [
        random_in_group(rng, lambda m: principal_congruence_contains(3, m)) for _ in range(20)
    ]
    cases = []
    idx = 0
    for mat in mats:
        for tau in taus:
            cases.append((idx, mat, tau))
            idx += 1

    def check(case):
        idx, mat, tau = case
        lhs = slash(lambda w, tt: eval_hU(_HU_LABELS, w, tt), 1, mat, tau, tol)
        rhs = eval_hU(_HU_LABELS, tau, tol)
        residual = abs(lhs.value - rhs.value)
        bound = lhs.error + rhs.error
        return VerifyRow(
            id=f"hU-{idx:04d}",
            inputs={"U": ",".join(str(u) for u in _HU_LABELS), "A": str(mat), "tau": _fmt_c(tau)},
            value=rhs.value,
            error=bound,
            bound=bound,
            residual=residual,
            status="pass" if residual <= bound else "fail",
        )

    rows = _pmap(check, cases, config.jobs)
    return SuiteReport("theorem-hU", config.seed, tuple(rows))


# ---------------------------------------------------------------------------
# cusp suites


_CUSP_F_GRID = (
    (0, Fraction(1, 2)),
    (0, Fraction(1, 3)),
    (0, Fraction(1, 4)),
    (Fraction(1, 2), 0),
    (Fraction(1, 3), Fraction(1, 3)),
    (Fraction(1, 2), Fraction(1, 2)),
)


def suite_cusp_f(config: RunConfig) -> SuiteReport:
    rows = []
    for i, (s, t) in enumerate(_CUSP_F_GRID):
        form = FormSpec.wp_form(s, t)
        rep = cusp_report(form, 20.0, min(config.tolerance, 1e-8), slack=1e-6)
        rows.append(
            VerifyRow(
                id=f"cusp-f-{i}",
                inputs={"form": rep.label, "Y": rep.Y, "closed": _fmt_c(rep.closed_form)},
                value=rep.numeric.value,
                error=rep.numeric.error,
                bound=1e-6,
                residual=rep.residual,
                status="pass" if rep.residual < 1e-6 and rep.valid else "fail",
            )
        )
    return SuiteReport("cusp-f", config.seed, tuple(rows))


def suite_cusp_h(config: RunConfig) -> SuiteReport:
    tol = min(config.tolerance, 1e-8)
    rows = []
    notes = []

    # phase resolution: the closed form gives sqrt(3) pi; the alternative
    # candidate -sqrt(3) pi i has the same modulus but is pure imaginary
    form = FormSpec.h_form(2, 0, Fraction(1, 3))
    numeric = form.evaluate(20.0j, tol)
    closed = cusp_value_h(2, Fraction(1, 3))
    cand_real = complex(_SQRT3_PI)
    cand_imag = complex(0.0, -_SQRT3_PI)
    d_real = abs(numeric.value - cand_real)
    d_imag = abs(numeric.value - cand_imag)
    supported = "sqrt(3)*pi" if d_real < d_imag else "-sqrt(3)*pi*i"
    notes.append(
        f"lattice-sum evaluation supports {supported} for the h[r=2](0,1/3) cusp value; "
        f"|numeric - sqrt3*pi| = {d_real:.3e}, |numeric + sqrt3*pi*i| = {d_imag:.3e}"
    )
    rows.append(
        VerifyRow(
            id="cusp-h-phase",
            inputs={"form": form.describe(), "Y": 20.0, "closed": _fmt_c(closed)},
            value=numeric.value,
            error=numeric.error,
            bound=1e-6,
            residual=abs(numeric.value - closed),
            status="pass" if abs(numeric.value - closed) < 1e-6 and supported == "sqrt(3)*pi" else "fail",
            detail=f"oracle-supported phase: {supported}",
        )
    )

    rows.append(_modulus_row(numeric))

    # closed values across a few s = 0 labels
    for i, (r, t) in enumerate(((3, Fraction(1, 5)), (-1, Fraction(1, 4)), (2, Fraction(2, 7)))):
        form = FormSpec.h_form(r, 0, t)
        rep = cusp_report(form, 20.0, tol, slack=1e-6)
        rows.append(
            VerifyRow(
                id=f"cusp-h-{i}",
                inputs={"form": rep.label, "Y": rep.Y, "closed": _fmt_c(rep.closed_form)},
                value=rep.numeric.value,
                error=rep.numeric.error,
                bound=1e-6,
                residual=rep.residual,
                status="pass" if rep.residual < 1e-6 else "fail",
            )
        )

    # boundedness along the imaginary axis, at the infinite cusp and at the
    # cusps reached by transporting with coset representatives
    reps = (IDENTITY, S_MATRIX, S_MATRIX @ T_MATRIX, S_MATRIX @ T_MATRIX @ T_MATRIX)
    for j, (r, s, t) in enumerate(((2, 0, Fraction(1, 3)), (3, Fraction(1, 2), 0), (3, 0, Fraction(1, 5)))):
        p = RationalPair.of(s, t)
        for k, rep in enumerate(reps):
            values = [
                abs(slash(lambda w, tt: eval_h(r, p, w, tt), 1, rep, complex(0.0, y), tol).value)
                for y in (5.0, 8.0, 12.5, 20.0, 31.0, 50.0)
            ]
            peak = max(values)
            rows.append(
                VerifyRow(
                    id=f"cusp-h-bounded-{j}-{k}",
                    inputs={"r": r, "p": str(p), "rep": str(rep), "Y": "5..50"},
                    value=complex(peak),
                    error=None,
                    bound=50.0,
                    residual=None,
                    status="pass" if peak < 50.0 else "fail",
                    detail="max |(h|rep)(iY)| over the sampled heights",
                )
            )
    return SuiteReport("cusp-h", config.seed, tuple(rows), tuple(notes))


def _modulus_row(numeric: CertifiedValue) -> VerifyRow:
    resid = abs(abs(numeric.value) - _SQRT3_PI)
    return VerifyRow(
        id="cusp-h-modulus",
        inputs={"target": "sqrt(3)*pi"},
        value=numeric.value,
        error=numeric.error,
        bound=1e-6,
        residual=resid,
        status="pass" if resid < 1e-6 else "fail",
    )


def suite_zeta2(config: RunConfig) -> SuiteReport:
    report = verify_zeta2_recovery(tolerance=1e-8, tol=min(config.tolerance, 1e-8))
    rows = []
    for row in report.rows:
        rows.append(
            VerifyRow(
                id=f"zeta2-Y{int(row.Y)}",
                inputs={"Y": row.Y, "implied_zeta2": row.implied_zeta2},
                value=row.value,
                error=row.error,
                bound=1e-8,
                residual=row.zeta2_residual,
                status="pass" if report.passed else "fail",
            )
        )
    return SuiteReport("zeta2", config.seed, tuple(rows))


def suite_eies_bound(config: RunConfig) -> SuiteReport:
    rows = []
    for k in (3, 4, 5):
        for y in (1.0, 2.0, 5.0, 10.0):
            bound = lemma_eies_bound(k, y)
            truncated = lattice_row_sum_truncated(k, complex(0.0, y), shells=500)
            rows.append(
                VerifyRow(
                    id=f"eies-k{k}-Y{y:g}",
                    inputs={"k": k, "Im_tau": y, "shells": 500},
                    value=complex(truncated),
                    error=None,
                    bound=bound,
                    residual=bound - truncated,
                    status="pass" if truncated < bound else "fail",
                )
            )
    return SuiteReport("eies-bound", config.seed, tuple(rows))


_IDENTITY_TS = (
    Fraction(1, 6),
    Fraction(1, 5),
    Fraction(1, 4),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
)


def suite_identities(config: RunConfig) -> SuiteReport:
    rows = []
    for t in _IDENTITY_TS:
        series = cusp_value_f_series(t, 80)
        closed = complex(
            -(math.pi**2) / 3.0
            * (2.0 * math.cos(2.0 * math.pi * float(t)) + 10.0)
            / (2.0 * math.cos(2.0 * math.pi * float(t)) - 2.0)
        )
        residual = abs(series.value - closed)
        honored = residual <= series.error
        rows.append(
            VerifyRow(
                id=f"series-t={t}",
                inputs={"t": str(t), "terms": 80},
                value=series.value,
                error=series.error,
                bound=1e-10,
                residual=residual,
                status="pass" if residual < 1e-10 and honored else "fail",
                detail="tail bound honored" if honored else "residual exceeds certificate",
            )
        )
    # Bernoulli bridge: the closed even-zeta values agree with direct sums,
    # and their exact rational pi-power coefficients match the Bernoulli form
    for n in range(0, 11):
        m = 2 * n + 2
        closed = zeta_even(m)
        direct = zeta_r_enclosure(float(m), terms=200_000 if m == 2 else 20_000)
        agree = closed.agrees_with(direct)
        coeff = zeta_even_coefficient(m)
        expected = (
            Fraction((-1) ** n)
            * bernoulli(m)
            * Fraction(2**m, 2 * math.factorial(m))
        )
        exact_ok = coeff == expected
        rows.append(
            VerifyRow(
                id=f"bridge-zeta({m})",
                inputs={"n": m, "coefficient": str(coeff)},
                value=closed.value,
                error=closed.error,
                bound=direct.error,
                residual=abs(closed.value - direct.value),
                status="pass" if agree and exact_ok else "fail",
            )
        )
    return SuiteReport("identities", config.seed, tuple(rows))


SUITES = {
    "lemma-fsta": suite_lemma_fsta,
    "lemma-gsta": suite_lemma_gsta,
    "defect-gstt": suite_defect_gstt,
    "theorem-hrst": suite_theorem_hrst,
    "theorem-hU": suite_theorem_hU,
    "cusp-f": suite_cusp_f,
    "cusp-h": suite_cusp_h,
    "zeta2": suite_zeta2,
    "eies-bound": suite_eies_bound,
    "identities": suite_identities,
}


def run_suite(name: str, config: RunConfig) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(config)
