"""Verification routines: initial cumulant coefficients, orbit classification, closed forms.

Every check produces :class:`CheckResult` records gathered in a :class:`Report`
that serializes to ``[{"check", "status", "witness"?}, ...]``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .convolve import convolve, power
from .errors import DomainError
from .exact import ZERO, NotPolynomial, PolynomialInT, Q, finite_difference, format_rational, poly_fit_and_degree
from .measures import CumulantVector, Flavor, JacobiParams, MeasurePair
from .meixner import (
    HarnessParams,
    LimitKind,
    MeixnerParams,
    bernoulli_pair_params,
    cumulant_recursion_check,
    free_meixner_jacobi,
    harness_monic_rows,
    harness_to_two_state,
    harness_two_state_params,
    laha_lukacs_tilde,
    limit_theorem_input,
    two_state_meixner_pair,
)
from .partitions import Family, iter_partitions
from .transforms import (
    cumulants_to_moments,
    extract_jfraction,
    jacobi_pair_to_two_state_cumulants,
    jacobi_to_free_cumulants,
    jacobi_to_moments,
    moment_series,
    moments_to_cumulants,
    moments_to_jacobi,
    pair_to_two_state_cumulants,
    two_state_cumulants_to_tilde,
)

PASS, FAIL = "PASS", "FAIL"


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (PolynomialInT, NotPolynomial)):
        return repr(x)
    return x


@dataclass
class CheckResult:
    check: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, ok: bool, witness=None) -> bool:
        self.checks.append(CheckResult(check, PASS if ok else FAIL, witness))
        return ok

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status != PASS]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]


def random_rational(rng: random.Random, height: int = 200, max_den: int = 16, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, max_den))
        if x or not nonzero:
            return x


def random_jacobi(rng: random.Random, depth: int, positive: bool = False) -> JacobiParams:
    """Random rows with nonzero gammas (positive ones if asked)."""
    beta = [random_rational(rng) for _ in range(depth)]
    gamma = [random_rational(rng, nonzero=True) for _ in range(depth)]
    if positive:
        gamma = [abs(g) for g in gamma]
    return JacobiParams(tuple(beta), tuple(gamma))


# ---------------------------------------------------------------------------
# initial cumulant coefficients


@dataclass(frozen=True)
class CoefficientTable:
    a11: Fraction
    a21: Fraction
    a22: Fraction
    a31: Fraction
    a211: Fraction
    a111: Fraction
    a1111: Fraction

    def satisfies_linearity_condition(self) -> bool:
        """``a11 = a111 = a1111 = 1`` and ``a211 = a21^2 - 2 a21 + 3``."""
        return self.a11 == self.a111 == self.a1111 == 1 and self.a211 == self.a21**2 - 2 * self.a21 + 3


_FAMILY = {Flavor.CLASSICAL: Family.ALL, Flavor.FREE: Family.NC, Flavor.BOOLEAN: Family.INT}


def extract_lemma1_coefficients(flavor) -> CoefficientTable:
    """Count partitions of 2, 3, 4 points in the flavor's lattice by block-size profile."""
    fam = _FAMILY[Flavor.parse(flavor)]
    counts = Counter()
    for m in (2, 3, 4):
        for p in iter_partitions(m, fam):
            counts[p.block_sizes()] += 1
    get = lambda *sizes: Fraction(counts[sizes])  # noqa: E731
    return CoefficientTable(
        a11=get(1, 1), a21=get(2, 1), a22=get(2, 2), a31=get(3, 1),
        a211=get(2, 1, 1), a111=get(1, 1, 1), a1111=get(1, 1, 1, 1),
    )


def initial_row_predictions(table: CoefficientTable, r: Sequence[Fraction], t) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Predicted ``beta0(t), gamma0(t), beta1(t), gamma1(t)`` from cumulants ``r = (r1, r2, r3, r4)``.

    With ``b = r3/r2`` and ``b' = r4/r2``:
    ``beta1(t) = b + (a21 - 2) beta0 t`` and
    ``gamma1(t) = (b' - b^2) + ((a31 - 2 a21 + 2) b beta0 + (a22 - 1) gamma0) t``.
    """
    r1, r2, r3, r4 = (Q(x) for x in r)
    if r2 == 0:
        raise DomainError("initial-parameter forms need gamma0 != 0")
    t = Q(t)
    beta0, gamma0 = r1, r2
    b, bp = r3 / r2, r4 / r2
    beta1 = b + (table.a21 - 2) * beta0 * t
    gamma1 = (bp - b * b) + ((table.a31 - 2 * table.a21 + 2) * b * beta0 + (table.a22 - 1) * gamma0) * t
    return beta0 * t, gamma0 * t, beta1, gamma1


def lemma1_jacobi_forms(flavor, r: Sequence | None = None, seed: int = 0, sets: int = 10, ts=range(1, 6)) -> Report:
    """Compare the predicted initial Jacobi parameters of ``mu^t`` with direct computation.

    ``r`` fixes the cumulants ``(r1, r2, r3, r4)`` of ``mu``; otherwise ``sets``
    random choices are drawn from ``seed``.
    """
    flavor = Flavor.parse(flavor)
    table = extract_lemma1_coefficients(flavor)
    report = Report()
    report.add(f"{flavor.value}: coefficient condition", table.satisfies_linearity_condition(), table.__dict__)
    rng = random.Random(seed)
    choices = [tuple(Q(x) for x in r)] if r is not None else [
        (random_rational(rng), random_rational(rng, nonzero=True), random_rational(rng), random_rational(rng))
        for _ in range(sets)
    ]
    for cum in choices:
        if cum[1] == 0:
            raise DomainError("initial-parameter forms need gamma0 != 0")
        mu = cumulants_to_moments(CumulantVector.from_values(flavor, cum))
        for t in ts:
            j = moments_to_jacobi(power(mu, t, flavor, check_positivity=False))
            got = (j.b(0), j.g(0), j.b(1), j.g(1))
            want = initial_row_predictions(table, cum, t)
            ok = got == want
            report.add(f"{flavor.value}: r={[format_rational(x) for x in cum]} t={t}", ok, None if ok else {"got": got, "want": want})
    return report


# ---------------------------------------------------------------------------
# orbit classification


@dataclass
class OrbitReport:
    fits: dict[str, PolynomialInT | NotPolynomial | None]
    status: str
    offender: str | None = None
    witness: object = None

    @property
    def meixner_consistent(self) -> bool:
        return self.status == "MEIXNER-CONSISTENT"


def _orbit_samples(source, flavor: Flavor, depth_n: int, ts) -> dict[str, list[tuple[Fraction, Fraction | None]]]:
    order = 2 * depth_n + 2
    if isinstance(source, tuple):
        jt, jb = source
        start = MeasurePair(jacobi_to_moments(jt, order), jacobi_to_moments(jb, order))
    elif isinstance(source, JacobiParams):
        start = jacobi_to_moments(source, order)
    else:
        start = source
    samples: dict[str, list] = {}

    def record(prefix, j: JacobiParams, t):
        for n in range(depth_n + 1):
            for name, row in (("beta", j.beta), ("gamma", j.gamma)):
                key = f"{name}{prefix}_{n}"
                val = row[n] if n < len(row) else None
                samples.setdefault(key, []).append((t, val))

    for t in ts:
        t = Q(t)
        out = power(start, t, flavor, check_positivity=False)
        if isinstance(out, MeasurePair):
            record("~", moments_to_jacobi(out.tilde), t)
            record("", moments_to_jacobi(out.base), t)
        else:
            record("", moments_to_jacobi(out), t)
    return samples


def classify_orbit(source, flavor, depth_n: int = 2, t_max: int = 5) -> OrbitReport:
    """Sample the convolution orbit at ``t = 1..t_max`` and fit each Jacobi parameter in ``t``.

    ``source`` is a :class:`JacobiParams`, a moment sequence, or a
    ``(tilde, base)`` Jacobi pair for the two-state flavor.  The status is
    ``MEIXNER-CONSISTENT`` when every fit has degree <= 1; otherwise the first
    offending parameter is named, with a nonzero top finite difference as the
    witness when no polynomial of degree ``<= t_max - 2`` fits.
    """
    if t_max < depth_n + 3:
        raise DomainError("t_max must be at least depth_n + 3")
    flavor = Flavor.parse(flavor)
    ts = list(range(1, t_max + 1))
    samples = _orbit_samples(source, flavor, depth_n, ts)
    fits, status, offender, witness = {}, "MEIXNER-CONSISTENT", None, None
    for key in sorted(samples, key=lambda k: (int(k.rsplit("_", 1)[1]), k)):
        pts = samples[key]
        if any(v is None for _, v in pts):
            fits[key] = None  # orbit terminates before this index for some t
            if status == "MEIXNER-CONSISTENT":
                status = "PARTIAL"
            continue
        fit = poly_fit_and_degree(pts)
        fits[key] = fit
        bad = isinstance(fit, NotPolynomial) or fit.degree > 1
        if bad and offender is None:
            offender, status = key, "DEGREE>1"
            if isinstance(fit, NotPolynomial):
                witness = {
                    "parameter": key,
                    "max_degree_refuted": fit.max_degree,
                    "finite_difference_order": len(pts) - 1,
                    "finite_difference": finite_difference([v for _, v in pts], len(pts) - 1)[0],
                }
            else:
                witness = {"parameter": key, "degree": fit.degree, "fit": fit}
    return OrbitReport(fits, status, offender, witness)


# ---------------------------------------------------------------------------
# closed forms for low-order cumulants


def free_closed_forms(j: JacobiParams) -> list[Fraction]:
    """``r_1..r_6`` as explicit polynomials in the first Jacobi parameters."""
    b0, b1, b2 = j.b(0), j.b(1), j.b(2)
    g0, g1, g2 = j.g(0), j.g(1), j.g(2)
    db, dg = b1 - b0, g1 - g0
    return [
        b0,
        g0,
        g0 * db,
        g0 * (db**2 + dg),
        g0 * (db**3 + 3 * dg * db + g1 * (b2 - b1)),
        g0 * (db**4 + 6 * dg * db**2 + 4 * g1 * (b2 - b1) * db + g1 * (b2 - b1) ** 2 + 2 * dg**2 + g1 * (g2 - g1)),
    ]


def two_state_closed_forms(jt: JacobiParams, jb: JacobiParams) -> list[Fraction]:
    """``R_1..R_6`` for the pair as explicit polynomials."""
    tb0, tb1, tb2 = jt.b(0), jt.b(1), jt.b(2)
    tg0, tg1, tg2 = jt.g(0), jt.g(1), jt.g(2)
    b0, b1 = jb.b(0), jb.b(1)
    g0, g1 = jb.g(0), jb.g(1)
    X, Y = tb1 - b0, tg1 - g0  # tilde increments
    db, dg = b1 - b0, g1 - g0
    Z = tb2 - b1
    return [
        tb0,
        tg0,
        tg0 * X,
        tg0 * (X**2 + Y),
        tg0 * (X**3 + 2 * Y * X + Y * db + tg1 * Z),
        tg0 * (
            X**4 + 3 * Y * X**2 + 2 * Y * X * db + Y * db**2 + 2 * tg1 * Z * X
            + 2 * tg1 * Z * db + tg1 * Z**2 + Y**2 + Y * dg + tg1 * (tg2 - g1)
        ),
    ]


def identity_suite(seed: int = 0, points: int = 20, perturb: Callable[[str, int, Fraction], Fraction] | str | None = None) -> Report:
    """Check the twelve closed forms at ``points`` random rational Jacobi assignments.

    Each closed form is compared with the cumulant computed from the moment
    sums (Jacobi -> moments -> NC moment-cumulant solve) and from the
    labelled-partition expansion.  ``perturb="r6"`` (or any ``"r<n>"`` /
    ``"R<n>"``) adds 1 to that right-hand side as a negative control.
    """
    if isinstance(perturb, str):
        target = perturb
        perturb = lambda name, n, v: v + 1 if name == target else v  # noqa: E731
    rng = random.Random(seed)
    report = Report()
    first_fail: dict[str, object] = {}
    for point in range(points):
        jt, jb = random_jacobi(rng, 3), random_jacobi(rng, 3)
        tilde, base = jacobi_to_moments(jt, 6), jacobi_to_moments(jb, 6)
        r_def = moments_to_cumulants(base, Flavor.FREE).r
        r_lab = jacobi_to_free_cumulants(jb, 6).r
        R_def = pair_to_two_state_cumulants(MeasurePair(tilde, base)).R
        R_lab = jacobi_pair_to_two_state_cumulants(jt, jb, 6).R
        for prefix, closed, by_def, by_lab in (
            ("r", free_closed_forms(jb), r_def, r_lab),
            ("R", two_state_closed_forms(jt, jb), R_def, R_lab),
        ):
            for n in range(1, 7):
                name = f"{prefix}{n}"
                rhs = closed[n - 1]
                if perturb is not None:
                    rhs = perturb(name, point, rhs)
                if not (rhs == by_def[n] == by_lab[n]) and name not in first_fail:
                    first_fail[name] = {
                        "point": point,
                        "tilde": [jt.beta, jt.gamma] if prefix == "R" else None,
                        "base": [jb.beta, jb.gamma],
                        "closed_form": rhs,
                        "moment_sum": by_def[n],
                        "labelled_sum": by_lab[n],
                    }
    for prefix in ("r", "R"):
        for n in range(1, 7):
            name = f"{prefix}{n}"
            report.add(f"closed form {name} at {points} points (seed {seed})", name not in first_fail, first_fail.get(name))
    return report


# ---------------------------------------------------------------------------
# other suites (also used by the command line)


def roundtrip_suite(seed: int = 0, cases: int = 50, order: int = 12, depth: int = 6) -> Report:
    """Exact round trips on random rational Jacobi rows of the given depth."""
    rng = random.Random(seed)
    report = Report()
    fails = Counter()
    witness = {}
    for case in range(cases):
        j = random_jacobi(rng, depth)
        jt = random_jacobi(rng, depth)
        s = jacobi_to_moments(j, order)
        st = jacobi_to_moments(jt, order)
        back = moments_to_jacobi(s)
        checks = {"jacobi->moments->jacobi": back.beta == j.beta and back.gamma == j.gamma}
        for fl in (Flavor.CLASSICAL, Flavor.FREE, Flavor.BOOLEAN):
            checks[f"moments<->{fl.value} cumulants"] = cumulants_to_moments(moments_to_cumulants(s, fl)) == s
        pair = MeasurePair(st, s)
        checks["pair<->two-state cumulants"] = two_state_cumulants_to_tilde(pair_to_two_state_cumulants(pair), s) == st
        series = moment_series(s)
        ext = extract_jfraction(series)
        checks["series<->jacobi"] = ext.beta == back.beta and ext.gamma == back.gamma and jacobi_to_moments(ext, order) == s
        for name, ok in checks.items():
            if not ok:
                fails[name] += 1
                witness.setdefault(name, {"case": case, "beta": j.beta, "gamma": j.gamma})
    for name in ["jacobi->moments->jacobi", "moments<->classical cumulants", "moments<->free cumulants",
                 "moments<->boolean cumulants", "pair<->two-state cumulants", "series<->jacobi"]:
        report.add(f"{name} ({cases} cases, order {order})", not fails[name], witness.get(name))
    return report


def initial_coefficients_suite(seed: int = 0) -> Report:
    expected = {
        Flavor.CLASSICAL: (3, 3, 4, 6),
        Flavor.FREE: (3, 2, 4, 6),
        Flavor.BOOLEAN: (2, 1, 2, 3),
    }
    report = Report()
    for fl, want in expected.items():
        t = extract_lemma1_coefficients(fl)
        got = (t.a21, t.a22, t.a31, t.a211)
        report.add(f"{fl.value}: (a21, a22, a31, a211)", got == tuple(map(Fraction, want)), {"got": got, "want": want})
        report.extend(lemma1_jacobi_forms(fl, seed=seed))
    return report


NON_MEIXNER = JacobiParams((0,) * 6, (1, 1, 2, 2, 2, 2))


def orbits_suite(seed: int = 0) -> Report:
    rng = random.Random(seed)
    report = Report()
    for _ in range(3):
        p = MeixnerParams(
            beta0=random_rational(rng, 20, 4), gamma0=abs(random_rational(rng, 20, 4, True)),
            b=random_rational(rng, 20, 4), c=abs(random_rational(rng, 20, 4)),
        )
        rep = classify_orbit(free_meixner_jacobi(p, 1, 6), Flavor.FREE, 2, 5)
        report.add(f"free Meixner {p.beta0, p.gamma0, p.b, p.c} orbit degree <= 1", rep.meixner_consistent, rep.status)
    rep = classify_orbit(NON_MEIXNER, Flavor.FREE, 2, 8)
    ok = rep.offender == "gamma_2" and isinstance(rep.fits["gamma_2"], NotPolynomial) and rep.witness["finite_difference"] != 0
    report.add("non-Meixner (0-row; 1,1,2,2,...) refuted at gamma_2", ok, rep.witness)
    j = random_jacobi(rng, 6, positive=True)
    rep = classify_orbit(j, Flavor.BOOLEAN, 2, 5)
    degs = {k: (f.degree if isinstance(f, PolynomialInT) else None) for k, f in rep.fits.items()}
    want = {k: (1 if k in ("beta_0", "gamma_0") else 0) for k in degs}
    report.add("Boolean orbit: beta0, gamma0 linear, rest constant", degs == want, degs)
    p = MeixnerParams(beta0=1, gamma0=2, b=3, c=1, beta0_t=-1, gamma0_t=3, b_t=2, c_t=5)
    rep = classify_orbit(two_state_meixner_pair(p, 1, 6), Flavor.TWO_STATE_FREE, 2, 5)
    report.add("two-state Meixner orbit degree <= 1", rep.meixner_consistent, rep.status)
    jt, jb = two_state_meixner_pair(p, 1, 6)
    bumped = JacobiParams(jt.beta[:2] + (jt.beta[2] + 1,) + jt.beta[3:], jt.gamma)
    rep = classify_orbit((bumped, jb), Flavor.TWO_STATE_FREE, 2, 5)
    report.add("perturbed beta~_2 breaks the linear fit", not rep.meixner_consistent, rep.witness)
    return report


def limit_rate_check(kind, params, order: int = 6, Ns=(100, 1000, 10000)) -> Report:
    """``|s_m(pre-limit at N) - s_m(limit)| <= C_m / N`` with ``C_m`` fixed at the first ``N``.

    One ``C_m`` per moment index and component (tilde, base).  The scaled
    gaps ``N * |difference|`` are reported as the witness.
    """
    kind = LimitKind(kind)
    report = Report()
    gaps = {}
    for N in Ns:
        pre, lim = limit_theorem_input(kind, params, N, order)
        gaps[N] = {
            (comp, m): N * abs(getattr(pre, comp)[m] - getattr(lim, comp)[m])
            for comp in ("tilde", "base")
            for m in range(1, order + 1)
        }
    C = gaps[Ns[0]]
    for N in Ns[1:]:
        over = {f"{comp} s_{m}": {"C": C[(comp, m)], "N*gap": g} for (comp, m), g in gaps[N].items() if g > C[(comp, m)]}
        report.add(f"{kind.value}: N*|gap| <= C (C from N={Ns[0]}) at N={N}", not over, over or None)
    return report


def limits_suite(seed: int = 0) -> Report:
    report = Report()
    report.extend(limit_rate_check(LimitKind.CLT, {"v": 2, "u": 3}))
    report.extend(limit_rate_check(LimitKind.POISSON, {"q": 2, "p": 3}))
    return report


def random_two_state_meixner(rng: random.Random) -> MeixnerParams:
    """Random admissible parameters: gamma0 > 0, gamma0~ >= 0, c + gamma0 >= 0, c~ + gamma0 >= 0."""
    g0 = abs(random_rational(rng, 50, 8, True))
    return MeixnerParams(
        beta0=random_rational(rng, 50, 8), gamma0=g0, b=random_rational(rng, 50, 8),
        c=-g0 + abs(random_rational(rng, 50, 8)),
        beta0_t=random_rational(rng, 50, 8), gamma0_t=abs(random_rational(rng, 50, 8)),
        b_t=random_rational(rng, 50, 8), c_t=-g0 + abs(random_rational(rng, 50, 8)),
    )


def recursions_suite(seed: int = 0, sets: int = 10, order: int = 12) -> Report:
    rng = random.Random(seed)
    report = Report()
    for _ in range(sets):
        p = random_two_state_meixner(rng)
        res = cumulant_recursion_check(p, order)
        report.add(f"recursions hold for m <= {order - 2}", res.ok, None if res.ok else res.__dict__)
    report.add("Bernoulli pair passes", cumulant_recursion_check(bernoulli_pair_params(Fraction(1, 3), Fraction(1, 4)), order).ok)
    jt, jb = two_state_meixner_pair(random_two_state_meixner(rng), 1, 8)
    bad = JacobiParams(jb.beta, jb.gamma[:2] + (jb.gamma[2] + 1,) + jb.gamma[3:])
    res = cumulant_recursion_check((jt, bad), order)
    report.add("perturbed gamma_2 fails by m = 6", not res.ok and res.first_failure <= 6, res.__dict__)
    return report


def laha_lukacs_suite(seed: int = 0, order: int = 12) -> Report:
    rng = random.Random(seed)
    report = Report()
    for _ in range(5):
        b, c = random_rational(rng, 30, 6), Fraction(rng.randint(-15, 60), rng.randint(1, 8))
        beta0, gamma0 = random_rational(rng, 30, 6), abs(random_rational(rng, 30, 6, True))
        c_fm = abs(random_rational(rng, 30, 6))
        p = MeixnerParams(beta0=beta0, gamma0=gamma0, b=b, c=c_fm)
        # S = X + Y with X free Meixner: base law of S is the free square
        js = free_meixner_jacobi(p, 2, order)
        ms = jacobi_to_moments(js, order)
        jtil = moments_to_jacobi(laha_lukacs_tilde(ms, b, c))
        k = 1 + c / 2
        want_beta = (ZERO, b + k * js.b(0)) + tuple(js.b(n) for n in range(1, len(jtil.beta) - 1))
        want_gamma = (Fraction(2), k * js.g(0)) + tuple(js.g(n) for n in range(1, len(jtil.gamma) - 1))
        report.add(f"regression rows b={b} c={c}", jtil.beta == want_beta and jtil.gamma == want_gamma,
                   {"beta": jtil.beta, "gamma": jtil.gamma})
        # with the regression constant c equal to the Meixner c of X
        p2 = MeixnerParams(beta0=beta0, gamma0=gamma0, b=b, c=c_fm)
        ms2 = jacobi_to_moments(free_meixner_jacobi(p2, 2, order), order)
        tilde_s = laha_lukacs_tilde(ms2, b, c_fm)
        tb_pred = b + c_fm * beta0
        tc_pred = c_fm * gamma0
        pair_p = MeixnerParams(beta0=beta0, gamma0=gamma0, b=b, c=c_fm, beta0_t=0, gamma0_t=1, b_t=tb_pred, c_t=tc_pred)
        jt2, _ = two_state_meixner_pair(pair_p, 2, order)
        admissible = gamma0 > 0 and tc_pred + gamma0 >= 0 and c_fm + gamma0 >= 0
        report.add("X has a two-state Meixner pair with b~ = b + c beta0, c~ = c gamma0",
                   admissible and jacobi_to_moments(jt2, order) == tilde_s)
    return report


def harness_suite(seed: int = 0, order: int = 10) -> Report:
    rng = random.Random(seed)
    report = Report()
    depth = order // 2 + 1
    for _ in range(4):
        tau = abs(random_rational(rng, 20, 5))
        eta = random_rational(rng, 20, 5, True)
        theta = random_rational(rng, 20, 5)
        if 1 + eta * (tau * eta + theta) <= 0:
            theta = -tau * eta  # makes 1 + eta(tau eta + theta) = 1
        h = HarnessParams(0, tau, eta, theta)
        p = harness_two_state_params(h)
        g0 = 1 + eta * (tau * eta + theta)
        ident = (p.beta0_t, p.beta0, p.b_t, p.b, p.gamma0_t, p.gamma0, p.c_t, p.c) == (
            0, eta, tau * eta + theta, 2 * tau * eta + theta, 1, g0, tau * g0, tau * g0)
        same = all(harness_to_two_state(h, t, depth)[0] == two_state_meixner_pair(p, t, depth)[0] for t in (1, 2, 3))
        report.add(f"sigma=0 identification tau={tau} eta={eta} theta={theta}", ident and same)
        pairs = {}
        for t in (1, 2, 3):
            jt, jb = harness_to_two_state(h, t, depth)
            pairs[t] = MeasurePair(jacobi_to_moments(jt, order), jacobi_to_moments(jb, order))
        report.add("harness pairs form a two-state semigroup (1+2=3)",
                   convolve(pairs[1], pairs[2], Flavor.TWO_STATE_FREE) == pairs[3])
    h = HarnessParams(Fraction(1, 2), Fraction(1, 3), Fraction(2), Fraction(1, 5))
    _, gam = harness_monic_rows(h, 4)
    degs = [g.degree for g in gam]
    report.add("sigma != 0: monic gamma rows quadratic in t beyond gamma_0", degs[0] == 1 and all(d == 2 for d in degs[1:]), degs)
    return report


SUITES: dict[str, Callable[[int], Report]] = {
    "roundtrip": roundtrip_suite,
    "identities": identity_suite,
    "lemma1": initial_coefficients_suite,
    "orbits": orbits_suite,
    "limits": limits_suite,
    "recursions": recursions_suite,
    "laha-lukacs": laha_lukacs_suite,
    "harness": harness_suite,
}


def run_suite(name: str, seed: int = 0) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(seed)
