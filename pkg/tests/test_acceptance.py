"""Acceptance suite: one test per criterion, each at its stated tolerance (exact equality throughout)."""

import itertools
import random
import time
from fractions import Fraction
from math import comb

import pytest

from ncjacobi.convolve import convolve
from ncjacobi.exact import NotPolynomial, finite_difference
from ncjacobi.measures import CumulantVector, Flavor, JacobiParams, MeasurePair
from ncjacobi.meixner import (
    HarnessParams,
    LimitKind,
    MeixnerParams,
    boolean_power_jacobi,
    classical_meixner_jacobi,
    cumulant_recursion_check,
    free_meixner_jacobi,
    harness_monic_rows,
    harness_to_two_state,
    harness_two_state_params,
    laha_lukacs_tilde,
    point_mass_pair_power,
    rho_representation,
    two_state_meixner_pair,
)
from ncjacobi.partitions import Family, enumerate_partitions
from ncjacobi.transforms import (
    cumulants_to_moments,
    extract_jfraction,
    jacobi_to_moments,
    moment_series,
    moments_to_cumulants,
    moments_to_jacobi,
    pair_to_two_state_cumulants,
    two_state_cumulants_to_tilde,
)
from ncjacobi.verify import (
    NON_MEIXNER,
    classify_orbit,
    extract_lemma1_coefficients,
    identity_suite,
    limit_rate_check,
    random_jacobi,
    random_rational,
    random_two_state_meixner,
)

ORDER = 12
DEPTH = ORDER // 2 + 1


def moments(j, order=ORDER):
    if isinstance(j, tuple):
        return MeasurePair(jacobi_to_moments(j[0], order), jacobi_to_moments(j[1], order))
    return jacobi_to_moments(j, order)


def test_c01_round_trip_exactness():
    start = time.perf_counter()
    rng = random.Random(2024)
    for _ in range(50):
        j, jt = random_jacobi(rng, 6), random_jacobi(rng, 6)
        s, st = jacobi_to_moments(j, ORDER), jacobi_to_moments(jt, ORDER)
        back = moments_to_jacobi(s)
        assert (back.beta, back.gamma) == (j.beta, j.gamma)
        for flavor in (Flavor.CLASSICAL, Flavor.FREE, Flavor.BOOLEAN):
            assert cumulants_to_moments(moments_to_cumulants(s, flavor)) == s
        pair = MeasurePair(st, s)
        assert two_state_cumulants_to_tilde(pair_to_two_state_cumulants(pair), s) == st
        ext = extract_jfraction(moment_series(s))
        assert (ext.beta, ext.gamma) == (j.beta, j.gamma)
        assert jacobi_to_moments(ext, ORDER) == s
    assert time.perf_counter() - start < 60


def test_c02_closed_form_suite():
    report = identity_suite(seed=0, points=20)
    assert len(report.checks) == 12
    assert report.ok, report.to_json()
    # negative control: a perturbed right-hand side must be caught
    assert not identity_suite(seed=0, points=20, perturb="r6").ok


def _restricted_growth(m):
    """Set partitions of 1..m via restricted growth strings."""
    def rec(prefix, top):
        if len(prefix) == m:
            blocks = {}
            for i, a in enumerate(prefix, start=1):
                blocks.setdefault(a, []).append(i)
            yield tuple(tuple(b) for b in blocks.values())
            return
        for a in range(top + 2):
            yield from rec(prefix + [a], max(top, a))
    yield from rec([], -1)


def _crossing(p):
    for v, w in itertools.permutations(p, 2):
        for a, c in itertools.combinations(v, 2):
            if any(a < b < c < d for b, d in itertools.combinations(w, 2)):
                return True
    return False


def test_c03_counting_sanity():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    catalan = [comb(2 * n, n) // (n + 1) for n in range(9)]
    motzkin = [sum(comb(n, 2 * k) * catalan[k] for k in range(n // 2 + 1)) for n in range(9)]
    assert (bell[4], catalan[4], 2**3, motzkin[4]) == (15, 14, 8, 9)
    for m in range(1, 9):
        every = {tuple(sorted(p)) for p in _restricted_growth(m)}
        nc = {p for p in every if not _crossing(p)}
        oracle = {
            Family.ALL: every,
            Family.NC: nc,
            Family.INT: {p for p in nc if all(b[-1] - b[0] + 1 == len(b) for b in p)},
            Family.NC12: {p for p in nc if max(map(len, p)) <= 2},
        }
        for fam, want in oracle.items():
            assert {p.blocks for p in enumerate_partitions(m, fam)} == want
        assert (len(every), len(nc), len(oracle[Family.INT]), len(oracle[Family.NC12])) == (
            bell[m], catalan[m], 2 ** (m - 1), motzkin[m])


def test_c04_initial_coefficients():
    want = {"classical": (3, 3, 4, 6), "free": (3, 2, 4, 6), "boolean": (2, 1, 2, 3)}
    for flavor, expected in want.items():
        t = extract_lemma1_coefficients(flavor)
        assert (t.a21, t.a22, t.a31, t.a211) == expected


SEMIGROUP_PAIRS = [(1, 1), (1, 2), (2, 3), (Fraction(1, 2), Fraction(1, 2))]


def test_c05_semigroup_laws():
    meix = MeixnerParams(beta0=Fraction(2, 3), gamma0=3, b=-2, c=Fraction(1, 2))
    pair = MeixnerParams(beta0=1, gamma0=2, b=-1, c=1, beta0_t=-3, gamma0_t=Fraction(1, 2), b_t=2, c_t=4)
    boolean_seed = JacobiParams((1, -1, 2, 0, 3, 1, 1), (2, 3, 1, 4, 1, 2, 2))
    constructors = [
        (Flavor.CLASSICAL, lambda t: classical_meixner_jacobi(meix, t, DEPTH)),
        (Flavor.FREE, lambda t: free_meixner_jacobi(meix, t, DEPTH)),
        (Flavor.BOOLEAN, lambda t: boolean_power_jacobi(boolean_seed, t)),
        (Flavor.TWO_STATE_FREE, lambda t: two_state_meixner_pair(pair, t, DEPTH)),
    ]
    for flavor, F in constructors:
        for s, u in SEMIGROUP_PAIRS:
            assert convolve(moments(F(s)), moments(F(u)), flavor) == moments(F(s + u)), (flavor, s, u)


def test_c06_orbit_classification():
    rng = random.Random(6)
    for _ in range(3):
        p = MeixnerParams(
            beta0=random_rational(rng, 20, 4), gamma0=abs(random_rational(rng, 20, 4, True)),
            b=random_rational(rng, 20, 4), c=abs(random_rational(rng, 20, 4)),
        )
        assert classify_orbit(classical_meixner_jacobi(p, 1, 6), "classical", 2, 5).meixner_consistent
        assert classify_orbit(free_meixner_jacobi(p, 1, 6), "free", 2, 5).meixner_consistent
        q = random_two_state_meixner(rng)
        assert classify_orbit(two_state_meixner_pair(q, 1, 6), "cfree", 2, 5).meixner_consistent
        assert classify_orbit(random_jacobi(rng, 6, positive=True), "boolean", 2, 5).meixner_consistent
    rep = classify_orbit(NON_MEIXNER, "free", 2, 8)
    fit = rep.fits["gamma_2"]
    assert isinstance(fit, NotPolynomial) and fit.max_degree == 6
    assert rep.witness["finite_difference_order"] == 7 and rep.witness["finite_difference"] != 0


def test_c07_rho_representations():
    rng = random.Random(7)
    for _ in range(5):
        p = random_two_state_meixner(rng)
        p = MeixnerParams(beta0=p.beta0, gamma0=p.gamma0, b=p.b, c=abs(p.c),
                          beta0_t=p.beta0_t, gamma0_t=p.gamma0_t, b_t=p.b_t, c_t=abs(p.c_t))
        pair = moments(two_state_meixner_pair(p, 1, DEPTH))
        r = moments_to_cumulants(pair.base, Flavor.FREE).r
        R = pair_to_two_state_cumulants(pair).R
        rho = jacobi_to_moments(rho_representation(p, False, DEPTH), 10)
        rho_t = jacobi_to_moments(rho_representation(p, True, DEPTH), 10)
        for m in range(11):
            assert r[m + 2] == p.gamma0 * rho[m]
            assert R[m + 2] == p.gamma0_t * rho_t[m]


def test_c08_point_mass_base():
    rng = random.Random(8)
    jt = random_jacobi(rng, 6)
    for u in (Fraction(0), Fraction(7, 3), Fraction(-5, 2)):
        R1 = pair_to_two_state_cumulants(moments((jt, JacobiParams.point_mass(u)), 10)).R
        for t in (2, 3, Fraction(5, 2)):
            Rt = pair_to_two_state_cumulants(moments(point_mass_pair_power(jt, u, t), 10)).R
            assert all(Rt[m] == t * R1[m] for m in range(1, 11))


def test_c09_cumulant_recursions():
    rng = random.Random(9)
    for _ in range(10):
        assert cumulant_recursion_check(random_two_state_meixner(rng), ORDER).ok
    jt, jb = two_state_meixner_pair(random_two_state_meixner(rng), 1, 8)
    bumped = JacobiParams(jb.beta, jb.gamma[:2] + (jb.gamma[2] + 1,) + jb.gamma[3:])
    res = cumulant_recursion_check((jt, bumped), ORDER)
    assert not res.ok and res.first_failure <= 6


def test_c10_regression_identity():
    rng = random.Random(10)
    for _ in range(5):
        beta0, gamma0 = random_rational(rng, 30, 6), abs(random_rational(rng, 30, 6, True))
        b, c = random_rational(rng, 30, 6), abs(random_rational(rng, 30, 6))
        p = MeixnerParams(beta0=beta0, gamma0=gamma0, b=b, c=c)
        js = free_meixner_jacobi(p, 2, DEPTH)  # law of X + Y
        jtil = moments_to_jacobi(laha_lukacs_tilde(jacobi_to_moments(js, ORDER), b, c))
        k = 1 + c / 2
        assert jtil.beta[:2] == (0, b + k * js.b(0)) and jtil.beta[2:] == js.beta[1:len(jtil.beta) - 1]
        assert jtil.gamma[:2] == (2, k * js.g(0)) and jtil.gamma[2:] == js.gamma[1:len(jtil.gamma) - 1]
        bt, ct = b + c * beta0, c * gamma0
        assert gamma0 > 0 and ct + gamma0 >= 0 and c + gamma0 >= 0  # two-state Meixner admissibility
        q = MeixnerParams(beta0=beta0, gamma0=gamma0, b=b, c=c, beta0_t=0, gamma0_t=1, b_t=bt, c_t=ct)
        assert jacobi_to_moments(two_state_meixner_pair(q, 2, DEPTH)[0], ORDER) == laha_lukacs_tilde(
            jacobi_to_moments(js, ORDER), b, c)


def test_c11_harness_bridge():
    for tau, eta, theta in [(2, 3, -1), (Fraction(1, 2), -1, Fraction(3, 4)), (1, Fraction(2, 5), 0)]:
        h = HarnessParams(0, tau, eta, theta)
        p = harness_two_state_params(h)
        g0 = 1 + eta * (tau * eta + theta)
        assert (p.beta0_t, p.beta0, p.b_t, p.b) == (0, eta, tau * eta + theta, 2 * tau * eta + theta)
        assert (p.gamma0_t, p.gamma0, p.c_t, p.c) == (1, g0, tau * g0, tau * g0)
        F = lambda t: moments(harness_to_two_state(h, t, DEPTH))  # noqa: E731
        for s, u in SEMIGROUP_PAIRS:
            assert convolve(F(s), F(u), Flavor.TWO_STATE_FREE) == F(s + u)
    _, gam = harness_monic_rows(HarnessParams(Fraction(1, 2), Fraction(1, 3), 2, Fraction(1, 5)), 5)
    assert all(g.degree == 2 for g in gam[1:])


def test_c12_limit_theorems():
    start = time.perf_counter()
    clt = limit_rate_check(LimitKind.CLT, {"v": 2, "u": 3})
    poisson = limit_rate_check(LimitKind.POISSON, {"q": 2, "p": 3})
    assert time.perf_counter() - start < 120
    failures = [c.to_json() for c in clt.checks + poisson.checks if c.status != "PASS"]
    assert not failures, failures
