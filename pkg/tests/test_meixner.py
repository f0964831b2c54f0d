from fractions import Fraction

import pytest

from ncjacobi.convolve import convolve, power
from ncjacobi.errors import AdmissibilityError, DomainError
from ncjacobi.measures import Flavor, JacobiParams, MeasurePair, positivity_probe
from ncjacobi.meixner import (
    HarnessParams,
    LimitKind,
    MeixnerParams,
    bernoulli_pair_params,
    boolean_power_jacobi,
    build_family,
    classical_meixner_jacobi,
    cumulant_recursion_check,
    free_meixner_jacobi,
    harness_monic_rows,
    harness_recurrence,
    harness_to_two_state,
    laha_lukacs_tilde,
    limit_theorem_input,
    point_mass_pair_power,
    point_mass_tilde_pair,
    rho_representation,
    two_state_meixner_pair,
)
from ncjacobi.transforms import jacobi_to_moments, moments_to_cumulants, moments_to_jacobi, pair_to_two_state_cumulants

ORDER = 12
DEPTH = 7


def moments(j):
    if isinstance(j, tuple):
        return MeasurePair(jacobi_to_moments(j[0], ORDER), jacobi_to_moments(j[1], ORDER))
    return jacobi_to_moments(j, ORDER)


def test_classical_meixner_poisson_and_gaussian():
    p = MeixnerParams(beta0=1, gamma0=1, b=1, c=0)
    assert jacobi_to_moments(classical_meixner_jacobi(p, 1, DEPTH), 5).s == (1, 1, 2, 5, 15, 52)
    g = classical_meixner_jacobi(MeixnerParams(), 1, DEPTH)
    assert jacobi_to_moments(g, 6).s == (1, 0, 1, 0, 3, 0, 15)


def test_binomial_terminates():
    # Bernoulli(1/2) at t = 1, so t = 2 is Binomial(2, 1/2): three atoms
    p = MeixnerParams(beta0=Fraction(1, 2), gamma0=Fraction(1, 4), b=0, c=Fraction(-1, 4))
    j = classical_meixner_jacobi(p, 2, DEPTH)
    assert j.terminated and len(j.gamma) == 3


def test_binomial_branch_needs_override():
    p = MeixnerParams(beta0=0, gamma0=1, b=0, c=-2)
    with pytest.raises(AdmissibilityError):
        classical_meixner_jacobi(p, 1, DEPTH)
    j = classical_meixner_jacobi(p, 1, DEPTH, override=True)
    assert not positivity_probe(jacobi_to_moments(j, ORDER))[0]


def test_free_meixner_rows_and_admissibility():
    j = free_meixner_jacobi(MeixnerParams(beta0=1, gamma0=2, b=3, c=4), 2, 4)
    assert j.beta == (2, 5, 5, 5) and j.gamma == (4, 8, 8, 8)
    with pytest.raises(AdmissibilityError):
        free_meixner_jacobi(MeixnerParams(gamma0=1, c=-2), 1, 4)


SEMIGROUP_CASES = [(1, 1), (1, 2), (2, 3), (Fraction(1, 2), Fraction(1, 2))]


@pytest.mark.parametrize("s,u", SEMIGROUP_CASES)
def test_semigroups(s, u):
    p = MeixnerParams(beta0=Fraction(1, 3), gamma0=2, b=-1, c=Fraction(3, 2))
    cm = lambda t: moments(classical_meixner_jacobi(p, t, DEPTH))  # noqa: E731
    assert convolve(cm(s), cm(u), Flavor.CLASSICAL) == cm(s + u)
    fm = lambda t: moments(free_meixner_jacobi(p, t, DEPTH))  # noqa: E731
    assert convolve(fm(s), fm(u), Flavor.FREE) == fm(s + u)
    j = JacobiParams((1, 2, -1, 0, 3, 1, 2), (2, 1, 3, 1, 2, 5, 1))
    bm = lambda t: moments(boolean_power_jacobi(j, t))  # noqa: E731
    assert convolve(bm(s), bm(u), Flavor.BOOLEAN) == bm(s + u)
    q = MeixnerParams(beta0=1, gamma0=2, b=-1, c=1, beta0_t=3, gamma0_t=1, b_t=2, c_t=Fraction(1, 2))
    tm = lambda t: moments(two_state_meixner_pair(q, t, DEPTH))  # noqa: E731
    assert convolve(tm(s), tm(u), Flavor.TWO_STATE_FREE) == tm(s + u)


def test_four_parameter_semigroup():
    shared = dict(b=2, c=1, b_t=-1, c_t=3)
    p1 = MeixnerParams(beta0=1, gamma0=2, beta0_t=3, gamma0_t=1, **shared)
    p2 = MeixnerParams(beta0=-2, gamma0=1, beta0_t=1, gamma0_t=4, **shared)
    p3 = MeixnerParams(beta0=-1, gamma0=3, beta0_t=4, gamma0_t=5, **shared)
    out = convolve(moments(two_state_meixner_pair(p1, 1, DEPTH)), moments(two_state_meixner_pair(p2, 1, DEPTH)), "cfree")
    assert out == moments(two_state_meixner_pair(p3, 1, DEPTH))


def test_uniqueness_from_initial_rows():
    # two semigroups agreeing on beta0, gamma0, beta1, gamma1 as functions of t coincide
    p = MeixnerParams(beta0=1, gamma0=2, b=3, c=1)
    for t in (1, 2, Fraction(5, 2)):
        fm = free_meixner_jacobi(p, t, DEPTH)
        mu = jacobi_to_moments(free_meixner_jacobi(p, 1, DEPTH), ORDER)
        assert power(mu, t, "free") == jacobi_to_moments(fm, ORDER)


@pytest.mark.parametrize("two_state", [False, True])
def test_rho_representation(two_state):
    p = MeixnerParams(beta0=1, gamma0=2, b=-1, c=3, beta0_t=2, gamma0_t=5, b_t=1, c_t=Fraction(1, 2))
    rho = jacobi_to_moments(rho_representation(p, two_state, DEPTH), 10)
    pair = moments(two_state_meixner_pair(p, 1, DEPTH))
    if two_state:
        cum, g0 = pair_to_two_state_cumulants(pair).R, p.gamma0_t
    else:
        cum, g0 = moments_to_cumulants(pair.base, "free").r, p.gamma0
    assert all(cum[m + 2] == g0 * rho[m] for m in range(11))


def test_point_mass_pair_power():
    jt = JacobiParams((1, 2, -1, 3, 0, 1), (2, 1, 3, 2, 1, 4))
    u = Fraction(-3, 4)
    R1 = pair_to_two_state_cumulants(moments((jt, JacobiParams.point_mass(u)))).R
    for t in (2, 3, Fraction(5, 2)):
        jtt, jbt = point_mass_pair_power(jt, u, t)
        assert jbt == JacobiParams.point_mass(t * u)
        Rt = pair_to_two_state_cumulants(moments((jtt, jbt))).R
        assert all(Rt[m] == t * R1[m] for m in range(1, 11))


def test_point_mass_tilde_needs_assertion():
    p = MeixnerParams(beta0=1, gamma0=1)
    with pytest.raises(AdmissibilityError):
        point_mass_tilde_pair(1, p, 2, DEPTH)
    jt, jb = point_mass_tilde_pair(1, p, 2, DEPTH, base_is_polynomial=True)
    assert jt == JacobiParams.point_mass(2)


def test_recursions():
    p = MeixnerParams(beta0=1, gamma0=2, b=-1, c=3, beta0_t=2, gamma0_t=5, b_t=1, c_t=Fraction(1, 2))
    assert cumulant_recursion_check(p, 12).ok
    jt, jb = two_state_meixner_pair(p, 1, 8)
    bad = JacobiParams(jb.beta, jb.gamma[:2] + (jb.gamma[2] + 1,) + jb.gamma[3:])
    res = cumulant_recursion_check((jt, bad), 12)
    assert not res.ok and res.first_failure <= 6
    with pytest.raises(DomainError, match="gamma0"):
        cumulant_recursion_check(MeixnerParams(gamma0=0), 8)


def test_laha_lukacs_semicircle():
    ms = jacobi_to_moments(JacobiParams((0,) * 7, (2,) * 7), ORDER)
    j = moments_to_jacobi(laha_lukacs_tilde(ms, 0, 0))
    assert set(j.beta) == {0} and set(j.gamma) == {2}
    with pytest.raises(DomainError):
        laha_lukacs_tilde(ms, 0, -2)


def test_harness_sigma_zero_rows():
    h = HarnessParams(0, 2, 3, -1)
    t = Fraction(3, 2)
    jt, jb = harness_to_two_state(h, t, 4)
    tau, eta, theta = 2, 3, -1
    assert jt.beta[:3] == (0, tau * eta + theta + eta * t, 2 * tau * eta + theta + eta * t)
    assert jt.gamma[:2] == (t, (1 + eta * (tau * eta + theta)) * (t + tau))


def test_harness_eta_zero_equal_states():
    h = HarnessParams(0, 1, 0, 2)
    jt, jb = harness_to_two_state(h, 2, 6)
    # with eta = 0 the two states coincide
    assert jt == jb


def test_harness_quadratic_gamma():
    h = HarnessParams(Fraction(1, 2), Fraction(1, 3), 1, 1)
    lower, diag, upper = harness_recurrence(h, 4)
    assert lower[1].degree == 1 and upper[1].degree == 1
    _, gam = harness_monic_rows(h, 4)
    assert [g.degree for g in gam] == [1, 2, 2, 2]


def test_limit_bernoulli_exact():
    pre, lim = limit_theorem_input(LimitKind.BERNOULLI, {"q": Fraction(1, 3), "p": Fraction(1, 4)}, 5)
    assert pre == lim


def test_limit_rows():
    _, lim = limit_theorem_input(LimitKind.POISSON, {"q": 2, "p": 3}, 100)
    jt = moments_to_jacobi(lim.tilde)
    assert jt.beta == (2, 4, 4) and jt.gamma == (2, 3, 3)
    _, lim = limit_theorem_input(LimitKind.GENERAL_POISSON, {"q": 2, "p": 3, "v": 5, "u": 7}, 100)
    jt = moments_to_jacobi(lim.tilde)
    assert jt.beta == (10, 5 + 21, 7 + 21) and jt.gamma == (50, 147, 147)
    _, lim = limit_theorem_input(LimitKind.CLT, {"v": 2, "u": 3}, 100)
    jt = moments_to_jacobi(lim.tilde)
    assert set(jt.beta) == {0} and jt.gamma == (2, 3, 3)


def test_limit_bad_rates():
    with pytest.raises(DomainError):
        limit_theorem_input(LimitKind.POISSON, {"q": -1, "p": 1}, 100)
    with pytest.raises(DomainError):
        limit_theorem_input(LimitKind.BERNOULLI, {"q": 2, "p": Fraction(1, 2)}, 3)


def test_bernoulli_pair_params_match_power():
    q, p = Fraction(1, 3), Fraction(1, 4)
    params = bernoulli_pair_params(q, p)
    jt, jb = two_state_meixner_pair(params, 1, 2, override=True)
    assert jacobi_to_moments(jt, 3).s == (1, q, q, q)
    assert jacobi_to_moments(jb, 3).s == (1, p, p, p)


def test_registry():
    j = build_family("free-meixner", {"b": 0, "c": 0, "beta0": 0, "gamma0": 1}, 2, 4)
    assert j.gamma == (2, 2, 2, 2)
    pair = build_family("harness", {"tau": 1, "eta": 1, "theta": 0}, 1, 4)
    assert isinstance(pair, tuple)
    with pytest.raises(KeyError):
        build_family("nope", {}, 1, 4)
    with pytest.raises(DomainError):
        build_family("meixner", {"zeta": 1}, 1, 4)


def test_boolean_pair_family_semigroup():
    params = {"beta0_t": 1, "gamma0_t": 2, "b_t": 3, "c_t": 1, "u": Fraction(1, 2)}
    one = moments(build_family("boolean-pair", params, 1, DEPTH))
    two = moments(build_family("boolean-pair", params, 2, DEPTH))
    assert convolve(one, one, "cfree") == two
