"""Conversions, each checked against a second route or a brute-force partition sum."""

import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncjacobi.errors import InsufficientDepthError
from ncjacobi.measures import (
    CumulantVector,
    Flavor,
    JacobiParams,
    MeasurePair,
    MomentSequence,
    TwoStateCumulantVector,
    hankel_minors,
    positivity_probe,
)
from ncjacobi.partitions import Family, depth, enumerate_partitions, outer_inner_split
from ncjacobi.transforms import (
    cumulants_to_moments,
    extract_jfraction,
    jacobi_pair_to_two_state_cumulants,
    jacobi_to_free_cumulants,
    jacobi_to_moments,
    moment_series,
    moments_to_cumulants,
    moments_to_eta,
    moments_to_jacobi,
    moments_to_rtransform,
    monicize_three_term,
    pair_to_two_state_cumulants,
    pair_to_two_state_gf,
    rtransform_to_moments,
    series_from,
    two_state_cumulants_to_tilde,
    two_state_gf_to_tilde,
)
from ncjacobi.exact import PolynomialInT
from ncjacobi.verify import random_jacobi

nonzero = st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(bool)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def jacobi_rows(draw, depth=4):
    beta = draw(st.lists(rationals, min_size=depth, max_size=depth))
    gamma = draw(st.lists(nonzero, min_size=depth, max_size=depth))
    return JacobiParams(tuple(beta), tuple(gamma))


# -- brute-force oracles --------------------------------------------------


def brute_jacobi_moment(j, m):
    """Sum over NC_{1,2}(m) of prod beta_depth(singleton) * gamma_depth(pair)."""
    total = Fraction(0)
    for p in enumerate_partitions(m, Family.NC12):
        w = Fraction(1)
        for v in p.blocks:
            d = depth(p, v)
            w *= j.b(d) if len(v) == 1 else j.g(d)
        total += w
    return total


def brute_moment(r, m, family):
    return sum(prod(r[len(v)] for v in p.blocks) for p in enumerate_partitions(m, family))


def brute_tilde_moment(R, r, m):
    total = Fraction(0)
    for p in enumerate_partitions(m, Family.NC):
        outer, inner = outer_inner_split(p)
        total += prod(R[len(v)] for v in outer) * prod(r[len(v)] for v in inner)
    return total


# -- moments <-> Jacobi -----------------------------------------------------


def test_semicircle_and_poisson():
    assert jacobi_to_moments(JacobiParams((0,) * 4, (1,) * 4), 8).s == (1, 0, 1, 0, 2, 0, 5, 0, 14)
    poisson = JacobiParams(tuple(range(1, 5)), tuple(range(1, 5)))
    assert jacobi_to_moments(poisson, 6).s == (1, 1, 2, 5, 15, 52, 203)


def test_point_mass_terminates():
    j = moments_to_jacobi(MomentSequence((1, 2, 4, 8)))
    assert j.terminated and j.beta == (2,) and j.gamma == (0,)
    assert not j.degenerate


def test_degenerate_sequence_flagged():
    # s_2 = s_1^2 forces gamma_0 = 0 but s_3 disagrees with the point mass
    j = moments_to_jacobi(MomentSequence((1, 1, 1, 5)))
    assert j.terminated and j.degenerate


def test_bernoulli_two_point():
    j = moments_to_jacobi(MomentSequence((1, 0, 1, 0, 1, 0, 1)))
    assert j.terminated and j.beta == (0, 0) and j.gamma == (1, 0)


def test_insufficient_depth():
    with pytest.raises(InsufficientDepthError):
        jacobi_to_moments(JacobiParams((0, 0), (1,)), 4)


def test_quasi_definite_allowed():
    j = JacobiParams((0, 1, 2), (1, -2, 3))
    back = moments_to_jacobi(jacobi_to_moments(j, 5))
    assert back.beta == j.beta and back.gamma == j.gamma[:2]
    assert positivity_probe(jacobi_to_moments(j, 6)) == (False, 2)


@pytest.mark.parametrize("m", range(0, 9))
def test_moments_against_partition_sum(m):
    j = JacobiParams((1, -2, Fraction(1, 3), 4, 0), (2, Fraction(1, 2), -1, 3, 5))
    s = jacobi_to_moments(j, 8)
    assert s[m] == (1 if m == 0 else brute_jacobi_moment(j, m))


@settings(max_examples=30, deadline=None)
@given(jacobi_rows(5))
def test_jacobi_round_trip(j):
    back = moments_to_jacobi(jacobi_to_moments(j, 9))
    assert back.beta == j.beta and back.gamma == j.gamma[:4]


@settings(max_examples=30, deadline=None)
@given(jacobi_rows(4))
def test_jfraction_route(j):
    s = jacobi_to_moments(j, 7)
    ext = extract_jfraction(moment_series(s))
    assert ext == moments_to_jacobi(s)


def test_hankel_minors_are_gamma_products():
    j = JacobiParams((1, 2, 3), (2, 3, 5))
    assert hankel_minors(jacobi_to_moments(j, 6)) == [1, 2, 2 * 2 * 3, 2**3 * 3**2 * 5]


# -- moments <-> cumulants ----------------------------------------------------


@pytest.mark.parametrize("flavor,family", [
    (Flavor.CLASSICAL, Family.ALL), (Flavor.FREE, Family.NC), (Flavor.BOOLEAN, Family.INT)])
def test_cumulants_against_partition_sums(flavor, family):
    r = (0, 1, -2, Fraction(1, 2), 3, -1, 2, Fraction(5, 7), 1)
    s = cumulants_to_moments(CumulantVector(flavor, r))
    for m in range(1, 9):
        assert s[m] == brute_moment(r, m, family)


def test_known_cumulants():
    semicircle = jacobi_to_moments(JacobiParams((0,) * 5, (1,) * 5), 8)
    assert moments_to_cumulants(semicircle, "free").r == (0, 0, 1, 0, 0, 0, 0, 0, 0)
    q = Fraction(1, 3)
    bern = MomentSequence((1, q, q, q))
    assert moments_to_cumulants(bern, "boolean").r[1:] == (q, q - q * q, q * (1 - q) ** 2)
    poisson = MomentSequence((1, 1, 2, 5, 15, 52))
    assert moments_to_cumulants(poisson, "classical").r == (0, 1, 1, 1, 1, 1)


@settings(max_examples=25, deadline=None)
@given(jacobi_rows(4), st.sampled_from([Flavor.CLASSICAL, Flavor.FREE, Flavor.BOOLEAN]))
def test_cumulant_round_trip(j, flavor):
    s = jacobi_to_moments(j, 8)
    assert cumulants_to_moments(moments_to_cumulants(s, flavor)) == s


def test_series_routes():
    rng = random.Random(3)
    for _ in range(5):
        s = jacobi_to_moments(random_jacobi(rng, 5), 10)
        M = series_from(s.s)
        assert moments_to_rtransform(M).coeffs[1:] == moments_to_cumulants(s, "free").r[1:]
        assert moments_to_eta(M).coeffs[1:] == moments_to_cumulants(s, "boolean").r[1:]
        assert rtransform_to_moments(moments_to_rtransform(M)) == M


# -- labelled expansions -----------------------------------------------------


def test_labelled_small_values():
    j = JacobiParams((1, 2), (2, 3))
    r = jacobi_to_free_cumulants(j, 4).r
    assert r[3] == 2 and r[4] == 4


def test_labelled_free_matches_moment_route():
    rng = random.Random(11)
    for _ in range(5):
        j = random_jacobi(rng, 6)
        assert jacobi_to_free_cumulants(j, 11) == moments_to_cumulants(jacobi_to_moments(j, 11), "free")


def test_labelled_two_state_matches_moment_route():
    rng = random.Random(12)
    for _ in range(5):
        jt, jb = random_jacobi(rng, 6), random_jacobi(rng, 6)
        pair = MeasurePair(jacobi_to_moments(jt, 11), jacobi_to_moments(jb, 11))
        assert jacobi_pair_to_two_state_cumulants(jt, jb, 11) == pair_to_two_state_cumulants(pair)


# -- two-state ---------------------------------------------------------------


def test_two_state_against_partition_sum():
    R = (0, 2, -1, Fraction(1, 2), 1, 3, -2, 1)
    base = jacobi_to_moments(JacobiParams((1, 0, 2, 1), (1, 2, 1, 3)), 7)
    r = moments_to_cumulants(base, "free").r
    tilde = two_state_cumulants_to_tilde(TwoStateCumulantVector(R), base)
    for m in range(1, 8):
        assert tilde[m] == brute_tilde_moment(R, r, m)


def test_equal_states_give_free_cumulants():
    s = jacobi_to_moments(JacobiParams((1, 2, 3, 4), (1, 2, 3, 4)), 8)
    assert pair_to_two_state_cumulants(MeasurePair(s, s)).R == moments_to_cumulants(s, "free").r


def test_two_state_series_route():
    rng = random.Random(5)
    for _ in range(4):
        st_, sb = jacobi_to_moments(random_jacobi(rng, 5), 9), jacobi_to_moments(random_jacobi(rng, 5), 9)
        Mt, M = series_from(st_.s), series_from(sb.s)
        Rt = pair_to_two_state_gf(Mt, M)
        assert Rt.coeffs[1:] == pair_to_two_state_cumulants(MeasurePair(st_, sb)).R[1:]
        assert two_state_gf_to_tilde(Rt, M) == Mt


def test_monicize():
    one = PolynomialInT.constant(1)
    t = PolynomialInT.linear(1, 0)
    diag, gam = monicize_three_term([one, t + 1], [one, one], [t, t * 2])
    assert diag == [one, one]
    assert gam == [t, (t + 1) * t * 2]
