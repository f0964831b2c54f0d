"""Conversions among moments, Jacobi parameters and the four cumulant flavors.

Two independent routes exist for most conversions: partition sums (in the
lattice of the flavor) and generating-function relations on truncated series.
The test suite plays them against each other.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import _kernels
from .errors import BudgetExceededError, DomainError, InsufficientDepthError
from .exact import ONE, ZERO, PolynomialInT, Q, TruncatedSeries
from .measures import (
    CumulantVector,
    Flavor,
    JacobiParams,
    MeasurePair,
    MomentSequence,
    TwoStateCumulantVector,
)
from .partitions import CAPS, Family

# ---------------------------------------------------------------------------
# moments <-> Jacobi parameters


def jacobi_to_moments(j: JacobiParams, order: int) -> MomentSequence:
    """Moments ``s_0..s_order`` of the functional with Jacobi parameters ``j``.

    ``s_m`` is the sum over NC_{1,2}(m) of ``prod beta_depth * prod gamma_depth``.
    Reading such a partition left to right as a Motzkin path (singleton = level
    step, pair = up/down step) turns block depth into path height, so the sum
    is accumulated as a transfer over heights instead of listing partitions.
    """
    if order < 0:
        raise DomainError("order must be non-negative")
    j.check_depth(order)
    # highest reachable height: a terminated row stops one level below its gamma = 0
    cap = len(j.gamma) - 1 if j.terminated else order
    s = [ONE]
    weights = [ONE]  # weights[h]: total weight of open paths at height h
    for step in range(1, order + 1):
        top = min(len(weights), cap, order - step) + 1
        new = [ZERO] * top
        for h in range(top):
            acc = ZERO
            if h < len(weights) and weights[h]:
                acc += weights[h] * j.b(h)
            if 0 < h <= len(weights) and weights[h - 1]:
                acc += weights[h - 1]
            if h + 1 < len(weights) and weights[h + 1]:
                acc += weights[h + 1] * j.g(h)
            new[h] = acc
        weights = new
        s.append(weights[0])
    return MomentSequence(tuple(s))


def _linear_functional(s: Sequence[Fraction], p: Sequence[Fraction]) -> Fraction:
    return sum((a * s[i] for i, a in enumerate(p) if a), ZERO)


def _poly_mul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for k, b in enumerate(q):
                out[i + k] += a * b
    return out


def _is_consistent(j: JacobiParams, s: MomentSequence) -> bool:
    return jacobi_to_moments(j, s.order).s == s.s


def moments_to_jacobi(s: MomentSequence) -> JacobiParams:
    """Jacobi parameters by Gram-Schmidt against the moment functional.

    Produces ``(order+1)//2`` betas and ``order//2`` gammas.  Negative gammas
    give a quasi-definite result; the first ``gamma = 0`` terminates.  If the
    moments after that point disagree with the finitely supported functional,
    the result is flagged ``degenerate``.
    """
    N = s.order
    L = lambda p: _linear_functional(s.s, p)  # noqa: E731
    beta, gamma = [], []
    prev, cur = [ZERO], [ONE]
    norm = ONE  # L(P_n^2)
    n = 0
    while 2 * n + 1 <= N:
        b = L([ZERO] + _poly_mul(cur, cur)) / norm
        beta.append(b)
        nxt = [ZERO] + cur
        for i, a in enumerate(cur):
            nxt[i] -= b * a
        if n > 0:
            for i, a in enumerate(prev):
                nxt[i] -= gamma[-1] * a
        if 2 * n + 2 > N:
            break
        new_norm = L(_poly_mul(nxt, nxt))
        g = new_norm / norm
        gamma.append(g)
        if g == 0:
            j = JacobiParams(tuple(beta), tuple(gamma), True)
            if not _is_consistent(j, s):
                j = JacobiParams(j.beta, j.gamma, True, degenerate=True)
            return j
        prev, cur, norm = cur, nxt, new_norm
        n += 1
    return JacobiParams(tuple(beta), tuple(gamma))


def extract_jfraction(series: TruncatedSeries) -> JacobiParams:
    """Read Jacobi parameters off ``1 + M(z)`` by peeling J-fraction levels.

    ``F = 1/(1 - beta z - gamma z^2 G)`` so ``1 - 1/F`` exposes ``beta`` and,
    after removing ``z^2``, ``gamma`` times the next level ``G``.
    """
    if series[0] != 1:
        raise DomainError("J-fraction extraction needs constant term 1")
    beta, gamma = [], []
    f = series
    while f.order >= 1:
        h = TruncatedSeries.one(f.order) - f.reciprocal()
        beta.append(h[1])
        if f.order < 2:
            break
        rest = TruncatedSeries(h.coeffs[2:])
        g = rest[0]
        gamma.append(g)
        if g == 0:
            degenerate = any(rest.coeffs)
            return JacobiParams(tuple(beta), tuple(gamma), True, degenerate=degenerate)
        f = rest / g
    return JacobiParams(tuple(beta), tuple(gamma))


def moment_series(s: MomentSequence) -> TruncatedSeries:
    """``1 + M(z) = sum s_n z^n``."""
    return TruncatedSeries(s.s)


# ---------------------------------------------------------------------------
# moment-cumulant formulas for Part / NC / Int


def integer_partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``m`` as non-increasing tuples."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in integer_partitions(m - first, first):
            yield (first, *rest)


_FLAVOR_FAMILY = {Flavor.CLASSICAL: Family.ALL, Flavor.FREE: Family.NC, Flavor.BOOLEAN: Family.INT}


@lru_cache(maxsize=None)
def partition_type_counts(m: int, family: Family) -> dict[tuple[int, ...], int]:
    """Number of partitions in the family with each block-size profile.

    Closed forms: ``m!/prod(i!^m_i m_i!)`` for all partitions, Kreweras'
    ``m!/((m-k+1)! prod m_i!)`` for noncrossing ones and the multinomial
    ``k!/prod m_i!`` for interval partitions (``k`` blocks, ``m_i`` of size ``i``).
    """
    out = {}
    for sizes in integer_partitions(m):
        mult = Counter(sizes)
        k = len(sizes)
        denom = math.prod(math.factorial(c) for c in mult.values())
        if family is Family.ALL:
            n = math.factorial(m) // (denom * math.prod(math.factorial(i) for i in sizes))
        elif family is Family.NC:
            n = math.factorial(m) // (math.factorial(m - k + 1) * denom)
        elif family is Family.INT:
            n = math.factorial(k) // denom
        else:
            raise DomainError(f"no type-count formula for {family}")
        out[sizes] = n
    return out


def _family(flavor) -> Family:
    flavor = Flavor.parse(flavor)
    try:
        return _FLAVOR_FAMILY[flavor]
    except KeyError:
        raise DomainError(f"{flavor.name} cumulants live on measure pairs") from None


def cumulants_to_moments(r: CumulantVector) -> MomentSequence:
    """``s_m = sum over the flavor's lattice of prod r_|V|``, grouped by block profile."""
    fam = _family(r.flavor)
    s = [ONE]
    for m in range(1, r.order + 1):
        acc = ZERO
        for sizes, n in partition_type_counts(m, fam).items():
            term = Fraction(n)
            for i in sizes:
                term *= r[i]
                if not term:
                    break
            acc += term
        s.append(acc)
    return MomentSequence(tuple(s))


def moments_to_cumulants(s: MomentSequence, flavor) -> CumulantVector:
    """Triangular solve of the moment-cumulant formula: ``r_m = s_m - (lower-cumulant terms)``."""
    flavor = Flavor.parse(flavor)
    fam = _family(flavor)
    r = [ZERO]
    for m in range(1, s.order + 1):
        acc = s[m]
        for sizes, n in partition_type_counts(m, fam).items():
            if sizes == (m,):
                continue
            term = Fraction(n)
            for i in sizes:
                term *= r[i]
                if not term:
                    break
            acc -= term
        r.append(acc)
    return CumulantVector(flavor, tuple(r))


# ---------------------------------------------------------------------------
# two-state free cumulants


def _power_rows(base: MomentSequence, order: int) -> list[list[Fraction]]:
    """Coefficients of ``(1 + M(z))**k`` for ``k = 0..order``."""
    a = moment_series(base).truncate(order)
    rows, cur = [], TruncatedSeries.one(order)
    for _ in range(order + 1):
        rows.append(list(cur.coeffs))
        cur = cur * a
    return rows


def _first_block_sum(R: Sequence[Fraction], tilde: Sequence[Fraction], rows, n: int, upto: int) -> Fraction:
    # the outer block containing 1 has size k; its k gaps are filled by the
    # base functional (inner blocks only) except the last, which is again tilde
    acc = ZERO
    for k in range(1, upto + 1):
        if not R[k]:
            continue
        p = rows[k - 1]
        inner = ZERO
        for g in range(0, n - k + 1):
            if p[g] and tilde[n - k - g]:
                inner += p[g] * tilde[n - k - g]
        acc += R[k] * inner
    return acc


def two_state_cumulants_to_tilde(R: TwoStateCumulantVector, base: MomentSequence) -> MomentSequence:
    """``s~_m = sum over NC(m) of prod_outer R_|V| prod_inner r_|U|(base)``.

    Splitting on the outer block that contains 1 gives ``s~_n =
    sum_k R_k [z^(n-k)] (1+M)^(k-1) (1+M~)``: the inner sums inside a gap are
    exactly base moments.
    """
    N = R.order
    if base.order < N:
        raise InsufficientDepthError("base moments shorter than cumulant vector")
    rows = _power_rows(base, N)
    tilde = [ONE]
    for n in range(1, N + 1):
        tilde.append(_first_block_sum(R.R, tilde, rows, n, n))
    return MomentSequence(tuple(tilde))


def pair_to_two_state_cumulants(p: MeasurePair) -> TwoStateCumulantVector:
    """Solve the outer/inner NC sum for ``R_1..R_order`` (triangular in ``R``)."""
    N = p.order
    rows = _power_rows(p.base, N)
    t = p.tilde.s
    R = [ZERO]
    for n in range(1, N + 1):
        R.append(ZERO)
        R[n] = t[n] - _first_block_sum(R, t, rows, n, n - 1)
    return TwoStateCumulantVector(tuple(R))


# ---------------------------------------------------------------------------
# Jacobi parameters -> cumulants through connected labelled partitions


@lru_cache(maxsize=None)
def _labelled_monomials(m: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple(sorted(_kernels.labelled_table(m).items()))


def labelled_monomials(m: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Connected labellings of NC_{1,2}(m) grouped by weight monomial.

    Each block contributes a code ``4*k + 2*top + (size - 1)`` where ``k`` is
    its label and ``top`` says whether ``k`` equals the block depth.
    """
    if m > CAPS.labelled:
        raise BudgetExceededError(f"enumeration budget exceeded: m={m} > labelled cap {CAPS.labelled}")
    return _labelled_monomials(m)


def _sum_monomials(m: int, weight) -> Fraction:
    cache: dict[int, Fraction] = {}
    total = ZERO
    for codes, count in labelled_monomials(m):
        term = Fraction(count)
        for c in codes:
            w = cache.get(c)
            if w is None:
                w = cache[c] = weight(c >> 2, bool(c & 2), c & 1)
            if not w:
                term = ZERO
                break
            term *= w
        total += term
    return total


def jacobi_to_free_cumulants(j: JacobiParams, order: int) -> CumulantVector:
    """``r_m = sum over connected labelled (sigma, kappa) of prod w(V, kappa(V))``.

    ``w`` is ``beta_k - beta_{k-1}`` for singletons and ``gamma_k - gamma_{k-1}``
    for pairs, with ``beta_{-1} = gamma_{-1} = 0``.
    """
    j.check_depth(order)

    def weight(k, top, pair):
        row = j.g if pair else j.b
        return row(k) - row(k - 1)

    r = [ZERO] + [_sum_monomials(m, weight) for m in range(1, order + 1)]
    return CumulantVector(Flavor.FREE, tuple(r))


def jacobi_pair_to_two_state_cumulants(jt: JacobiParams, jb: JacobiParams, order: int) -> TwoStateCumulantVector:
    """Two-state free cumulants from the Jacobi parameters of ``(tilde, base)``.

    A block labelled with its own depth reads the tilde row (``p~_k - p_{k-1}``);
    any smaller label reads the base row only (``p_k - p_{k-1}``).
    """
    jt.check_depth(order)
    jb.check_depth(order)

    def weight(k, top, pair):
        base = jb.g if pair else jb.b
        if top:
            return (jt.g if pair else jt.b)(k) - base(k - 1)
        return base(k) - base(k - 1)

    R = [ZERO] + [_sum_monomials(m, weight) for m in range(1, order + 1)]
    return TwoStateCumulantVector(tuple(R))


# ---------------------------------------------------------------------------
# generating functions (series of order N without constant term unless noted)


def moments_to_eta(M: TruncatedSeries) -> TruncatedSeries:
    """``eta = 1 - (1 + M)^(-1)``; its coefficients are the Boolean cumulants."""
    one = TruncatedSeries.one(M.order)
    return one - (one + M).reciprocal()


def eta_to_moments(eta: TruncatedSeries) -> TruncatedSeries:
    one = TruncatedSeries.one(eta.order)
    return (one - eta).reciprocal() - one


def _w_of(M: TruncatedSeries) -> TruncatedSeries:
    """``z (1 + M(z))``, the substitution in the R-transform relation."""
    return TruncatedSeries.z(M.order) * (TruncatedSeries.one(M.order) + M)


def moments_to_rtransform(M: TruncatedSeries) -> TruncatedSeries:
    """Solve ``M(z) = R((1 + M(z)) z)`` for ``R``: ``R = M o w^(-1)`` with ``w = z(1+M)``."""
    if M[0] != 0:
        raise DomainError("moment series M must have zero constant term")
    return M.compose(_w_of(M).revert())


def rtransform_to_moments(R: TruncatedSeries) -> TruncatedSeries:
    """Solve ``M = R((1 + M) z)`` for ``M`` by fixed-point iteration (one order per pass)."""
    if R[0] != 0:
        raise DomainError("R-transform must have zero constant term")
    M = TruncatedSeries.zero(R.order)
    for _ in range(R.order):
        M = R.compose(_w_of(M))
    return M


def pair_to_two_state_gf(M_tilde: TruncatedSeries, M: TruncatedSeries) -> TruncatedSeries:
    """Two-state R-transform from ``eta~ = (1+M)^(-1) R~((1+M) z)``."""
    if M_tilde.order != M.order:
        raise DomainError("series orders differ")
    one = TruncatedSeries.one(M.order)
    inner = (one + M) * moments_to_eta(M_tilde)
    return inner.compose(_w_of(M).revert())


def two_state_gf_to_tilde(R_tilde: TruncatedSeries, M: TruncatedSeries) -> TruncatedSeries:
    """Inverse of :func:`pair_to_two_state_gf`: the tilde moment series ``M~``."""
    one = TruncatedSeries.one(M.order)
    eta = (one + M).reciprocal() * R_tilde.compose(_w_of(M))
    return eta_to_moments(eta)


def series_from(values: Sequence, order: int | None = None) -> TruncatedSeries:
    """Series with zero constant term from a 1-indexed vector ``values[1..]`` (``values[0]`` ignored)."""
    c = [ZERO] + [Q(x) for x in values[1:]]
    return TruncatedSeries(c, order)


# ---------------------------------------------------------------------------
# tridiagonal recurrences with coefficients polynomial in t


def monicize_three_term(
    lower: Sequence[PolynomialInT], diag: Sequence[PolynomialInT], upper: Sequence[PolynomialInT]
) -> tuple[list[PolynomialInT], list[PolynomialInT]]:
    """Monic recurrence coefficients of ``x P_n = lower_n P_{n+1} + diag_n P_n + upper_{n-1} P_{n-1}``.

    ``lower_n`` is the coefficient of ``P_{n+1}`` in ``x P_n`` and ``upper_n``
    that of ``P_n`` in ``x P_{n+1}``.  Rescaling to monic polynomials leaves
    the diagonal alone and multiplies the off-diagonal pair:
    ``gamma^_n = lower_n * upper_n``.
    """
    if not (len(lower) == len(diag) == len(upper)):
        raise DomainError("recurrence rows must have equal length")
    return list(diag), [a * c for a, c in zip(lower, upper)]
