"""Meixner-type families, limit-theorem inputs and the q = 0 quadratic harness.

Constructors return Jacobi rows truncated to ``depth`` entries; the families
here all have constant tails, so any depth can be produced on demand.
Admissibility (positivity of the resulting functional) is enforced unless the
caller passes ``override=True``, in which case quasi-definite rows come back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Mapping

from .convolve import power
from .errors import AdmissibilityError, DomainError
from .exact import ONE, ZERO, PolynomialInT, Q, TruncatedSeries
from .measures import Flavor, JacobiParams, MeasurePair, MomentSequence
from .transforms import (
    jacobi_to_moments,
    moment_series,
    moments_to_cumulants,
    monicize_three_term,
    pair_to_two_state_cumulants,
)

DEFAULT_DEPTH = 12


@dataclass(frozen=True)
class MeixnerParams:
    """``beta0, gamma0, b, c`` and, for pairs, the tilde values ``beta0_t, gamma0_t, b_t, c_t``."""

    beta0: Fraction = ZERO
    gamma0: Fraction = ONE
    b: Fraction = ZERO
    c: Fraction = ZERO
    beta0_t: Fraction | None = None
    gamma0_t: Fraction | None = None
    b_t: Fraction | None = None
    c_t: Fraction | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                object.__setattr__(self, f.name, Q(v))

    @classmethod
    def from_mapping(cls, m: Mapping[str, object]) -> "MeixnerParams":
        known = {f.name for f in fields(cls)}
        bad = set(m) - known
        if bad:
            raise DomainError(f"unknown Meixner parameter(s): {', '.join(sorted(bad))}")
        return cls(**m)

    @property
    def is_pair(self) -> bool:
        return self.beta0_t is not None

    def tilde(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Tilde values, defaulting to the base values when absent."""
        pick = lambda x, y: y if x is None else x  # noqa: E731
        return (
            pick(self.beta0_t, self.beta0),
            pick(self.gamma0_t, self.gamma0),
            pick(self.b_t, self.b),
            pick(self.c_t, self.c),
        )


def _fail(msg: str, override: bool):
    if not override:
        raise AdmissibilityError(msg + " (pass override=True for the quasi-definite functional)")


def classical_meixner_jacobi(p: MeixnerParams, t=1, depth: int = DEFAULT_DEPTH, override: bool = False) -> JacobiParams:
    """``beta_n(t) = n b + beta0 t``, ``gamma_n(t) = (n+1)(n c + gamma0 t)``.

    Positive when ``gamma0 t >= 0`` and either ``c >= 0`` or ``gamma0 t / (-c)``
    is a whole number (the binomial case, which terminates).
    """
    t = Q(t)
    g0 = p.gamma0 * t
    if t < 0 or p.gamma0 < 0:
        _fail("classical Meixner needs t >= 0 and gamma0 >= 0", override)
    elif p.c < 0:
        k = g0 / -p.c
        if k.denominator != 1:
            _fail(f"c < 0 requires gamma0*t/(-c) to be an integer, got {k}", override)
    beta = [n * p.b + p.beta0 * t for n in range(depth)]
    gamma = [(n + 1) * (n * p.c + g0) for n in range(depth)]
    return JacobiParams(tuple(beta), tuple(gamma))


def free_meixner_jacobi(p: MeixnerParams, t=1, depth: int = DEFAULT_DEPTH, override: bool = False) -> JacobiParams:
    """Rows ``(beta0 t, b + beta0 t, ...; gamma0 t, c + gamma0 t, ...)``."""
    t = Q(t)
    if t < 0 or p.gamma0 < 0 or p.c + p.gamma0 * t < 0:
        _fail("free Meixner needs t >= 0, gamma0 >= 0 and c + gamma0 t >= 0", override)
    beta = [p.beta0 * t] + [p.b + p.beta0 * t] * (depth - 1)
    gamma = [p.gamma0 * t] + [p.c + p.gamma0 * t] * (depth - 1)
    return JacobiParams(tuple(beta), tuple(gamma))


def two_state_meixner_pair(
    p: MeixnerParams, t=1, depth: int = DEFAULT_DEPTH, override: bool = False
) -> tuple[JacobiParams, JacobiParams]:
    """``(tilde, base)`` Jacobi rows of the two-state free Meixner power at ``t``."""
    t = Q(t)
    bt0, gt0, bt, ct = p.tilde()
    if t < 0 or p.gamma0 < 0 or gt0 < 0 or p.c + p.gamma0 * t < 0 or ct + p.gamma0 * t < 0:
        _fail("two-state Meixner needs t >= 0, gamma0, gamma0~ >= 0, c + gamma0 t >= 0, c~ + gamma0 t >= 0", override)
    tb = [bt0 * t, bt + p.beta0 * t] + [p.b + p.beta0 * t] * (depth - 2)
    tg = [gt0 * t, ct + p.gamma0 * t] + [p.c + p.gamma0 * t] * (depth - 2)
    tilde = JacobiParams(tuple(tb[:depth]), tuple(tg[:depth]))
    return tilde, free_meixner_jacobi(p, t, depth, override=True)


def boolean_power_jacobi(j: JacobiParams, t) -> JacobiParams:
    """Jacobi rows of the Boolean power: only ``beta0`` and ``gamma0`` scale."""
    t = Q(t)
    return JacobiParams((j.beta[0] * t,) + j.beta[1:], (j.gamma[0] * t,) + j.gamma[1:])


def point_mass_pair_power(jt: JacobiParams, u, t) -> tuple[JacobiParams, JacobiParams]:
    """Power of the pair ``(tilde, delta_u)``: tilde rows shift by ``(t-1)u`` past index 0."""
    u, t = Q(u), Q(t)
    if t <= 0:
        raise DomainError("point-mass pair powers need t > 0")
    beta = (jt.beta[0] * t,) + tuple(b + (t - 1) * u for b in jt.beta[1:])
    gamma = (jt.gamma[0] * t,) + jt.gamma[1:]
    return JacobiParams(beta, gamma), JacobiParams.point_mass(t * u)


def point_mass_tilde_pair(
    beta0_t, p: MeixnerParams, t=1, depth: int = DEFAULT_DEPTH, base_is_polynomial: bool = False
) -> tuple[JacobiParams, JacobiParams]:
    """``(delta_{beta0~ t}, mu_t)`` for a free Meixner base.

    Linearity of the tilde orbit in this case rests on the base orbit being
    polynomial in ``t`` as well; the caller has to vouch for that.
    """
    if not base_is_polynomial:
        raise AdmissibilityError("point-mass tilde needs base_is_polynomial=True (base orbit polynomial in t)")
    t = Q(t)
    return JacobiParams.point_mass(Q(beta0_t) * t), free_meixner_jacobi(p, t, depth)


def rho_representation(p: MeixnerParams, two_state: bool = False, depth: int = DEFAULT_DEPTH) -> JacobiParams:
    """The measure ``rho`` (or ``rho~``) with ``R(z) = beta0 z + gamma0 z^2 * (moment series of rho)``."""
    if p.c < 0 or (two_state and p.tilde()[3] < 0):
        raise AdmissibilityError("rho representation requires c >= 0 (and c~ >= 0)")
    if two_state:
        _, _, bt, ct = p.tilde()
        return JacobiParams((bt,) + (p.b,) * (depth - 1), (ct,) + (p.c,) * (depth - 1))
    return JacobiParams((p.b,) * depth, (p.c,) * depth)


# ---------------------------------------------------------------------------
# limit theorems


class LimitKind(enum.Enum):
    CLT = "clt"
    POISSON = "poisson"
    GENERAL_POISSON = "general-poisson"
    BERNOULLI = "bernoulli"


def _bernoulli(p, atom, order: int) -> MomentSequence:
    """``(1 - p) delta_0 + p delta_atom``."""
    return MomentSequence((ONE,) + tuple(p * atom**m for m in range(1, order + 1)))


def _symmetric(var, order: int) -> MomentSequence:
    """Symmetric two-point law with variance ``var``: odd moments 0, ``s_2k = var^k``."""
    return MomentSequence(tuple(ZERO if m % 2 else var ** (m // 2) for m in range(order + 1)))


def _scale_by_inverse_root(pair: MeasurePair, N: int) -> MeasurePair:
    """Dilation by ``1/sqrt(N)`` of a symmetric pair (rational since odd moments vanish)."""

    def one(s):
        if any(s[m] for m in range(1, s.order + 1, 2)):
            raise DomainError("dilation by 1/sqrt(N) kept rational only for symmetric input")
        return MomentSequence(tuple(x / Fraction(N) ** (m // 2) for m, x in enumerate(s.s)))

    return MeasurePair(one(pair.tilde), one(pair.base))


def limit_theorem_input(kind, params: Mapping[str, object], N: int, order: int = 6) -> tuple[MeasurePair, MeasurePair]:
    """``(pre-limit pair at scale N, closed-form limit pair)`` as moment data.

    CLT: ``v, u`` are the tilde and base variances; the pre-limit pair is made
    of symmetric two-point laws and the power is dilated by ``1/sqrt(N)``.
    POISSON: rates ``q, p`` with atoms at 1.  GENERAL_POISSON: rates ``q, p``
    and atoms ``v, u``.  BERNOULLI: the pair of Bernoulli laws ``q, p`` raised
    to the power ``N``, against the closed-form two-state free binomial rows.
    """
    kind = LimitKind(kind)
    P = {k: Q(v) for k, v in params.items()}
    depth = order // 2 + 2
    if kind is LimitKind.CLT:
        v, u = P["v"], P["u"]
        if v < 0 or u < 0:
            raise DomainError("CLT variances must be non-negative")
        pre = power(MeasurePair(_symmetric(v, order), _symmetric(u, order)), N, Flavor.TWO_STATE_FREE, False)
        pre = _scale_by_inverse_root(pre, N)
        lim = MeixnerParams(beta0=0, gamma0=u, b=0, c=0, beta0_t=0, gamma0_t=v, b_t=0, c_t=0)
    elif kind in (LimitKind.POISSON, LimitKind.GENERAL_POISSON):
        q, p = P["q"], P["p"]
        v, u = (ONE, ONE) if kind is LimitKind.POISSON else (P["v"], P["u"])
        if not (0 <= q <= N and 0 <= p <= N):
            raise DomainError("Poisson rates must satisfy 0 <= rate <= N")
        if v == 0 or u == 0:
            raise DomainError("Poisson atoms must be nonzero")
        pair = MeasurePair(_bernoulli(q / N, v, order), _bernoulli(p / N, u, order))
        pre = power(pair, N, Flavor.TWO_STATE_FREE, False)
        lim = MeixnerParams(beta0=p * u, gamma0=p * u * u, b=u, c=0, beta0_t=q * v, gamma0_t=q * v * v, b_t=v, c_t=0)
    else:
        q, p = P["q"], P["p"]
        if not (0 < q < 1 and 0 < p < 1):
            raise DomainError("Bernoulli parameters must lie in (0, 1)")
        pre = power(MeasurePair(_bernoulli(q, ONE, order), _bernoulli(p, ONE, order)), N, Flavor.TWO_STATE_FREE, False)
        lim = bernoulli_pair_params(q, p)
    jt, jb = two_state_meixner_pair(lim, N if kind is LimitKind.BERNOULLI else 1, depth, override=True)
    return pre, MeasurePair(jacobi_to_moments(jt, order), jacobi_to_moments(jb, order))


def bernoulli_pair_params(q, p) -> MeixnerParams:
    """Two-state Meixner parameters of ``((1-q) delta_0 + q delta_1, (1-p) delta_0 + p delta_1)``."""
    q, p = Q(q), Q(p)
    return MeixnerParams(
        beta0=p, gamma0=p * (1 - p), b=1 - 2 * p, c=-p * (1 - p),
        beta0_t=q, gamma0_t=q * (1 - q), b_t=1 - p - q, c_t=-p * (1 - p),
    )


# ---------------------------------------------------------------------------
# cumulant recursions


@dataclass(frozen=True)
class RecursionCheck:
    ok: bool
    first_failure: int | None = None
    which: str | None = None  # "two-state" or "one-state"

    def __bool__(self):
        return self.ok


def cumulant_recursion_check(source, order: int = 12) -> RecursionCheck:
    """Test the quadratic recursions for ``R_{m+2}`` and ``r_{m+2}``, ``1 <= m <= order - 2``.

    ``source`` is either :class:`MeixnerParams` (the two-state Meixner pair at
    ``t = 1`` is built) or a ``(tilde, base)`` pair of :class:`JacobiParams`;
    ``b~, b, c~, c`` are read off the rows.  Cumulants come from the moment
    sums, independently of the recursion.
    """
    jt, jb = two_state_meixner_pair(source, 1, order // 2 + 2, override=True) if isinstance(source, MeixnerParams) else source
    g0 = jb.g(0)
    if g0 == 0:
        raise DomainError("recursion requires gamma0 != 0")
    bt, b = jt.b(1) - jb.b(0), jb.b(1) - jb.b(0)
    ct, c = jt.g(1) - jb.g(0), jb.g(1) - jb.g(0)
    tilde, base = jacobi_to_moments(jt, order), jacobi_to_moments(jb, order)
    R = pair_to_two_state_cumulants(MeasurePair(tilde, base)).R
    r = moments_to_cumulants(base, Flavor.FREE).r
    for m in range(1, order - 1):
        conv = sum((r[k] * R[m + 2 - k] for k in range(2, m + 1)), ZERO)
        if R[m + 2] != bt * R[m + 1] + ct / g0 * conv:
            return RecursionCheck(False, m, "two-state")
        conv = sum((r[k] * r[m + 2 - k] for k in range(2, m + 1)), ZERO)
        if r[m + 2] != b * r[m + 1] + c / g0 * conv:
            return RecursionCheck(False, m, "one-state")
    return RecursionCheck(True)


# ---------------------------------------------------------------------------
# Laha-Lukacs regression


def laha_lukacs_tilde(ms: MomentSequence, b, c) -> MomentSequence:
    """Tilde moments of the sum ``S`` from its base moments via the regression identity.

    ``1 + M~ = (2 + c - (2bz + c)(1+M)) / (2 + c - (4z^2 + 2bz + c)(1+M))``.
    """
    b, c = Q(b), Q(c)
    if c <= -2:
        raise DomainError("regression identity requires c > -2")
    N = ms.order
    F = moment_series(ms)
    z = TruncatedSeries.z(N)
    lin = z * (2 * b) + c
    num = TruncatedSeries.one(N) * (2 + c) - lin * F
    den = TruncatedSeries.one(N) * (2 + c) - (z * z * 4 + lin) * F
    return MomentSequence((num / den).coeffs)


# ---------------------------------------------------------------------------
# q = 0 quadratic harness


@dataclass(frozen=True)
class HarnessParams:
    sigma: Fraction = ZERO
    tau: Fraction = ZERO
    eta: Fraction = ZERO
    theta: Fraction = ZERO

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, Q(getattr(self, f.name)))
        if self.sigma * self.tau == 1:
            raise DomainError("harness needs sigma * tau != 1")

    @classmethod
    def from_mapping(cls, m: Mapping[str, object]) -> "HarnessParams":
        bad = set(m) - {"sigma", "tau", "eta", "theta"}
        if bad:
            raise DomainError(f"unknown harness parameter(s): {', '.join(sorted(bad))}")
        return cls(**m)

    @property
    def u(self) -> Fraction:
        return (self.eta + self.sigma * self.theta) / (1 - self.sigma * self.tau)

    @property
    def v(self) -> Fraction:
        return (self.tau * self.eta + self.theta) / (1 - self.sigma * self.tau)

    def admissible(self) -> bool:
        return 1 + self.u * self.v > 0 and 0 <= self.sigma * self.tau < 1


def harness_recurrence(h: HarnessParams, depth: int = DEFAULT_DEPTH):
    """Non-monic recurrence ``x P_n = lower_n P_{n+1} + diag_n P_n + upper_{n-1} P_{n-1}`` in ``t``.

    Returns ``(lower, diag, upper)`` rows of :class:`PolynomialInT`.
    """
    s, tau, u, v = h.sigma, h.tau, h.u, h.v
    d = 1 - s * tau
    lower = [PolynomialInT.constant(1)] + [PolynomialInT.linear(s, 1)] * (depth - 1)
    diag_tail = PolynomialInT.linear((u + s * v) / d, (v + tau * u) / d)
    diag = [PolynomialInT(), PolynomialInT.linear(u, v)] + [diag_tail] * (depth - 2)
    off = PolynomialInT.linear(1 + u * v, (1 + u * v) * tau)
    upper = [PolynomialInT.linear(1, 0), off * (ONE / d)] + [off * (ONE / (d * d))] * (depth - 2)
    return lower[:depth], diag[:depth], upper[:depth]


def harness_monic_rows(h: HarnessParams, depth: int = DEFAULT_DEPTH) -> tuple[list[PolynomialInT], list[PolynomialInT]]:
    """Monic Jacobi rows as polynomials in ``t`` (quadratic ``gamma`` rows when ``sigma != 0``)."""
    return monicize_three_term(*harness_recurrence(h, depth))


def harness_monic_jacobi(h: HarnessParams, t, depth: int = DEFAULT_DEPTH, override: bool = False) -> JacobiParams:
    if not h.admissible():
        _fail("harness needs 1 + u v > 0 and 0 <= sigma tau < 1", override)
    diag, gam = harness_monic_rows(h, depth)
    t = Q(t)
    return JacobiParams(tuple(p(t) for p in diag), tuple(p(t) for p in gam))


def harness_two_state_params(h: HarnessParams) -> MeixnerParams:
    """Two-state Meixner parameters matching a ``sigma = 0`` harness."""
    if h.sigma != 0:
        raise DomainError("two-state identification needs sigma = 0")
    eta, tau, theta = h.eta, h.tau, h.theta
    g0 = 1 + eta * (tau * eta + theta)
    return MeixnerParams(
        beta0=eta, gamma0=g0, b=2 * tau * eta + theta, c=tau * g0,
        beta0_t=0, gamma0_t=1, b_t=tau * eta + theta, c_t=tau * g0,
    )


def harness_to_two_state(h: HarnessParams, t, depth: int = DEFAULT_DEPTH) -> tuple[JacobiParams, JacobiParams]:
    """``(J(mu~_t), J(mu_t))``: tilde rows from the monicized harness, base from the identified free Meixner law.

    Requires ``sigma = 0``, ``tau >= 0`` and ``1 + eta(tau eta + theta) > 0``.
    """
    if h.sigma != 0:
        raise DomainError("two-state harness map needs sigma = 0")
    if h.tau < 0 or 1 + h.eta * (h.tau * h.eta + h.theta) <= 0:
        raise AdmissibilityError("harness needs tau >= 0 and 1 + eta(tau eta + theta) > 0")
    tilde = harness_monic_jacobi(h, t, depth)
    base = free_meixner_jacobi(harness_two_state_params(h), t, depth)
    return tilde, base


# ---------------------------------------------------------------------------
# registry used by the CLI


def _build_boolean_pair(params, t, depth, override):
    P = dict(params)
    u = P.pop("u", ZERO)
    p = MeixnerParams.from_mapping({"beta0": 0, "gamma0": 1, **P})
    bt0, gt0, bt, ct = p.tilde()
    jt = JacobiParams((bt0,) + (bt,) * (depth - 1), (gt0,) + (ct,) * (depth - 1))
    return point_mass_pair_power(jt, u, t)


FAMILIES: dict[str, Callable] = {
    "meixner": lambda P, t, d, o: classical_meixner_jacobi(MeixnerParams.from_mapping(P), t, d, o),
    "free-meixner": lambda P, t, d, o: free_meixner_jacobi(MeixnerParams.from_mapping(P), t, d, o),
    "two-state-meixner": lambda P, t, d, o: two_state_meixner_pair(MeixnerParams.from_mapping(P), t, d, o),
    "boolean-pair": _build_boolean_pair,
    "harness": lambda P, t, d, o: (
        harness_to_two_state(HarnessParams.from_mapping(P), t, d)
        if Q(P.get("sigma", 0)) == 0
        else harness_monic_jacobi(HarnessParams.from_mapping(P), t, d, o)
    ),
}


def build_family(name: str, params: Mapping[str, object], t=1, depth: int = DEFAULT_DEPTH, override: bool = False):
    """Look up a family by CLI name; returns Jacobi rows or a ``(tilde, base)`` pair."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    return builder(dict(params), Q(t), depth, override)
