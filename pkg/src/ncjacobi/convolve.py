"""Classical, free, Boolean and two-state free convolution by cumulant addition."""

from __future__ import annotations

import warnings

from .errors import ArityError, OrderMismatchError, PositivityWarning
from .exact import Q
from .measures import CumulantVector, Flavor, MeasurePair, MomentSequence, TwoStateCumulantVector, positivity_probe
from .transforms import (
    cumulants_to_moments,
    moments_to_cumulants,
    pair_to_two_state_cumulants,
    two_state_cumulants_to_tilde,
)


def _check_arity(x, flavor: Flavor):
    want = MeasurePair if flavor is Flavor.TWO_STATE_FREE else MomentSequence
    if not isinstance(x, want):
        raise ArityError(f"{flavor.value} convolution acts on {want.__name__}, got {type(x).__name__}")


def convolve(a, b, flavor):
    """Convolve two moment sequences (or two measure pairs for ``TWO_STATE_FREE``)."""
    flavor = Flavor.parse(flavor)
    _check_arity(a, flavor)
    _check_arity(b, flavor)
    if a.order != b.order:
        raise OrderMismatchError(f"truncation orders differ: {a.order} vs {b.order}")
    if flavor is Flavor.TWO_STATE_FREE:
        base = convolve(a.base, b.base, Flavor.FREE)
        Ra, Rb = pair_to_two_state_cumulants(a), pair_to_two_state_cumulants(b)
        R = TwoStateCumulantVector(tuple(x + y for x, y in zip(Ra.R, Rb.R)))
        return MeasurePair(two_state_cumulants_to_tilde(R, base), base)
    ra, rb = moments_to_cumulants(a, flavor), moments_to_cumulants(b, flavor)
    return cumulants_to_moments(CumulantVector(flavor, tuple(x + y for x, y in zip(ra.r, rb.r))))


def probe(result) -> bool:
    """Advisory Hankel positivity of a sequence, or of both members of a pair."""
    if isinstance(result, MeasurePair):
        return positivity_probe(result.tilde)[0] and positivity_probe(result.base)[0]
    return positivity_probe(result)[0]


def power(a, t, flavor, check_positivity: bool = True):
    """Formal convolution power: every cumulant of the flavor is multiplied by ``t``.

    No positivity is required.  When ``check_positivity`` is set and the result
    fails the Hankel probe a :class:`PositivityWarning` is issued.
    """
    flavor = Flavor.parse(flavor)
    _check_arity(a, flavor)
    t = Q(t)
    if flavor is Flavor.TWO_STATE_FREE:
        base = power(a.base, t, Flavor.FREE, check_positivity=False)
        R = pair_to_two_state_cumulants(a).scaled(t)
        out = MeasurePair(two_state_cumulants_to_tilde(R, base), base)
    else:
        out = cumulants_to_moments(moments_to_cumulants(a, flavor).scaled(t))
    if check_positivity and not probe(out):
        warnings.warn(
            f"{flavor.value} power t={t} fails the Hankel positivity probe", PositivityWarning, stacklevel=2
        )
    return out


def dilate(a, lam):
    """Push forward under ``x -> lam * x``: ``s_m -> lam^m s_m``."""
    lam = Q(lam)
    if isinstance(a, MeasurePair):
        return MeasurePair(dilate(a.tilde, lam), dilate(a.base, lam))
    return MomentSequence(tuple(lam**m * x for m, x in enumerate(a.s)))
