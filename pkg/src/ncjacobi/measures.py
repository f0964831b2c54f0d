"""Value types: moment sequences, Jacobi parameters, cumulant vectors, measure pairs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InsufficientDepthError, OrderMismatchError
from .exact import ONE, ZERO, Q


class Flavor(enum.Enum):
    CLASSICAL = "classical"
    FREE = "free"
    BOOLEAN = "boolean"
    TWO_STATE_FREE = "cfree"

    @classmethod
    def parse(cls, name: "str | Flavor") -> "Flavor":
        if isinstance(name, Flavor):
            return name
        key = name.strip().lower().replace("_", "-")
        aliases = {
            "classical": cls.CLASSICAL,
            "free": cls.FREE,
            "boolean": cls.BOOLEAN,
            "cfree": cls.TWO_STATE_FREE,
            "two-state-free": cls.TWO_STATE_FREE,
            "two-state": cls.TWO_STATE_FREE,
            "conditionally-free": cls.TWO_STATE_FREE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown flavor {name!r}") from None


class Signature(enum.Enum):
    POSITIVE = "positive"
    QUASI_DEFINITE = "quasi-definite"


def _fractions(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Q(x) for x in xs)


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``s[0..order]`` of a normalized functional (``s[0] == 1``).

    Positivity is not assumed; see :func:`hankel_minors`.
    """

    s: tuple[Fraction, ...]

    def __post_init__(self):
        s = _fractions(self.s)
        if not s or s[0] != 1:
            raise DomainError("moment sequences are normalized: s[0] must be 1")
        object.__setattr__(self, "s", s)

    @property
    def order(self) -> int:
        return len(self.s) - 1

    def __getitem__(self, k):
        return self.s[k]

    def __len__(self):
        return len(self.s)

    def truncate(self, order: int) -> "MomentSequence":
        if order > self.order:
            raise InsufficientDepthError(f"only {self.order} moments available, {order} requested")
        return MomentSequence(self.s[: order + 1])


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters ``beta_0, beta_1, ...`` and ``gamma_0, gamma_1, ...``.

    A zero ``gamma_k`` terminates the sequence: the functional is supported on
    ``k + 1`` points, only ``beta_0..beta_k`` and ``gamma_0..gamma_k`` are kept,
    and ``terminated`` is set.  Negative ``gamma`` values are allowed and make
    the signature quasi-definite.  ``degenerate`` flags a moment sequence whose
    Gram-Schmidt process hit ``gamma = 0`` although later moments disagree with
    a finitely supported functional.
    """

    beta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    terminated: bool = False
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        beta, gamma = _fractions(self.beta), _fractions(self.gamma)
        terminated = self.terminated
        if 0 in gamma:
            k = gamma.index(0)
            if len(beta) < k + 1:
                raise InsufficientDepthError(f"gamma_{k} = 0 terminates but beta_{k} is missing")
            beta, gamma, terminated = beta[: k + 1], gamma[: k + 1], True
        elif terminated:
            raise DomainError("terminated Jacobi parameters must end with gamma = 0")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "terminated", terminated)

    @classmethod
    def from_rows(cls, beta: Sequence, gamma: Sequence, depth: int | None = None) -> "JacobiParams":
        """Build from rows, optionally padding with the last entry (constant tails) to ``depth``."""
        beta, gamma = list(beta), list(gamma)
        if depth is not None:
            beta += [beta[-1]] * (depth - len(beta))
            gamma += [gamma[-1]] * (depth - len(gamma))
            beta, gamma = beta[:depth], gamma[:depth]
        return cls(tuple(beta), tuple(gamma))

    @classmethod
    def point_mass(cls, c) -> "JacobiParams":
        return cls((Q(c),), (ZERO,), True)

    @property
    def signature(self) -> Signature:
        live = self.gamma[:-1] if self.terminated else self.gamma
        return Signature.POSITIVE if all(g > 0 for g in live) else Signature.QUASI_DEFINITE

    @staticmethod
    def depth_needed(order: int) -> tuple[int, int]:
        """Number of ``(beta, gamma)`` entries that moments up to ``order`` depend on."""
        return (order + 1) // 2, order // 2

    def check_depth(self, order: int):
        if self.terminated:
            return
        nb, ng = self.depth_needed(order)
        if len(self.beta) < nb or len(self.gamma) < ng:
            raise InsufficientDepthError(
                f"order {order} needs {nb} beta and {ng} gamma values; have {len(self.beta)} and {len(self.gamma)}"
            )

    def b(self, k: int) -> Fraction:
        """``beta_k`` with ``beta_{-1} = 0`` and zeros past a termination."""
        if k < 0 or (self.terminated and k >= len(self.beta)):
            return ZERO
        if k >= len(self.beta):
            raise InsufficientDepthError(f"beta_{k} not available")
        return self.beta[k]

    def g(self, k: int) -> Fraction:
        """``gamma_k`` with ``gamma_{-1} = 0`` and zeros past a termination."""
        if k < 0 or (self.terminated and k >= len(self.gamma)):
            return ZERO
        if k >= len(self.gamma):
            raise InsufficientDepthError(f"gamma_{k} not available")
        return self.gamma[k]

    def truncate(self, depth: int) -> "JacobiParams":
        if self.terminated and depth >= len(self.gamma):
            return self
        return JacobiParams(self.beta[:depth], self.gamma[:depth])


@dataclass(frozen=True)
class CumulantVector:
    """Cumulants ``r_1..r_order`` of one flavor; ``r[0]`` is a fixed zero so ``r[n]`` is ``r_n``."""

    flavor: Flavor
    r: tuple[Fraction, ...]

    def __post_init__(self):
        r = _fractions(self.r)
        if not r or r[0] != 0:
            raise DomainError("cumulant vectors start at index 1; r[0] must be 0")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "flavor", Flavor.parse(self.flavor))

    @classmethod
    def from_values(cls, flavor, values: Sequence) -> "CumulantVector":
        """From ``[r_1, r_2, ...]``."""
        return cls(Flavor.parse(flavor), (ZERO, *values))

    @property
    def order(self) -> int:
        return len(self.r) - 1

    def __getitem__(self, n):
        return self.r[n]

    def scaled(self, t) -> "CumulantVector":
        t = Q(t)
        return CumulantVector(self.flavor, tuple(t * x for x in self.r))


@dataclass(frozen=True)
class TwoStateCumulantVector:
    """Two-state free cumulants ``R_1..R_order``; ``R[0]`` is a fixed zero."""

    R: tuple[Fraction, ...]

    def __post_init__(self):
        R = _fractions(self.R)
        if not R or R[0] != 0:
            raise DomainError("cumulant vectors start at index 1; R[0] must be 0")
        object.__setattr__(self, "R", R)

    @classmethod
    def from_values(cls, values: Sequence) -> "TwoStateCumulantVector":
        return cls((ZERO, *values))

    @property
    def order(self) -> int:
        return len(self.R) - 1

    def __getitem__(self, n):
        return self.R[n]

    def scaled(self, t) -> "TwoStateCumulantVector":
        t = Q(t)
        return TwoStateCumulantVector(tuple(t * x for x in self.R))


@dataclass(frozen=True)
class MeasurePair:
    """Moment data of a pair ``(tilde, base)``: the first state and the reference state."""

    tilde: MomentSequence
    base: MomentSequence

    def __post_init__(self):
        if self.tilde.order != self.base.order:
            raise OrderMismatchError(f"pair orders differ: {self.tilde.order} vs {self.base.order}")

    @property
    def order(self) -> int:
        return self.base.order


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [list(r) for r in rows]
    n = len(a)
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def hankel_minors(s: MomentSequence | Sequence) -> list[Fraction]:
    """Leading principal minors ``det[s_{i+j}]_{i,j<=k}`` for ``2k <= order``."""
    s = s.s if isinstance(s, MomentSequence) else _fractions(s)
    n = (len(s) - 1) // 2
    return [determinant([[s[i + j] for j in range(k + 1)] for i in range(k + 1)]) for k in range(n + 1)]


def positivity_probe(s: MomentSequence | Sequence) -> tuple[bool, int | None]:
    """Advisory positivity check: all leading Hankel minors ``>= 0``.

    Returns ``(ok, k)`` where ``k`` is the size index of the first negative minor.
    """
    for k, d in enumerate(hankel_minors(s)):
        if d < 0:
            return False, k
    return True, None
