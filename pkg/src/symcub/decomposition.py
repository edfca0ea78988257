"""Decomposition of a symmetric functional into n one-dimensional problems.

The construction peels off one direction at a time.  Chain index k = 1 is
the problem along the sum of all coordinates, chain k = n is the problem
along the difference x1 - x2, and chains in between remove one coordinate
each.  Two constants drive everything:

    c_n   = -L(x1^3 + (n-3) x1^2 x2 - (n-2) x1 x2 x3) / L(x1^2 - x1 x2)
    c_mid = -L(x1^3 - 3 x1^2 x2 + 2 x1 x2 x3) / L(x1^2 - x1 x2)

c_mid is the shared value of the constants for all middle chains (it only
exists for n >= 3), and gamma = (c_mid - c_n) / n is the coordinate shared
by the trailing positions of every chain-k node with k >= 2.

The zeroth moments mu_1 .. mu_n of the chain entries are free parameters
(the mass split).  Without a compensation node they must add up to L(1);
with compensation the residual L(1) - sum(mu) becomes the weight of one
extra node.  Higher moments of each chain entry are fixed by the seven
base moments and the remaining mass ahead of the chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidMomentSpecError, InvalidSplitError
from .moments import SymmetricMomentSpec

__all__ = [
    "DecompositionConstants",
    "MassSplit",
    "OneDimMoments",
    "compute_constants",
    "default_split",
    "reduced_moment_chain",
    "remaining_mass",
    "validate_split",
]

# Relative tolerance on sum(mu) == m_1 for non-compensated splits.
MASS_BALANCE_RTOL = 1e-12


@dataclass(frozen=True)
class DecompositionConstants:
    """The constants c_n, c_mid and gamma for one moment spec.

    For n = 2 there are no middle chains: c_mid is None and gamma is 0,
    and the k = n node map falls back to c_n in place of c_mid.
    """

    n: int
    c_n: float
    c_mid: float | None
    gamma: float

    @property
    def c_2(self) -> float:
        """The constant used by the k = n node map."""
        return self.c_n if self.c_mid is None else self.c_mid


@dataclass(frozen=True)
class MassSplit:
    """Zeroth moments mu_1 .. mu_n of the chain entries.

    With `compensation` set, sum(mu) may differ from the total mass m_1;
    the residual is later attached to one extra node.
    """

    masses: tuple[float, ...]
    compensation: bool = False

    def __post_init__(self):
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))

    @classmethod
    def from_t(
        cls,
        t_values: Sequence[float | str],
        spec: SymmetricMomentSpec,
        compensation: bool = False,
    ) -> "MassSplit":
        """Build a split from t-parameters, mu_k = t_k * m_1 / n.

        Values may be given as strings such as "93/85"; they are parsed
        exactly and converted to floats at the end.
        """
        t = [float(Fraction(v)) if isinstance(v, str) else float(v) for v in t_values]
        if len(t) != spec.n:
            raise InvalidSplitError(
                f"expected {spec.n} t-parameters, got {len(t)}"
            )
        return cls(tuple(tk * spec.m_1 / spec.n for tk in t), compensation)


@dataclass(frozen=True)
class OneDimMoments:
    """Moments (m0, m1, m2, m3) of the chain-k reduced functional."""

    k: int
    m0: float
    m1: float
    m2: float
    m3: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m0, self.m1, self.m2, self.m3)


def compute_constants(spec: SymmetricMomentSpec) -> DecompositionConstants:
    """Compute c_n, c_mid and gamma from the seven base moments.

    For n = 2 the c_n numerator reduces to L(x1^3 - x1^2 x2): the triple
    product term carries coefficient n - 2 = 0.
    """
    d2 = spec.m_xx - spec.m_xy
    if d2 <= 0:
        raise InvalidMomentSpecError(
            f"m_xx - m_xy > 0 violated: denominator = {d2!r}"
        )
    n = spec.n
    c_n = -(spec.m_xxx + (n - 3) * spec.m_xxy - (n - 2) * spec.m_xyz) / d2
    if n == 2:
        return DecompositionConstants(n=2, c_n=c_n, c_mid=None, gamma=0.0)
    c_mid = -(spec.m_xxx - 3.0 * spec.m_xxy + 2.0 * spec.m_xyz) / d2
    return DecompositionConstants(n=n, c_n=c_n, c_mid=c_mid, gamma=(c_mid - c_n) / n)


def default_split(spec: SymmetricMomentSpec) -> MassSplit:
    """The uniform split mu_k = m_1 / n (all t-parameters equal to 1)."""
    return MassSplit((spec.m_1 / spec.n,) * spec.n, compensation=False)


def validate_split(split: MassSplit, spec: SymmetricMomentSpec) -> None:
    """Check positivity and, without compensation, total-mass balance."""
    if len(split.masses) != spec.n:
        raise InvalidSplitError(
            f"split has {len(split.masses)} masses, expected {spec.n}"
        )
    for k, mu in enumerate(split.masses, start=1):
        if not mu > 0:
            raise InvalidSplitError(f"mass mu_{k} must be > 0, got {mu!r}")
    if not split.compensation:
        total = math.fsum(split.masses)
        if abs(total - spec.m_1) > MASS_BALANCE_RTOL * abs(spec.m_1):
            raise InvalidSplitError(
                f"masses sum to {total!r} but m_1 = {spec.m_1!r}; "
                "enable compensation or rescale the split"
            )


def remaining_mass(split: MassSplit, m_1: float, k: int) -> float:
    """Mass left after the first k chains: m_1 - sum(mu_1 .. mu_k).

    k = 0 returns m_1 itself; k = n returns the compensation residual.
    """
    if not 0 <= k <= len(split.masses):
        raise InvalidSplitError(f"k must be in [0, {len(split.masses)}], got {k}")
    return m_1 - math.fsum(split.masses[:k])


def reduced_moment_chain(
    spec: SymmetricMomentSpec,
    split: MassSplit,
    consts: DecompositionConstants,
) -> list[OneDimMoments]:
    """Moments of the n reduced one-dimensional functionals.

    Entry 1 uses the full base moments shifted by c_n; entries 2 .. n-1
    use the middle-chain formulas with the remaining mass ahead of the
    chain; entry n is (mu_n, 0, 2*L(x1^2 - x1*x2), 0) with the odd
    moments exactly zero by construction.
    """
    if consts.n != spec.n:
        raise InvalidSplitError(
            f"constants were computed for n = {consts.n}, spec has n = {spec.n}"
        )
    validate_split(split, spec)
    n = spec.n
    mu = split.masses
    d2 = spec.m_xx - spec.m_xy
    e3 = -(spec.m_xxx - 3.0 * spec.m_xxy + 2.0 * spec.m_xyz)
    c = consts.c_n

    m1 = n * spec.m_x + c * spec.m_1
    m2 = (
        n * spec.m_xx
        + n * (n - 1) * spec.m_xy
        + 2.0 * n * c * spec.m_x
        + c * c * spec.m_1
    )
    m3 = (
        n * spec.m_xxx
        + 3.0 * n * (n - 1) * spec.m_xxy
        + n * (n - 1) * (n - 2) * spec.m_xyz
        + 3.0 * c * (n * spec.m_xx + n * (n - 1) * spec.m_xy)
        + 3.0 * n * c * c * spec.m_x
        + c**3 * spec.m_1
    )
    entries = [OneDimMoments(1, mu[0], m1, m2, m3)]

    cm = consts.c_mid
    for k in range(2, n):
        peeled = k - 1
        mass_ahead = remaining_mass(split, spec.m_1, peeled)
        f2 = (n - peeled) * (n - peeled + 1)
        f3 = f2 * (n - peeled + 2)
        entries.append(
            OneDimMoments(
                k,
                mu[k - 1],
                cm * mass_ahead,
                f2 * d2 + cm * cm * mass_ahead,
                f3 * e3 + cm**3 * mass_ahead,
            )
        )

    entries.append(OneDimMoments(n, mu[n - 1], 0.0, 2.0 * d2, 0.0))
    return entries
