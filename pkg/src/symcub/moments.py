"""Permutation-symmetric moment functionals up to degree 3.

A positive linear functional L on polynomials in n variables that is
invariant under permutations of the variables is determined, up to total
degree 3, by seven numbers: the values of L on

    1, x1, x1^2, x1*x2, x1^3, x1^2*x2, x1*x2*x3.

This module stores those seven values (:class:`SymmetricMomentSpec`),
evaluates L on arbitrary monomials of degree <= 3 by symmetry-class
lookup, and provides exact closed-form moments for three built-in
regions: the standard simplex x1 + ... + xn <= 1 (xi >= 0), the positive
sector of the unit ball, and the unit cube.  Region moments are available
at arbitrary degree, which the validation layer uses to demonstrate
non-exactness at degree 4.

All built-in moments are computed with exact integer factorials and
double factorials, converted to floats only at the end.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    DegreeOutOfRangeError,
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidMomentSpecError,
)

__all__ = [
    "Region",
    "RegionId",
    "SymmetricMomentSpec",
    "cube_spec",
    "double_factorial",
    "load_spec",
    "moment_of_monomial",
    "region_monomial_moment",
    "region_spec",
    "sector_spec",
    "simplex_spec",
    "spec_from_dict",
]


def double_factorial(m: int) -> int:
    """Exact integer double factorial, with m!! = 1 for every m <= 0."""
    if m <= 0:
        return 1
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _check_dim(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {n!r}")
    return n


class Region(enum.Enum):
    """Built-in integration regions with closed-form monomial moments."""

    SIMPLEX = "simplex"
    BALL_SECTOR = "ball-sector"
    CUBE = "cube"


@dataclass(frozen=True)
class RegionId:
    """A built-in region together with its dimension."""

    region: Region
    n: int

    def __post_init__(self):
        _check_dim(self.n)
        if not isinstance(self.region, Region):
            object.__setattr__(self, "region", Region(self.region))

    @property
    def label(self) -> str:
        return self.region.value


@dataclass(frozen=True)
class SymmetricMomentSpec:
    """The seven degree-<=3 moments of a permutation-symmetric functional.

    Fields m_1 .. m_xyz are L(1), L(x1), L(x1^2), L(x1*x2), L(x1^3),
    L(x1^2*x2) and L(x1*x2*x3).  For n = 2 the triple product moment is
    unused and stored as 0.  Construction validates the positivity
    invariants needed by the decomposition; violations raise
    :class:`InvalidMomentSpecError` naming the broken inequality.
    """

    n: int
    m_1: float
    m_x: float
    m_xx: float
    m_xy: float
    m_xxx: float
    m_xxy: float
    m_xyz: float = 0.0

    def __post_init__(self):
        _check_dim(self.n)
        for name in ("m_1", "m_x", "m_xx", "m_xy", "m_xxx", "m_xxy", "m_xyz"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.n == 2:
            object.__setattr__(self, "m_xyz", 0.0)
        if not self.m_1 > 0:
            raise InvalidMomentSpecError(f"m_1 > 0 violated: m_1 = {self.m_1!r}")
        if not self.m_xx > 0:
            raise InvalidMomentSpecError(f"m_xx > 0 violated: m_xx = {self.m_xx!r}")
        if not self.m_xx - self.m_xy > 0:
            raise InvalidMomentSpecError(
                "m_xx - m_xy > 0 violated: "
                f"m_xx - m_xy = {self.m_xx - self.m_xy!r}"
            )
        if self.m_1 * self.m_xx - self.m_x**2 < 0:
            raise InvalidMomentSpecError(
                "m_1*m_xx - m_x^2 >= 0 violated: "
                f"value = {self.m_1 * self.m_xx - self.m_x ** 2!r}"
            )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m1": self.m_1,
            "mx": self.m_x,
            "mxx": self.m_xx,
            "mxy": self.m_xy,
            "mxxx": self.m_xxx,
            "mxxy": self.m_xxy,
            "mxyz": self.m_xyz,
        }


def _as_exponents(exponents: Sequence[int], n: int) -> tuple[int, ...]:
    exps = tuple(int(a) for a in exponents)
    if len(exps) != n:
        raise DimensionMismatchError(
            f"exponent vector has length {len(exps)}, expected {n}"
        )
    if any(a < 0 for a in exps):
        raise DegreeOutOfRangeError(f"exponents must be >= 0, got {exps}")
    return exps


# Sorted nonzero exponent patterns of total degree <= 3 mapped to the
# seven stored moments.
_PATTERN_TO_FIELD = {
    (): "m_1",
    (1,): "m_x",
    (2,): "m_xx",
    (3,): "m_xxx",
    (1, 1): "m_xy",
    (2, 1): "m_xxy",
    (1, 1, 1): "m_xyz",
}


def moment_of_monomial(spec: SymmetricMomentSpec, exponents: Sequence[int]) -> float:
    """Evaluate L(x^alpha) for |alpha| <= 3 by symmetry-class lookup.

    The result is invariant under any permutation of `exponents`.
    """
    exps = _as_exponents(exponents, spec.n)
    if sum(exps) > 3:
        raise DegreeOutOfRangeError(
            f"total degree {sum(exps)} exceeds 3; only degree <= 3 moments are stored"
        )
    pattern = tuple(sorted((a for a in exps if a > 0), reverse=True))
    return getattr(spec, _PATTERN_TO_FIELD[pattern])


def region_monomial_moment(region: RegionId, exponents: Sequence[int]) -> float:
    """Exact moment of x^alpha over a built-in region, any total degree.

    Simplex:  prod(alpha_i!) / (n + |alpha|)!
    Ball sector:  prod((alpha_i - 1)!!) / (n + |alpha|)!! * (pi/2)^floor((n - n_odd)/2)
        where n_odd counts the odd exponents.
    Cube:  prod(1 / (alpha_i + 1))
    """
    exps = _as_exponents(exponents, region.n)
    total = sum(exps)
    if region.region is Region.SIMPLEX:
        num = math.prod(math.factorial(a) for a in exps)
        return float(Fraction(num, math.factorial(region.n + total)))
    if region.region is Region.BALL_SECTOR:
        num = math.prod(double_factorial(a - 1) for a in exps)
        n_odd = sum(1 for a in exps if a % 2 == 1)
        rational = Fraction(num, double_factorial(region.n + total))
        return float(rational) * (math.pi / 2.0) ** ((region.n - n_odd) // 2)
    if region.region is Region.CUBE:
        return float(Fraction(1, math.prod(a + 1 for a in exps)))
    raise ValueError(f"unknown region {region.region!r}")


def _class_representatives(n: int) -> dict[str, tuple[int, ...]]:
    reps = {
        "m_1": (0,) * n,
        "m_x": (1,) + (0,) * (n - 1),
        "m_xx": (2,) + (0,) * (n - 1),
        "m_xy": (1, 1) + (0,) * (n - 2),
        "m_xxx": (3,) + (0,) * (n - 1),
        "m_xxy": (2, 1) + (0,) * (n - 2),
    }
    if n >= 3:
        reps["m_xyz"] = (1, 1, 1) + (0,) * (n - 3)
    return reps


def _spec_from_region(region: RegionId) -> SymmetricMomentSpec:
    values = {
        field: region_monomial_moment(region, rep)
        for field, rep in _class_representatives(region.n).items()
    }
    return SymmetricMomentSpec(n=region.n, **values)


def simplex_spec(n: int) -> SymmetricMomentSpec:
    """Moments of the standard simplex x1 + ... + xn <= 1, xi >= 0."""
    return _spec_from_region(RegionId(Region.SIMPLEX, _check_dim(n)))


def sector_spec(n: int) -> SymmetricMomentSpec:
    """Moments of the positive sector of the unit ball (xi >= 0, |x| <= 1)."""
    return _spec_from_region(RegionId(Region.BALL_SECTOR, _check_dim(n)))


def cube_spec(n: int) -> SymmetricMomentSpec:
    """Moments of the unit cube [0, 1]^n; independent of n."""
    return _spec_from_region(RegionId(Region.CUBE, _check_dim(n)))


def region_spec(region: RegionId) -> SymmetricMomentSpec:
    """Moments of any built-in region."""
    return _spec_from_region(region)


_SPEC_KEYS = ("n", "m1", "mx", "mxx", "mxy", "mxxx", "mxxy", "mxyz")


def spec_from_dict(data: Mapping) -> SymmetricMomentSpec:
    """Build a spec from a flat key/value mapping (the custom-spec schema).

    Required keys: n, m1, mx, mxx, mxy, mxxx, mxxy, and mxyz when n >= 3.
    For n = 2, mxyz may be absent; if present it is ignored.  Unknown keys
    are rejected.
    """
    unknown = sorted(set(data) - set(_SPEC_KEYS))
    if unknown:
        raise InvalidMomentSpecError(f"unknown keys in moment spec: {unknown}")
    try:
        n = data["n"]
    except KeyError:
        raise InvalidMomentSpecError("moment spec is missing key 'n'") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidMomentSpecError(f"'n' must be an integer, got {n!r}")
    _check_dim(n)
    required = list(_SPEC_KEYS[1:-1]) + (["mxyz"] if n >= 3 else [])
    values = {}
    for key in required:
        if key not in data:
            raise InvalidMomentSpecError(f"moment spec is missing key {key!r}")
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidMomentSpecError(f"value for {key!r} must be a number, got {value!r}")
        values[key] = float(value)
    return SymmetricMomentSpec(
        n=n,
        m_1=values["m1"],
        m_x=values["mx"],
        m_xx=values["mxx"],
        m_xy=values["mxy"],
        m_xxx=values["mxxx"],
        m_xxy=values["mxxy"],
        m_xyz=values.get("mxyz", 0.0),
    )


def load_spec(path: str | Path) -> SymmetricMomentSpec:
    """Load a custom moment spec from a flat JSON document."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidMomentSpecError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidMomentSpecError(f"{path} must contain a JSON object")
    return spec_from_dict(data)
