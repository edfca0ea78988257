"""Exception types shared across the package."""

from __future__ import annotations


class CubatureError(Exception):
    """Base class for all errors raised by symcub."""


class InvalidDimensionError(CubatureError, ValueError):
    """The dimension must be an integer >= 2."""


class InvalidMomentSpecError(CubatureError, ValueError):
    """A moment specification violates one of its positivity invariants."""


class DegreeOutOfRangeError(CubatureError, ValueError):
    """A monomial degree lies outside the supported range."""


class DimensionMismatchError(CubatureError, ValueError):
    """Two objects that must share a dimension do not."""


class InvalidSplitError(CubatureError, ValueError):
    """A mass split violates positivity or total-mass constraints."""


class InfeasibleMomentError(CubatureError):
    """One-dimensional moments admit no two-point rule with positive weights.

    Attributes
    ----------
    hankel : float or None
        The Hankel determinant m0*m2 - m1**2 that failed the test.
    chain : int or None
        Chain index of the failing one-dimensional sub-problem, when raised
        during rule assembly.
    mass_bound : float or None
        Lower bound on the chain mass mu_k that would restore feasibility.
    """

    def __init__(self, message, *, hankel=None, chain=None, mass_bound=None):
        super().__init__(message)
        self.hankel = hankel
        self.chain = chain
        self.mass_bound = mass_bound


class InconsistentAtomError(CubatureError):
    """Degenerate moments are not consistent with a single point mass."""


class UnmatchedRuleError(CubatureError, ValueError):
    """Two rules cannot be paired node-by-node (different node counts)."""
