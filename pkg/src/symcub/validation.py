"""Verification: polynomial exactness, node classification, rule diffs.

Exactness is checked in the original coordinates against every monomial
of total degree <= 3 (for n <= 8 the full set, C(n+3, 3) monomials; for
larger n the seven symmetry-class representatives plus seeded random
permutations of each).  Degree-4 probes demonstrate that a degree-3 rule
is sharp, using the closed-form region moments.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .assembly import CubatureRule
from .errors import DimensionMismatchError, UnmatchedRuleError
from .moments import (
    Region,
    RegionId,
    SymmetricMomentSpec,
    moment_of_monomial,
    region_monomial_moment,
)

__all__ = [
    "ExactnessReport",
    "NodeClass",
    "NodeClassification",
    "RuleDiff",
    "check_exactness",
    "classify_nodes",
    "compare_to_reference",
    "degree4_nonexactness",
    "monomial_exponents",
    "node_margins",
]

# Full monomial enumeration is used up to this dimension; beyond it the
# check samples random permutations of the seven class representatives.
FULL_ENUMERATION_MAX_DIM = 8


@dataclass(frozen=True)
class ExactnessReport:
    """Errors of a rule against a moment spec over degree <= 3 monomials."""

    max_abs_error: float
    max_rel_error: float
    worst_monomial: tuple[int, ...]
    per_degree_max: tuple[float, float, float, float]
    monomial_count: int
    degree4_witness: tuple[tuple[int, ...], float] | None = None


class NodeClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class NodeClassification:
    """Per-node region classification plus a weight-sign summary."""

    classes: tuple[NodeClass, ...]
    tol: float
    positive_weights: int
    negative_weights: int
    zero_weights: int

    def count(self, cls: NodeClass) -> int:
        return sum(1 for c in self.classes if c is cls)

    @property
    def interior(self) -> int:
        return self.count(NodeClass.INTERIOR)

    @property
    def boundary(self) -> int:
        return self.count(NodeClass.BOUNDARY)

    @property
    def exterior(self) -> int:
        return self.count(NodeClass.EXTERIOR)


@dataclass(frozen=True)
class RuleDiff:
    """Order-insensitive deviation between two rules of equal size."""

    max_node_distance: float
    max_weight_deviation: float
    node_tol: float
    weight_tol: float
    pairing: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def passed(self) -> bool:
        return (
            self.max_node_distance <= self.node_tol
            and self.max_weight_deviation <= self.weight_tol
        )


def monomial_exponents(n: int, max_degree: int = 3):
    """All exponent vectors of length n with total degree <= max_degree."""
    for degree in range(max_degree + 1):
        for positions in itertools.combinations_with_replacement(range(n), degree):
            exps = [0] * n
            for p in positions:
                exps[p] += 1
            yield tuple(exps)


def _sampled_exponents(n: int, samples_per_class: int, seed: int):
    rng = np.random.default_rng(seed)
    reps = [
        (0,) * n,
        (1,) + (0,) * (n - 1),
        (2,) + (0,) * (n - 1),
        (1, 1) + (0,) * (n - 2),
        (3,) + (0,) * (n - 1),
        (2, 1) + (0,) * (n - 2),
        (1, 1, 1) + (0,) * (n - 3),
    ]
    out = list(reps)
    for rep in reps:
        base = np.asarray(rep)
        for _ in range(samples_per_class):
            out.append(tuple(int(v) for v in rng.permutation(base)))
    return out


def _rule_monomial_values(rule: CubatureRule, exponents: np.ndarray) -> np.ndarray:
    # (m, N, n) powers collapsed over coordinates; 0**0 == 1 under numpy.
    powers = rule.node_array[None, :, :] ** exponents[:, None, :]
    return powers.prod(axis=2) @ rule.weight_array


def check_exactness(
    rule: CubatureRule,
    spec: SymmetricMomentSpec,
    *,
    seed: int = 0,
    samples_per_class: int = 200,
) -> ExactnessReport:
    """Compare rule sums against spec moments for all degree <= 3 monomials."""
    if rule.dim != spec.n:
        raise DimensionMismatchError(
            f"rule has dim {rule.dim} but spec has n = {spec.n}"
        )
    if spec.n <= FULL_ENUMERATION_MAX_DIM:
        exps = list(monomial_exponents(spec.n))
    else:
        exps = _sampled_exponents(spec.n, samples_per_class, seed)
    exp_arr = np.asarray(exps, dtype=float)
    approx = _rule_monomial_values(rule, exp_arr)
    exact = np.array([moment_of_monomial(spec, a) for a in exps])
    abs_err = np.abs(approx - exact)

    scale = max(spec.m_1, float(np.abs(exact).max()))
    denom = np.where(np.abs(exact) > 0, np.abs(exact), scale)
    rel_err = abs_err / denom

    worst = int(np.argmax(abs_err))
    degrees = exp_arr.sum(axis=1).astype(int)
    per_degree = tuple(
        float(abs_err[degrees == d].max()) if np.any(degrees == d) else 0.0
        for d in range(4)
    )
    return ExactnessReport(
        max_abs_error=float(abs_err[worst]),
        max_rel_error=float(rel_err.max()),
        worst_monomial=exps[worst],
        per_degree_max=per_degree,
        monomial_count=len(exps),
    )


def degree4_nonexactness(
    rule: CubatureRule, region: RegionId
) -> tuple[tuple[int, ...], float] | None:
    """Find a degree-4 monomial the rule gets wrong by more than 1e-6 * L(1).

    Probes x_i^4 and x_i^2 x_j^2 against the closed-form region moments
    and returns the worst offender, or None when every probe is matched
    (which would flag an anomaly for a genuine degree-3 rule).
    """
    if rule.dim != region.n:
        raise DimensionMismatchError(
            f"rule has dim {rule.dim} but region has n = {region.n}"
        )
    n = region.n
    candidates = []
    for i in range(n):
        exps = [0] * n
        exps[i] = 4
        candidates.append(tuple(exps))
    for i, j in itertools.combinations(range(n), 2):
        exps = [0] * n
        exps[i] = exps[j] = 2
        candidates.append(tuple(exps))
    exp_arr = np.asarray(candidates, dtype=float)
    approx = _rule_monomial_values(rule, exp_arr)
    exact = np.array([region_monomial_moment(region, a) for a in candidates])
    errors = np.abs(approx - exact)
    worst = int(np.argmax(errors))
    threshold = 1e-6 * region_monomial_moment(region, (0,) * n)
    if errors[worst] > threshold:
        return candidates[worst], float(errors[worst])
    return None


def node_margins(region: RegionId, node: Sequence[float]) -> np.ndarray:
    """Signed constraint margins g_j(x) >= 0 describing the region."""
    x = np.asarray(node, dtype=float)
    if x.shape != (region.n,):
        raise DimensionMismatchError(
            f"node has shape {x.shape}, expected ({region.n},)"
        )
    if region.region is Region.SIMPLEX:
        return np.concatenate([x, [1.0 - x.sum()]])
    if region.region is Region.BALL_SECTOR:
        return np.concatenate([x, [1.0 - float(x @ x)]])
    if region.region is Region.CUBE:
        return np.concatenate([x, 1.0 - x])
    raise ValueError(f"unknown region {region.region!r}")


def classify_nodes(
    rule: CubatureRule, region: RegionId, tol: float = 1e-9
) -> NodeClassification:
    """Label every node interior, boundary or exterior relative to a region.

    Interior means all constraint margins exceed tol; exterior means some
    margin is below -tol; boundary is everything in between.  The regions
    are permutation-symmetric, so permuting a node never changes its class.
    """
    if rule.dim != region.n:
        raise DimensionMismatchError(
            f"rule has dim {rule.dim} but region has n = {region.n}"
        )
    classes = []
    for node in rule.nodes:
        margin = float(node_margins(region, node).min())
        if margin < -tol:
            classes.append(NodeClass.EXTERIOR)
        elif margin > tol:
            classes.append(NodeClass.INTERIOR)
        else:
            classes.append(NodeClass.BOUNDARY)
    weights = rule.weight_array
    return NodeClassification(
        classes=tuple(classes),
        tol=tol,
        positive_weights=int((weights > 0).sum()),
        negative_weights=int((weights < 0).sum()),
        zero_weights=int((weights == 0).sum()),
    )


def compare_to_reference(
    rule: CubatureRule,
    reference: CubatureRule,
    node_tol: float = 5e-9,
    weight_tol: float = 5e-9,
) -> RuleDiff:
    """Diff two rules after pairing nodes by minimal-distance assignment.

    The pairing minimises the total Euclidean node distance, so the
    comparison is insensitive to row order.  Rules with different node
    counts cannot be compared.
    """
    if rule.dim != reference.dim:
        raise DimensionMismatchError(
            f"rules have dims {rule.dim} and {reference.dim}"
        )
    if len(rule) != len(reference):
        raise UnmatchedRuleError(
            f"rules have {len(rule)} and {len(reference)} nodes"
        )
    delta = rule.node_array[:, None, :] - reference.node_array[None, :, :]
    distance = np.sqrt((delta**2).sum(axis=2))
    rows, cols = linear_sum_assignment(distance)
    node_dev = float(distance[rows, cols].max())
    weight_dev = float(
        np.abs(rule.weight_array[rows] - reference.weight_array[cols]).max()
    )
    return RuleDiff(
        max_node_distance=node_dev,
        max_weight_deviation=weight_dev,
        node_tol=node_tol,
        weight_tol=weight_tol,
        pairing=tuple(zip(rows.tolist(), cols.tolist())),
    )
