"""Assemble full cubature rules from the solved one-dimensional chains.

Each chain-k node value t maps to a point of R^n:

    k = 1:          (eta, ..., eta)                with eta = (t - c_n) / n
    2 <= k <= n-1:  (alpha x (n-k+1), beta, gamma x (k-2))
                    beta  = gamma - t / (n - k + 2)
                    alpha = beta + (t - c_mid) / (n - k + 1)
    k = n:          (alpha, beta, gamma x (n-2))
                    beta  = gamma - (t + c_2) / 2,  alpha = beta + t

with c_2 = c_mid for n >= 3 and c_2 = c_n for n = 2.  Weights pass
through from the one-dimensional rules unchanged.  The compensation node
is the k = n image of t = 0; a node at t = 0 only contributes to the
zeroth moment of chain n, whose first and third moments vanish, so adding
it preserves degree-3 exactness while absorbing the mass residual
m_1 - sum(mu).

Node ordering is canonical: chain index ascending, node value descending
within a chain, compensation node last.  Identical inputs produce
bit-identical rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

import numpy as np

from .decomposition import (
    DecompositionConstants,
    MassSplit,
    compute_constants,
    default_split,
    reduced_moment_chain,
)
from .errors import InfeasibleMomentError
from .moment1d import solve_two_point
from .moments import SymmetricMomentSpec

__all__ = [
    "CubatureRule",
    "assemble_rule",
    "build_rule",
    "compensation_node",
    "map_node",
]


@dataclass(frozen=True)
class CubatureRule:
    """A weighted point set in R^n with a degree-3 exactness claim."""

    dim: int
    nodes: tuple[tuple[float, ...], ...]
    weights: tuple[float, ...]
    degree: int = 3
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError(
                f"{len(self.nodes)} nodes but {len(self.weights)} weights"
            )
        for node in self.nodes:
            if len(node) != self.dim:
                raise ValueError(f"node {node} does not have dim {self.dim}")

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def node_array(self) -> np.ndarray:
        arr = np.asarray(self.nodes, dtype=float).reshape(len(self.nodes), self.dim)
        arr.setflags(write=False)
        return arr

    @cached_property
    def weight_array(self) -> np.ndarray:
        arr = np.asarray(self.weights, dtype=float)
        arr.setflags(write=False)
        return arr

    def total_weight(self) -> float:
        return math.fsum(self.weights)


def map_node(
    k: int, t: float, consts: DecompositionConstants, n: int
) -> tuple[float, ...]:
    """Map a chain-k one-dimensional node value t back to a point of R^n."""
    if not 1 <= k <= n:
        raise ValueError(f"chain index must be in [1, {n}], got {k}")
    if k == 1:
        eta = (t - consts.c_n) / n
        return (eta,) * n
    gamma = consts.gamma
    if k == n:
        beta = gamma - (t + consts.c_2) / 2.0
        return (beta + t, beta) + (gamma,) * (n - 2)
    beta = gamma - t / (n - k + 2)
    alpha = beta + (t - consts.c_mid) / (n - k + 1)
    return (alpha,) * (n - k + 1) + (beta,) + (gamma,) * (k - 2)


def compensation_node(consts: DecompositionConstants, n: int) -> tuple[float, ...]:
    """The k = n node image of t = 0, which carries the mass residual."""
    return map_node(n, 0.0, consts, n)


def assemble_rule(
    spec: SymmetricMomentSpec,
    split: MassSplit,
    consts: DecompositionConstants,
    *,
    region_label: str = "custom",
) -> CubatureRule:
    """Solve all chains and package the rule.

    Generically returns 2n nodes, or 2n + 1 when the split carries a
    compensation node.  An infeasible chain raises
    :class:`InfeasibleMomentError` tagged with the chain index and the
    lower bound on its mass that would restore feasibility.
    """
    chain = reduced_moment_chain(spec, split, consts)
    nodes: list[tuple[float, ...]] = []
    weights: list[float] = []
    for entry in chain:
        try:
            one_dim = solve_two_point(entry)
        except InfeasibleMomentError as exc:
            bound = entry.m1**2 / entry.m2 if entry.m2 > 0 else math.inf
            raise InfeasibleMomentError(
                f"chain {entry.k} is infeasible (m0*m2 - m1^2 = {exc.hankel:.6e}); "
                f"feasibility needs mu_{entry.k} > {bound:.9g}",
                hankel=exc.hankel,
                chain=entry.k,
                mass_bound=bound,
            ) from exc
        for t, w in zip(one_dim.nodes, one_dim.weights):
            nodes.append(map_node(entry.k, t, consts, spec.n))
            weights.append(w)
    if split.compensation:
        nodes.append(compensation_node(consts, spec.n))
        weights.append(spec.m_1 - math.fsum(split.masses))
    metadata = {
        "region": region_label,
        "masses": list(split.masses),
        "compensation": split.compensation,
        "constants": {"c_n": consts.c_n, "c_mid": consts.c_mid, "gamma": consts.gamma},
    }
    return CubatureRule(
        dim=spec.n,
        nodes=tuple(nodes),
        weights=tuple(weights),
        metadata=metadata,
    )


def build_rule(
    spec: SymmetricMomentSpec,
    split: MassSplit | None = None,
    *,
    region_label: str = "custom",
) -> CubatureRule:
    """Convenience wrapper: constants plus assembly, default split if none."""
    if split is None:
        split = default_split(spec)
    return assemble_rule(
        spec, split, compute_constants(spec), region_label=region_label
    )
