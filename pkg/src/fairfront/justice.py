"""Relevant positions and patterns of justice.

A claims differentiator picks out the individuals whose utility is
morally comparable; position utilities average decision-subject utility
per group over those claim holders; a pattern of justice turns the
per-group utilities into a single higher-is-fairer score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (
    AllZeroWeights,
    EmptyPosition,
    InvalidPredicate,
    TooFewGroups,
    UnknownAttribute,
    WeightLengthMismatch,
)
from .model import Dataset, DecisionVector, check_alignment
from .utility import DSUtilitySpec, EvaluationMode, ds_value_arrays


# --- claims differentiators -----------------------------------------------------


@dataclass(frozen=True)
class AllClaims:
    """Everyone holds an equal claim."""

    def canonical(self) -> dict:
        return {"all": {}}


@dataclass(frozen=True)
class OutcomeEquals:
    """Claim holders are the individuals with the given observed outcome."""

    y: int

    def __post_init__(self):
        if self.y not in (0, 1):
            raise ValueError(f"outcome_equals value must be 0 or 1, got {self.y}")

    def canonical(self) -> dict:
        return {"outcome_equals": {"y": self.y}}


_OP_ALIASES = {"==": "=", "≠": "!=", "≤": "<=", "≥": ">="}
_ORDERED_OPS = {"<", "<=", ">", ">="}
_VALID_OPS = {"=", "!="} | _ORDERED_OPS


@dataclass(frozen=True)
class AttributePredicate:
    """Claim holders satisfy a comparison on a named attribute."""

    attribute: str
    op: str
    value: float | str

    def __post_init__(self):
        op = _OP_ALIASES.get(self.op, self.op)
        if op not in _VALID_OPS:
            raise ValueError(f"unsupported predicate op {self.op!r}")
        object.__setattr__(self, "op", op)

    def holds(self, value: float | str) -> bool:
        target = self.value
        if self.op in ("=", "!="):
            both_numeric = isinstance(value, (int, float)) and isinstance(target, (int, float))
            equal = (float(value) == float(target)) if both_numeric else (value == target)
            return equal if self.op == "=" else not equal
        if not isinstance(value, (int, float)) or not isinstance(target, (int, float)):
            raise InvalidPredicate(
                f"op {self.op!r} on attribute {self.attribute!r} needs numeric values"
            )
        v, t = float(value), float(target)
        if self.op == "<":
            return v < t
        if self.op == "<=":
            return v <= t
        if self.op == ">":
            return v > t
        return v >= t

    def canonical(self) -> dict:
        return {
            "attribute_predicate": {"attribute": self.attribute, "op": self.op, "value": self.value}
        }


ClaimsDifferentiator = AllClaims | OutcomeEquals | AttributePredicate


def claims_mask(dataset: Dataset, differentiator: ClaimsDifferentiator) -> np.ndarray:
    """Boolean vector: does individual i hold an equal claim?"""
    if isinstance(differentiator, AllClaims):
        mask = np.ones(len(dataset), dtype=bool)
    elif isinstance(differentiator, OutcomeEquals):
        mask = dataset.outcomes == float(differentiator.y)
    else:
        name = differentiator.attribute
        flags = []
        for ind in dataset:
            attrs = ind.attributes or {}
            if name not in attrs:
                raise UnknownAttribute(name)
            flags.append(differentiator.holds(attrs[name]))
        mask = np.array(flags, dtype=bool)
    mask.setflags(write=False)
    return mask


# --- patterns of justice --------------------------------------------------------


@dataclass(frozen=True)
class Egalitarian:
    """Score is the negated utility range; 0 only under exact equality."""

    def canonical(self) -> dict:
        return {"egalitarian": {}}


@dataclass(frozen=True)
class Maximin:
    """Score is the worst-off position's utility."""

    def canonical(self) -> dict:
        return {"maximin": {}}


@dataclass(frozen=True)
class Prioritarian:
    """Rank-weighted mean with the largest weight on the worst-off."""

    weights: tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise ValueError("prioritarian weights must be non-empty")
        for w in weights:
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"prioritarian weights must be finite and non-negative, got {w}")
        if any(a < b for a, b in zip(weights, weights[1:])):
            raise ValueError("prioritarian weights must be non-increasing")
        if not any(w > 0 for w in weights):
            raise AllZeroWeights()

    def canonical(self) -> dict:
        return {"prioritarian": {"weights": list(self.weights)}}


@dataclass(frozen=True)
class Sufficientarian:
    """Score is the negated total shortfall below the sufficiency level tau."""

    tau: float

    def __post_init__(self):
        if not math.isfinite(self.tau):
            raise ValueError(f"sufficientarian tau must be finite, got {self.tau}")

    def canonical(self) -> dict:
        return {"sufficientarian": {"tau": self.tau}}


PatternOfJustice = Egalitarian | Maximin | Prioritarian | Sufficientarian


@dataclass(frozen=True)
class PositionUtilities:
    """Mean decision-subject utility and claim-holder count per group."""

    utilities: Mapping[str, float]
    counts: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "utilities", dict(self.utilities))
        object.__setattr__(self, "counts", dict(self.counts))

    def sorted_items(self) -> list[tuple[str, float]]:
        """Positions worst-off first; ties ordered by group label."""
        return sorted(self.utilities.items(), key=lambda kv: (kv[1], kv[0]))


def claim_index_arrays(dataset: Dataset, mask: np.ndarray) -> dict[str, np.ndarray]:
    """Ascending row indices of claim holders, per group."""
    return {
        g: np.flatnonzero(mask & (dataset.group_codes == k))
        for k, g in enumerate(dataset.group_vocabulary)
    }


def position_means_from_values(
    decisions: np.ndarray,
    ds_accept: np.ndarray,
    ds_reject: np.ndarray,
    claim_indices: Mapping[str, np.ndarray],
) -> dict[str, float]:
    per_individual = np.where(decisions, ds_accept, ds_reject)
    return {
        g: float(np.sum(per_individual[idx])) / len(idx) for g, idx in claim_indices.items()
    }


def position_utilities(
    dataset: Dataset,
    decisions: DecisionVector,
    ds_spec: DSUtilitySpec,
    differentiator: ClaimsDifferentiator,
    mode: EvaluationMode,
) -> PositionUtilities:
    """Mean utility over claim holders, for every group in the vocabulary.

    Raises EmptyPosition when any group contains no claim holder: dropping
    the group silently would change the set of compared positions.
    """
    check_alignment(dataset, decisions)
    vocab = dataset.group_vocabulary
    if len(vocab) < 2:
        raise TooFewGroups(len(vocab))
    mask = claims_mask(dataset, differentiator)
    indices = claim_index_arrays(dataset, mask)
    for g in vocab:
        if len(indices[g]) == 0:
            raise EmptyPosition(g)
    ds_accept, ds_reject = ds_value_arrays(dataset, ds_spec, mode)
    means = position_means_from_values(decisions.values, ds_accept, ds_reject, indices)
    return PositionUtilities(means, {g: int(len(indices[g])) for g in vocab})


def fairness_score(positions: PositionUtilities, pattern: PatternOfJustice) -> float:
    """Scalar score of the utility distribution; higher is fairer."""
    values = list(positions.utilities.values())
    if len(values) < 2:
        raise TooFewGroups(len(values))
    if isinstance(pattern, Egalitarian):
        return -(max(values) - min(values))
    if isinstance(pattern, Maximin):
        return min(values)
    if isinstance(pattern, Prioritarian):
        if len(pattern.weights) != len(values):
            raise WeightLengthMismatch(len(values), len(pattern.weights))
        ranked = [u for _, u in positions.sorted_items()]
        weighted = sum(w * u for w, u in zip(pattern.weights, ranked))
        return weighted / sum(pattern.weights)
    # Sufficientarian: sum shortfalls in ascending-utility order so the
    # score is exactly invariant under group relabeling.
    ranked = [u for _, u in positions.sorted_items()]
    return -sum(max(pattern.tau - u, 0.0) for u in ranked)
