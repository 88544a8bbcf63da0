"""Domain types: individuals, datasets, decision rules and rule application.

A decision rule accepts an individual when their score is at or above the
threshold that applies to them (``score >= t``). The threshold range runs to
1.01 so that "reject everyone" stays expressible while t=1.0 still accepts
perfectly scored individuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateId,
    LengthMismatch,
    MissingGroupThreshold,
    SemanticError,
    UnknownGroup,
)

REJECT_ALL_THRESHOLD = 1.01

AttributeValue = float | str


@dataclass(frozen=True)
class Individual:
    """One decision subject.

    score is the model's estimate of the probability that the binary
    outcome comes up 1; amount is the stake (loan size) and defaults to a
    unit stake so datasets without an amount column need no extra column.
    """

    id: str
    score: float
    group: str
    outcome: int
    amount: float = 1.0
    attributes: Mapping[str, AttributeValue] | None = None

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1], got {self.score}")
        if self.outcome not in (0, 1):
            raise ValueError(f"outcome must be 0 or 1, got {self.outcome}")
        if self.amount < 0:
            raise ValueError(f"amount must be non-negative, got {self.amount}")


class Dataset:
    """Immutable, ordered collection of individuals.

    The group vocabulary is always the sorted set of labels actually
    present; ids must be unique. Column views used by the vectorised
    evaluation paths are built lazily and cached.
    """

    def __init__(self, individuals: Sequence[Individual]):
        individuals = tuple(individuals)
        if not individuals:
            raise SemanticError("dataset must contain at least one individual")
        seen: set[str] = set()
        for row, ind in enumerate(individuals, start=1):
            if ind.id in seen:
                raise DuplicateId(row, ind.id)
            seen.add(ind.id)
        self._individuals = individuals
        self._vocabulary = tuple(sorted({ind.group for ind in individuals}))

    @property
    def individuals(self) -> tuple[Individual, ...]:
        return self._individuals

    @property
    def group_vocabulary(self) -> tuple[str, ...]:
        return self._vocabulary

    def __len__(self) -> int:
        return len(self._individuals)

    def __iter__(self):
        return iter(self._individuals)

    @cached_property
    def scores(self) -> np.ndarray:
        a = np.array([ind.score for ind in self._individuals], dtype=np.float64)
        a.setflags(write=False)
        return a

    @cached_property
    def outcomes(self) -> np.ndarray:
        a = np.array([ind.outcome for ind in self._individuals], dtype=np.float64)
        a.setflags(write=False)
        return a

    @cached_property
    def amounts(self) -> np.ndarray:
        a = np.array([ind.amount for ind in self._individuals], dtype=np.float64)
        a.setflags(write=False)
        return a

    @cached_property
    def group_codes(self) -> np.ndarray:
        """Index of each individual's group within the vocabulary."""
        index = {g: k for k, g in enumerate(self._vocabulary)}
        a = np.array([index[ind.group] for ind in self._individuals], dtype=np.intp)
        a.setflags(write=False)
        return a

    @cached_property
    def group_index_arrays(self) -> dict[str, np.ndarray]:
        """Ascending row indices per group, in dataset order."""
        out = {}
        for k, g in enumerate(self._vocabulary):
            idx = np.flatnonzero(self.group_codes == k)
            idx.setflags(write=False)
            out[g] = idx
        return out

    @cached_property
    def digest(self) -> str:
        """Stable content hash used in decision records."""
        import hashlib

        h = hashlib.sha256()
        for ind in self._individuals:
            attrs = ""
            if ind.attributes:
                attrs = ",".join(f"{k}={ind.attributes[k]!r}" for k in sorted(ind.attributes))
            h.update(
                f"{ind.id}|{ind.score!r}|{ind.group}|{ind.outcome}|{ind.amount!r}|{attrs}\n".encode()
            )
        return h.hexdigest()


@dataclass(frozen=True)
class Uniform:
    """Single threshold applied to everyone."""

    threshold: float

    def __post_init__(self):
        _check_threshold(self.threshold)

    def threshold_for(self, group: str) -> float:
        return self.threshold

    def canonical(self) -> dict:
        return {"uniform": self.threshold}


@dataclass(frozen=True)
class GroupSpecific:
    """One threshold per group label."""

    thresholds: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "thresholds", dict(self.thresholds))
        for t in self.thresholds.values():
            _check_threshold(t)

    def threshold_for(self, group: str) -> float:
        try:
            return self.thresholds[group]
        except KeyError:
            raise MissingGroupThreshold(group) from None

    def canonical(self) -> dict:
        return {"group_specific": {g: self.thresholds[g] for g in sorted(self.thresholds)}}


DecisionRule = Uniform | GroupSpecific


def _check_threshold(t: float) -> None:
    if not 0.0 <= t <= REJECT_ALL_THRESHOLD:
        raise ValueError(f"threshold must be in [0, {REJECT_ALL_THRESHOLD}], got {t}")


@dataclass(frozen=True)
class DecisionVector:
    """Binary decisions aligned with a dataset's individuals."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=bool)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    def as_list(self) -> list[int]:
        return [int(v) for v in self.values]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecisionVector):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))


def rule_threshold_array(dataset: Dataset, rule: DecisionRule) -> np.ndarray:
    """Per-individual threshold implied by the rule.

    Raises MissingGroupThreshold / UnknownGroup when a group-specific rule
    does not cover the vocabulary exactly.
    """
    if isinstance(rule, Uniform):
        return np.full(len(dataset), rule.threshold, dtype=np.float64)
    vocab = dataset.group_vocabulary
    for g in vocab:
        if g not in rule.thresholds:
            raise MissingGroupThreshold(g)
    for g in rule.thresholds:
        if g not in vocab:
            raise UnknownGroup(g)
    per_group = np.array([rule.thresholds[g] for g in vocab], dtype=np.float64)
    return per_group[dataset.group_codes]


def apply_rule(dataset: Dataset, rule: DecisionRule) -> DecisionVector:
    """Accept every individual whose score reaches their group's threshold."""
    thresholds = rule_threshold_array(dataset, rule)
    return DecisionVector(dataset.scores >= thresholds)


def groups(dataset: Dataset) -> list[str]:
    """Sorted distinct group labels present in the dataset."""
    return list(dataset.group_vocabulary)


def check_alignment(dataset: Dataset, decisions: DecisionVector) -> None:
    if len(decisions) != len(dataset):
        raise LengthMismatch(len(dataset), len(decisions))
