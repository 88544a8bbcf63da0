"""Grid sweep over group-specific thresholds and Pareto front extraction.

Every combination from the per-group threshold grids is evaluated on
(decision-maker utility, fairness score). Rules are kept in lexicographic
grid order: groups in vocabulary order, the last group's threshold varying
fastest. Evaluation reuses the exact vectorised kernels behind the
single-rule operations, so a sweep row is bit-identical to evaluating that
rule on its own.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    EmptyPosition,
    EmptySweep,
    InvalidRange,
    MissingGroupThreshold,
    SweepTooLarge,
    TooFewGroups,
    UnknownGroup,
)
from .justice import (
    ClaimsDifferentiator,
    PatternOfJustice,
    PositionUtilities,
    claim_index_arrays,
    claims_mask,
    fairness_score,
    position_means_from_values,
)
from .model import REJECT_ALL_THRESHOLD, Dataset, GroupSpecific
from .utility import (
    DMUtilitySpec,
    DSUtilitySpec,
    EvaluationMode,
    dm_total_from_values,
    dm_value_arrays,
    ds_value_arrays,
)

DEFAULT_GRID_SIZE = 101
DEFAULT_SWEEP_CAP = 10_000_000
_PROGRESS_CHUNK = 256


@dataclass(frozen=True)
class ThresholdGrid:
    """Ordered candidate thresholds per group."""

    per_group: Mapping[str, tuple[float, ...]]

    def __post_init__(self):
        frozen = {g: tuple(float(t) for t in ts) for g, ts in self.per_group.items()}
        object.__setattr__(self, "per_group", frozen)
        for g, ts in frozen.items():
            if not ts:
                raise InvalidRange(f"group {g!r} has an empty threshold list")
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise InvalidRange(f"group {g!r} thresholds must be strictly increasing")
            if ts[0] < 0.0 or ts[-1] > REJECT_ALL_THRESHOLD:
                raise InvalidRange(
                    f"group {g!r} thresholds must lie within [0, {REJECT_ALL_THRESHOLD}]"
                )

    def size(self) -> int:
        total = 1
        for ts in self.per_group.values():
            total *= len(ts)
        return total

    def canonical(self) -> dict:
        return {"per_group": {g: list(self.per_group[g]) for g in sorted(self.per_group)}}


def threshold_grid(dataset: Dataset, n: int = DEFAULT_GRID_SIZE, lo: float = 0.0, hi: float = 1.0) -> ThresholdGrid:
    """Identical evenly spaced grid for every group in the vocabulary."""
    if n < 2:
        raise InvalidRange(f"grid needs at least 2 thresholds, got {n}")
    if not (0.0 <= lo < hi <= REJECT_ALL_THRESHOLD):
        raise InvalidRange(f"need 0 <= lo < hi <= {REJECT_ALL_THRESHOLD}, got [{lo}, {hi}]")
    values = tuple(float(t) for t in np.linspace(lo, hi, n))
    return ThresholdGrid({g: values for g in dataset.group_vocabulary})


@dataclass(frozen=True)
class EvaluatedRule:
    rule: GroupSpecific
    dm_utility: float
    fairness_score: float
    position_utilities: PositionUtilities
    on_front: bool = False
    viable: bool = False


@dataclass(frozen=True)
class SweepResult:
    evaluated: tuple[EvaluatedRule, ...]
    config_digest: str
    groups: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.evaluated)

    def front(self) -> list[EvaluatedRule]:
        return [er for er in self.evaluated if er.on_front]


class RuleEvaluator:
    """Caches the rule-independent arrays of a sweep configuration.

    evaluate() reproduces apply_rule + dm_utility_total +
    position_utilities + fairness_score exactly.
    """

    def __init__(
        self,
        dataset: Dataset,
        dm_spec: DMUtilitySpec,
        ds_spec: DSUtilitySpec,
        differentiator: ClaimsDifferentiator,
        pattern: PatternOfJustice,
        mode: EvaluationMode,
    ):
        vocab = dataset.group_vocabulary
        if len(vocab) < 2:
            raise TooFewGroups(len(vocab))
        mask = claims_mask(dataset, differentiator)
        self.claim_indices = claim_index_arrays(dataset, mask)
        for g in vocab:
            if len(self.claim_indices[g]) == 0:
                raise EmptyPosition(g)
        self.counts = {g: int(len(self.claim_indices[g])) for g in vocab}
        self.vocab = vocab
        self.scores = dataset.scores
        self.group_codes = dataset.group_codes
        self.dm_accept, self.dm_reject = dm_value_arrays(dataset, dm_spec, mode)
        self.ds_accept, self.ds_reject = ds_value_arrays(dataset, ds_spec, mode)
        self.pattern = pattern

    def evaluate(self, thresholds: Sequence[float]) -> EvaluatedRule:
        """Evaluate one combination, thresholds aligned with the vocabulary."""
        per_group = np.array(thresholds, dtype=np.float64)
        decisions = self.scores >= per_group[self.group_codes]
        dm_total = dm_total_from_values(decisions, self.dm_accept, self.dm_reject)
        means = position_means_from_values(
            decisions, self.ds_accept, self.ds_reject, self.claim_indices
        )
        positions = PositionUtilities(means, self.counts)
        score = fairness_score(positions, self.pattern)
        rule = GroupSpecific(dict(zip(self.vocab, (float(t) for t in thresholds))))
        return EvaluatedRule(rule, dm_total, score, positions)


def _grid_lists(dataset: Dataset, grid: ThresholdGrid) -> list[tuple[float, ...]]:
    vocab = dataset.group_vocabulary
    for g in vocab:
        if g not in grid.per_group:
            raise MissingGroupThreshold(g)
    for g in grid.per_group:
        if g not in vocab:
            raise UnknownGroup(g)
    return [grid.per_group[g] for g in vocab]


def arguments_digest(
    dm_spec: DMUtilitySpec,
    ds_spec: DSUtilitySpec,
    differentiator: ClaimsDifferentiator,
    pattern: PatternOfJustice,
    mode: EvaluationMode,
    grid: ThresholdGrid,
) -> str:
    doc = {
        "dm_utility": dm_spec.canonical(),
        "ds_utility": ds_spec.canonical(),
        "claims": differentiator.canonical(),
        "pattern": pattern.canonical(),
        "mode": mode.value,
        "grid": grid.canonical(),
    }
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def sweep(
    dataset: Dataset,
    grid: ThresholdGrid,
    dm_spec: DMUtilitySpec,
    ds_spec: DSUtilitySpec,
    differentiator: ClaimsDifferentiator,
    pattern: PatternOfJustice,
    mode: EvaluationMode = EvaluationMode.EXPECTED,
    *,
    cap: int = DEFAULT_SWEEP_CAP,
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
    config_digest: str | None = None,
) -> SweepResult:
    """Evaluate every threshold combination of the grid.

    Output order and values are independent of the thread count; on_front
    and viable are left unset until pareto_front / filter_viable run.
    """
    lists = _grid_lists(dataset, grid)
    size = grid.size()
    if size > cap:
        raise SweepTooLarge(size, cap)
    evaluator = RuleEvaluator(dataset, dm_spec, ds_spec, differentiator, pattern, mode)
    combos = list(itertools.product(*lists))
    if config_digest is None:
        config_digest = arguments_digest(dm_spec, ds_spec, differentiator, pattern, mode, grid)

    if threads <= 1:
        evaluated: list[EvaluatedRule] = []
        done = 0
        for chunk_start in range(0, size, _PROGRESS_CHUNK):
            chunk = combos[chunk_start : chunk_start + _PROGRESS_CHUNK]
            evaluated.extend(evaluator.evaluate(c) for c in chunk)
            done += len(chunk)
            if progress is not None:
                progress(done, size)
    else:
        chunks = [combos[i : i + _PROGRESS_CHUNK] for i in range(0, size, _PROGRESS_CHUNK)]
        results: list[list[EvaluatedRule]] = []
        done = 0
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_evaluate_chunk, evaluator, c) for c in chunks]
            for future in futures:
                part = future.result()
                results.append(part)
                done += len(part)
                if progress is not None:
                    progress(done, size)
        evaluated = [er for chunk in results for er in chunk]

    return SweepResult(tuple(evaluated), config_digest, dataset.group_vocabulary)


def _evaluate_chunk(evaluator: RuleEvaluator, combos: list[tuple[float, ...]]) -> list[EvaluatedRule]:
    return [evaluator.evaluate(c) for c in combos]


def pareto_front(result: SweepResult) -> SweepResult:
    """Flag the non-dominated rules.

    a dominates b when a is at least as good in both coordinates and
    strictly better in one; duplicate points land on the front together.
    Sort-and-scan, O(m log m); the quadratic definition is kept in the
    test suite as the oracle.
    """
    m = len(result.evaluated)
    if m == 0:
        raise EmptySweep()
    dm = [er.dm_utility for er in result.evaluated]
    fs = [er.fairness_score for er in result.evaluated]
    order = sorted(range(m), key=lambda i: (-dm[i], -fs[i]))
    on_front = [False] * m
    best_prev = -np.inf  # max fairness among points with strictly higher dm
    i = 0
    while i < m:
        j = i
        while j < m and dm[order[j]] == dm[order[i]]:
            j += 1
        group_max_fair = fs[order[i]]  # sorted descending within the block
        for k in range(i, j):
            idx = order[k]
            on_front[idx] = fs[idx] == group_max_fair and fs[idx] > best_prev
        if group_max_fair > best_prev:
            best_prev = group_max_fair
        i = j
    evaluated = tuple(
        replace(er, on_front=flag) for er, flag in zip(result.evaluated, on_front)
    )
    return SweepResult(evaluated, result.config_digest, result.groups)


def filter_viable(result: SweepResult, floor: float = 0.0) -> SweepResult:
    """Flag rules whose decision-maker utility reaches the floor."""
    evaluated = tuple(
        replace(er, viable=er.dm_utility >= floor) for er in result.evaluated
    )
    return SweepResult(evaluated, result.config_digest, result.groups)


def extreme_points(result: SweepResult) -> tuple[EvaluatedRule, EvaluatedRule]:
    """(max decision-maker utility, max fairness) among on-front rules.

    Ties break on the other coordinate, then on rule order in the sweep.
    """
    front = result.front()
    if not front:
        raise EmptySweep()
    best_dm = front[0]
    best_fair = front[0]
    for er in front[1:]:
        if (er.dm_utility, er.fairness_score) > (best_dm.dm_utility, best_dm.fairness_score):
            best_dm = er
        if (er.fairness_score, er.dm_utility) > (best_fair.fairness_score, best_fair.dm_utility):
            best_fair = er
    return best_dm, best_fair
