"""Decision-maker and decision-subject utility assessment.

Utility tables assign a value to each (decision, outcome) cell, named by
the usual confusion-matrix shorthand: tp = accepted & outcome 1,
fp = accepted & outcome 0, fn = rejected & outcome 1, tn = rejected &
outcome 0. Expected mode weights the two outcome cells by the score;
empirical mode looks up the observed outcome.

A lending spec (interest rate z, always amount-scaled) is evaluated
through its equivalent table (tp=z, fp=-1, fn=0, tn=0) so that the two
forms agree bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np

from .errors import DegenerateSpec
from .model import Dataset, DecisionVector, Individual, check_alignment


class EvaluationMode(Enum):
    EXPECTED = "expected"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class UtilityTable:
    """Utility per (decision, outcome) cell; all four entries finite."""

    tp: float
    fp: float
    fn: float
    tn: float

    def __post_init__(self):
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"utility table entry {name} must be finite, got {v}")

    def value(self, decision: int, outcome: int) -> float:
        if decision == 1:
            return self.tp if outcome == 1 else self.fp
        return self.fn if outcome == 1 else self.tn

    def scaled(self, c: float) -> "UtilityTable":
        return UtilityTable(self.tp * c, self.fp * c, self.fn * c, self.tn * c)

    def canonical(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


@dataclass(frozen=True)
class Lending:
    """Profit z per unit lent on repayment, full loss of principal on default.

    Rejected applications are cost-neutral. Always amount-scaled.
    """

    interest_rate: float

    def __post_init__(self):
        if not math.isfinite(self.interest_rate) or self.interest_rate <= 0:
            raise ValueError(f"interest_rate must be finite and > 0, got {self.interest_rate}")

    def as_table(self) -> UtilityTable:
        return UtilityTable(tp=self.interest_rate, fp=-1.0, fn=0.0, tn=0.0)

    def canonical(self) -> dict:
        return {"lending": {"interest_rate": self.interest_rate}}


@dataclass(frozen=True)
class DMTable:
    """Decision-maker utility as an explicit four-cell table."""

    table: UtilityTable
    amount_scaled: bool = False

    def canonical(self) -> dict:
        return {"table": {**self.table.canonical(), "amount_scaled": self.amount_scaled}}


DMUtilitySpec = Lending | DMTable


@dataclass(frozen=True)
class DSUtilitySpec:
    """Decision-subject utility: one base table, optional per-group tables."""

    base: UtilityTable
    per_group_overrides: Mapping[str, UtilityTable] | None = None
    amount_scaled: bool = False

    def __post_init__(self):
        if self.per_group_overrides is not None:
            object.__setattr__(self, "per_group_overrides", dict(self.per_group_overrides))

    def table_for(self, group: str) -> UtilityTable:
        if self.per_group_overrides and group in self.per_group_overrides:
            return self.per_group_overrides[group]
        return self.base

    def canonical(self) -> dict:
        doc: dict = {"base": self.base.canonical(), "amount_scaled": self.amount_scaled}
        if self.per_group_overrides:
            doc["per_group_overrides"] = {
                g: self.per_group_overrides[g].canonical() for g in sorted(self.per_group_overrides)
            }
        return doc


def _dm_effective(spec: DMUtilitySpec) -> tuple[UtilityTable, bool]:
    if isinstance(spec, Lending):
        return spec.as_table(), True
    return spec.table, spec.amount_scaled


def _table_value(
    table: UtilityTable,
    score: float,
    outcome: int,
    amount: float,
    decision: int,
    mode: EvaluationMode,
    amount_scaled: bool,
) -> float:
    if mode is EvaluationMode.EXPECTED:
        base = score * table.value(decision, 1) + (1.0 - score) * table.value(decision, 0)
    else:
        base = table.value(decision, outcome)
    return base * amount if amount_scaled else base


def _table_value_array(
    table: UtilityTable,
    scores: np.ndarray,
    outcomes: np.ndarray,
    amounts: np.ndarray,
    decision: int,
    mode: EvaluationMode,
    amount_scaled: bool,
) -> np.ndarray:
    # Mirrors _table_value element-wise, in the same operation order, so the
    # vectorised and scalar paths return bit-identical values.
    if mode is EvaluationMode.EXPECTED:
        base = scores * table.value(decision, 1) + (1.0 - scores) * table.value(decision, 0)
    else:
        base = np.where(outcomes == 1.0, table.value(decision, 1), table.value(decision, 0))
    return base * amounts if amount_scaled else base


def dm_utility_individual(
    individual: Individual, decision: int, spec: DMUtilitySpec, mode: EvaluationMode
) -> float:
    table, amount_scaled = _dm_effective(spec)
    return _table_value(
        table, individual.score, individual.outcome, individual.amount, decision, mode, amount_scaled
    )


def dm_value_arrays(
    dataset: Dataset, spec: DMUtilitySpec, mode: EvaluationMode
) -> tuple[np.ndarray, np.ndarray]:
    """Per-individual utility of accepting / rejecting everyone."""
    table, amount_scaled = _dm_effective(spec)
    accept = _table_value_array(
        table, dataset.scores, dataset.outcomes, dataset.amounts, 1, mode, amount_scaled
    )
    reject = _table_value_array(
        table, dataset.scores, dataset.outcomes, dataset.amounts, 0, mode, amount_scaled
    )
    return accept, reject


def dm_total_from_values(
    decisions: np.ndarray, accept: np.ndarray, reject: np.ndarray
) -> float:
    return float(np.sum(np.where(decisions, accept, reject)))


def dm_utility_total(
    dataset: Dataset, decisions: DecisionVector, spec: DMUtilitySpec, mode: EvaluationMode
) -> float:
    check_alignment(dataset, decisions)
    accept, reject = dm_value_arrays(dataset, spec, mode)
    return dm_total_from_values(decisions.values, accept, reject)


def ds_utility_individual(
    individual: Individual, decision: int, spec: DSUtilitySpec, mode: EvaluationMode
) -> float:
    table = spec.table_for(individual.group)
    return _table_value(
        table, individual.score, individual.outcome, individual.amount, decision, mode, spec.amount_scaled
    )


def ds_value_arrays(
    dataset: Dataset, spec: DSUtilitySpec, mode: EvaluationMode
) -> tuple[np.ndarray, np.ndarray]:
    """Per-individual decision-subject utility of accept / reject."""
    args = (dataset.scores, dataset.outcomes, dataset.amounts)
    accept = _table_value_array(spec.base, *args, 1, mode, spec.amount_scaled)
    reject = _table_value_array(spec.base, *args, 0, mode, spec.amount_scaled)
    if spec.per_group_overrides:
        accept = accept.copy()
        reject = reject.copy()
        for group, table in spec.per_group_overrides.items():
            idx = dataset.group_index_arrays.get(group)
            if idx is None or len(idx) == 0:
                continue
            sub = (dataset.scores[idx], dataset.outcomes[idx], dataset.amounts[idx])
            accept[idx] = _table_value_array(table, *sub, 1, mode, spec.amount_scaled)
            reject[idx] = _table_value_array(table, *sub, 0, mode, spec.amount_scaled)
    return accept, reject


def optimal_uniform_threshold(spec: DMUtilitySpec) -> float:
    """Score at which accepting and rejecting have equal expected utility.

    Raises DegenerateSpec when the accept-reject difference does not change
    sign between p=0 and p=1, i.e. when one blanket decision is optimal.
    """
    table, _ = _dm_effective(spec)
    gain_at_one = table.tp - table.fn
    gain_at_zero = table.fp - table.tn
    if gain_at_one > 0 > gain_at_zero:
        return (table.tn - table.fp) / ((table.tp - table.fn) + (table.tn - table.fp))
    if gain_at_one >= 0 and gain_at_zero >= 0:
        raise DegenerateSpec("always accept", "accepting is weakly better at every score")
    if gain_at_one <= 0 and gain_at_zero <= 0:
        raise DegenerateSpec("always reject", "rejecting is weakly better at every score")
    raise DegenerateSpec("inverted", "accepting is favored at low scores, not high ones")
