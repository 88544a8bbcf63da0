"""Deterministic serialization of evaluation results.

All floats are rendered with 12 significant digits (round-half-even via
the platform's IEEE formatting), which pins CLI output to identical bytes
across runs, thread counts and platforms.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .errors import EmptySweep
from .sweep import EvaluatedRule, SweepResult, extreme_points


def fmt_float(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".12g")


def round12(x: float) -> float:
    """Nearest double of the 12-significant-digit decimal rendering."""
    return float(fmt_float(x))


def rule_thresholds(er: EvaluatedRule, groups: tuple[str, ...]) -> list[float]:
    return [er.rule.thresholds[g] for g in groups]


def point_doc(er: EvaluatedRule, groups: tuple[str, ...], index: int) -> dict[str, Any]:
    return {
        "index": index,
        "thresholds": {g: round12(er.rule.thresholds[g]) for g in groups},
        "dm_utility": round12(er.dm_utility),
        "fairness_score": round12(er.fairness_score),
        "position_utilities": {g: round12(er.position_utilities.utilities[g]) for g in groups},
        "claim_counts": {g: er.position_utilities.counts[g] for g in groups},
        "on_front": er.on_front,
        "viable": er.viable,
    }


def sweep_doc(result: SweepResult, front_only: bool = False) -> dict[str, Any]:
    """JSON document shared by the CLI writers and the HTTP pareto payload."""
    groups = result.groups
    points = [
        point_doc(er, groups, i)
        for i, er in enumerate(result.evaluated)
        if not front_only or er.on_front
    ]
    front_size = sum(1 for er in result.evaluated if er.on_front)
    doc: dict[str, Any] = {
        "config_digest": result.config_digest,
        "groups": list(groups),
        "sweep_size": len(result.evaluated),
        "front_size": front_size,
        "points": points,
    }
    try:
        best_dm, best_fair = extreme_points(result)
        doc["extremes"] = {
            "max_dm_utility": point_doc(best_dm, groups, _index_of(result, best_dm)),
            "max_fairness": point_doc(best_fair, groups, _index_of(result, best_fair)),
        }
    except EmptySweep:
        doc["extremes"] = None
    return doc


def _index_of(result: SweepResult, er: EvaluatedRule) -> int:
    for i, candidate in enumerate(result.evaluated):
        if candidate is er:
            return i
    raise ValueError("rule not part of this sweep result")


def sweep_json_bytes(result: SweepResult, front_only: bool = False) -> bytes:
    return (json.dumps(sweep_doc(result, front_only), indent=2) + "\n").encode("utf-8")


def sweep_csv_bytes(result: SweepResult, front_only: bool = False) -> bytes:
    groups = result.groups
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [f"threshold_{g}" for g in groups]
        + ["dm_utility", "fairness_score"]
        + [f"utility_{g}" for g in groups]
        + ["on_front", "viable"]
    )
    for er in result.evaluated:
        if front_only and not er.on_front:
            continue
        writer.writerow(
            [fmt_float(t) for t in rule_thresholds(er, groups)]
            + [fmt_float(er.dm_utility), fmt_float(er.fairness_score)]
            + [fmt_float(er.position_utilities.utilities[g]) for g in groups]
            + [str(er.on_front).lower(), str(er.viable).lower()]
        )
    return buf.getvalue().encode("utf-8")


def evaluation_doc(
    er: EvaluatedRule,
    groups: tuple[str, ...],
    acceptance_rates: dict[str, float] | None = None,
) -> dict[str, Any]:
    doc = {
        "thresholds": {g: round12(er.rule.thresholds[g]) for g in groups},
        "dm_utility": round12(er.dm_utility),
        "fairness_score": round12(er.fairness_score),
        "position_utilities": {g: round12(er.position_utilities.utilities[g]) for g in groups},
        "claim_counts": {g: er.position_utilities.counts[g] for g in groups},
    }
    if acceptance_rates is not None:
        doc["acceptance_rates"] = {g: round12(acceptance_rates[g]) for g in groups}
    return doc
