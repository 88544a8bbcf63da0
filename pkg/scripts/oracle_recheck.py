#!/usr/bin/env python3
"""Recompute a sweep output file from single-rule operations and compare bytes.

Every threshold combination is re-evaluated through the public one-rule
API (apply_rule, dm_utility_total, position_utilities, fairness_score),
front flags are re-derived with the quadratic dominance definition, and
the result is serialized with the same writers the CLI uses. Any byte
difference from the file under test is a failure.

Usage:
    python scripts/oracle_recheck.py --dataset D.csv --config C.json \
        --sweep-output OUT.json [--format json|csv]
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from fairfront import (
    apply_rule,
    dm_utility_total,
    fairness_score,
    parse_config,
    parse_dataset,
    position_utilities,
)
from fairfront.model import GroupSpecific
from fairfront.output import sweep_csv_bytes, sweep_json_bytes
from fairfront.sweep import EvaluatedRule, SweepResult


def quadratic_front_flags(points):
    flags = []
    for i, (d_i, f_i) in enumerate(points):
        dominated = False
        for j, (d_j, f_j) in enumerate(points):
            if j != i and d_j >= d_i and f_j >= f_i and (d_j > d_i or f_j > f_i):
                dominated = True
                break
        flags.append(not dominated)
    return flags


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dataset", required=True)
    parser.add_argument("--config", required=True)
    parser.add_argument("--sweep-output", required=True)
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    args = parser.parse_args()

    config = parse_config(Path(args.config).read_bytes())
    dataset = parse_dataset(Path(args.dataset).read_bytes(), config.dataset_schema())
    grid = config.grid.build(dataset)

    vocab = dataset.group_vocabulary
    combos = itertools.product(*[grid.per_group[g] for g in vocab])
    evaluated = []
    for combo in combos:
        rule = GroupSpecific(dict(zip(vocab, combo)))
        decisions = apply_rule(dataset, rule)
        dm = dm_utility_total(dataset, decisions, config.dm_spec, config.mode)
        positions = position_utilities(
            dataset, decisions, config.ds_spec, config.differentiator, config.mode
        )
        score = fairness_score(positions, config.pattern)
        evaluated.append(EvaluatedRule(rule, dm, score, positions))

    flags = quadratic_front_flags([(er.dm_utility, er.fairness_score) for er in evaluated])
    evaluated = [
        EvaluatedRule(
            er.rule,
            er.dm_utility,
            er.fairness_score,
            er.position_utilities,
            on_front=flag,
            viable=er.dm_utility >= config.viability_floor,
        )
        for er, flag in zip(evaluated, flags)
    ]
    result = SweepResult(tuple(evaluated), config.digest, vocab)
    expected = sweep_json_bytes(result) if args.format == "json" else sweep_csv_bytes(result)

    actual = Path(args.sweep_output).read_bytes()
    if actual == expected:
        print(f"ok: {len(evaluated)} rules reproduced byte-for-byte")
        return 0
    print("MISMATCH between sweep output and single-rule recomputation", file=sys.stderr)
    for lineno, (a, b) in enumerate(
        zip(actual.decode(errors="replace").splitlines(), expected.decode(errors="replace").splitlines()),
        start=1,
    ):
        if a != b:
            print(f"first differing line {lineno}:\n  file:   {a}\n  oracle: {b}", file=sys.stderr)
            break
    else:
        print("outputs differ in length", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
