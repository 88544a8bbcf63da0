"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to get one pass/fail line
per criterion.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import REPO_ROOT
from fairfront import (
    Dataset,
    DMTable,
    DSUtilitySpec,
    EvaluationMode,
    GroupSpecific,
    Individual,
    Lending,
    Maximin,
    OutcomeEquals,
    PositionUtilities,
    Prioritarian,
    Sufficientarian,
    UtilityTable,
    apply_rule,
    dm_utility_total,
    ds_utility_individual,
    extreme_points,
    fairness_score,
    optimal_uniform_threshold,
    pareto_front,
    position_utilities,
    sweep,
    threshold_grid,
)
from fairfront.sweep import EvaluatedRule, SweepResult
from fairfront.synth import dataset_csv, generate_dataset

EXPECTED = EvaluationMode.EXPECTED
EMPIRICAL = EvaluationMode.EMPIRICAL

FIXTURE_CSV = "id,score,group,outcome\n1,0.9,F,1\n2,0.5,F,1\n3,0.95,M,1\n4,0.6,M,0\n"

FIXTURE_CONFIG = {
    "dm_utility": {"lending": {"interest_rate": 0.1}},
    "ds_utility": {"base": {"tp": 10, "fp": -5, "fn": -1, "tn": 0}},
    "claims": {"outcome_equals": {"y": 1}},
    "pattern": {"maximin": {}},
    "mode": "empirical",
    "grid": {"per_group": {"F": [0.0, 0.8, 1.01], "M": [0.0, 0.8, 1.01]}},
}


def report(name: str) -> None:
    print(f"[PASS] {name}")


def test_criterion_1_break_even_threshold():
    lending = optimal_uniform_threshold(Lending(0.1))
    assert abs(lending - 1 / 1.1) < 1e-12
    table = optimal_uniform_threshold(DMTable(UtilityTable(tp=0.1, fp=-1.0, fn=0.0, tn=0.0)))
    assert table == lending
    report("break-even threshold: lending 1/1.1 within 1e-12, table form matches exactly")


def test_criterion_2_sweep_cardinality_and_runtime(lending_spec, ds_spec):
    dataset = generate_dataset(1000, seed=17)
    grid = threshold_grid(dataset)  # the default 101-point grid per group
    start = time.perf_counter()
    result = sweep(
        dataset, grid, lending_spec, ds_spec, OutcomeEquals(1), Maximin(), EXPECTED, threads=1
    )
    elapsed = time.perf_counter() - start
    assert len(result.evaluated) == 10201
    assert elapsed < 10.0, f"sweep took {elapsed:.2f}s"
    report(f"sweep cardinality: 10201 rules on 1000 rows in {elapsed:.2f}s (< 10s, 1 thread)")


def _scaffold_result(dm: np.ndarray, fs: np.ndarray) -> SweepResult:
    evaluated = tuple(
        EvaluatedRule(
            GroupSpecific({"A": 0.0, "B": 0.0}),
            float(d),
            float(f),
            PositionUtilities({"A": float(f), "B": float(f)}, {"A": 1, "B": 1}),
        )
        for d, f in zip(dm, fs)
    )
    return SweepResult(evaluated, "digest", ("A", "B"))


def _quadratic_flags(dm: np.ndarray, fs: np.ndarray) -> list[bool]:
    flags = []
    for i in range(len(dm)):
        dominated = bool(
            np.any((dm >= dm[i]) & (fs >= fs[i]) & ((dm > dm[i]) | (fs > fs[i])))
        )
        flags.append(not dominated)
    return flags


def test_criterion_3_pareto_matches_quadratic_oracle():
    rng = np.random.default_rng(42)
    for cloud in range(100):
        m = int(rng.integers(1, 2001))
        if rng.random() < 0.5:
            # coarse grid of values to force ties and duplicates
            dm = rng.integers(-5, 6, size=m).astype(float)
            fs = rng.integers(-5, 6, size=m).astype(float)
        else:
            dm = rng.normal(size=m)
            fs = rng.normal(size=m)
            dup = rng.integers(0, m, size=m // 4 + 1)
            dm[dup[: len(dup) // 2]] = dm[dup[len(dup) // 2 :][: len(dup) // 2]]
        result = pareto_front(_scaffold_result(dm, fs))
        fast = [er.on_front for er in result.evaluated]
        assert fast == _quadratic_flags(dm, fs), f"cloud {cloud} (size {m}) disagrees"
    report("pareto correctness: sort-and-scan equals the quadratic oracle on 100 clouds <= 2000")


def test_criterion_4_pattern_degenerations():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        k = int(rng.integers(2, 7))
        values = rng.uniform(-50, 50, size=k)
        positions = PositionUtilities(
            {f"g{i}": float(v) for i, v in enumerate(values)}, {f"g{i}": 1 for i in range(k)}
        )
        extreme = (1.0,) + (0.0,) * (k - 1)
        assert fairness_score(positions, Prioritarian(extreme)) == fairness_score(
            positions, Maximin()
        )
        equal = (1.0,) * k
        mean = float(np.mean(values))
        assert abs(fairness_score(positions, Prioritarian(equal)) - mean) <= 1e-12
        tau = float(rng.uniform(-60, 60))
        score = fairness_score(positions, Sufficientarian(tau))
        assert (score == 0.0) == (min(values) >= tau)
    report(
        "pattern degenerations: prioritarian(1,0,..)==maximin exact, equal weights==mean "
        "within 1e-12, sufficientarian zero iff min>=tau (1000 vectors)"
    )


def test_criterion_5_maximin_front_property(lending_spec, ds_spec):
    for seed, n in [(3, 9), (11, 13), (29, 7)]:
        dataset = generate_dataset(70, seed=seed)
        grid = threshold_grid(dataset, n=n)
        result = pareto_front(
            sweep(dataset, grid, lending_spec, ds_spec, OutcomeEquals(1), Maximin(), EXPECTED)
        )
        _, best_fair = extreme_points(result)
        best_min = min(best_fair.position_utilities.utilities.values())
        sweep_wide = max(
            min(er.position_utilities.utilities.values()) for er in result.evaluated
        )
        assert best_min == sweep_wide
    report("maximin front property: max-fairness extreme attains the sweep-wide max-min exactly")


def test_criterion_6_mode_consistency(ds_table):
    rng = np.random.default_rng(23)
    outcomes = rng.integers(0, 2, size=60)
    groups = rng.choice(["F", "M"], size=60)
    amounts = rng.uniform(0.5, 9.5, size=60).round(2)
    dataset = Dataset(
        [
            Individual(str(i), float(y), g, int(y), amount=float(a))
            for i, (y, g, a) in enumerate(zip(outcomes, groups, amounts))
        ]
    )
    dm_spec = DMTable(ds_table, amount_scaled=True)
    ds_spec = DSUtilitySpec(base=ds_table, amount_scaled=True)
    for threshold in np.linspace(0, 1.01, 7):
        decisions = apply_rule(dataset, GroupSpecific({"F": float(threshold), "M": 0.5}))
        assert dm_utility_total(dataset, decisions, dm_spec, EXPECTED) == dm_utility_total(
            dataset, decisions, dm_spec, EMPIRICAL
        )
        pos_expected = position_utilities(dataset, decisions, ds_spec, OutcomeEquals(1), EXPECTED)
        pos_empirical = position_utilities(dataset, decisions, ds_spec, OutcomeEquals(1), EMPIRICAL)
        assert pos_expected.utilities == pos_empirical.utilities
        for pattern in (Maximin(), Sufficientarian(2.0)):
            assert fairness_score(pos_expected, pattern) == fairness_score(pos_empirical, pattern)
        for ind, d in zip(dataset, decisions.values):
            assert ds_utility_individual(ind, int(d), ds_spec, EXPECTED) == ds_utility_individual(
                ind, int(d), ds_spec, EMPIRICAL
            )
    report("mode consistency: expected == empirical exactly when scores are certain and match y")


def _run_cli(args, cwd):
    proc = subprocess.run(
        [sys.executable, "-m", "fairfront.cli", *args],
        cwd=cwd,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_criterion_7_fixture_oracle_reproduces_sweep_bytes(tmp_path, fmt):
    dataset_path = tmp_path / "fixture.csv"
    dataset_path.write_text(FIXTURE_CSV)
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(FIXTURE_CONFIG))
    out_path = tmp_path / f"sweep.{fmt}"
    _run_cli(
        [
            "sweep",
            "--dataset",
            str(dataset_path),
            "--config",
            str(config_path),
            "--out",
            str(out_path),
            "--format",
            fmt,
        ],
        cwd=REPO_ROOT,
    )
    proc = subprocess.run(
        [
            sys.executable,
            str(REPO_ROOT / "scripts" / "oracle_recheck.py"),
            "--dataset",
            str(dataset_path),
            "--config",
            str(config_path),
            "--sweep-output",
            str(out_path),
            "--format",
            fmt,
        ],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "byte-for-byte" in proc.stdout
    report(f"fixture oracle: single-rule recomputation reproduces cmd_sweep {fmt} byte-for-byte")


def test_criterion_8_front_trade_off_is_monotone(lending_spec, ds_spec):
    for seed, rows, n in [(17, 120, 21), (5, 40, 11)]:
        dataset = generate_dataset(rows, seed=seed)
        grid = threshold_grid(dataset, n=n)
        result = pareto_front(
            sweep(dataset, grid, lending_spec, ds_spec, OutcomeEquals(1), Maximin(), EXPECTED)
        )
        front = sorted(
            ((er.dm_utility, er.fairness_score) for er in result.evaluated if er.on_front),
            key=lambda p: (-p[0], p[1]),
        )
        for (dm_a, fs_a), (dm_b, fs_b) in zip(front, front[1:]):
            assert dm_b <= dm_a
            assert fs_b >= fs_a
    report("front ordering: from max-dm to max-fairness, dm non-increasing, fairness non-decreasing")


def test_criterion_9_cmd_sweep_determinism(tmp_path):
    dataset_path = tmp_path / "demo.csv"
    dataset_path.write_text(dataset_csv(generate_dataset(150, seed=31)))
    config = dict(FIXTURE_CONFIG)
    config["mode"] = "expected"
    config["grid"] = {"n": 21}
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    outputs = {}
    for name, threads in [("run1", "1"), ("run2", "1"), ("run3", "4")]:
        out_csv = tmp_path / f"{name}.csv"
        out_json = tmp_path / f"{name}.json"
        _run_cli(
            [
                "sweep",
                "--dataset",
                str(dataset_path),
                "--config",
                str(config_path),
                "--out",
                str(out_csv),
                "--format",
                "csv",
                "--threads",
                threads,
            ],
            cwd=REPO_ROOT,
        )
        _run_cli(
            [
                "sweep",
                "--dataset",
                str(dataset_path),
                "--config",
                str(config_path),
                "--out",
                str(out_json),
                "--format",
                "json",
                "--threads",
                threads,
            ],
            cwd=REPO_ROOT,
        )
        outputs[name] = (out_csv.read_bytes(), out_json.read_bytes())
    assert outputs["run1"] == outputs["run2"] == outputs["run3"]
    report("determinism: cmd_sweep output byte-identical across runs and --threads settings")
