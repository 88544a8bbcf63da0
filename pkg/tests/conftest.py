import json
from pathlib import Path

import pytest

from fairfront import (
    AllClaims,
    Dataset,
    DSUtilitySpec,
    EvaluationMode,
    Individual,
    Lending,
    Maximin,
    OutcomeEquals,
    UtilityTable,
    apply_rule,
    dm_utility_total,
    fairness_score,
    position_utilities,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
CASE_CONFIG_PATH = REPO_ROOT / "configs" / "lending_maximin.json"
DEMO_DATASET_PATH = REPO_ROOT / "data" / "demo_credit.csv"


@pytest.fixture
def ds_table():
    """The +10/-5/-1/0 decision-subject table used throughout the docs."""
    return UtilityTable(tp=10.0, fp=-5.0, fn=-1.0, tn=0.0)


@pytest.fixture
def ds_spec(ds_table):
    return DSUtilitySpec(base=ds_table)


@pytest.fixture
def lending_spec():
    return Lending(interest_rate=0.1)


@pytest.fixture
def four_individuals():
    return Dataset(
        [
            Individual("1", 0.9, "F", 1),
            Individual("2", 0.5, "F", 1),
            Individual("3", 0.95, "M", 1),
            Individual("4", 0.6, "M", 0),
        ]
    )


@pytest.fixture
def case_config_text():
    return CASE_CONFIG_PATH.read_text()


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def base_config_doc(**overrides):
    doc = {
        "dm_utility": {"lending": {"interest_rate": 0.1}},
        "ds_utility": {"base": {"tp": 10, "fp": -5, "fn": -1, "tn": 0}},
        "claims": {"outcome_equals": {"y": 1}},
        "pattern": {"maximin": {}},
    }
    doc.update(overrides)
    return doc


def brute_force_front_flags(points):
    """Quadratic dominance oracle over (dm_utility, fairness_score) pairs."""
    flags = []
    for i, (d_i, f_i) in enumerate(points):
        dominated = False
        for j, (d_j, f_j) in enumerate(points):
            if j == i:
                continue
            if d_j >= d_i and f_j >= f_i and (d_j > d_i or f_j > f_i):
                dominated = True
                break
        flags.append(not dominated)
    return flags


def evaluate_rule_directly(dataset, rule, dm_spec, ds_spec, differentiator, pattern, mode):
    """Single-rule reference path used as the oracle for sweep rows."""
    decisions = apply_rule(dataset, rule)
    dm = dm_utility_total(dataset, decisions, dm_spec, mode)
    positions = position_utilities(dataset, decisions, ds_spec, differentiator, mode)
    score = fairness_score(positions, pattern)
    return dm, score, positions
