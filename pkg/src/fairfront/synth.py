"""Synthetic credit-style datasets for tests and demos.

Scores are drawn per group from beta distributions with different means
and outcomes are sampled from the scores, so the scores are calibrated by
construction. Scores stay strictly inputs to the engine; nothing here is
model training.
"""

from __future__ import annotations

import io

import numpy as np

from .model import Dataset, Individual

GROUP_PROFILES = {
    # (alpha, beta) of the score distribution per group
    "F": (4.0, 2.5),
    "M": (5.0, 1.8),
}


def generate_dataset(n: int, seed: int = 7, amounts: bool = True) -> Dataset:
    rng = np.random.default_rng(seed)
    labels = sorted(GROUP_PROFILES)
    individuals = []
    for i in range(n):
        group = labels[int(rng.integers(len(labels)))]
        a, b = GROUP_PROFILES[group]
        score = float(np.round(rng.beta(a, b), 6))
        outcome = int(rng.random() < score)
        amount = float(np.round(rng.lognormal(mean=7.0, sigma=0.5), 2)) if amounts else 1.0
        individuals.append(
            Individual(id=f"app-{i+1:05d}", score=score, group=group, outcome=outcome, amount=amount)
        )
    return Dataset(individuals)


def dataset_csv(dataset: Dataset) -> str:
    buf = io.StringIO()
    buf.write("id,score,group,outcome,amount\r\n")
    for ind in dataset:
        buf.write(f"{ind.id},{ind.score},{ind.group},{ind.outcome},{ind.amount}\r\n")
    return buf.getvalue()
