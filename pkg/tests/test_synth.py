from fairfront.synth import dataset_csv, generate_dataset
from fairfront import parse_dataset


def test_generation_is_deterministic():
    a = generate_dataset(50, seed=21)
    b = generate_dataset(50, seed=21)
    assert [(i.id, i.score, i.group, i.outcome, i.amount) for i in a] == [
        (i.id, i.score, i.group, i.outcome, i.amount) for i in b
    ]


def test_both_groups_present_and_scores_valid():
    ds = generate_dataset(200, seed=1)
    assert ds.group_vocabulary == ("F", "M")
    assert all(0.0 <= ind.score <= 1.0 for ind in ds)
    assert all(ind.outcome in (0, 1) for ind in ds)


def test_csv_round_trip():
    ds = generate_dataset(30, seed=5)
    parsed = parse_dataset(dataset_csv(ds))
    assert len(parsed) == 30
    assert [i.id for i in parsed] == [i.id for i in ds]
    assert [i.score for i in parsed] == [i.score for i in ds]
