"""Batch command-line interface.

Thin in-process client of the core package: parses the dataset and the
value config, runs the requested computation and writes deterministic
CSV/JSON. Exit codes: 0 success, 1 input/parse error, 2 semantic error,
3 sweep cap exceeded.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import EmptyPosition, FairfrontError, ParseError
from .ingest import ValueConfig, parse_config, parse_dataset
from .justice import claims_mask, fairness_score, position_utilities
from .model import Dataset, DecisionRule, GroupSpecific, Uniform, apply_rule
from .output import (
    evaluation_doc,
    fmt_float,
    sweep_csv_bytes,
    sweep_doc,
    sweep_json_bytes,
)
from .sweep import DEFAULT_SWEEP_CAP, extreme_points, filter_viable, pareto_front, sweep
from .utility import dm_utility_total, optimal_uniform_threshold


def _fail(exc: FairfrontError) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(exc.exit_code)


def _load_dataset(dataset_path: str, config: ValueConfig) -> Dataset:
    return parse_dataset(Path(dataset_path).read_bytes(), config.dataset_schema())


def _load_config(config_path: str) -> ValueConfig:
    return parse_config(Path(config_path).read_bytes())


def _parse_rule(raw: str) -> DecisionRule:
    if raw.startswith("u:"):
        return Uniform(_parse_rule_float(raw[2:], raw))
    if raw.startswith("g:"):
        thresholds = {}
        for part in raw[2:].split(","):
            if "=" not in part:
                raise ParseError(f"bad --rule entry {part!r}; expected <group>=<threshold>")
            group, value = part.split("=", 1)
            thresholds[group] = _parse_rule_float(value, raw)
        if not thresholds:
            raise ParseError(f"bad --rule {raw!r}: no thresholds given")
        return GroupSpecific(thresholds)
    raise ParseError(f"bad --rule {raw!r}; expected u:<t> or g:<group>=<t>,...")


def _parse_rule_float(value: str, raw: str) -> float:
    try:
        t = float(value)
    except ValueError:
        raise ParseError(f"bad --rule {raw!r}: {value!r} is not a number") from None
    try:
        # range check happens in the rule constructor
        Uniform(t)
    except ValueError as exc:
        raise ParseError(f"bad --rule {raw!r}: {exc}") from None
    return t


def _write_out(payload: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


@click.group()
def main():
    """Evaluate utility/fairness trade-offs of threshold decision rules."""


@main.command()
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def validate(dataset_path: str, config_path: str):
    """Parse the inputs and report groups and claim-holder counts."""
    try:
        config = _load_config(config_path)
        dataset = _load_dataset(dataset_path, config)
    except FairfrontError as exc:
        _fail(exc)
    click.echo(f"dataset: {len(dataset)} individuals, {len(dataset.group_vocabulary)} groups")
    click.echo("groups: " + ", ".join(dataset.group_vocabulary))
    try:
        mask = claims_mask(dataset, config.differentiator)
    except FairfrontError as exc:
        _fail(exc)
    counts = {
        g: int((mask & (dataset.group_codes == k)).sum())
        for k, g in enumerate(dataset.group_vocabulary)
    }
    click.echo("claim holders: " + ", ".join(f"{g}={counts[g]}" for g in dataset.group_vocabulary))
    click.echo(f"config digest: {config.digest}")
    empty = [g for g in dataset.group_vocabulary if counts[g] == 0]
    if empty:
        for g in empty:
            click.echo(f"warning: group {g!r} has no claim-holding individuals", err=True)
        _fail(EmptyPosition(empty[0]))
    click.echo("ok")


@main.command("optimal-threshold")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def optimal_threshold(config_path: str):
    """Break-even score of the decision-maker utility spec."""
    try:
        config = _load_config(config_path)
        p_star = optimal_uniform_threshold(config.dm_spec)
    except FairfrontError as exc:
        _fail(exc)
    click.echo(fmt_float(p_star))


@main.command()
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--rule", "rule_raw", required=True, help="u:<t> or g:<group>=<t>,...")
@click.option("--out", "out", default=None, type=click.Path())
@click.option("--format", "fmt", default="json", type=click.Choice(["csv", "json"]))
def evaluate(dataset_path: str, config_path: str, rule_raw: str, out: str | None, fmt: str):
    """Evaluate a single decision rule."""
    import json as _json

    try:
        config = _load_config(config_path)
        dataset = _load_dataset(dataset_path, config)
        rule = _parse_rule(rule_raw)
        decisions = apply_rule(dataset, rule)
        dm = dm_utility_total(dataset, decisions, config.dm_spec, config.mode)
        positions = position_utilities(
            dataset, decisions, config.ds_spec, config.differentiator, config.mode
        )
        score = fairness_score(positions, config.pattern)
    except FairfrontError as exc:
        _fail(exc)

    groups = dataset.group_vocabulary
    accepted = {
        g: int(decisions.values[idx].sum()) for g, idx in dataset.group_index_arrays.items()
    }
    rates = {g: accepted[g] / len(dataset.group_index_arrays[g]) for g in groups}
    from .sweep import EvaluatedRule

    as_group_specific = (
        rule if isinstance(rule, GroupSpecific) else GroupSpecific({g: rule.threshold for g in groups})
    )
    er = EvaluatedRule(as_group_specific, dm, score, positions)
    doc = evaluation_doc(er, groups, rates)
    if fmt == "json":
        _write_out((_json.dumps(doc, indent=2) + "\n").encode(), out)
    else:
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        writer = _csv.writer(buf)
        writer.writerow(
            [f"threshold_{g}" for g in groups]
            + ["dm_utility", "fairness_score"]
            + [f"utility_{g}" for g in groups]
            + [f"acceptance_rate_{g}" for g in groups]
        )
        writer.writerow(
            [fmt_float(as_group_specific.thresholds[g]) for g in groups]
            + [fmt_float(dm), fmt_float(score)]
            + [fmt_float(positions.utilities[g]) for g in groups]
            + [fmt_float(rates[g]) for g in groups]
        )
        _write_out(buf.getvalue().encode(), out)


def _run_sweep(dataset_path: str, config_path: str, threads: int, cap: int):
    config = _load_config(config_path)
    dataset = _load_dataset(dataset_path, config)
    grid = config.grid.build(dataset)
    result = sweep(
        dataset,
        grid,
        config.dm_spec,
        config.ds_spec,
        config.differentiator,
        config.pattern,
        config.mode,
        cap=cap,
        threads=threads,
        config_digest=config.digest,
    )
    result = filter_viable(pareto_front(result), config.viability_floor)
    return result


def _sweep_summary(result) -> None:
    best_dm, best_fair = extreme_points(result)
    front_size = sum(1 for er in result.evaluated if er.on_front)
    click.echo(f"rules: {len(result.evaluated)}", err=True)
    click.echo(f"front: {front_size}", err=True)

    def _describe(er) -> str:
        thresholds = ",".join(
            f"{g}={fmt_float(er.rule.thresholds[g])}" for g in result.groups
        )
        return (
            f"{thresholds} dm_utility={fmt_float(er.dm_utility)} "
            f"fairness={fmt_float(er.fairness_score)}"
        )

    click.echo(f"max-dm-utility: {_describe(best_dm)}", err=True)
    click.echo(f"max-fairness: {_describe(best_fair)}", err=True)


@main.command("sweep")
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out", default=None, type=click.Path())
@click.option("--format", "fmt", default="json", type=click.Choice(["csv", "json"]))
@click.option("--threads", default=1, type=int, show_default=True)
@click.option("--cap", default=DEFAULT_SWEEP_CAP, type=int, show_default=True)
def sweep_cmd(dataset_path: str, config_path: str, out: str | None, fmt: str, threads: int, cap: int):
    """Evaluate every threshold combination and write all rules."""
    try:
        result = _run_sweep(dataset_path, config_path, threads, cap)
    except FairfrontError as exc:
        _fail(exc)
    payload = sweep_csv_bytes(result) if fmt == "csv" else sweep_json_bytes(result)
    _write_out(payload, out)
    _sweep_summary(result)


@main.command("pareto")
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out", default=None, type=click.Path())
@click.option("--format", "fmt", default="json", type=click.Choice(["csv", "json"]))
@click.option("--threads", default=1, type=int, show_default=True)
@click.option("--cap", default=DEFAULT_SWEEP_CAP, type=int, show_default=True)
def pareto_cmd(dataset_path: str, config_path: str, out: str | None, fmt: str, threads: int, cap: int):
    """Evaluate every threshold combination and write only the front."""
    try:
        result = _run_sweep(dataset_path, config_path, threads, cap)
    except FairfrontError as exc:
        _fail(exc)
    payload = (
        sweep_csv_bytes(result, front_only=True)
        if fmt == "csv"
        else sweep_json_bytes(result, front_only=True)
    )
    _write_out(payload, out)
    _sweep_summary(result)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--persist-dir", default=None, type=click.Path(), envvar="PERSIST_DIR")
@click.option("--max-upload-bytes", default=10_000_000, show_default=True, type=int)
@click.option("--workers", default=2, show_default=True, type=int, help="sweep worker threads")
@click.option("--session-ttl", default=3600.0, show_default=True, type=float)
@click.option("--cors-origin", multiple=True, help="allowed origin; repeatable; default *")
def serve(host, port, persist_dir, max_upload_bytes, workers, session_ttl, cors_origin):
    """Run the HTTP session service."""
    import uvicorn

    from .service.app import create_app

    app = create_app(
        persist_dir=persist_dir,
        max_upload_bytes=max_upload_bytes,
        workers=workers,
        session_ttl=session_ttl,
        cors_origins=list(cors_origin) or ["*"],
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
