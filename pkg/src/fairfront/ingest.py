"""CSV dataset parsing and the JSON value-configuration document.

The config document is the reviewable artifact that records the first
four value choices (decision-maker utility, decision-subject utility,
claims, pattern) plus evaluation mode, threshold grid and viability
floor. Its canonical serialization round-trips and hashes stably; the
hash is what the service uses to tell stale results from fresh ones.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .errors import (
    BadAmount,
    BadOutcome,
    BadScore,
    DuplicateId,
    EmptyFile,
    MissingColumn,
    SchemaViolation,
)
from .justice import (
    AllClaims,
    AttributePredicate,
    ClaimsDifferentiator,
    Egalitarian,
    Maximin,
    OutcomeEquals,
    PatternOfJustice,
    Prioritarian,
    Sufficientarian,
)
from .model import Dataset, Individual
from .sweep import DEFAULT_GRID_SIZE, ThresholdGrid, threshold_grid
from .utility import (
    DMTable,
    DMUtilitySpec,
    DSUtilitySpec,
    EvaluationMode,
    Lending,
    UtilityTable,
)

@dataclass(frozen=True)
class DatasetSchema:
    """Maps CSV columns onto Individual fields.

    amount and id columns are picked up automatically when a column with
    the default name exists; unnamed extra columns become attributes
    unless attribute_columns narrows them down.
    """

    score_column: str = "score"
    group_column: str = "group"
    outcome_column: str = "outcome"
    amount_column: str | None = None
    attribute_columns: tuple[str, ...] | None = None
    id_column: str | None = None

    def __post_init__(self):
        if self.attribute_columns is not None:
            object.__setattr__(self, "attribute_columns", tuple(self.attribute_columns))
        required = (self.score_column, self.group_column, self.outcome_column)
        if len(set(required)) != len(required):
            raise SchemaViolation("/schema", "score, group and outcome columns must be distinct")

    def canonical(self) -> dict:
        return {
            "score_column": self.score_column,
            "group_column": self.group_column,
            "outcome_column": self.outcome_column,
            "amount_column": self.amount_column,
            "attribute_columns": list(self.attribute_columns) if self.attribute_columns else None,
            "id_column": self.id_column,
        }


def _as_text(data: bytes | str | io.IOBase) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    if isinstance(data, str):
        return data
    raw = data.read()
    return raw.decode("utf-8") if isinstance(raw, bytes) else raw


def parse_dataset(data: bytes | str | io.IOBase, schema: DatasetSchema | None = None) -> Dataset:
    """Parse an RFC-4180-style CSV into a Dataset.

    Every error names the offending row (1-based, header excluded).
    """
    schema = schema or DatasetSchema()
    text = _as_text(data)
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]  # tolerate trailing blank lines
    if not rows:
        raise EmptyFile("dataset file has no header row")
    header = rows[0]
    data_rows = rows[1:]
    if not data_rows:
        raise EmptyFile("dataset file has no data rows")

    positions = {name: i for i, name in enumerate(header)}
    for name in (schema.score_column, schema.group_column, schema.outcome_column):
        if name not in positions:
            raise MissingColumn(name)

    amount_col = schema.amount_column
    if amount_col is None and "amount" in positions:
        amount_col = "amount"
    elif amount_col is not None and amount_col not in positions:
        raise MissingColumn(amount_col)

    id_col = schema.id_column
    if id_col is None and "id" in positions:
        id_col = "id"
    elif id_col is not None and id_col not in positions:
        raise MissingColumn(id_col)

    if schema.attribute_columns is not None:
        attr_cols = list(schema.attribute_columns)
        for name in attr_cols:
            if name not in positions:
                raise MissingColumn(name)
    else:
        claimed = {schema.score_column, schema.group_column, schema.outcome_column, amount_col, id_col}
        attr_cols = [name for name in header if name not in claimed]

    individuals = []
    seen_ids: set[str] = set()
    for row_no, row in enumerate(data_rows, start=1):
        cells = {name: (row[i] if i < len(row) else "") for name, i in positions.items()}
        raw_score = cells[schema.score_column].strip()
        try:
            score = float(raw_score)
        except ValueError:
            raise BadScore(row_no, raw_score) from None
        if not 0.0 <= score <= 1.0 or not math.isfinite(score):
            raise BadScore(row_no, raw_score)

        raw_outcome = cells[schema.outcome_column].strip()
        if raw_outcome not in ("0", "1"):
            raise BadOutcome(row_no, raw_outcome)
        outcome = int(raw_outcome)

        amount = 1.0
        if amount_col is not None:
            raw_amount = cells[amount_col].strip()
            try:
                amount = float(raw_amount)
            except ValueError:
                raise BadAmount(row_no, raw_amount) from None
            if amount < 0 or not math.isfinite(amount):
                raise BadAmount(row_no, raw_amount)

        ind_id = cells[id_col].strip() if id_col is not None else str(row_no)
        if ind_id in seen_ids:
            raise DuplicateId(row_no, ind_id)
        seen_ids.add(ind_id)

        attributes = None
        if attr_cols:
            attributes = {name: _parse_attr(cells[name]) for name in attr_cols}

        individuals.append(
            Individual(
                id=ind_id,
                score=score,
                group=cells[schema.group_column],
                outcome=outcome,
                amount=amount,
                attributes=attributes,
            )
        )
    return Dataset(individuals)


def _parse_attr(raw: str) -> float | str:
    try:
        return float(raw)
    except ValueError:
        return raw


# --- value configuration --------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Either an even linspace grid or explicit per-group threshold lists."""

    n: int = DEFAULT_GRID_SIZE
    lo: float = 0.0
    hi: float = 1.0
    per_group: Mapping[str, tuple[float, ...]] | None = None

    def __post_init__(self):
        if self.per_group is not None:
            object.__setattr__(
                self, "per_group", {g: tuple(ts) for g, ts in self.per_group.items()}
            )

    def build(self, dataset: Dataset) -> ThresholdGrid:
        if self.per_group is not None:
            return ThresholdGrid(self.per_group)
        return threshold_grid(dataset, self.n, self.lo, self.hi)

    def canonical(self) -> dict:
        if self.per_group is not None:
            return {"per_group": {g: list(self.per_group[g]) for g in sorted(self.per_group)}}
        return {"n": self.n, "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class ValueConfig:
    dm_spec: DMUtilitySpec
    ds_spec: DSUtilitySpec
    differentiator: ClaimsDifferentiator
    pattern: PatternOfJustice
    mode: EvaluationMode = EvaluationMode.EXPECTED
    grid: GridSpec = field(default_factory=GridSpec)
    group_column: str | None = None
    viability_floor: float = 0.0

    def canonical(self) -> dict:
        doc = {
            "dm_utility": self.dm_spec.canonical(),
            "ds_utility": self.ds_spec.canonical(),
            "claims": self.differentiator.canonical(),
            "pattern": self.pattern.canonical(),
            "mode": self.mode.value,
            "grid": self.grid.canonical(),
            "viability_floor": self.viability_floor,
        }
        if self.group_column is not None:
            doc["positions"] = {"group_column": self.group_column}
        return doc

    @property
    def digest(self) -> str:
        return hashlib.sha256(serialize_config(self).encode()).hexdigest()

    def dataset_schema(self) -> DatasetSchema:
        return DatasetSchema(group_column=self.group_column or "group")


def serialize_config(config: ValueConfig) -> str:
    """Canonical JSON form; parse(serialize(c)) == c with equal digest."""
    return json.dumps(config.canonical(), sort_keys=True, separators=(",", ":"))


class _Node:
    """Cursor over the raw JSON document that tracks its pointer path."""

    def __init__(self, value: Any, path: str):
        self.value = value
        self.path = path

    def fail(self, reason: str):
        raise SchemaViolation(self.path or "/", reason)

    def as_object(self, known: Sequence[str]) -> "_Node":
        if not isinstance(self.value, dict):
            self.fail("must be an object")
        for key in self.value:
            if key not in known:
                self.fail(f"unknown key {key!r}")
        return self

    def child(self, key: str) -> "_Node":
        return _Node(self.value.get(key), f"{self.path}/{key}")

    def require(self, key: str) -> "_Node":
        if not isinstance(self.value, dict) or key not in self.value:
            self.fail(f"missing required key {key!r}")
        return self.child(key)

    def number(self) -> float:
        if isinstance(self.value, bool) or not isinstance(self.value, (int, float)):
            self.fail("must be a number")
        if not math.isfinite(self.value):
            self.fail("must be finite")
        return float(self.value)

    def integer(self) -> int:
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            self.fail("must be an integer")
        return self.value

    def string(self) -> str:
        if not isinstance(self.value, str):
            self.fail("must be a string")
        return self.value

    def boolean(self) -> bool:
        if not isinstance(self.value, bool):
            self.fail("must be a boolean")
        return self.value


def _single_variant(node: _Node, variants: Sequence[str]) -> tuple[str, _Node]:
    if not isinstance(node.value, dict) or len(node.value) != 1:
        node.fail(f"must be an object with exactly one of: {', '.join(variants)}")
    key = next(iter(node.value))
    if key not in variants:
        node.fail(f"unknown variant {key!r}; expected one of: {', '.join(variants)}")
    return key, node.child(key)


def _parse_table(node: _Node) -> UtilityTable:
    node.as_object(["tp", "fp", "fn", "tn"])
    return UtilityTable(
        tp=node.require("tp").number(),
        fp=node.require("fp").number(),
        fn=node.require("fn").number(),
        tn=node.require("tn").number(),
    )


def _parse_dm(node: _Node) -> DMUtilitySpec:
    key, body = _single_variant(node, ["lending", "table"])
    if key == "lending":
        body.as_object(["interest_rate"])
        rate = body.require("interest_rate").number()
        if rate <= 0:
            body.child("interest_rate").fail("must be > 0")
        return Lending(rate)
    body.as_object(["tp", "fp", "fn", "tn", "amount_scaled"])
    table = UtilityTable(
        tp=body.require("tp").number(),
        fp=body.require("fp").number(),
        fn=body.require("fn").number(),
        tn=body.require("tn").number(),
    )
    amount_scaled = body.child("amount_scaled").boolean() if "amount_scaled" in body.value else False
    return DMTable(table, amount_scaled)


def _parse_ds(node: _Node) -> DSUtilitySpec:
    node.as_object(["base", "per_group_overrides", "amount_scaled"])
    base = _parse_table(node.require("base"))
    overrides = None
    if "per_group_overrides" in node.value and node.value["per_group_overrides"] is not None:
        raw = node.child("per_group_overrides")
        if not isinstance(raw.value, dict):
            raw.fail("must be an object mapping group label to a table")
        overrides = {g: _parse_table(raw.child(g)) for g in raw.value}
    amount_scaled = node.child("amount_scaled").boolean() if "amount_scaled" in node.value else False
    return DSUtilitySpec(base, overrides, amount_scaled)


def _parse_claims(node: _Node) -> ClaimsDifferentiator:
    key, body = _single_variant(node, ["all", "outcome_equals", "attribute_predicate"])
    if key == "all":
        body.as_object([])
        return AllClaims()
    if key == "outcome_equals":
        body.as_object(["y"])
        y = body.require("y").integer()
        if y not in (0, 1):
            body.child("y").fail("must be 0 or 1")
        return OutcomeEquals(y)
    body.as_object(["attribute", "op", "value"])
    value_node = body.require("value")
    if isinstance(value_node.value, bool) or not isinstance(value_node.value, (int, float, str)):
        value_node.fail("must be a number or a string")
    value = value_node.value if isinstance(value_node.value, str) else float(value_node.value)
    try:
        return AttributePredicate(
            attribute=body.require("attribute").string(),
            op=body.require("op").string(),
            value=value,
        )
    except ValueError as exc:
        body.child("op").fail(str(exc))


def _parse_pattern(node: _Node) -> PatternOfJustice:
    key, body = _single_variant(
        node, ["egalitarian", "maximin", "prioritarian", "sufficientarian"]
    )
    if key == "egalitarian":
        body.as_object([])
        return Egalitarian()
    if key == "maximin":
        body.as_object([])
        return Maximin()
    if key == "prioritarian":
        body.as_object(["weights"])
        raw = body.require("weights")
        if not isinstance(raw.value, list) or not raw.value:
            raw.fail("must be a non-empty array of numbers")
        weights = []
        for i, w in enumerate(raw.value):
            item = _Node(w, f"{raw.path}/{i}")
            weights.append(item.number())
        try:
            return Prioritarian(tuple(weights))
        except Exception as exc:
            raw.fail(str(exc) if str(exc) else "invalid weights")
    body.as_object(["tau"])
    return Sufficientarian(body.require("tau").number())


def _parse_grid(node: _Node) -> GridSpec:
    if not isinstance(node.value, dict):
        node.fail("must be an object")
    if "per_group" in node.value:
        node.as_object(["per_group"])
        raw = node.child("per_group")
        if not isinstance(raw.value, dict) or not raw.value:
            raw.fail("must map group labels to threshold arrays")
        per_group = {}
        for g in raw.value:
            arr = raw.child(g)
            if not isinstance(arr.value, list) or not arr.value:
                arr.fail("must be a non-empty array of numbers")
            per_group[g] = tuple(_Node(t, f"{arr.path}/{i}").number() for i, t in enumerate(arr.value))
        try:
            ThresholdGrid(per_group)  # surfaces range/order violations at parse time
        except Exception as exc:
            raw.fail(str(exc))
        return GridSpec(per_group=per_group)
    node.as_object(["n", "lo", "hi"])
    n = node.child("n").integer() if "n" in node.value else DEFAULT_GRID_SIZE
    lo = node.child("lo").number() if "lo" in node.value else 0.0
    hi = node.child("hi").number() if "hi" in node.value else 1.0
    if n < 2:
        node.child("n").fail("must be >= 2")
    if not (0.0 <= lo < hi <= 1.01):
        node.fail("need 0 <= lo < hi <= 1.01")
    return GridSpec(n=n, lo=lo, hi=hi)


_TOP_KEYS = [
    "dm_utility",
    "ds_utility",
    "claims",
    "positions",
    "pattern",
    "mode",
    "grid",
    "viability_floor",
]


def parse_config_value(raw: Any) -> ValueConfig:
    """Validate an already-decoded JSON document."""
    root = _Node(raw, "")
    root.as_object(_TOP_KEYS)
    dm = _parse_dm(root.require("dm_utility"))
    ds = _parse_ds(root.require("ds_utility"))
    claims = _parse_claims(root.require("claims"))
    pattern = _parse_pattern(root.require("pattern"))

    mode = EvaluationMode.EXPECTED
    if "mode" in root.value:
        raw_mode = root.child("mode").string()
        try:
            mode = EvaluationMode(raw_mode)
        except ValueError:
            root.child("mode").fail("must be 'expected' or 'empirical'")

    grid = _parse_grid(root.child("grid")) if "grid" in root.value else GridSpec()

    group_column = None
    if "positions" in root.value:
        pos = root.child("positions")
        pos.as_object(["group_column"])
        group_column = pos.require("group_column").string()

    floor = root.child("viability_floor").number() if "viability_floor" in root.value else 0.0

    return ValueConfig(
        dm_spec=dm,
        ds_spec=ds,
        differentiator=claims,
        pattern=pattern,
        mode=mode,
        grid=grid,
        group_column=group_column,
        viability_floor=floor,
    )


def parse_config(data: bytes | str | io.IOBase) -> ValueConfig:
    """Parse and validate the JSON value-configuration document."""
    text = _as_text(data)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("/", f"not valid JSON: {exc}") from None
    return parse_config_value(raw)
