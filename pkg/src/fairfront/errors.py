"""Exception hierarchy shared across the package.

Three families map onto the CLI exit codes: parse errors (bad input
files, exit 1), semantic errors (valid files, impossible request,
exit 2) and the sweep size cap (exit 3).
"""

from __future__ import annotations


class FairfrontError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class ParseError(FairfrontError):
    """Malformed or invalid input file."""

    exit_code = 1


class SemanticError(FairfrontError):
    """Inputs parse fine but the requested computation is undefined."""

    exit_code = 2


# --- dataset / config parsing -------------------------------------------------

class EmptyFile(ParseError):
    pass


class MissingColumn(ParseError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"required column missing from header: {name!r}")


class BadScore(ParseError):
    def __init__(self, row: int, value: str):
        self.row = row
        super().__init__(f"row {row}: score {value!r} is not a number in [0, 1]")


class BadOutcome(ParseError):
    def __init__(self, row: int, value: str):
        self.row = row
        super().__init__(f"row {row}: outcome {value!r} is not 0 or 1")


class BadAmount(ParseError):
    def __init__(self, row: int, value: str):
        self.row = row
        super().__init__(f"row {row}: amount {value!r} is not a non-negative number")


class DuplicateId(ParseError):
    def __init__(self, row: int, id_: str):
        self.row = row
        self.id = id_
        super().__init__(f"row {row}: duplicate id {id_!r}")


class SchemaViolation(ParseError):
    """Config document violates the schema; ``path`` is JSON-pointer style."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


# --- rule application / evaluation --------------------------------------------

class MissingGroupThreshold(SemanticError):
    def __init__(self, group: str):
        self.group = group
        super().__init__(f"no threshold for group {group!r}")


class UnknownGroup(SemanticError):
    def __init__(self, group: str):
        self.group = group
        super().__init__(f"group {group!r} not in the dataset vocabulary")


class LengthMismatch(SemanticError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"decision vector length {got} != dataset size {expected}")


class DegenerateSpec(SemanticError):
    """No interior break-even threshold exists; ``verdict`` says why."""

    def __init__(self, verdict: str, detail: str = ""):
        self.verdict = verdict
        super().__init__(f"degenerate utility spec: {verdict}" + (f" ({detail})" if detail else ""))


class UnknownAttribute(SemanticError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"attribute {name!r} not present for every individual")


class InvalidPredicate(SemanticError):
    def __init__(self, detail: str):
        super().__init__(f"claims predicate cannot be evaluated: {detail}")


class EmptyPosition(SemanticError):
    def __init__(self, group: str):
        self.group = group
        super().__init__(f"group {group!r} has no claim-holding individuals")


class TooFewGroups(SemanticError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"fairness analysis needs at least 2 groups, dataset has {count}")


class WeightLengthMismatch(SemanticError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"prioritarian weights length {got} != number of positions {expected}")


class AllZeroWeights(SemanticError):
    def __init__(self):
        super().__init__("prioritarian weights must contain at least one positive entry")


class InvalidRange(SemanticError):
    def __init__(self, detail: str):
        super().__init__(f"invalid threshold grid range: {detail}")


class EmptySweep(SemanticError):
    def __init__(self):
        super().__init__("sweep result is empty")


class SweepTooLarge(FairfrontError):
    exit_code = 3

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"sweep of {size} rules exceeds the cap of {cap}")
