"""fairfront: explore utility/fairness trade-offs of threshold decision rules.

The package evaluates group-specific decision thresholds against two
axes: the decision maker's utility and a fairness score derived from a
chosen pattern of justice over the utilities of the relevant positions.
It sweeps threshold grids, extracts the Pareto front and serves the
results to a CLI and an interactive studio.
"""

from .model import (
    Dataset,
    DecisionRule,
    DecisionVector,
    GroupSpecific,
    Individual,
    Uniform,
    apply_rule,
    groups,
)
from .utility import (
    DMTable,
    DMUtilitySpec,
    DSUtilitySpec,
    EvaluationMode,
    Lending,
    UtilityTable,
    dm_utility_individual,
    dm_utility_total,
    ds_utility_individual,
    optimal_uniform_threshold,
)
from .justice import (
    AllClaims,
    AttributePredicate,
    ClaimsDifferentiator,
    Egalitarian,
    Maximin,
    OutcomeEquals,
    PatternOfJustice,
    PositionUtilities,
    Prioritarian,
    Sufficientarian,
    claims_mask,
    fairness_score,
    position_utilities,
)
from .sweep import (
    EvaluatedRule,
    SweepResult,
    ThresholdGrid,
    extreme_points,
    filter_viable,
    pareto_front,
    sweep,
    threshold_grid,
)
from .ingest import (
    DatasetSchema,
    GridSpec,
    ValueConfig,
    parse_config,
    parse_dataset,
    serialize_config,
)

__version__ = "0.1.0"

__all__ = [
    "AllClaims",
    "AttributePredicate",
    "ClaimsDifferentiator",
    "Dataset",
    "DatasetSchema",
    "DecisionRule",
    "DecisionVector",
    "DMTable",
    "DMUtilitySpec",
    "DSUtilitySpec",
    "Egalitarian",
    "EvaluatedRule",
    "EvaluationMode",
    "GridSpec",
    "GroupSpecific",
    "Individual",
    "Lending",
    "Maximin",
    "OutcomeEquals",
    "PatternOfJustice",
    "PositionUtilities",
    "Prioritarian",
    "Sufficientarian",
    "SweepResult",
    "ThresholdGrid",
    "Uniform",
    "UtilityTable",
    "ValueConfig",
    "apply_rule",
    "claims_mask",
    "dm_utility_individual",
    "dm_utility_total",
    "ds_utility_individual",
    "extreme_points",
    "fairness_score",
    "filter_viable",
    "groups",
    "optimal_uniform_threshold",
    "pareto_front",
    "parse_config",
    "parse_dataset",
    "position_utilities",
    "serialize_config",
    "sweep",
    "threshold_grid",
]
