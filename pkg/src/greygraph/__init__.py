"""Grey numbers in kernel/greyness form, grey graphs, and grey-graph based
multi-attribute decision making."""
from .core import (
    GreyInterval,
    GreyNumber,
    RelativeScore,
    add,
    compare,
    from_interval,
    grey_sum,
    mul,
    relative_score,
    scalar_mul,
    sort_key,
    to_interval,
)
from .graph import (
    GraphError,
    GreyGraph,
    ValidityReport,
    Violation,
    attribute_graph,
    build,
    cartesian_product,
    graph_sum,
    is_strong,
    strong_completion,
    union,
    validate,
)
from .madm import (
    Attribute,
    DecisionProblem,
    GreyArray,
    GreyDataWarning,
    NormalizedMatrix,
    ProblemError,
    RankingResult,
    Solution,
    aggregate,
    normalize,
    propagate_influence,
    rank,
    solve,
    weights_from_intervals,
)

__version__ = "0.1.0"
