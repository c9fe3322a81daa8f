"""Max k-vertex cover in bipartite graphs: algorithms and worst-case analysis."""

from .bigraph import (
    MIXED,
    BipartiteGraph,
    GraphParseError,
    VertexSet,
    best_k,
    covered_edges,
    generate,
    generate_random,
    generate_semiregular,
    parse,
    serialize,
)
from .covers import (
    CoverSolution,
    PartitionLayout,
    build_solution,
    greedy,
    kvc_algorithm,
    make_layout,
    nu_xi_zero,
    two_thirds,
    vertical_separation,
)
from .cutmodel import (
    CUT_NAMES,
    Configuration,
    ConstraintViolations,
    DegenerateConfiguration,
    DeltaQuantities,
    RatioReport,
    check_constraints,
    delta_quantities,
    dumps_config,
    eval_ratios,
    extract_config,
    loads_config,
    realized_fractions,
)
from .exact import ExactResult, InstanceTooLarge, brute_force_opt
from .optimizer import (
    OptimizerRun,
    OptimizerSettings,
    central_diff_grad,
    local_descent,
    minimize_max_ratio,
    objective,
)

__version__ = "0.1.0"
