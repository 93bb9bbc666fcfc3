"""IT2 fuzzy multi-objective reliability-redundancy allocation toolkit."""

from .fuzzy import (
    It2Tri,
    SampledIt2,
    discretize,
    eval_membership,
    generate_it2_tmf,
    join,
    meet,
    negate,
)
from .typereduce import (
    CentroidInterval,
    brute_force_centroid,
    centroid_arrays,
    centroid_interval,
    defuzzify,
    ekm_left,
    ekm_right,
)
from .datasets import (
    BUNDLED_DATASETS,
    Dataset,
    bundled_dataset,
    dump_dataset,
    dumps_dataset,
    load_dataset,
    loads_dataset,
)
from .optimizer import (
    GaConfig,
    RunResult,
    SwarmConfig,
    constriction,
    evolve_maximize,
    genetic_solve,
    swarm_maximize,
    swarm_solve,
)
from .stats import (
    AnovaResult,
    SampleSummary,
    TestResult,
    anova_f,
    describe,
    t_test,
)
from .sysmodel import (
    FITNESS_NORMALIZED,
    FITNESS_RAW,
    PARALLEL_SERIES,
    SERIES_PARALLEL,
    WEIGHT_AS_WRITTEN,
    WEIGHT_DATASET_CONSISTENT,
    Candidate,
    IdealBounds,
    MetricSet,
    SystemSpec,
    aggregate_system_cost,
    aggregate_system_reliability,
    constraint_violation,
    crisp_metrics,
    dominates,
    evaluate_objectives,
    extend_system_reliability,
    fuzzify_objectives,
    is_feasible,
    penalized_fitness,
    scalarize,
    scalarized_fitness,
    subsystem_cost_terms,
    subsystem_reliability,
    system_cost,
    system_reliability,
    system_volume,
    system_weight,
    validate_candidate,
)

__version__ = "0.1.0"
