"""Block-emulation discovery and verification for 1-D cellular automata."""

from .engine import (
    CYCLIC,
    ECA_TEMPLATE,
    GCA_TEMPLATE,
    LIGHTCONE,
    PCA_TEMPLATE,
    Configuration,
    ExhaustedLightCone,
    RuleSpec,
    SpaceTime,
    evolve,
    rule_table,
    step,
)
from .emulation import (
    DecodeFailure,
    Projection,
    VerificationResult,
    block_decode,
    block_encode,
    coarse_grain,
    derive_emulated,
    verify_emulation,
)
from .search import (
    EmulationRecord,
    candidate_blocks_a,
    candidate_blocks_b,
    candidate_blocks_c,
    check_candidate,
    exhaustive_emulations,
    search_emulations,
)
from .colorbasis import (
    BasisVector,
    all_bases,
    basis_01,
    basis_xy,
    causal_decomposition_check,
    classify_lifted,
    delta_vector,
    lambda_value,
    lift_rule,
    project_lifted,
)
from .rulespace import (
    SPACES,
    all_classes,
    build_catalog,
    conjugate,
    equivalence_class,
    essential_rules,
    is_linear,
    linear_rules,
    reflect,
    space_rule,
    wolfram_class,
)
from .complexity import ComplexityProfile, classify, entropy_rate, nc_index
from .network import (
    EmulationEdge,
    EmulationNetwork,
    build_network,
    degree,
    degree_by_class,
    emulated_ranking,
    k_bound,
    records_from_csv,
    records_to_csv,
    to_dot,
    to_graphml,
    write_pbm,
)
from .harness import CheckpointError, SearchJob, SearchSummary, load_records, run_search

__all__ = [
    "BasisVector",
    "all_bases",
    "basis_01",
    "basis_xy",
    "causal_decomposition_check",
    "classify_lifted",
    "delta_vector",
    "lambda_value",
    "lift_rule",
    "project_lifted",
    "CYCLIC",
    "LIGHTCONE",
    "PCA_TEMPLATE",
    "ECA_TEMPLATE",
    "GCA_TEMPLATE",
    "Configuration",
    "DecodeFailure",
    "EmulationRecord",
    "ExhaustedLightCone",
    "Projection",
    "RuleSpec",
    "SpaceTime",
    "VerificationResult",
    "block_decode",
    "block_encode",
    "candidate_blocks_a",
    "candidate_blocks_b",
    "candidate_blocks_c",
    "check_candidate",
    "coarse_grain",
    "derive_emulated",
    "evolve",
    "exhaustive_emulations",
    "rule_table",
    "search_emulations",
    "step",
    "verify_emulation",
    "SPACES",
    "all_classes",
    "build_catalog",
    "conjugate",
    "equivalence_class",
    "essential_rules",
    "is_linear",
    "linear_rules",
    "reflect",
    "space_rule",
    "wolfram_class",
    "ComplexityProfile",
    "classify",
    "entropy_rate",
    "nc_index",
    "EmulationEdge",
    "EmulationNetwork",
    "build_network",
    "degree",
    "degree_by_class",
    "emulated_ranking",
    "k_bound",
    "records_from_csv",
    "records_to_csv",
    "to_dot",
    "to_graphml",
    "write_pbm",
    "CheckpointError",
    "SearchJob",
    "SearchSummary",
    "load_records",
    "run_search",
]

__version__ = "0.1.0"
