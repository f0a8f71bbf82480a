"""Exact information-leakage analysis for correlated sources over an
eavesdropped noiseless channel: a syndrome-partition codec, leakage bounds
and curves, and one-time-pad cipher rate regions, all evaluated by exact
enumeration at desk scale."""

from .cipher import (
    BRANCHES,
    CASES,
    CipherScheme,
    Constraint,
    RegionQuery,
    RegionVerdict,
    SecurityMeasurement,
    alpha_defaults,
    build_ciphertexts,
    decrypt_ciphertexts,
    derive_key_sizes,
    desk_scheme,
    guaranteed_level,
    measure_security,
    region_membership,
    security_verdict,
    split_index,
)
from .errors import (
    CapacityError,
    DomainError,
    InternalConsistencyError,
    ToolkitError,
    UsageError,
    ValidationError,
)
from .gf2 import Gf2Matrix, mat_vec_mul, rank, remove_columns
from .info import (
    InfoSummary,
    JointPmf,
    conditional_mutual_information,
    entropy,
    mutual_information,
    summarize,
    triple_mutual_information,
)
from .leakage import (
    BoundReport,
    CurveRow,
    FormulaMinMax,
    LeakageValue,
    PatternCheck,
    WiretapAnalyzer,
    WiretapPattern,
    bound_rhs,
    decomposition_identity_check,
    exact_leakage,
    extremal_max_pattern,
    grid_curve_rows,
    minmax_curves,
    minmax_oracle,
    sample_patterns,
    z_mu_leakage,
    z_trace_rows,
)
from .seqmodel import (
    SequenceModel,
    SequenceTriple,
    build_model,
    enumerate_support,
    sequence_summary,
    z_consistency_counts,
)
from .swcodec import (
    ConditionRow,
    DecodeResult,
    PartitionScheme,
    Syndrome,
    clamped_equivocation,
    decode_ambiguity_rate,
    encode_x,
    encode_y,
    enumeration_equivocation,
    joint_decode,
    prototype_condition_report,
    rank_equivocation,
    reference_scheme,
    syndrome_observable,
    z_prefix_observable,
)

__version__ = "0.1.0"
