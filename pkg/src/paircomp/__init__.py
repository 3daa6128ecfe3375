"""Interactive pairwise comparison elicitation with real-time transitivity control."""

from .aggregation import StudyAggregate, aggregate, experts_needed, half_width
from .baselines import (
    BinaryComparisonMatrix,
    CFrequencyResult,
    PreferenceIntensities,
    binary_from_scores,
    c_frequencies,
    preference_intensities,
    thurstone_scale,
)
from .core import (
    ComparisonScale,
    JudgmentMatrix,
    Relation,
    free_scale,
    is_complete,
    new_matrix,
    pair_sequence,
    relation_of,
    saaty9,
    set_judgment,
    three_point,
)
from .session import (
    Accepted,
    ConflictDetected,
    Session,
    SessionState,
    Study,
    StudyStore,
    create_study,
    new_session,
    next_pair,
    session_results,
    submit_judgment,
    submit_revision,
)
from .simulation import (
    ExperimentReport,
    SimulatedExpert,
    control_effect_experiment,
    generate_matrix,
    quantize_ratio,
    scale_accuracy_experiment,
    sensitivity_experiment,
    true_weights_linear,
)
from .transitivity import (
    ConflictVerdict,
    RevisionCandidates,
    Triad,
    TriadStatus,
    admissible_for_pair,
    admissible_relations,
    check_new_judgment,
    classify_triad,
    conflict_census,
    full_matrix_audit,
    revision_candidates,
)
from .weights import (
    ConsistencyReport,
    approx_weights,
    consistency_index,
    consistency_report,
    eigen_weights,
    random_index,
)

__version__ = "0.1.0"
