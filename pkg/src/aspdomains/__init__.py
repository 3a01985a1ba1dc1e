"""Arrow single-peaked preference domains: enumeration, richness and IIA checks."""

from .enumeration import EnumerationResult, SearchNode, count_asp, enumerate_asp, min_image_reject, prune_partial
from .never import (
    ConditionAssignment,
    NeverCondition,
    conditions_of,
    domain_from_conditions,
    fixed_points,
    is_arrow_single_dipped,
    is_arrow_single_peaked,
    is_condorcet_bruteforce,
    is_condorcet_sen,
    is_maximal_condorcet,
    satisfied_conditions,
)
from .orders import (
    Domain,
    DomainError,
    are_isomorphic,
    canonical_domain,
    delete_alternatives,
    dual,
    rank_of,
    relabel,
    restrict_domain,
    restrict_order,
)
from .richness import (
    RichnessReport,
    black_domain,
    cyclic_shift_domain,
    is_k_rich,
    rank_range,
    richness,
    richness_histogram,
    richness_report,
    skewed_pivot,
    skewed_Sn,
    terminal_alternatives,
)
from .voting import (
    IIAVerdict,
    IntervalPartition,
    Tally,
    borda,
    check_arrow_iia_borda,
    check_nash_iia,
    condorcet_winner,
    first_ranked_set,
    hc_max_size,
    hierarchically_cyclic_partition,
    majority_relation,
    max_hc_domain,
    max_qa_domain,
    plurality_winners,
    qa_fixed_point_insert,
    runoff_winners,
    satisfies_LF,
    satisfies_QA,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionAssignment",
    "Domain",
    "DomainError",
    "EnumerationResult",
    "IIAVerdict",
    "IntervalPartition",
    "NeverCondition",
    "RichnessReport",
    "SearchNode",
    "Tally",
    "are_isomorphic",
    "black_domain",
    "borda",
    "canonical_domain",
    "check_arrow_iia_borda",
    "check_nash_iia",
    "conditions_of",
    "condorcet_winner",
    "count_asp",
    "cyclic_shift_domain",
    "delete_alternatives",
    "domain_from_conditions",
    "dual",
    "enumerate_asp",
    "first_ranked_set",
    "fixed_points",
    "hc_max_size",
    "hierarchically_cyclic_partition",
    "is_arrow_single_dipped",
    "is_arrow_single_peaked",
    "is_condorcet_bruteforce",
    "is_condorcet_sen",
    "is_k_rich",
    "is_maximal_condorcet",
    "majority_relation",
    "max_hc_domain",
    "max_qa_domain",
    "min_image_reject",
    "plurality_winners",
    "prune_partial",
    "qa_fixed_point_insert",
    "rank_of",
    "rank_range",
    "relabel",
    "restrict_domain",
    "restrict_order",
    "richness",
    "richness_histogram",
    "richness_report",
    "runoff_winners",
    "satisfied_conditions",
    "satisfies_LF",
    "satisfies_QA",
    "skewed_Sn",
    "skewed_pivot",
    "terminal_alternatives",
]
