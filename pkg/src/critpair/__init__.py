"""Critical pair theory on finite abelian groups.

Groups are direct products of cyclic factors with mixed-radix element
indices; subsets are integer bitsets over those indices.
"""

from .errors import *  # noqa: F401,F403
from .graphs import (
    BoundaryMatching,
    Digraph,
    DisjointPathSystem,
    cayley_graph,
    disjoint_paths,
    graph_kappa1,
    hall_matching_number,
    max_disjoint_paths,
    seeded_digraph,
    sip2_matching,
    sipg_matching,
    strongip_components,
    validate_boundary_matching,
)
from .groups import (
    AbelianGroup,
    GroupElement,
    GroupSubset,
    QuotientView,
    Subgroup,
    abelian_group_types,
    as_subgroup,
    automorphisms,
    enumerate_subgroups,
    groups_of_orders,
    make_group,
    parse_group,
    parse_subset,
    quotient_view,
)
from .isoperimetry import (
    IsoProfile,
    atoms,
    fragments,
    hyper_atoms,
    is_k_separable,
    is_vosper,
    iso_profile,
    kappa,
    lift_fragment_kappa,
    lifted_subgroup_is_two_fragment,
)
from .lemmas import LEMMA_IDS, LemmaResult, check_lemma
from .report import VerificationReport
from .structure import CaseTag, CaseVerdict, check_singular, check_twothird, classify_extremal_pair
from .sumsets import (
    HDecomposition,
    ProgressionCertificate,
    ap_certificate,
    are_similar,
    boundary,
    co_image,
    count_representations,
    h_decompose,
    is_aperiodic,
    is_arithmetic_progression,
    is_faithful,
    modular_progression_certificate,
    period,
    quasi_periodic_part,
    sumset,
    t_power,
)
from .sweep import THEOREMS, SweepConfig, run_sweep, sweep

__version__ = "0.1.0"
