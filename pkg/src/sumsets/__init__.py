"""Finite-group toolkit for sum sets and partial sum sets."""

from .admissibility import (
    AdmissibilityVerdict,
    CosetEquationReport,
    Rejection,
    TwoValueReport,
    abelian_filters,
    check_admissible,
    coset_profile,
    full_coset_analysis,
    index2_check,
    index3_check,
    muon_check,
    parameter_scan,
    sumner_butson_filter,
    two_value_analysis,
    verify_coset_equation,
)
from .constructions import (
    ConstructionError,
    ConstructionResult,
    aff_times_c2_sum_set,
    dihedral_type1,
    dihedral_type2,
    dstar_pss,
    dstar_sum_set,
    frobenius_coset_pss,
    frobenius_orbit_pss,
    frobenius_subgroup_sum_set,
    generalized_dihedral_pss,
    lift2,
    paley_skew_pss,
    project2,
)
from .fields import FieldElementTable, make_field
from .group_ring import (
    GroupRingElement,
    frobenius_congruence_check,
    from_subset,
    multiply,
    power,
    sum_set_even_power_closed_form,
    sum_set_odd_power_closed_form,
    t_power_map,
)
from .groups import (
    FiniteGroup,
    GroupError,
    GroupMismatchError,
    Subset,
    center,
    cosets,
    direct_product,
    is_normal,
    is_subgroup,
    make_affine,
    make_cyclic,
    make_dihedral,
    make_dstar,
    make_elementary_abelian,
    make_frobenius_subgroup,
    make_generalized_dihedral,
    normal_subgroups,
    parse_group,
    quotient,
    subgroups,
)
from .regularity import (
    Classification,
    PssParams,
    RegularityProfile,
    certificate,
    classify,
    complement_params,
    has_params,
    is_reversible,
    is_skew,
    is_trivial,
    maximal_skew_test,
    profile,
    special_subsets,
    type_classify,
)
from .search import (
    SearchQuery,
    SearchReport,
    enumerate_maximal_skew,
    exhaustive_search,
    property_suite,
)

__version__ = "0.1.0"
