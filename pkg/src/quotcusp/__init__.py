"""Exact computations with cusp and quotient-cusp singularity data."""

from .abelian_covers import (
    UacResult,
    abelianization_order,
    cusp_double_cover,
    order_two_covers,
    uac_cycle,
    z_action_matrix,
)
from .cusp_graphs import (
    CuspCycle,
    QuotientCuspGraph,
    WeightedGraph,
    blow_down,
    double_cover_cycle,
    dual_cusp,
    intersection_matrix,
    is_complete_intersection,
    monodromy,
    reduce_to_cycle,
    to_dot,
)
from .cyclotomic import (
    CiExponents,
    admissible_exponents,
    b_odd_subgroup,
    build_group,
    character_check,
    eta_character,
    fixed_point_census,
    group_structure,
    normal_form,
)
from .discriminant import (
    Lattice2,
    discriminant_of_graph,
    discriminant_of_monodromy,
    hypersurface_cover,
    klein_subgroup_check,
    orthogonal_complement,
    prime_order_obstruction,
    verify_mutual_duality,
)
from .errors import CuspError
from .exact_core import FiniteAbelianGroup, IntMatrix, abelian_quotient, det, snf
from .unimodular import QcClass, UniMat2, build_B, classify_largest, factor_positive, pasting_matrix

__version__ = "0.1.0"
