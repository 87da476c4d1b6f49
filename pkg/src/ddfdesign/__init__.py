"""Disjoint difference families in finite fields and Galois rings, and their 2-designs."""

from .designs import (
    Design,
    IntersectionProfile,
    develop,
    incidence_matrix,
    incidence_p_rank,
    intersection_profile,
    make_design,
    profile_support,
    verify_2design,
)
from .errors import BudgetExceeded, CertificationFailure, DDFError, NotConstant, ParameterError
from .families import BlockFamily, build_family, davis_family, momihara_family, wilson_family
from .field import FieldCtx, cyclotomic_number, make_field, uniform_cyclotomic_number
from .galois_ring import RingCtx, make_ring, subring
from .groups import GroupView, field_group, ring_group
from .iso import are_isomorphic, automorphism_group_order, canonical, canonical_form, verify_isomorphism
from .verification import (
    check_edf_ddf_bridge,
    delta_plus_set,
    delta_set,
    external_delta,
    is_ddf,
    is_difference_set,
    is_edf,
    is_relative_difference_set,
)

__version__ = "0.1.0"
