"""Finite partial group actions on finite sets and their enveloping actions."""

from .errors import (
    ArgumentError,
    BoundsError,
    InvalidGlobalActionError,
    InvalidOrderError,
    LayoutError,
    NotAGroupError,
    PartialActionError,
    SizeCapExceeded,
    SpecError,
    TheoremViolation,
    UnresolvedLabelError,
)
from .globalization import (
    DEFAULT_MAX_SIZE,
    GlobalAction,
    Globalization,
    actions_isomorphic,
    check_global_action,
    globalize,
    make_global_action,
    verify_globalization,
)
from .group import Group, Subgroup, build_cyclic_group, build_group_from_cayley, subgroup_closure
from .orbits import (
    Coset,
    CosetSpace,
    GMapCheck,
    InducedPartialAction,
    PartialGMap,
    burnside_orbit_count,
    check_partial_g_map,
    coset_space,
    fixed_point_counts,
    global_orbit_size,
    induced_coset_action,
    orbit_stabilizer_iso,
)
from .partial import (
    FiniteSet,
    PartialAction,
    PartialOrbitReport,
    is_partial_g_subset,
    make_partial_action,
    orbit_report,
    partial_g_subset_witness,
    partial_orbit,
    partial_orbits,
    partial_stabilizer,
    partial_transversal,
    restrict_global,
    restrict_partial,
    upper_sets,
    validate_partial_action,
)
from .report import Check, ValidationReport

__version__ = "0.1.0"
