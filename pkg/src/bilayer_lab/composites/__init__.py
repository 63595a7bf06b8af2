"""Composite stationary solutions: closed forms, matching oracle, sampling."""

from .build import (
    build,
    build_h1_sessile_zigzag,
    build_h_sessile_zigzag,
    build_lens_on_zigzag,
    build_one_cl,
    build_sessile_internal_drop,
    build_sessile_lens,
    build_two_drops,
    build_two_side_sessile_zigzag,
    build_zigzag,
    existence_report,
    max_transform,
    max_transform_inv,
    mirror_solution,
    plateau_c2,
    plateau_c4,
    spec_with,
    zigzag_length_window,
)
from .types import (
    KINDS,
    ONE_CL_KINDS,
    CompositeSpec,
    ConstraintReport,
    ConstraintViolation,
    LeadingOrderSolution,
    Profile,
    read_profile_csv,
    write_profile_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
