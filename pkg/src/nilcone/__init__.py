"""Orbit and stabiliser counts for the ordinary, enhanced and exotic nilpotent cones over F_q."""

from .combinatorics import (
    Bipartition,
    Partition,
    b_invariant,
    enumerate_bipartitions,
    enumerate_partitions,
    exponent_form,
    parse_bipartition,
    parse_partition,
    partition_stats,
    partition_union,
    shape_data,
)
from .gf import Field, make_field
from .qcount import (
    QPoly,
    enhanced_orbit_size,
    enhanced_stab_order,
    exotic_orbit_size,
    exotic_stab_order,
    fini_check,
    gl_order,
    ordinary_orbit_size,
    ordinary_stab_order,
    sp_order,
)

__version__ = "0.1.0"
