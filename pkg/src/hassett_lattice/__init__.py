"""Exact lattice computations certifying intersections of Hassett divisors."""

from .certifier import Certificate, certify, k3_report, search_tuple, verify
from .cubic_lattice_model import (
    AmbientModel,
    GeneratorSpec,
    SublatticeSpec,
    appendix_case,
    assemble_sublattice,
    build_ambient,
    slot_generator,
)
from .exact_linalg import (
    IntMatrix,
    brute_force_short_vectors,
    determinant,
    gram_transform,
    hnf,
    is_positive_definite,
    is_saturated,
    short_vectors,
    snf,
)
from .predicates import (
    check_addington,
    check_assoc_k3,
    check_bulles,
    check_double_star,
    check_fano_hilb,
    check_llsvs,
    check_star,
    enumerate_double_star,
    predicate_report,
)

__version__ = "0.1.0"
