"""Extremal self-dual ternary [48,24,15] codes.

Constructions of the two known extremal codes (the extended quadratic
residue code Q48 and the Pless symmetry code P48), exact minimum
distance proofs, monomial equivalence with verified transporters, and
the classification searches over prime-order automorphisms p = 47, 23,
11.
"""

from .codes import Code, read_code, write_code, weight_enumerator
from .constructions import (
    extended_qr,
    golay12,
    p48,
    pless_symmetry,
    q48,
)
from .autom import (
    Monomial,
    cycle_type,
    feasible_cycle_type,
    fixed_code,
    is_automorphism,
)
from .mindist import min_distance, verify_min_distance_at_least
from .equiv import are_equivalent, automorphism_group_order, conjugate_equivalence
from .classify import search_p11, search_p23, search_p47, staged_filter

__version__ = "1.0.0"

__all__ = [
    "Code",
    "Monomial",
    "are_equivalent",
    "automorphism_group_order",
    "conjugate_equivalence",
    "cycle_type",
    "extended_qr",
    "feasible_cycle_type",
    "fixed_code",
    "golay12",
    "is_automorphism",
    "min_distance",
    "p48",
    "pless_symmetry",
    "q48",
    "read_code",
    "search_p11",
    "search_p23",
    "search_p47",
    "staged_filter",
    "verify_min_distance_at_least",
    "weight_enumerator",
    "write_code",
]
