"""Relative (Liezation) invariants of finite-dimensional Leibniz algebras, in exact arithmetic."""

from .algebra import (
    Ideal,
    LeibnizAlgebra,
    Morphism,
    abelian,
    certify_ideal,
    check_leibniz,
    direct_sum,
    from_table,
    hom,
    ideal_closure,
    image_of,
    kernel_of,
    quotient,
)
from .baer import (
    CHECKS,
    capability_routes,
    four_term_check,
    gamma_star,
    induced_multiplier_map,
    is_c_lie_capable,
    multiplier,
    presentation,
    relative_gamma,
    z_star,
)
from .errors import NilmultError, NoIdealComplement
from .exactlin import Mat, Subspace, complement, intersect, kernel, quotient_data, rref, subspace_sum
from .extensions import (
    Extension,
    extension,
    is_c_lie_central,
    is_c_lie_stem,
    is_c_lie_stem_cover,
    stem_cover_construct,
    stem_cover_report,
)
from .free import FreeTruncation, evaluation_hom, free_truncation, word_bracket
from .lie import (
    ann,
    is_maximal_lie_class,
    lie_center,
    lie_centralizer,
    lie_class,
    lie_commutator,
    liezation,
    lower_lie_series,
    upper_lie_series,
)

__all__ = [
    "abelian",
    "ann",
    "capability_routes",
    "certify_ideal",
    "check_leibniz",
    "CHECKS",
    "complement",
    "direct_sum",
    "evaluation_hom",
    "Extension",
    "extension",
    "four_term_check",
    "free_truncation",
    "FreeTruncation",
    "from_table",
    "gamma_star",
    "hom",
    "Ideal",
    "ideal_closure",
    "image_of",
    "induced_multiplier_map",
    "intersect",
    "is_c_lie_capable",
    "is_c_lie_central",
    "is_c_lie_stem",
    "is_c_lie_stem_cover",
    "is_maximal_lie_class",
    "kernel",
    "kernel_of",
    "LeibnizAlgebra",
    "lie_center",
    "lie_centralizer",
    "lie_class",
    "lie_commutator",
    "liezation",
    "lower_lie_series",
    "Mat",
    "Morphism",
    "multiplier",
    "NilmultError",
    "NoIdealComplement",
    "presentation",
    "quotient",
    "quotient_data",
    "relative_gamma",
    "rref",
    "stem_cover_construct",
    "stem_cover_report",
    "Subspace",
    "subspace_sum",
    "upper_lie_series",
    "word_bracket",
    "z_star",
]

__version__ = "0.1.0"
