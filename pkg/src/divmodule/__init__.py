"""Divisors of modules over polynomial rings.

Fitting ideals, the order determinant, the norm representative, generic
Bourbaki ideals and Rees-algebra invariants, all decided exactly by a
Buchberger engine over Q or GF(p).
"""

from .errors import (BudgetExceeded, CertificationError, DivModError, InputError, InternalError, ParseError,
                     PreconditionError, UnitIdealError, ZeroIdealError)
from .ring import GREVLEX, LEX, QQ, Field, MonomialOrder, Polynomial, Ring, parse_poly, polynomial_ring
from .matrix import PolyMatrix, determinant, evaluate_at_origin, generic_rank, minors
from .groebner import (Ideal, Submodule, dimension, eliminate, groebner_basis, height, height_and_grade,
                       ideal_equal, intersect, normal_form, quotient, saturate, submodule_membership, syzygies)
from .presmod import (EmbeddedModule, PresentedModule, exterior_power, fitting_ideal, image_in_free, mu_local,
                      presentation_of_embedded, quotient_by_generators, theta_image)
from .divisors import (FractionalIdeal, NormCertificate, det0, find_psi, fractional_inverse, is_free_local,
                       is_ideal_module, nonfree_locus_ideal, norm_representative, zak_report)
from .rees import (analytic_spread, classify_module, fiber_cone, rees_presentation, reduction_number)
from .bourbaki import BourbakiResult, generic_bourbaki, hilbert_burch_check, verify_bourbaki

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CertificationError",
    "DivModError",
    "InputError",
    "InternalError",
    "ParseError",
    "PreconditionError",
    "UnitIdealError",
    "ZeroIdealError",
    "GREVLEX",
    "LEX",
    "QQ",
    "Field",
    "MonomialOrder",
    "Polynomial",
    "Ring",
    "parse_poly",
    "polynomial_ring",
    "PolyMatrix",
    "determinant",
    "evaluate_at_origin",
    "generic_rank",
    "minors",
    "Ideal",
    "Submodule",
    "dimension",
    "eliminate",
    "groebner_basis",
    "height",
    "height_and_grade",
    "ideal_equal",
    "intersect",
    "normal_form",
    "quotient",
    "saturate",
    "submodule_membership",
    "syzygies",
    "EmbeddedModule",
    "PresentedModule",
    "exterior_power",
    "fitting_ideal",
    "image_in_free",
    "mu_local",
    "presentation_of_embedded",
    "quotient_by_generators",
    "theta_image",
    "FractionalIdeal",
    "NormCertificate",
    "det0",
    "find_psi",
    "fractional_inverse",
    "is_free_local",
    "is_ideal_module",
    "nonfree_locus_ideal",
    "norm_representative",
    "zak_report",
    "analytic_spread",
    "classify_module",
    "fiber_cone",
    "rees_presentation",
    "reduction_number",
    "BourbakiResult",
    "generic_bourbaki",
    "hilbert_burch_check",
    "verify_bourbaki",
]
