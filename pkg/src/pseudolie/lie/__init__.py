from .algebra import AlgebraError, LieAlgebra, Subspace, abelian, heisenberg, validate
from .structure import (
    StructureReport,
    center,
    centralizer,
    classify_structure,
    derivations,
    derived_algebra,
    derived_series,
    direct_sum,
    is_ideal,
    is_semisimple,
    is_simple,
    killing_form,
    lower_central_series,
    nilradical,
    product_ideal,
    quotient,
    upper_central_series,
)
