"""Clifford and quantum Clifford-Hopf algebras, conformal maps and relation checking."""

__version__ = "0.1.0"

from .blocks import Mat2
from .conformal import (
    Paravector,
    VahlenMatrix,
    chart_iso,
    conformality,
    embed_point,
    klein_residual,
    make_map,
    mobius,
    quadric_point,
    twisted_adjoint,
    vahlen_check,
)
from .hopfalg import TensorElement, antipode, coproduct, counit, hopf_check
from .kappagen import (
    GeneratorSet,
    Relation,
    RelationSuite,
    conformal_generators,
    deformed_generators,
    kappa_generators,
    nilpotent_arg,
    suite,
)
from .mvcore import (
    CL13,
    CL24,
    CL30,
    CL41,
    Multivector,
    Signature,
    blade,
    contract,
    gmul,
    grade_project,
    involute,
    series_apply,
    wedge,
)
from .qdeform import (
    Deformation,
    bcontract,
    bmul,
    dotted_wedge,
    periodicity_assemble,
    periodicity_split,
    wick,
    wick_iso_check,
)
