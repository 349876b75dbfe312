"""Exact cohomology of nilpotent Lie algebras and their free nilpotent extensions."""

from .linalg import GF, QQ, Field, Matrix, Subspace, nullspace, rref
from .lie import (
    AlgebraHom,
    LieAlgebra,
    center,
    derivation_algebra_dim,
    h1_adjoint_dim,
    inner_derivations_dim,
    lower_central_series,
    nilpotency_class,
    product_subspace,
    type_of,
    validate,
)
from .free import (
    FreeNilpotent,
    build_free,
    canonical_inclusion,
    f3_monomials,
    ideal_closure,
    normalize_bracket,
    truncation_projection,
    witt_dim,
)
from .modules import (
    GModule,
    adjoint_module,
    ascending_filtration,
    equivariant_hom,
    equivariant_hom_dim,
    induced_quotient_module,
    pullback_module,
    trivial_module,
)
from .cohomology import (
    betti,
    cocycles_vanish_on_center_derived,
    cohomology,
    differential,
    filtered_cochains,
    filtered_h2,
    induced_map_h2,
)
from .extensions import (
    class_of_extension,
    cocycle_from_extension,
    extension_from_cocycle,
    extensions_equivalent,
    pullback,
)
from .presentation import (
    b2_formulas,
    betti_bounds,
    build_free_extension,
    central_extension_criterion,
    central_quotient_betti_identity,
    equivalence_automorphism,
    exact_sequence_identity,
    filtration_via_kernel,
    kernel_generators_check,
    length,
    two_step_closed_forms,
)

from .io import read_algebra, write_algebra
from .catalog import abelian, build, heisenberg, load_catalog

__version__ = "0.1.0"

__all__ = [
    "abelian",
    "adjoint_module",
    "AlgebraHom",
    "ascending_filtration",
    "b2_formulas",
    "betti",
    "betti_bounds",
    "build",
    "build_free",
    "build_free_extension",
    "canonical_inclusion",
    "center",
    "central_extension_criterion",
    "central_quotient_betti_identity",
    "class_of_extension",
    "cocycle_from_extension",
    "cocycles_vanish_on_center_derived",
    "cohomology",
    "derivation_algebra_dim",
    "differential",
    "equivalence_automorphism",
    "equivariant_hom",
    "equivariant_hom_dim",
    "exact_sequence_identity",
    "extension_from_cocycle",
    "extensions_equivalent",
    "f3_monomials",
    "Field",
    "filtered_cochains",
    "filtered_h2",
    "filtration_via_kernel",
    "FreeNilpotent",
    "GF",
    "GModule",
    "h1_adjoint_dim",
    "heisenberg",
    "ideal_closure",
    "induced_map_h2",
    "induced_quotient_module",
    "inner_derivations_dim",
    "kernel_generators_check",
    "length",
    "LieAlgebra",
    "load_catalog",
    "lower_central_series",
    "Matrix",
    "nilpotency_class",
    "normalize_bracket",
    "nullspace",
    "product_subspace",
    "pullback",
    "pullback_module",
    "QQ",
    "read_algebra",
    "rref",
    "Subspace",
    "trivial_module",
    "truncation_projection",
    "two_step_closed_forms",
    "type_of",
    "validate",
    "witt_dim",
    "write_algebra",
]
