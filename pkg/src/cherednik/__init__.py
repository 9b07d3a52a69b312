"""Exact construction and certification of singular polynomials for rational
Cherednik algebras, via Saito flat coordinates and via Dunkl operators."""
from .coxeter import RootSystem, build_root_system, is_invariant, module_span, parse_group, reflect_poly
from .dunkl import check_commutativity, dunkl_all, dunkl_apply, is_singular
from .field import ExtElement, FieldContext, generalized_binomial, mpq, parse_rational
from .linalg import PolySpan, solve_linear_exact
from .poly import MultiPoly, PolyMatrix
from .residues import ComplexGroupSpec, complex_dunkl_apply, complex_singular_family, residue_twisted_period
from .saito import SaitoFrame, basic_invariants, express_in_invariants, saito_frame, verify_saito
from .shift import (
    SingularFamily,
    homogeneous_twisted_periods,
    isotypic_singular_space,
    singular_family,
    twisted_period_pde_check,
    xi_shift,
)

__all__ = [
    "RootSystem", "build_root_system", "parse_group", "is_invariant", "module_span", "reflect_poly",
    "dunkl_apply", "dunkl_all", "is_singular", "check_commutativity",
    "ExtElement", "FieldContext", "generalized_binomial", "mpq", "parse_rational",
    "PolySpan", "solve_linear_exact", "MultiPoly", "PolyMatrix",
    "ComplexGroupSpec", "complex_dunkl_apply", "complex_singular_family", "residue_twisted_period",
    "SaitoFrame", "basic_invariants", "express_in_invariants", "saito_frame", "verify_saito",
    "SingularFamily", "singular_family", "xi_shift", "twisted_period_pde_check",
    "homogeneous_twisted_periods", "isotypic_singular_space",
]

__version__ = "0.1.0"
