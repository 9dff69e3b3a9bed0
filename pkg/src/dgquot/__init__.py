"""Exact computations with small DG categories: pretriangulated hulls,
DG quotients and Ext tables in the quotient."""

from dgquot.linalg import Field, QQ, GF
from dgquot.complexes import Complex, ChainMap, cohomology, cone_complex, shift, tensor, hom, solve_homotopy
from dgquot.category import DGCategory, DGFunctor, validate, opposite, tensor_categories, ext_table
from dgquot.ext import ExtTable
from dgquot.pretr import TwistedComplex, cone, cone_of_morphism, ext_tr, pretr_table
from dgquot.free import FreeCategory, FreeFunctor, free_category, semi_free_resolve_category, free_to_table
from dgquot.modules import (DGModule, yoneda, restrict, induce, module_tensor, module_hom, semi_free_resolve,
                            bar_resolution, in_right_orthogonal)
from dgquot.quotient import (QuotientCategory, drinfeld_quotient, quotient_hom_truncated, quotient_ext,
                             exact_degrees, cone_formula_ext, verdier_ext_via_orthogonal, cross_check,
                             is_dg_quotient)
from dgquot.io import load, loads, dumps

__all__ = [
    "Field", "QQ", "GF",
    "Complex", "ChainMap", "cohomology", "cone_complex", "shift", "tensor", "hom", "solve_homotopy",
    "DGCategory", "DGFunctor", "validate", "opposite", "tensor_categories", "ext_table",
    "ExtTable",
    "TwistedComplex", "cone", "cone_of_morphism", "ext_tr", "pretr_table",
    "FreeCategory", "FreeFunctor", "free_category", "semi_free_resolve_category", "free_to_table",
    "DGModule", "yoneda", "restrict", "induce", "module_tensor", "module_hom", "semi_free_resolve",
    "bar_resolution", "in_right_orthogonal",
    "QuotientCategory", "drinfeld_quotient", "quotient_hom_truncated", "quotient_ext", "exact_degrees",
    "cone_formula_ext", "verdier_ext_via_orthogonal", "cross_check", "is_dg_quotient",
    "load", "loads", "dumps",
]

__version__ = "0.1.0"
