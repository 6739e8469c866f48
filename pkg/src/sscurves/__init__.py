"""Automorphism groups of superspecial genus-4 curves over F_11."""

from .autgrp import AutGroupResult, ProjAutomorphism, automorphism_group
from .catalog import CurveRecord, load_catalog, verify_form_partition
from .ff import GF11, FiniteField, prime_field
from .galois import frobenius_map, galois_report, sigma_conjugacy_classes, sigma_stabilizer
from .groebner import groebner, lex_basis, solve_zero_dimensional
from .grpid import GroupName, identify, identify_group, is_isomorphic
from .massfm import curve_mass_sum, mass_indecomposable, mass_total
from .mpoly import MultiPoly, parse_poly
from .ortho import QuadraticForm, bruhat_patterns

__all__ = [
    "AutGroupResult", "ProjAutomorphism", "automorphism_group",
    "CurveRecord", "load_catalog", "verify_form_partition",
    "GF11", "FiniteField", "prime_field",
    "frobenius_map", "galois_report", "sigma_conjugacy_classes", "sigma_stabilizer",
    "groebner", "lex_basis", "solve_zero_dimensional",
    "GroupName", "identify", "identify_group", "is_isomorphic",
    "curve_mass_sum", "mass_indecomposable", "mass_total",
    "MultiPoly", "parse_poly",
    "QuadraticForm", "bruhat_patterns",
]
