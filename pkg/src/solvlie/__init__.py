"""Exact computations with finite-dimensional solvable Lie algebras."""
from .catalog import catalog, sup
from .chief import c_count, chief_series, conjugacy_classes, m_count, minimal_ideals, primitivity
from .classify import classify, classify_naN, decompose, is_A_algebra, is_extreme, is_minimal_non_N
from .constructions import direct_sum, random_solvable, semidirect, split_extension
from .errors import SolvLieError, TheoremViolation
from .exactlin import QQ, FieldSpec, Subspace
from .liealg import LieAlgebra, derivations, ideal_tests, induced, quotient
from .serialize import dumps, load, loads
from .series import (
    frattini,
    frattini_series,
    lower_series,
    maximal_subalgebras,
    nilpotent_length,
    nilradical,
    upper_nilpotent_series,
)

__all__ = [
    "QQ", "FieldSpec", "Subspace", "LieAlgebra", "SolvLieError", "TheoremViolation",
    "catalog", "sup", "random_solvable", "semidirect", "split_extension", "direct_sum",
    "dumps", "loads", "load", "derivations", "ideal_tests", "induced", "quotient",
    "nilradical", "upper_nilpotent_series", "nilpotent_length", "lower_series",
    "maximal_subalgebras", "frattini", "frattini_series",
    "minimal_ideals", "chief_series", "c_count", "m_count", "conjugacy_classes", "primitivity",
    "is_extreme", "is_minimal_non_N", "is_A_algebra", "decompose", "classify", "classify_naN",
]
