"""Exact normal forms and weak Hopf structure for the d-type weak quantum
algebras attached to a symmetrizable Cartan matrix."""

from .algebra import Element, TypeSequence, build_relations
from .cartan import CartanData, cartan_type, validate
from .coeff import Q, LaurentPoly, RationalFunctionQ, q_binomial, q_factorial, q_int
from .hopf import WeakHopf
from .parsing import ParseError, parse
from .rewrite import DegreeOverflow, RewriteSystem, build_system, quotient_J0, quotient_J1

__version__ = "0.1.0"

__all__ = [
    "Element",
    "TypeSequence",
    "build_relations",
    "CartanData",
    "cartan_type",
    "validate",
    "Q",
    "LaurentPoly",
    "RationalFunctionQ",
    "q_int",
    "q_factorial",
    "q_binomial",
    "WeakHopf",
    "ParseError",
    "parse",
    "DegreeOverflow",
    "RewriteSystem",
    "build_system",
    "quotient_J0",
    "quotient_J1",
]
