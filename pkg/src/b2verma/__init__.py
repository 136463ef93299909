"""Exact computations in baby Verma modules for the small quantum group of type B2."""

__version__ = "0.1.0"

from .cyclotomic import CyclotomicField, CycScalar, RootOfUnityConfig, qbinom, qfact, qint
from .errors import B2Error, InvalidRootOfUnity, ParseError
from .pbw import NegativePart
from .verma import ModuleModel, Weight, build_module, composition_multiset, simple_character, simple_dim

__all__ = [
    "B2Error",
    "CycScalar",
    "CyclotomicField",
    "InvalidRootOfUnity",
    "ModuleModel",
    "NegativePart",
    "ParseError",
    "RootOfUnityConfig",
    "Weight",
    "build_module",
    "composition_multiset",
    "qbinom",
    "qfact",
    "qint",
    "simple_character",
    "simple_dim",
]
