"""Exact LHom(H) solvers."""
from .bruteforce import enumerate_homomorphisms, solve_bruteforce
from .cliquebased import solve_cliquebased
from .cliques import enumerate_clique_colorings
from .instance import (
    InstanceFile,
    InstanceFormatError,
    ListInstance,
    SolveResult,
    Stats,
    verify_homomorphism,
)
from .preprocess import Reduced, preprocess
from .string import PredatorPresent, solve_string
from .twosat import solve_2sat

__all__ = [
    "InstanceFile",
    "InstanceFormatError",
    "ListInstance",
    "PredatorPresent",
    "Reduced",
    "SolveResult",
    "Stats",
    "enumerate_clique_colorings",
    "enumerate_homomorphisms",
    "preprocess",
    "solve_2sat",
    "solve_bruteforce",
    "solve_cliquebased",
    "solve_string",
    "verify_homomorphism",
]
