"""Exact intersection theory at infinity for affine surfaces with a cyclic boundary."""

from .boundary import (BoundaryGraph, Curve, Free, Satellite, Shape, Verdict, blow_up, classify_surface,
                       contract, euler_invariant, h0_log_canonical, k_delta_pairing, minimize_cycle,
                       parse_boundary)
from .circle import EdgePoint, Vertex, z_class, z_kdelta, z_self_intersection
from .lattice import QuadraticInteger, SymForm, dominant_quadratic, dual_basis, fit_recurrence, inertia
from .markov import MarkovSurface, lambda_of_word, maxplus_degrees, orbit, smoothness_screen, vieta
from .quadratic import QuadNum
from .torus import MonomialMap, dynamical_degree, eigenvaluations

__version__ = "0.1.0"

__all__ = [
    "BoundaryGraph", "Curve", "Free", "Satellite", "Shape", "Verdict", "blow_up", "classify_surface",
    "contract", "euler_invariant", "h0_log_canonical", "k_delta_pairing", "minimize_cycle", "parse_boundary",
    "EdgePoint", "Vertex", "z_class", "z_kdelta", "z_self_intersection",
    "QuadraticInteger", "SymForm", "dominant_quadratic", "dual_basis", "fit_recurrence", "inertia",
    "MarkovSurface", "lambda_of_word", "maxplus_degrees", "orbit", "smoothness_screen", "vieta",
    "QuadNum", "MonomialMap", "dynamical_degree", "eigenvaluations",
]
