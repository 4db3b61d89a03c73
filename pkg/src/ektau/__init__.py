"""Numerical toolkit for constant mean curvature surfaces in the homogeneous
three-manifolds E(kappa, tau): ambient charts, surface invariants, the
Abresch-Rosenberg differential and its Codazzi pair, curves on surfaces and
intersection checks, and a gallery of reference surfaces."""

from .ambient import AmbientChart, ChartKind, DomainError, ParameterError, SpaceParams, cartan, hyperboloid, polar
from .arpair import ARData, FundamentalPair, ar_operator, codazzi_residual, holomorphy_residual, milnor_check
from .surface import ExprImmersion, Immersion, JetImmersion, point_geometry

__version__ = "0.1.0"

__all__ = [
    "AmbientChart", "ChartKind", "DomainError", "ParameterError", "SpaceParams", "cartan", "hyperboloid", "polar",
    "ARData", "FundamentalPair", "ar_operator", "codazzi_residual", "holomorphy_residual", "milnor_check",
    "ExprImmersion", "Immersion", "JetImmersion", "point_geometry",
]
