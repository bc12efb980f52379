"""Borel orbit combinatorics of abelian ideals.

Enumerates abelian ideals of the positive roots through minuscule elements
of the affine Weyl group, parametrizes the orbit decomposition of each
ideal by orthogonal root subsets, and computes orbit dimensions and the
closure order through the Bruhat order on the attached involutions.
"""

from .affine import AffineRoot, AffineWeylElement, AffineWeylGroup
from .involutions import (
    AdmissiblePair,
    Involution,
    OrthogonalSet,
    Report,
    involution_length,
    make_admissible_pair,
    make_orthogonal_set,
    orthogonal_subsets,
    reflection_product,
)
from .minuscule import (
    AbelianIdeal,
    MinusculeElement,
    enumerate_abelian_ideals,
    enumerate_minuscule,
    ideal_to_element,
    is_minuscule,
)
from .orbits import OrbitPoset, build_orbit_poset, closure_leq, export_poset
from .roots import CartanDatum, Root, RootSystem, build_root_system, cartan_datum

__all__ = [
    "AbelianIdeal",
    "AdmissiblePair",
    "AffineRoot",
    "AffineWeylElement",
    "AffineWeylGroup",
    "CartanDatum",
    "Involution",
    "MinusculeElement",
    "OrbitPoset",
    "OrthogonalSet",
    "Report",
    "Root",
    "RootSystem",
    "build_orbit_poset",
    "build_root_system",
    "cartan_datum",
    "closure_leq",
    "enumerate_abelian_ideals",
    "enumerate_minuscule",
    "export_poset",
    "ideal_to_element",
    "involution_length",
    "is_minuscule",
    "make_admissible_pair",
    "make_orthogonal_set",
    "orthogonal_subsets",
    "reflection_product",
]
