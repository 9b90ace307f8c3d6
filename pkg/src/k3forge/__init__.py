"""Exact-arithmetic toolkit for even lattices, Niemeier frames and the
Weierstrass calculus of elliptic fibrations on a singular K3 surface."""

from .lattice import (
    EmbeddingMatrix,
    FiniteQuadraticForm,
    Lattice,
    discriminant_form,
    fqf_match,
    is_primitive,
    orthogonal_complement,
    overlattices,
    primitive_closure,
    root_type,
)
from . import niemeier
from .niemeier import NiemeierLattice, catalog_names
from .fibration import Frame, embedding_from_recipe, frame, frame_from_recipe, verify_table
from .weierstrass import (
    WeierstrassCurve,
    bad_places,
    fiber_configuration,
    height,
    height_pairing,
    kodaira_type,
    shioda_tate_disc,
    torsion_order,
)
from .isogeny import three_isogeny, two_isogeny, verify_transformation

__all__ = [
    "EmbeddingMatrix", "FiniteQuadraticForm", "Lattice", "discriminant_form",
    "fqf_match", "is_primitive", "orthogonal_complement", "overlattices",
    "primitive_closure", "root_type", "NiemeierLattice", "catalog_names",
    "niemeier", "Frame", "embedding_from_recipe", "frame", "frame_from_recipe",
    "verify_table", "WeierstrassCurve", "bad_places", "fiber_configuration",
    "height", "height_pairing", "kodaira_type", "shioda_tate_disc",
    "torsion_order", "three_isogeny", "two_isogeny", "verify_transformation",
]
