"""Exact volume of the cyclopermutohedron, two ways, plus the Abel identity behind it."""

from .abel import (
    IntPolynomial,
    abel_polynomial,
    p_polynomial,
    p_sequence,
    q_n,
    q_n_routes,
    rooted_forest_counts,
)
from .forests import (
    DecoratedForest,
    collection_determinant,
    cp_volume_forest_route,
    enumerate_decorated_forests,
    enumerate_forests,
    forest_determinant,
    forest_determinant_closed_form,
    is_decorated_forest,
    reduce_forest,
)
from .linalg import bareiss_det
from .zonotope import (
    Segment,
    SegmentFamily,
    VolumeCoefficient,
    VolumeResult,
    convex_hull_volume,
    cp_volume_determinant_route,
    cyclopermutohedron_family,
    permutohedron_family,
    q_vector,
    r_vector,
    zonotope_volume,
    zonotope_volume_polynomial,
)

__all__ = [
    "DecoratedForest",
    "IntPolynomial",
    "Segment",
    "SegmentFamily",
    "VolumeCoefficient",
    "VolumeResult",
    "abel_polynomial",
    "bareiss_det",
    "collection_determinant",
    "convex_hull_volume",
    "cp_volume_determinant_route",
    "cp_volume_forest_route",
    "cyclopermutohedron_family",
    "enumerate_decorated_forests",
    "enumerate_forests",
    "forest_determinant",
    "forest_determinant_closed_form",
    "is_decorated_forest",
    "p_polynomial",
    "permutohedron_family",
    "p_sequence",
    "q_n",
    "q_n_routes",
    "q_vector",
    "r_vector",
    "reduce_forest",
    "rooted_forest_counts",
    "zonotope_volume",
    "zonotope_volume_polynomial",
]
