"""Exact intersection bodies of rational polytopes.

The radial function of the intersection body at a direction x is the exact
(d-1)-volume of the polytope's central hyperplane section orthogonal to x.
Everything here is exact: coordinates are ``fractions.Fraction``, radial
pieces are rational functions delivered as canonical polynomial text, and
membership tests are decided without rounding.
"""

try:
    from ._ibody import (
        IntersectionBody,
        InternalError,
        Polytope,
        ValidationError,
        load_polytope,
        section_volume_scaled,
        __version__,
    )
except ImportError:  # in-tree runs: the extension sits on sys.path directly
    from _ibody import (
        IntersectionBody,
        InternalError,
        Polytope,
        ValidationError,
        load_polytope,
        section_volume_scaled,
        __version__,
    )

__all__ = [
    "IntersectionBody",
    "InternalError",
    "Polytope",
    "ValidationError",
    "load_polytope",
    "section_volume_scaled",
    "__version__",
]
