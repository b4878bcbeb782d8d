"""Kuratowski, boundary and border operator monoids on finite topological spaces."""

from .topology import Subset, Topology, from_base, validate, closure, interior, boundary, border, complement

__version__ = "0.1.0"

__all__ = [
    "Subset",
    "Topology",
    "from_base",
    "validate",
    "closure",
    "interior",
    "boundary",
    "border",
    "complement",
    "__version__",
]
