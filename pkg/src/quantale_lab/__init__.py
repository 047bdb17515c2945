"""Finite quantales, Sup tensor products, quotients and quantized topologies."""

from .catalog import catalog, catalog_names, enumerate_strictly_quantized, q2
from .errors import ParseError, QuantaleLabError
from .order import FiniteLattice, SupMap, validate_lattice
from .qnt import export_qnt, load_qnt, parse_qnt
from .quantale import (
    Quantale,
    find_isomorphism,
    property_report,
    quantale_from_names,
    validate_quantale,
)
from .quotients import coequalizer, quantic_frame_check, spectrum_pushout
from .tensor import tensor_quantale
from .topology import QTopology, generate_topology, quantic_frame_topologize, spectral_topology

__all__ = [
    "FiniteLattice",
    "ParseError",
    "QTopology",
    "Quantale",
    "QuantaleLabError",
    "SupMap",
    "catalog",
    "catalog_names",
    "coequalizer",
    "enumerate_strictly_quantized",
    "export_qnt",
    "find_isomorphism",
    "generate_topology",
    "load_qnt",
    "parse_qnt",
    "property_report",
    "q2",
    "quantale_from_names",
    "quantic_frame_check",
    "quantic_frame_topologize",
    "spectral_topology",
    "spectrum_pushout",
    "tensor_quantale",
    "validate_lattice",
    "validate_quantale",
]
