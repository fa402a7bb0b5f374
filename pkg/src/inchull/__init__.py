"""Planar convex hulls under point insertion.

Insertion-only upper/lower hull maintenance with pluggable arithmetic
kernels, several interchangeable hull containers (flat vector, balanced
trees, logarithmic bucket composites), point/line queries against single
hulls and against bucket unions, reproducible dataset generation, and a
benchmark command line.
"""

from inchull.datagen import (
    GENERATOR_KINDS,
    GeneratorSpec,
    PointFileError,
    dump_points,
    generate,
    load_points,
)
from inchull.hull_core import HullContractError
from inchull.logmethod import (
    STRUCTURE_NAMES,
    LogStructure,
    contains_combined,
    line_intersect_combined,
    make_structure,
)
from inchull.predicates import (
    DegenerateInputError,
    KernelKind,
    PredicateError,
)
from inchull.stores import AvlStore, BtreeStore, VectorStore

__version__ = "0.1.0"

__all__ = [
    "GENERATOR_KINDS",
    "GeneratorSpec",
    "PointFileError",
    "dump_points",
    "generate",
    "load_points",
    "HullContractError",
    "STRUCTURE_NAMES",
    "LogStructure",
    "contains_combined",
    "line_intersect_combined",
    "make_structure",
    "DegenerateInputError",
    "KernelKind",
    "PredicateError",
    "AvlStore",
    "BtreeStore",
    "VectorStore",
    "__version__",
]
