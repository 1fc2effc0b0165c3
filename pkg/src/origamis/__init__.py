"""Census and modular-group classification of origamis.

An origami of degree d is a triple (x, y, eps): two gluing permutations of
d unit squares plus a per-square sign, describing a half-translation
surface tiled by squares.  The package enumerates all connected origamis
of a degree, groups them into isomorphism classes, computes the action of
the modular group generators T and S on the classes, assembles
Teichmueller-curve components with their invariants (stratum, index,
valency, curve genus) and reports which components remain indistinguishable
by those invariants.
"""
from .perms import (
    DegreeMismatch,
    Partition,
    Permutation,
    SignVector,
    SignedPermutation,
    canonical_x,
    partitions,
    twisted_power,
)
from .model import (
    CoverMap,
    DisconnectedOrigami,
    DoubleCover,
    MalformedCover,
    Origami,
    double_cover,
    is_abelian,
    is_connected,
    restore,
)
from .classify import (
    Census,
    ClassNotFound,
    NotCanonical,
    OrigamiClass,
    census,
    find_class,
    restricted_class,
    restricted_class_sweep,
    stabilizer_x,
)

__all__ = [
    "Census",
    "ClassNotFound",
    "CoverMap",
    "DegreeMismatch",
    "DisconnectedOrigami",
    "DoubleCover",
    "MalformedCover",
    "NotCanonical",
    "Origami",
    "OrigamiClass",
    "Partition",
    "Permutation",
    "SignVector",
    "SignedPermutation",
    "canonical_x",
    "census",
    "double_cover",
    "find_class",
    "is_abelian",
    "is_connected",
    "partitions",
    "restore",
    "restricted_class",
    "restricted_class_sweep",
    "stabilizer_x",
    "twisted_power",
]

__version__ = "0.1.0"
