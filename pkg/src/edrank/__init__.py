"""Certified symmetric-rank lower bounds for essential dimension of split groups.

The pipeline per family: character lattice and roots, a grading into F_p^d,
the grading-preserving Weyl subgroup W(eps), orbit-size constants, and the
bound ``ed(G; p) >= C1*d1 + C2*d2 - dim T``.
"""

from .bounds import BoundCertificate, derive_bound, theorem_table
from .lattices import Family, build_lattice, enumerate_roots
from .gradings import build_grading
from .weyl import build_w_eps

__all__ = [
    "BoundCertificate",
    "Family",
    "build_grading",
    "build_lattice",
    "build_w_eps",
    "derive_bound",
    "enumerate_roots",
    "theorem_table",
]
__version__ = "0.1.0"
