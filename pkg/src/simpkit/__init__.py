"""simpkit: abstract simplicial complexes, their invariants and a searchable catalog."""
from .complex import (SimplicialComplex, cycle, euler_characteristic, f_vector, from_facets, is_connected,
                      is_pseudomanifold, join, link, neighborliness, simplex_boundary, simplex_complex,
                      skeleton, star)
from .errors import (CatalogError, FormatVersionError, InvalidFaceError, InvalidMoveError, ParseError,
                     PreconditionError, QueryError, SimpkitError)
from .homology import (betti_numbers_mod_p, homology, intersection_form, intersection_form_parity,
                       intersection_form_signature, is_orientable)
from .permgroups import Permutation, PermGroup, automorphism_group, complex_from_generators
from .matching import find_isomorphism, is_isomorphic
from .bistellar import AnnealingParams, Move, apply_move, is_manifold, move_options, randomize, reduce
from .fpgroup import fundamental_group, fundamental_group_presentation, simplify_presentation
from .morse import is_perfect, is_tight, morse_multiplicity, tightness
from .slicing import slicing

__version__ = "0.1.0"

__all__ = [
    "__version__", "SimplicialComplex", "cycle", "euler_characteristic", "f_vector", "from_facets",
    "is_connected", "is_pseudomanifold", "join", "link", "neighborliness", "simplex_boundary",
    "simplex_complex", "skeleton", "star", "CatalogError", "FormatVersionError",
    "InvalidFaceError", "InvalidMoveError", "ParseError", "PreconditionError", "QueryError",
    "SimpkitError", "betti_numbers_mod_p", "homology", "intersection_form",
    "intersection_form_parity", "intersection_form_signature", "is_orientable", "Permutation",
    "PermGroup", "automorphism_group", "complex_from_generators", "find_isomorphism",
    "is_isomorphic", "AnnealingParams", "Move", "apply_move", "is_manifold", "move_options",
    "randomize", "reduce", "fundamental_group", "fundamental_group_presentation",
    "simplify_presentation", "is_perfect", "is_tight", "morse_multiplicity", "tightness",
    "slicing",
]
