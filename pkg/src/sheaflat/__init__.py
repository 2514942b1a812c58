"""Exact sheaf homology on finite graded atomic lattices, with hyperplane
arrangement generators and the deletion/restriction verification suite."""

from .arrangements import (
    Arrangement,
    ArrangementLattice,
    CharPoly,
    beta_additivity_check,
    beta_invariant,
    braid,
    build_lattice,
    char_poly,
    charpoly_deletion_restriction_check,
    coordinate,
    from_file,
    full_field,
    parse_arrangement,
    sub_arrangement,
)
from .broken_circuits import BCResult, bc_complex, simplicial_homology
from .complexes import (
    AUGMENTATION,
    ChainComplex,
    ChainMap,
    HomologyProfile,
    chain_complex_S,
    chain_complex_T,
    homology,
    homology_data,
)
from .deletion_restriction import (
    LESData,
    LESReport,
    deletion_restriction_les,
    fiber_lemma_check,
    lusztig_homology,
    natural_sheaf_homology,
    reduced_les_check,
)
from .errors import (
    AmbientMismatch,
    ArrangementParseError,
    AugmentationIncompatible,
    MapNotMonotone,
    NotALattice,
    NotAnAtom,
    NotComparable,
    NotGeometric,
    NotGraded,
    NotWellDefined,
    RankTooSmall,
    SheafDomainMismatch,
    SheafLatError,
    SurjectivityHypothesisFails,
    VerificationError,
)
from .fields import QQ, Field
from .lattices import (
    Lattice,
    deletion,
    find_dependent_atom,
    is_atomic,
    is_boolean,
    is_geometric,
    is_independent,
    restriction,
)
from .linalg import Matrix, Subspace, kernel_basis, rank, rref
from .posets import Chain, Poset, covers, enumerate_chains, interval, mobius, up_set
from .sheaves import Sheaf, constant_sheaf, modify_at_top, natural_sheaf, restrict_sheaf

__all__ = [name for name in dir() if not name.startswith("_")]
