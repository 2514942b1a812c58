"""Exception hierarchy shared by every sheaflat module."""


class SheafLatError(Exception):
    """Base class for all library errors."""


class AmbientMismatch(SheafLatError):
    """Subspace operation on subspaces of different ambient spaces."""


class NotWellDefined(SheafLatError):
    """A map does not descend to the requested quotient."""


class NotGraded(SheafLatError):
    """The supplied order relation admits no standard grading."""


class NotComparable(SheafLatError):
    """An interval endpoint pair is not comparable."""


class NotALattice(SheafLatError):
    """A pair of elements lacks a unique join or meet."""


class NotAnAtom(SheafLatError):
    """An operation restricted to atoms received a non-atom."""


class NotGeometric(SheafLatError):
    """An operation restricted to geometric lattices received something else."""


class RankTooSmall(SheafLatError):
    """The lattice rank is below the precondition of the requested formula."""


class MapNotMonotone(SheafLatError):
    """A supplied element map is not order-preserving."""


class SheafDomainMismatch(SheafLatError):
    """A sheaf is defined on a different poset than the one supplied."""


class AugmentationIncompatible(SheafLatError):
    """Augmentation maps fail functoriality against the sheaf."""


class SurjectivityHypothesisFails(SheafLatError):
    """The colimit-to-atom map is not onto, so the reduced sequence is not available."""


class VerificationError(SheafLatError):
    """An exact identity that the library asserts internally failed to hold."""


class ArrangementParseError(SheafLatError):
    """Malformed arrangement description (carries a line number when file-based)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
