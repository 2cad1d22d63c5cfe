"""Exception types shared across the toolkit.

Every mathematically meaningful failure gets its own class so callers (and
the CLI exit-code mapping) can distinguish input errors from genuine
mathematical failures.
"""


class GpakitError(Exception):
    """Base class for all toolkit errors."""


class InputError(GpakitError):
    """Malformed input (files, encodings, element strings). CLI exit code 3."""


class MathFailure(GpakitError):
    """A mathematical check failed. CLI exit code 2."""


# -- number fields ------------------------------------------------------------

class NoRootNearApprox(InputError):
    pass


class NotSquarefree(InputError):
    pass


class AmbiguousRoot(InputError):
    pass


class MixedFields(InputError):
    pass


class DivisionByZero(GpakitError, ZeroDivisionError):
    pass


class ZeroDivisorEncountered(MathFailure):
    """The minimal polynomial turned out to be reducible (caught lazily)."""


class NegativeInput(InputError):
    pass


# -- graphs -------------------------------------------------------------------

class GrammarError(InputError):
    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (at byte {offset})")
        self.offset = offset


class RowLengthMismatch(GrammarError):
    pass


class DualsNotInvolution(InputError):
    pass


class InconsistentDelta(MathFailure):
    pass


class BadShadingWord(InputError):
    pass


# -- planar algebra -----------------------------------------------------------

class BoundaryMismatch(InputError):
    pass


class MixedGraphs(InputError):
    pass


class UnknownLoop(InputError):
    pass


class MissingCell(InputError):
    pass


class ZeroGaugeValue(InputError):
    pass


class NotInvertibleBlock(MathFailure):
    """A connection block is not square or not invertible over the field."""


# -- derivation tooling -------------------------------------------------------

class InconsistentNorms(MathFailure):
    pass


class Underdetermined(MathFailure):
    def __init__(self, message, stuck_cells=()):
        super().__init__(message)
        self.stuck_cells = tuple(stuck_cells)


class DiscriminantNotSquare(MathFailure):
    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class NoSolution(MathFailure):
    pass


class PatternNotApplicable(MathFailure):
    pass


# -- odometer -----------------------------------------------------------------

class DimsUnavailable(MathFailure):
    pass


class BudgetExceeded(GpakitError):
    """Search budget exhausted. CLI exit code 4. Carries the partial result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
