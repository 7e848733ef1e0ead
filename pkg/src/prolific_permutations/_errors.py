"""Contains the exceptions raised by the library.

Every exception derives from :class:`ProlificError`. The CLI maps the three families to exit codes:
:class:`InputError` to 1, :class:`BudgetExceededError` to 2 and :class:`InvariantViolationError` to 3.
"""


class ProlificError(Exception):
    """Base class of all errors raised by this package."""


class InputError(ProlificError, ValueError):
    """An argument violates the precondition of an operation."""


class MalformedInputError(InputError):
    """A permutation text contains a token that is not an integer."""


class NotAPermutationError(InputError):
    """A sequence of integers is not a bijection on [n]."""


class IndexOutOfRangeError(InputError):
    """An index lies outside of [n]."""


class InvalidPairError(InputError):
    """A point pair does not consist of two distinct positions of the permutation."""


class DeletesEverythingError(InputError):
    """A deletion would remove every entry of the permutation."""


class SizeOneError(InputError):
    """The breadth of a permutation of size one is undefined."""


class KOutOfRangeError(InputError):
    """The number of deleted entries k is not in the range [1, n)."""


class TooLargeError(InputError):
    """An exhaustive subset enumeration exceeds its guard."""


class NotDisjointError(InputError):
    """The index sets of a witness overlap, but a chain graph needs disjoint sets."""


class InvalidWitnessError(InputError):
    """The index sets of a witness do not yield equal deletion patterns."""


class TooSmallError(InputError):
    """A permutation is too small for the growth insertion."""


class ExtensionParityError(InputError):
    """Extended diamond tiles only exist for odd k."""


class DegenerateBoxError(InputError):
    """A density domain has zero area."""


class BudgetExceededError(ProlificError, RuntimeError):
    """A search exceeded its node or wall-clock budget."""


class InvariantViolationError(ProlificError, RuntimeError):
    """A proved property failed at runtime."""
