"""Exception hierarchy.

Input errors (bad literals, unsupported sizes) map to CLI exit code 2;
precondition errors (the mathematics refuses the input) map to exit code 3.
"""


class CritPairError(Exception):
    """Base class for every error raised by this package."""


class InputError(CritPairError, ValueError):
    exit_code = 2


class PreconditionError(CritPairError, ValueError):
    exit_code = 3


# -- group construction / parsing ------------------------------------------

class EmptyFactors(InputError):
    pass


class FactorBelowTwo(InputError):
    pass


class OrderCapExceeded(InputError):
    pass


class ParseError(InputError):
    pass


class UnknownTheorem(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


# -- mathematical preconditions --------------------------------------------

class EmptySet(PreconditionError):
    pass


class GroupMismatch(PreconditionError):
    pass


class NotASubgroup(PreconditionError):
    pass


class ZeroNotInS(PreconditionError):
    pass


class NotGenerating(PreconditionError):
    pass


class NotSeparable(PreconditionError):
    pass


class UnsupportedK(PreconditionError):
    pass


class NotAFragment(PreconditionError):
    pass


class NotACover(PreconditionError):
    pass


class FragmentOverflow(PreconditionError):
    pass


class HypothesesUnmet(PreconditionError):
    pass


class HypothesisViolation(PreconditionError):
    """An input fails one named clause of a theorem's hypotheses."""

    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or clause)


# -- theorem failures (data, never silently dropped) ------------------------

class TheoremViolation(CritPairError):
    """A computed identity that must hold did not."""

    exit_code = 1


class NoWitnessFound(TheoremViolation):
    """No subgroup satisfies the structure conclusion: a genuine counterexample."""


class CacheMismatch(CritPairError):
    """A cached result differs from a fresh recomputation."""

    exit_code = 1
