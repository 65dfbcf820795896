"""Exception hierarchy shared by every module."""


class FactoriadError(Exception):
    """Base class for all library errors."""


class CategoryError(FactoriadError):
    """Malformed category data: incomplete tables, unknown names, broken laws."""


class CongruenceError(FactoriadError):
    """A proposed partition is not a congruence (or not a partition at all)."""


class FactorisationError(FactoriadError):
    """A factorisation-system invariant failed where it was assumed to hold."""


class PreconditionError(FactoriadError):
    """An operation was called on input that violates its stated precondition."""


class ConsistencyError(FactoriadError):
    """Two independent computations that must agree did not."""


class SizeGuardError(FactoriadError):
    """The input is larger than the configured exhaustive-search bound."""
