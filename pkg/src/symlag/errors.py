"""Exception types shared across the package."""


class SymlagError(Exception):
    """Base class for all symlag-specific errors."""


class DimensionMismatchError(SymlagError, ValueError):
    """Operands live in different dimensions n."""


class DuplicatePointError(SymlagError, ValueError):
    """A node set was given the same point twice."""


class NotSymmetricError(SymlagError, ValueError):
    """A set is not closed under coordinate/variable permutation.

    Carries a witness: ``item`` is in the set but ``permutation`` maps it
    outside the set.
    """

    def __init__(self, item, permutation, kind="point"):
        self.item = item
        self.permutation = permutation
        self.kind = kind
        super().__init__(
            f"set is not symmetric: applying {permutation.cycle_notation()} to "
            f"the {kind} {item} leaves the set"
        )


class SizeMismatchError(SymlagError, ValueError):
    """Basis size and node count differ (unisolvence needs them equal)."""


class CapacityError(SymlagError, RuntimeError):
    """An operation that enumerates all n! permutations was asked for an n
    above its configured limit."""


class SingularMatrixError(SymlagError, ArithmeticError):
    """An exact linear solve hit a singular matrix that the theory promises
    is invertible; indicates a bug, not bad input."""
