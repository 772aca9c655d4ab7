"""Exception types shared across the package."""


class NotStructuredError(ValueError):
    """A Gram matrix does not commute with the expected shift operator."""


class DegenerateSamplerError(RuntimeError):
    """Generator sampling kept producing near-singular lattices."""


class EmptyKernelError(ValueError):
    """A constraints matrix with zero columns cannot parameterize a search."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured desk-scale bounds."""
