"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the physical/mathematical domain of an operation."""


class ModelError(ValueError):
    """The constructed model is unphysical (e.g. a confined system with a zero mode)."""


class ComputationError(RuntimeError):
    """A numerical routine failed to meet its accuracy or convergence contract."""


class BoundaryError(ValueError):
    """A result sits on a grid boundary where interpolation is undefined."""
