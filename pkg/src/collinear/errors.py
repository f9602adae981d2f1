"""Exception types shared across the package.

The CLI maps these onto process exit codes (domain 2, resource 3,
numerical 4); library code raises them directly.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(RuntimeError):
    """An enumeration or render would exceed its configured budget."""


class NumericalError(ArithmeticError):
    """An iterative numerical procedure failed to converge."""


def require_outside_unit_disk(c: complex) -> complex:
    """Validate |c| > 1 and return c as a complex number."""
    c = complex(c)
    if abs(c) <= 1.0:
        raise DomainError(f"parameter c={c} must lie strictly outside the closed unit disk")
    return c
