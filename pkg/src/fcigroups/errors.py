"""Exception types shared across the package."""


class SpecError(ValueError):
    """A group specification is malformed or internally inconsistent."""


class OrderCapError(RuntimeError):
    """A requested construction would exceed the configured group-order cap."""
