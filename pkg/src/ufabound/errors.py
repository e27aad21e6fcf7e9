class CapacityError(ValueError):
    """Raised when an exact computation is requested beyond the supported size."""
