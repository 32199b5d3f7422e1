class InconsistencyError(RuntimeError):
    """Two independent computations that must agree did not.

    Raised on enumeration identity violations or method disagreement; the CLI
    maps it to exit status 3.
    """
