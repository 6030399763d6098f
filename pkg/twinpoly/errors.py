class PosetFileError(ValueError):
    """
    Malformed poset file.

    Parameters
    ----------
    message : str
        What went wrong.
    lineno : int, optional
        The 1-based line at fault. When given, the message is prefixed with it.

    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapacityError(ValueError):
    """Input beyond a size bound configured in `twinpoly.config`."""


class DimensionError(ValueError):
    """Point set that does not affinely span its ambient space."""


class UnboundedError(ValueError):
    """H-representation whose solution set is unbounded."""
