"""Exception hierarchy. Every error carries a short machine-readable ``code``
which the command line prints as ``error: <code>: <message>``."""


class GenConcError(Exception):
    code = "error"


class KetSyntaxError(GenConcError, ValueError):
    code = "syntax"

    def __init__(self, offset: int, expected: str, found: str | None = None):
        self.offset = offset
        self.expected = expected
        self.found = found
        msg = f"offset {offset}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)


class DimensionMismatch(GenConcError, ValueError):
    code = "dims"


class WrongDims(DimensionMismatch):
    pass


class ZeroState(GenConcError, ValueError):
    code = "zero_state"


class LengthMismatch(GenConcError, ValueError):
    code = "length"


class BadSubset(GenConcError, ValueError):
    code = "subset"


class DimTooLarge(GenConcError, ValueError):
    code = "too_large"


class NoConvergence(GenConcError, ArithmeticError):
    code = "no_convergence"


class UnsupportedParams(GenConcError, ValueError):
    code = "unsupported"


class StateFileError(GenConcError, ValueError):
    code = "format"
