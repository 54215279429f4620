"""Exception hierarchy shared by every module in the package."""


class AutShiftError(Exception):
    """Base class; ``code`` is a short machine-readable tag used in reports."""

    code = "error"


class NotEventuallyConstantLeft(AutShiftError):
    code = "not-eventually-constant-left"


class ConstantConfiguration(AutShiftError):
    code = "constant-configuration"


class NotInOmegaZero(AutShiftError):
    code = "not-in-omega-zero"


class InvariantViolation(AutShiftError):
    code = "invariant-violation"


class ImageDegenerate(AutShiftError):
    code = "image-degenerate"


class WindowTooLarge(AutShiftError):
    code = "window-too-large"


class MissingInverse(AutShiftError):
    code = "missing-inverse"


class UnverifiedScheme(AutShiftError):
    code = "unverified-scheme"


class PrefixDegenerate(AutShiftError):
    code = "prefix-degenerate"


class CollapseFailed(AutShiftError):
    code = "collapse-failed"


class SearchExhausted(AutShiftError):
    code = "search-exhausted"


class CollisionConstraint(AutShiftError):
    code = "collision-constraint"

    def __init__(self, message, pair=None, symbols=None):
        super().__init__(message)
        self.pair = pair
        self.symbols = symbols


class InjectivityRadiusInsufficient(AutShiftError):
    code = "injectivity-radius-insufficient"

    def __init__(self, message, threshold=None):
        super().__init__(message)
        self.threshold = threshold


class DSLError(AutShiftError):
    """Parse failure positioned at ``line``/``column`` (both 1-based)."""

    code = "syntax"

    def __init__(self, message, line=0, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class LengthMismatch(DSLError):
    code = "length-mismatch"


class NonBijective(DSLError):
    code = "non-bijective"


class SymbolOutOfAlphabet(DSLError):
    code = "symbol-out-of-alphabet"


class LiteralInvariantViolation(DSLError, InvariantViolation):
    code = "invariant-violation"
