class SkeinError(Exception):
    """Base error. `code` is a stable uppercase reason string for the CLI."""

    code = "SKEIN_ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class ParseError(SkeinError):
    code = "PARSE_ERROR"


class InconsistentCode(SkeinError):
    code = "INCONSISTENT_CODE"


class BadIndex(SkeinError):
    code = "BAD_INDEX"


class Unoriented(SkeinError):
    code = "UNORIENTED"


class IncompleteChoice(SkeinError):
    code = "INCOMPLETE_CHOICE"


class PatternNotFound(SkeinError):
    code = "PATTERN_NOT_FOUND"


class TooManyCrossings(SkeinError):
    code = "TOO_MANY_CROSSINGS"


class TooManyNodes(SkeinError):
    code = "TOO_MANY_NODES"


class DegreeTooLarge(SkeinError):
    code = "DEGREE_TOO_LARGE"


class NonIntegralComposition(SkeinError):
    code = "NON_INTEGRAL_COMPOSITION"


class OddLength(SkeinError):
    code = "ODD_LENGTH"


class SignatureMismatch(SkeinError):
    code = "SIGNATURE_MISMATCH"


class NotAProjector(SkeinError):
    code = "NOT_A_PROJECTOR"


class NonPlanar(SkeinError):
    code = "NON_PLANAR"


class MultiComponent(SkeinError):
    code = "MULTI_COMPONENT"


class DisconnectedDiagram(SkeinError):
    code = "DISCONNECTED_DIAGRAM"


class ComplexError(SkeinError):
    code = "COMPLEX_ERROR"
