"""Exception hierarchy.

User-facing problems (bad input, violated preconditions) derive from
:class:`NilhodgeError`.  :class:`InternalInconsistencyError` is reserved for a
failed re-verification of a proven statement, which always indicates a bug.
"""


class NilhodgeError(Exception):
    kind = "error"


class FieldMismatchError(NilhodgeError):
    kind = "field-mismatch"


class DimensionError(NilhodgeError):
    kind = "dimension"


class ValidationError(NilhodgeError):
    kind = "validation"


class JacobiError(ValidationError):
    kind = "jacobi"

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotNilpotentError(ValidationError):
    kind = "not-nilpotent"


class NotIdealError(ValidationError):
    kind = "not-ideal"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotIntegrableError(ValidationError):
    kind = "not-integrable"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class DegenerateParameterError(ValidationError):
    kind = "degenerate-parameter"


class DocumentError(ValidationError):
    kind = "document"


class InternalInconsistencyError(NilhodgeError):
    kind = "internal-inconsistency"
