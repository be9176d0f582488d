"""Exception hierarchy shared by the library, the service and the CLI.

Every error carries a stable machine-readable ``code`` so that the HTTP
layer and the CLI can surface failures uniformly.
"""


class PrimTowerError(Exception):
    code = "error"

    def __init__(self, message, **data):
        super().__init__(message)
        self.message = message
        self.data = data

    def to_json(self):
        return {"code": self.code, "message": self.message, "data": self.data}


class ParseError(PrimTowerError):
    code = "parse_error"

    def __init__(self, message, position):
        super().__init__(message, position=position)
        self.position = position


class UnknownSymbolError(PrimTowerError):
    code = "unknown_symbol"

    def __init__(self, name):
        super().__init__(f"unknown symbol {name!r}", name=name)
        self.name = name


class DuplicateNameError(PrimTowerError):
    code = "duplicate_name"


class ZeroDenominatorError(PrimTowerError):
    code = "zero_division"


class NonPrimitiveError(PrimTowerError):
    """The candidate generator's derivative is already a derivative below it."""

    code = "non_primitive"

    def __init__(self, level, name):
        super().__init__(
            f"level {level} ({name!r}) is not primitive: its derivative "
            "reduces to remainder 0 in the field below",
            level=level,
            name=name,
        )
        self.level = level


class ResourceLimitError(PrimTowerError):
    code = "resource_limit"


class NotSimpleError(PrimTowerError):
    code = "not_simple"


class NotARemainderError(PrimTowerError):
    code = "not_a_remainder"


class SetupError(PrimTowerError):
    code = "setup_error"


class CommutationError(SetupError):
    code = "commutation_failed"


class InvalidSuiteError(PrimTowerError):
    code = "invalid_suite"
