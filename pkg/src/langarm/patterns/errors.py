"""Exceptions raised by the control-pattern grammar layer."""


class PatternError(Exception):
    """Base class for every pattern parse/validate/serialize failure."""


class MissingAxis(PatternError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"pattern text is missing the {label} axis line")


class DuplicateAxis(PatternError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"axis {label} appears more than once")


class LexError(PatternError):
    def __init__(self, position: int, text: str = ""):
        self.position = position
        snippet = text[position : position + 8]
        super().__init__(f"cannot lex token at position {position}: {snippet!r}")


class UnsupportedExpression(PatternError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"unsupported pattern expression: {text!r}")


class LengthMismatch(PatternError):
    def __init__(self, axis: str, expected: int, got: int):
        self.axis = axis
        self.expected = expected
        self.got = got
        super().__init__(
            f"axis {axis} expands to {got} steps, expected {expected} (strict mode)"
        )


class NotRepresentable(PatternError):
    def __init__(self, reason: str):
        super().__init__(reason)


class PatternValidationError(PatternError):
    def __init__(self, reason: str):
        super().__init__(reason)
