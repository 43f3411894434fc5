"""Exception hierarchy shared by all domfam modules."""


class DomfamError(Exception):
    """Base class for every error raised by this package."""


class InputError(DomfamError, ValueError):
    """Malformed or out-of-contract input."""


class EmptyFamily(InputError):
    pass


class EmptySet(InputError):
    def __init__(self, index: int):
        super().__init__(f"set #{index} is empty")
        self.index = index


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotDominant(InputError):
    pass


class SingletonFamily(InputError):
    pass


class NotSquarefree(InputError):
    pass


class OutOfRange(InputError):
    pass


class NonDivisorInA(InputError):
    pass


class NotATaylorMultidegree(InputError):
    pass


class CapExceeded(DomfamError):
    """An enumeration would exceed its configured size cap."""


class FamilyTooLarge(CapExceeded):
    pass


class UnionTooLarge(CapExceeded):
    pass


class TooManyInputs(CapExceeded):
    pass


class LcmOverflow(CapExceeded):
    pass


class NoApplicableMethod(CapExceeded):
    pass


class ConsistencyError(DomfamError):
    """Two routes that must agree did not. Always an implementation bug."""


class TheoremViolation(ConsistencyError):
    pass


class MethodDisagreement(ConsistencyError):
    pass
