"""Exception hierarchy.

``InputError`` covers malformed input (bad syntax, wrong shapes); the CLI
maps it to exit status 2.  ``DomainError`` covers well-formed input that
violates a mathematical precondition; the CLI maps it to exit status 1.
"""


class HyperhodgeError(Exception):
    pass


class InputError(HyperhodgeError, ValueError):
    pass


class DomainError(HyperhodgeError, ValueError):
    pass


class DimensionMismatch(InputError):
    pass


class PolynomialSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class NonHomogeneous(InputError):
    pass


class VariableOutOfRange(InputError):
    pass


class DegreeMismatch(DomainError):
    def __init__(self, expected: int, got: int, what: str = "numerator"):
        self.expected = expected
        self.got = got
        super().__init__(f"degree mismatch: {what} must have degree {expected}, got {got}")


class SingularHypersurface(DomainError):
    def __init__(self, degree: int, defect: int):
        self.degree = degree
        self.defect = defect
        super().__init__(
            f"singular hypersurface: Jacobian quotient has dimension {defect} "
            f"in degree {degree} (expected 0)"
        )


class DegreeTooSmall(DomainError):
    pass


class PoleOrderOutOfRange(DomainError):
    pass


class PoleOrderOne(DomainError):
    pass


class NotInIdeal(DomainError):
    pass


class MixedContexts(DomainError):
    pass


class InvalidComplex(DomainError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invalid filtered complex: {invariant}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class TooManyFiltrationLevels(DomainError):
    pass
