"""Exception hierarchy shared by all solvlie modules."""


class SolvLieError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(SolvLieError, ValueError):
    pass


class NotPrimeError(SolvLieError, ValueError):
    pass


class AmbientMismatchError(SolvLieError, ValueError):
    pass


class UnsupportedFieldError(SolvLieError):
    """The requested operation is only exact over prime fields."""


class BudgetExceededError(SolvLieError):
    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class JacobiViolation(SolvLieError, ValueError):
    def __init__(self, i, j, k):
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class AntisymmetryViolation(SolvLieError, ValueError):
    def __init__(self, i, j, k=None):
        if i == j:
            msg = f"[e{i}, e{i}] has nonzero coefficient on e{k}"
        else:
            msg = f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]"
        super().__init__(msg)
        self.indices = (i, j, k)


class NotSolvableError(SolvLieError, ValueError):
    def __init__(self, term):
        super().__init__(f"derived series stabilises at a nonzero term of dimension {term.dim}")
        self.term = term


class NotAnIdealError(SolvLieError, ValueError):
    pass


class NotARepresentationError(SolvLieError, ValueError):
    def __init__(self, a, b):
        super().__init__(f"rep([e{a}, e{b}]) != [rep(e{a}), rep(e{b})]")
        self.pair = (a, b)


class PreconditionError(SolvLieError, ValueError):
    pass


class TheoremViolation(SolvLieError, AssertionError):
    """A computation contradicts a result that must hold; always a bug."""


class RetryLimitExceeded(SolvLieError):
    pass


class UnknownNameError(SolvLieError, KeyError):
    pass


class ParseError(SolvLieError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field
