"""Exception hierarchy shared by every module of the package."""


class NonArchError(Exception):
    """Base class for all errors raised by :mod:`nonarch`."""


class RadiusOutOfCertificate(NonArchError):
    """A truncated series cannot certify the maximum term at this radius."""


class ZeroPolynomial(NonArchError, ValueError):
    pass


class ZeroFunction(NonArchError, ValueError):
    pass


class DivisionByZeroFunction(NonArchError, ZeroDivisionError):
    pass


class DegenerateMap(NonArchError, ValueError):
    pass


class IdentityMapForDelta(NonArchError, ValueError):
    pass


class NonUnitMap(NonArchError, ValueError):
    """A shift or difference operator was built from a map with |a| != 1."""


class ArityMismatch(NonArchError, ValueError):
    pass


class ZeroDiffPoly(NonArchError, ValueError):
    pass


class ZeroDivisor(NonArchError, ZeroDivisionError):
    pass


class LadderMismatch(NonArchError, ValueError):
    pass


class PreconditionWindow(NonArchError):
    """A radius lies inside the disk excluded by the lemma being applied."""


class ShiftedPoleCoincidence(NonArchError):
    """A zero of B(f) meets a pole of a shifted operand.

    At such points the pole of Omega is not paid for by the coefficients,
    so the strict valence inequality is not a per-radius identity.
    """


class NotASolution(NonArchError):
    pass


class TargetIsSolution(NonArchError):
    pass


class NotPolynomialInF(NonArchError):
    pass


class DegenerateComposition(NonArchError):
    pass


class GenerationFailure(NonArchError):
    pass


class ContextViolation(NonArchError, ValueError):
    pass


class ExprSyntaxError(NonArchError):
    """Parse failure carrying the byte offset and the set of expected tokens."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class HypothesisViolation(NonArchError, ValueError):
    """An instance does not meet a theorem's standing hypotheses."""
