"""Exception hierarchy shared by every module."""

from __future__ import annotations


class NilcxError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class MathematicalNegative(NilcxError):
    """A well-posed question whose answer is 'no' (CLI exit code 1)."""


class DivisionByZero(NilcxError, ZeroDivisionError):
    pass


class PoleAtPoint(NilcxError):
    pass


class ScalarSyntaxError(NilcxError, ValueError):
    def __init__(self, msg: str, text: str = "", position: int = 0):
        self.position = position
        self.text = text
        super().__init__(f"{msg} at position {position}")


class AmbientMismatch(NilcxError, ValueError):
    pass


class NotConjugationStable(NilcxError, ValueError):
    pass


class DimensionMismatch(NilcxError, ValueError):
    pass


class JacobiFailure(NilcxError, ValueError):
    def __init__(self, msg: str, witness=None):
        self.witness = witness
        super().__init__(msg)


class NotNilpotent(NilcxError):
    pass


class NotAnIdeal(NilcxError, ValueError):
    pass


class NotAlmostComplex(NilcxError, ValueError):
    pass


class NotIntegrable(MathematicalNegative):
    pass


class OracleDisagreement(NilcxError, AssertionError):
    """Two independent computations of the same object disagree -- always a bug."""


class BadFiltration(NilcxError, ValueError):
    pass


class SamplerExhausted(NilcxError):
    pass


class HypothesisViolated(MathematicalNegative):
    pass


class UnknownEntry(NilcxError, KeyError):
    pass


class SalamonSyntaxError(NilcxError, ValueError):
    def __init__(self, msg: str, text: str = "", position: int = 0):
        self.position = position
        self.text = text
        super().__init__(f"{msg} at position {position}")


class DimensionTooLarge(NilcxError, ValueError):
    pass
