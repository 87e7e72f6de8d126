"""Exception types shared across the package."""


class VTwistError(Exception):
    """Base class for all errors raised by vtwist."""


class Truncated(VTwistError):
    """A requested coefficient lies outside the certified window or materialized blocks."""


class IntegralUndefined(VTwistError):
    """Integration from 0 to x was asked to integrate an x^{-1} or log term."""


class IrrationalSpectrum(VTwistError):
    """A weight block has an eigenvalue that is not rational."""


class NotNilpotent(VTwistError):
    """An operator expected to be nilpotent has nonvanishing powers."""


class RequiresFiniteOrder(VTwistError):
    """A check needs pure x^{1/k} powers without logarithms."""


class NonIntegralPairing(VTwistError):
    """An exponential vertex operator was applied across a non-integral pairing."""


class GeneratorAbsent(VTwistError):
    """The screening generator does not lie in the chosen algebra variant."""


class NotProportional(VTwistError):
    """Y_1(u)u is not a multiple of the vacuum."""


class NotInvertible(VTwistError, ZeroDivisionError):
    """Division by zero or by a scalar involving tau."""


class ConfigError(VTwistError):
    """Invalid run configuration."""
