"""Exception types shared across the package."""


class MacdimError(Exception):
    pass


class DivisionByZero(MacdimError, ZeroDivisionError):
    pass


class PoleAtSpecialization(MacdimError):
    pass


class TruncationMismatch(MacdimError):
    pass


class DegenerateSpectrum(MacdimError):
    pass


class SingularEigenvalue(MacdimError):
    pass


class ModeOutOfSupport(MacdimError):
    pass


class ModeBelowM0(MacdimError):
    pass


class WindowOverflow(MacdimError):
    pass


class NotContained(MacdimError):
    pass


class ConvergenceFailure(MacdimError):
    pass


class InvalidConfig(MacdimError):
    pass
