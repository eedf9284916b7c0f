"""Exception hierarchy shared by all modules."""


class KahlerCohError(Exception):
    pass


class InvalidPointError(KahlerCohError, ValueError):
    pass


class ChartMismatchError(KahlerCohError, ValueError):
    pass


class DegenerateGeodesicError(KahlerCohError, ValueError):
    pass


class DegenerateTriangleError(KahlerCohError, ValueError):
    pass


class AccuracyError(KahlerCohError, ArithmeticError):
    """Quadrature failed to converge; ``residual`` holds the last change seen."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual estimate {residual:.3e})")
        self.residual = residual


class InvalidParameterError(KahlerCohError, ValueError):
    pass


class FrameVanishingError(KahlerCohError, ValueError):
    pass


class DegenerateBasisError(KahlerCohError, ValueError):
    pass


class VeryAmplenessError(KahlerCohError, ValueError):
    pass


class InfiniteDiastasisError(KahlerCohError, ValueError):
    pass


class ArityError(KahlerCohError, ValueError):
    pass


class NotARootError(KahlerCohError, ValueError):
    pass


class ConfigError(KahlerCohError, ValueError):
    pass
