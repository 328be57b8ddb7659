"""Exception types shared across the package."""


class OscspecError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(OscspecError):
    """Invalid or incomplete model parameters."""


class PoleEvaluationError(OscspecError):
    """Evaluation requested at a pole of the momentum function."""

    def __init__(self, pole: complex, message: str = ""):
        self.pole = pole
        super().__init__(message or f"evaluation at pole z={pole}")


class NoClassicalRegionError(OscspecError):
    """A radicand of the two-term condition is negative.

    ``radicand`` names which square root failed.
    """

    def __init__(self, radicand: str, value: float):
        self.radicand = radicand
        self.value = value
        super().__init__(f"negative radicand {radicand} = {value:g}: no classical region")


class BranchStepError(OscspecError):
    """Branch continuation step too large; caller must refine the path."""


class QuadratureError(OscspecError):
    """Circle quadrature failed to converge; carries diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class NoBoundStateError(OscspecError):
    """No bound state exists for the requested quantum numbers."""


class ResolutionError(OscspecError):
    """Radial grid too coarse for a reliable node count."""


class DomainError(OscspecError):
    """Coordinate outside the open radial domain."""
