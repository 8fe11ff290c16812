"""
Exception Hierarchy
Every failure raised by the toolkit maps onto a CLI exit code.
"""
from typing import Any, Optional


class LatticeException(Exception):
    """Base exception for the toolkit"""
    exit_code: int = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.message} ({details})"


class ConfigException(LatticeException):
    """Invalid or inconsistent run configuration"""
    exit_code = 2


class ArtifactException(ConfigException):
    """Output file cannot be written or read back"""
    pass


class DomainException(LatticeException):
    """Argument outside the domain of an operation"""
    exit_code = 3


class SlowOrderUndeterminedException(DomainException):
    """No vanishing difference within the sample length"""
    pass


class StencilOrderException(DomainException):
    """Stencil applied to a sample of higher declared order"""
    pass


class InadmissibleException(LatticeException):
    """Wavenumber or scales not admissible on the integer lattice"""
    exit_code = 3

    def __init__(self, message: str, deficit: Optional[Any] = None, **context: Any):
        super().__init__(message, **context)
        self.deficit = deficit


class DegenerateException(LatticeException):
    """Degenerate parameters or carrier"""
    exit_code = 3


class RealityException(DegenerateException):
    """A reality condition of the dispersion relation is violated"""
    pass


class SingularConfigurationException(DegenerateException):
    """Quad solve or rational form hits a pole"""

    def __init__(self, message: str, site: Optional[tuple] = None, **context: Any):
        super().__init__(message, site=site, **context)
        self.site = site


class NumericalFailureException(LatticeException):
    """Numerical run failed"""
    exit_code = 4


class InstabilityException(NumericalFailureException):
    """Blow-up or step-halving disagreement"""

    def __init__(self, message: str, step: Optional[int] = None, **context: Any):
        super().__init__(message, step=step, **context)
        self.step = step


class TruncatedRunException(NumericalFailureException):
    """Packet reached the edge of the lattice window"""

    def __init__(self, message: str, last_valid_row: Optional[int] = None, **context: Any):
        super().__init__(message, last_valid_row=last_valid_row, **context)
        self.last_valid_row = last_valid_row


class DeviationException(NumericalFailureException):
    """Engine result deviates from a closed form"""
    pass


class DemodulationException(NumericalFailureException):
    """Envelope extraction impossible on the given grid"""
    pass


class PacketSizingException(NumericalFailureException):
    """Lattice window too small for the packet"""
    pass


__all__ = [
    "LatticeException",
    "ConfigException",
    "ArtifactException",
    "DomainException",
    "SlowOrderUndeterminedException",
    "StencilOrderException",
    "InadmissibleException",
    "DegenerateException",
    "RealityException",
    "SingularConfigurationException",
    "NumericalFailureException",
    "InstabilityException",
    "TruncatedRunException",
    "DeviationException",
    "DemodulationException",
    "PacketSizingException",
]
