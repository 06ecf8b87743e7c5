class HybridMeraError(RuntimeError):
    """Base class for every error raised by the hybrid MERA toolkit."""


class InvalidSizeError(HybridMeraError):
    """Raised when a site count, qubit count or matrix shape is out of range."""


class ConfigurationError(HybridMeraError):
    """Raised when a circuit or experiment configuration cannot be realized."""


class OperatorValidationError(HybridMeraError):
    """Raised when an operator is not Hermitian (or a gate not unitary) within tolerance."""


class NoiseModelError(HybridMeraError):
    """Raised when a noise model is physically inconsistent."""


class NoiseScalingError(NoiseModelError):
    """Raised when a noise model cannot be scaled by the requested strength."""


class RetractionError(HybridMeraError):
    """Raised when the SVD retraction meets a rank-deficient candidate."""


class ShadowSetError(HybridMeraError):
    """Raised when a snapshot set is empty or does not match the observable."""


class NumericalError(HybridMeraError):
    """Raised on non-finite values or energies with a non-negligible imaginary part."""
