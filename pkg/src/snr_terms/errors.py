"""SNR evaluation errors."""


class ModelViolationError(RuntimeError):
    """An SNR denominator is not positive, so the model gives no finite SNR."""
