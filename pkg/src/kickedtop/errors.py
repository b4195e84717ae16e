"""Error types shared across the package."""


class NumericalIntegrityError(ValueError):
    """A state, distribution or operator drifted past its tolerance."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or inconsistent."""
