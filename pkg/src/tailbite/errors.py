class ConfigurationError(ValueError):
    """Raised for invalid code definitions, channel or decoder settings."""
