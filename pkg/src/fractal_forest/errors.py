"""Exception types shared across the package."""


class CapabilityError(Exception):
    """A request exceeds a hard size/level cap (symbolic blow-up guard)."""


class DecimationSingularError(Exception):
    """The decimation denominator vanished; the rational map is undefined here."""


class VerificationMismatch(Exception):
    """Two methods that must agree exactly produced different values."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}
