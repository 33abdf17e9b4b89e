class SchurLabError(ValueError):
    """Base class for rejected inputs."""


class ContextMismatch(SchurLabError):
    pass


class AxiomViolation(SchurLabError):
    """A Schur-ring axiom failed; ``witness`` holds a JSON-ready counterexample."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class WedgeCompatibilityError(SchurLabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}
