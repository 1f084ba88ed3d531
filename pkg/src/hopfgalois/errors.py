"""Exception hierarchy shared by every module of the package."""


class HopfGaloisError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(HopfGaloisError, ValueError):
    pass


class FieldMismatch(HopfGaloisError, ValueError):
    pass


class AxiomFailure(HopfGaloisError):
    """A structural identity failed; ``witness`` names the first failing case."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotGalois(HopfGaloisError):
    """The canonical map is not bijective, or the extension is not free."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(HopfGaloisError):
    """A search space is larger than the configured enumeration cap."""


class UnsupportedField(HopfGaloisError):
    """The requested enumeration needs a finite field."""


class ParseError(HopfGaloisError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))
