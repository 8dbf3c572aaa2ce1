"""Exception hierarchy shared by all modules."""


class SepmodError(Exception):
    """Base class for every error raised by the package."""


class PointSyntaxError(SepmodError, ValueError):
    pass


class FormulaSyntaxError(SepmodError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownSymbolError(SepmodError, ValueError):
    pass


class ArityError(SepmodError, ValueError):
    pass


class SortError(SepmodError, ValueError):
    """A point or symbol does not belong to the structure it is used with."""


class QuantifierBudgetError(SepmodError):
    """Quantifier depth exceeds the configured resource budget."""


class PreconditionError(SepmodError, ValueError):
    """A partial definition or theorem was applied outside its domain.

    ``code`` is a short machine-readable tag, e.g. ``"x2-in-Z"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class HypothesesUnmetError(PreconditionError):
    """The structure's metadata flags rule out the requested criterion."""

    def __init__(self, message: str):
        super().__init__("theorem-hypotheses-unmet", message)


class InconsistentTypeError(SepmodError, ValueError):
    pass


class NoAdmissibleWitness(SepmodError):
    """The witness search failed; carries the closure transcript."""

    def __init__(self, message: str, transcript: list):
        super().__init__(message)
        self.transcript = transcript


class SeparationRefused(SepmodError):
    """The separation criterion fails, so no separating submodel exists.

    ``certificate`` lists the offending closure elements with provenance.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate
