"""Exception hierarchy shared by every layer of the package."""


class MeasureCompletionError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInterval(MeasureCompletionError, ValueError):
    """An interval bound violates ``0 <= lo < hi <= 1``."""


class ModelMismatch(MeasureCompletionError, TypeError):
    """Operands belong to different measure algebras."""


class NotCauchy(MeasureCompletionError):
    """A sampled pair of stages violates the declared Cauchy modulus."""


class BadCertificate(MeasureCompletionError):
    """A join certificate's tail bound failed a sampled check."""


class NotDisjoint(MeasureCompletionError):
    """Items expected to be pairwise disjoint overlap at the tested tolerance."""


class InvalidScenario(MeasureCompletionError, ValueError):
    """Unknown scenario name or out-of-range scenario parameter."""


class ParseError(MeasureCompletionError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
