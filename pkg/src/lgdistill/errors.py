"""Exception hierarchy shared across the package."""


class LGDError(Exception):
    """Base class for every error raised by lgdistill."""


class DataError(LGDError):
    """Input data is malformed or inconsistent (CLI exit code 2)."""


class InvalidCode(DataError):
    pass


class DuplicateLanguage(DataError):
    pass


class UnknownLanguage(DataError):
    pass


class SelfLoop(DataError):
    pass


class InvalidGraph(DataError):
    pass


class InvalidConfig(DataError):
    pass


class UnknownConcept(DataError):
    pass


class AlignmentError(DataError):
    """Two sequences that must line up do not."""

    def __init__(self, message, *counts):
        super().__init__(message)
        self.counts = counts


class EmptyInput(DataError):
    pass


class EmptyTrainingSet(DataError):
    pass


class MissingEntry(LGDError):
    pass


class UntrainedDirection(LGDError):
    """A translation direction was requested that the model never learned.

    ``hop`` is the index of the offending hop when raised from a multi-hop
    pipeline, otherwise None.
    """

    def __init__(self, src, tgt, hop=None):
        where = f" (hop {hop})" if hop is not None else ""
        super().__init__(f"direction {src}->{tgt} is not trained{where}")
        self.src = src
        self.tgt = tgt
        self.hop = hop


class RunAborted(LGDError):
    """An iteration failed; ``reports`` holds the iterations that completed."""

    def __init__(self, message, reports):
        super().__init__(message)
        self.reports = reports
