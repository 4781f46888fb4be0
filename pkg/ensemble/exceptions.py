class EnsembleError(Exception):
    pass


class InfeasibleError(EnsembleError):
    pass


class EnumerationTooLargeError(EnsembleError):
    pass
