class FactorError(Exception):
    pass


class DegenerateDensityError(FactorError):
    pass


class ShapeUnsupportedError(FactorError):
    pass


class ShapeTooLargeForEnsembleError(FactorError):
    pass


class UnsupportedWalkLengthError(FactorError):
    pass
