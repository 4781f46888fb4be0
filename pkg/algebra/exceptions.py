class AlgebraError(Exception):
    pass


class PoleAtEvaluationError(AlgebraError):
    pass


class ExpansionError(AlgebraError):
    pass
