class StatsError(Exception):
    pass


class InsufficientDataError(StatsError):
    pass


class StarShapeError(StatsError):
    pass
