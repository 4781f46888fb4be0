class GraphError(Exception):
    pass


class TooLargeError(GraphError):
    pass


class HypothesisViolationError(GraphError):
    pass
