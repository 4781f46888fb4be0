class ProofcheckError(Exception):
    pass


class DomainViolationError(ProofcheckError):
    pass
