"""Exception hierarchy.

``DomainError`` covers invalid mathematical input (CLI exit code 1),
``SolverError`` covers resource/solver failures (exit code 3).
"""


class CaptransError(Exception):
    pass


class DomainError(CaptransError, ValueError):
    pass


class UniverseTooLarge(DomainError):
    pass


class CapacityError(DomainError):
    pass


class BoundaryViolation(CapacityError):
    pass


class MonotonicityViolation(CapacityError):
    def __init__(self, subset, superset, message):
        super().__init__(message)
        self.pair = (subset, superset)


class NegativeValue(CapacityError):
    pass


class NotAMeasure(CapacityError):
    pass


class NotBelief(DomainError):
    pass


class TotalMassMismatch(DomainError):
    pass


class MarginalMismatch(DomainError):
    pass


class KappaTooSmall(DomainError):
    pass


class KappaOrderViolation(KappaTooSmall):
    pass


class NegativeWeightOnAbs(DomainError):
    pass


class SolverError(CaptransError):
    pass


class IterationLimit(SolverError):
    pass


class InternalSolverError(SolverError):
    """A solver status that the mathematics rules out (e.g. an infeasible
    (max,+) transport problem)."""


class OracleError(CaptransError):
    pass


class TooLarge(OracleError):
    pass


class InfeasibleEverywhere(OracleError):
    pass


class UnboundedOracle(OracleError):
    pass


class ParseError(CaptransError):
    """Malformed input file (CLI exit code 2)."""
