"""Exception hierarchy shared by every module."""


class SfmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SfmError, ValueError):
    """A value lies outside a domain, or a domain is malformed."""


class AssignmentError(SfmError, ValueError):
    """An assignment is incomplete, binds unknown nodes, or has the wrong key set."""


class EvalError(SfmError):
    """A structural function could not be evaluated on the given inputs."""


class InvalidModelError(SfmError):
    """An operation that requires a valid model was handed an invalid one."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid model: " + "; ".join(str(v) for v in report.violations))


class CycleError(SfmError):
    """The graph has a directed cycle; ``cycle`` is one witness path."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle: " + ",".join(self.cycle))


class CompositionError(SfmError):
    """Parts disagree on a shared node, so their union is not a model."""


class SubModelError(SfmError):
    """Requested sub-model would cut a parent of a node kept endogenous."""


class UnsupportedEnumerationError(SfmError):
    """Enumeration was requested over a real-line domain."""


class BudgetExceededError(SfmError):
    """An enumeration would exceed the configured assignment budget."""


class UnpermittedFragmentError(SfmError):
    """The fragment has no extension in the team."""


class ConstructionError(SfmError):
    """A set of functional determinations cannot be turned into models."""


class UnsatisfiedWorldError(SfmError):
    """A world that must satisfy the model does not."""

    def __init__(self, message, diff=None):
        self.diff = dict(diff or {})
        super().__init__(message)


class ProbabilityError(SfmError):
    """Malformed distribution or probabilistic extension."""
