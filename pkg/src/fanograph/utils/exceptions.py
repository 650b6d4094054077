"""Custom exceptions for the fanograph package."""


class GraphParseError(ValueError):
    """Exception raised when a graph description cannot be parsed.

    Covers malformed edge-list lines, out-of-range endpoints, self-loops, duplicate edges, graph6 bytes
    outside the printable range, and nonzero padding bits.
    """


class InvalidGraphError(ValueError):
    """Exception raised when a graph or node set does not meet an operation's preconditions."""


class InconsistentFanError(RuntimeError):
    """Exception raised when a fan or wall violates smooth complete fan theory.

    This never happens for valid graphical inputs; seeing it means an enumeration or arithmetic bug.
    """


class BudgetExceededError(RuntimeError):
    """Exception raised when the nested-set search exceeds its node budget.

    Parameters
    ----------
    budget : int
        The budget that was exceeded.

    """

    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"Nested-set search exceeded the budget of {budget:,} search nodes")


class MethodDisagreementError(RuntimeError):
    """Exception raised when wall-based and theorem-based classification disagree."""


class InvalidWitnessError(ValueError):
    """Exception raised when a witness does not induce the forbidden subgraph it claims."""


class NoWitnessError(LookupError):
    """Exception raised when a witness is requested for a weak Fano graph."""
