class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class InvariantViolation(RuntimeError):
    """A geometric invariant that should hold for cyclic polytopes failed."""


class BudgetExceeded(RuntimeError):
    """Lattice enumeration would visit more cells than the configured budget."""

    def __init__(self, cells: int, budget: int):
        self.cells = cells
        self.budget = budget
        super().__init__(f"enumeration box has {cells} cells, budget is {budget}")
