"""Budget guard shared by the enumeration engines."""


class BudgetExceededError(RuntimeError):
    """Raised instead of silently running an enumeration forever."""


DEFAULT_ENUMERATION_BUDGET = 10 ** 8   # hash insertions / enumerated points
DEFAULT_COUNT_BUDGET = 3 * 10 ** 7    # [1,N]^n keys held in memory at once


def check_budget(work: int, budget: int, what: str):
    if work > budget:
        raise BudgetExceededError(
            f"{what} needs {work} enumeration steps, over the budget of {budget}"
        )
