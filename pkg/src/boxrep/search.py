"""Node budgets and cooperative cancellation shared by the search engines."""

from __future__ import annotations

import threading

DEFAULT_BUDGET = 10**7


class BudgetExhausted(RuntimeError):
    """A search ran out of nodes before finishing; no conclusion is implied."""


class Cancelled(RuntimeError):
    pass


class CancelToken:
    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()


class Budget:
    """Counts search nodes; raises :class:`BudgetExhausted` past ``limit``."""

    def __init__(self, limit: int | None = DEFAULT_BUDGET, token: CancelToken | None = None) -> None:
        self.limit = limit
        self.used = 0
        self.token = token

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"node budget {self.limit} exhausted")
        if self.token is not None and self.token.cancelled:
            raise Cancelled("search cancelled")


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)
