"""Search budgets for the exponential enumerations (mainly L(U))."""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar

DEFAULT_BUDGET = 10**6
ENV_VAR = "INVCORR_BUDGET"

_usage: ContextVar[list[int] | None] = ContextVar("invcorr_usage", default=None)


def resolve_budget(budget: int | None = None) -> int:
    """Explicit argument wins, then the environment, then the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def charge(nodes: int) -> None:
    acc = _usage.get()
    if acc is not None:
        acc[0] += nodes


@contextmanager
def track_usage():
    """Collect the number of search nodes charged inside the block."""
    acc = [0]
    token = _usage.set(acc)
    try:
        yield acc
    finally:
        _usage.reset(token)
