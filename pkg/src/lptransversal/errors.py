"""Exceptions shared across modules."""


class BudgetExceeded(RuntimeError):
    """The instance is too large for exact enumeration under the given budget."""


class FalsificationAlarm(AssertionError):
    """A statement that the underlying theory guarantees was observed to fail.

    Never caught and repaired internally; callers surface it loudly.
    """
