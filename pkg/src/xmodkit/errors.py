"""Shared exception types.

Every failure mode is loud: searches that run out of budget raise instead of
silently truncating, and internal consistency violations (things that should
be impossible if the algebra is right) get their own type so they are never
mistaken for ordinary input errors.
"""


class GroupError(ValueError):
    """Structurally invalid input: bad table, non-hom images, non-normal subset."""


class DefinitionError(ValueError):
    """Malformed definition file; carries a line number in the message."""


class BudgetExhausted(RuntimeError):
    """A backtracking search hit its node budget before finishing.

    Distinct from proven nonexistence: callers that complete their search
    space return None / empty instead.
    """


class InvariantBreach(RuntimeError):
    """An internally-derivable fact failed to hold; indicates a bug, not bad input."""
