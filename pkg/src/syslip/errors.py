"""Error taxonomy shared by the library, service, and CLI.

DomainError marks a violated mathematical precondition (bad input, vacuous
bound).  FalsificationError marks a checked inequality that failed on a
constructed object; the CLI maps it to its own exit status so automation can
tell "bug" apart from "bound violated by this configuration".
"""


class DomainError(ValueError):
    """A mathematical precondition does not hold for the given input."""


class FalsificationError(RuntimeError):
    """A certified inequality failed on a constructed instance."""
