class InputError(ValueError):
    """Malformed input or a violated precondition. The CLI maps it to exit code 2."""


class MissingClosure(InputError):
    """The family lacks a closure property an operation depends on."""


class RepresentationRejected(Exception):
    """A representation gate failed. Carries the failing verdict."""

    def __init__(self, verdict):
        super().__init__(f"{verdict.condition} fails")
        self.verdict = verdict
