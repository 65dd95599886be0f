class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ResourceLimitError(RuntimeError):
    """Raised when a request would exceed a configured size or compute cap.

    ``cap`` names the binding limit so callers can report which knob to raise.
    """

    def __init__(self, message, cap):
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap
