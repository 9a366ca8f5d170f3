class GuardExceeded(RuntimeError):
    """A computation would exceed its configured size limit."""
