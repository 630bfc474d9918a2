from .command import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, command_handler

__all__ = ["EXIT_OK", "EXIT_USAGE", "EXIT_VERIFY", "command_handler"]
