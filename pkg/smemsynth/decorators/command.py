import argparse
import functools
from typing import Callable, Sequence

from smemsynth.base import SMemSynthError, VerificationFailure
from smemsynth.helpers import RunConfig
from smemsynth.utils import logger

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


def command_handler(
    requires: Sequence[str] = (),
) -> Callable[[Callable[[RunConfig], None]], Callable[[argparse.Namespace], int]]:
    """
    Turns a command body into an argparse handler returning an exit code.

    The wrapper builds and validates the RunConfig before the body runs, so
    missing inputs are reported before any output is written.

    Args:
        requires (Sequence[str]): RunConfig fields that must be given.

    Returns:
        Callable: A decorator. Its handler returns 0 on success, 1 when the body
        raises VerificationFailure and 2 on usage, input or I/O errors.
    """

    def decorator(func: Callable[[RunConfig], None]) -> Callable[[argparse.Namespace], int]:
        @functools.wraps(func)
        def wrapper(args: argparse.Namespace) -> int:
            command = getattr(args, "command", func.__name__)
            try:
                run = RunConfig.from_args(args)
                run.validate(requires)
                func(run)
            except VerificationFailure as exc:
                logger.error(f"{command}: {exc.message}")
                return EXIT_VERIFY
            except SMemSynthError as exc:
                logger.error(f"{command}: {exc.message}")
                return EXIT_USAGE
            except OSError as exc:
                logger.error(f"{command}: {exc}")
                return EXIT_USAGE
            return EXIT_OK

        return wrapper

    return decorator
