import argparse
import logging

import pytest

from smemsynth.base import LibraryParseError, SMemSynthError, UnknownVariantError, UsageError, VerificationFailure
from smemsynth.decorators import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, command_handler
from smemsynth.helpers import RunConfig, parse_bounds
from smemsynth.utils import clog2, is_pow2, log2, mask, onehot_index, parallel_map, pow2_upto
from smemsynth.utils.config import Config
from smemsynth.utils.logger import PaddedLevelFormatter


def test_bit_helpers():
    assert [value for value in range(20) if is_pow2(value)] == [1, 2, 4, 8, 16]
    assert log2(64) == 6
    with pytest.raises(ValueError):
        log2(48)
    assert [clog2(value) for value in (0, 1, 2, 3, 5, 8)] == [0, 0, 1, 2, 3, 3]
    assert list(pow2_upto(20)) == [1, 2, 4, 8, 16]
    assert mask(0) == 0 and mask(4) == 0xF
    assert onehot_index(0) == -1
    assert onehot_index(0b1000) == 3
    with pytest.raises(ValueError):
        onehot_index(0b1010)


def test_config_defaults(monkeypatch):
    for key in ("SMEMSYNTH_THREADS", "SMEMSYNTH_LOG_LEVEL", "SMEMSYNTH_LOG_FILE", "SMEMSYNTH_LIB_BOUNDS"):
        monkeypatch.delenv(key, raising=False)
    config = Config()

    assert config.THREADS == 1
    assert config.LOG_LEVEL == "INFO"
    assert config.LOG_FILE == ""
    assert config.LIB_BOUNDS == (8, 64)


@pytest.mark.parametrize(
    "key, value",
    [
        ("SMEMSYNTH_THREADS", "0"),
        ("SMEMSYNTH_LOG_LEVEL", "chatty"),
        ("SMEMSYNTH_LIB_BOUNDS", "64,8"),
        ("SMEMSYNTH_LIB_BOUNDS", "eight"),
    ],
)
def test_config_rejects_invalid_values(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ValueError, match=f"{key}: Invalid"):
        Config()


def test_level_names_are_padded():
    formatter = PaddedLevelFormatter(fmt="%(levelname)s|%(message)s")

    def render(level):
        return formatter.format(logging.LogRecord("smemsynth", level, __file__, 1, "hi", None, None))

    assert render(logging.WARNING) == "WARN |hi"
    assert render(logging.INFO) == "INFO |hi"
    assert render(logging.ERROR) == "ERROR|hi"


@pytest.mark.parametrize("threads", [1, 4])
def test_parallel_map_keeps_input_order(threads):
    assert parallel_map(lambda value: value * value, range(50), threads=threads) == [value * value for value in range(50)]
    assert parallel_map(str, [], threads=threads) == []


def test_errors_carry_their_message():
    error = LibraryParseError("missing field", "macros[0].B")

    assert isinstance(error, SMemSynthError)
    assert error.message == "macros[0].B: missing field"
    assert error.location == "macros[0].B"
    assert str(UnknownVariantError("ba_9x9 not in library")) == "ba_9x9 not in library"


def test_parse_bounds():
    assert parse_bounds("1,2,4,8") == (1, 2, 4, 8)
    for text in ("1,2,4", "0,1,1,1", "a,b,c,d"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_bounds(text)


def test_run_config_from_args(tmp_path):
    args = argparse.Namespace(command="explore", out=str(tmp_path), seed=3, spec=None, lib=None, ar_tol=0.1, extra=7)
    run = RunConfig.from_args(args)

    assert run.out == tmp_path
    assert run.seed == 3
    assert run.ar_tol == 0.1
    assert run.options == {"spec": None, "lib": None, "extra": 7}
    with pytest.raises(UsageError):
        run.validate(("spec",))


def _handler(exc=None):
    @command_handler()
    def body(run):
        if exc is not None:
            raise exc

    return body


@pytest.mark.parametrize(
    "exc, code",
    [
        (None, EXIT_OK),
        (VerificationFailure("2 mismatches"), EXIT_VERIFY),
        (UsageError("--spec is required"), EXIT_USAGE),
        (FileNotFoundError("gone"), EXIT_USAGE),
    ],
)
def test_command_handler_exit_codes(tmp_path, exc, code):
    args = argparse.Namespace(command="test", out=str(tmp_path))
    assert _handler(exc)(args) == code


def test_command_handler_lets_bugs_through(tmp_path):
    with pytest.raises(ZeroDivisionError):
        _handler(ZeroDivisionError())(argparse.Namespace(command="test", out=str(tmp_path)))
