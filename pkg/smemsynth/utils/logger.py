import logging
import sys
from logging.handlers import RotatingFileHandler

from .config import config


class PaddedLevelFormatter(logging.Formatter):
    def format(self, record) -> str:
        if record.levelname == "WARNING":
            record.levelname = "WARN".ljust(5)
        elif record.levelname == "INFO":
            record.levelname = record.levelname.ljust(5)

        return super().format(record)


class Logger:
    def __init__(self, log_name: str) -> None:
        self.log_name = log_name
        self.log_setup()

    def log_setup(self) -> "logging.Logger":
        log_level = getattr(logging, config.LOG_LEVEL)

        formatter = PaddedLevelFormatter(
            fmt="%(asctime)s [ %(levelname)s ] %(name)s -> %(message)s",
            datefmt="%Y-%m-%d | %X",
        )

        # stdout carries command output, logs go to stderr
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setFormatter(formatter)
        stream_handler.setLevel(log_level)

        self.log = logging.getLogger(self.log_name)
        self.log.setLevel(log_level)
        self.log.propagate = False
        if not self.log.handlers:
            self.log.addHandler(stream_handler)
            if config.LOG_FILE:
                file_handler = RotatingFileHandler(
                    config.LOG_FILE,
                    mode="a",
                    maxBytes=32768,
                    backupCount=1,
                    encoding="utf-8",
                )
                file_handler.setFormatter(formatter)
                file_handler.setLevel(log_level)
                self.log.addHandler(file_handler)

        return self.log


logger: "logging.Logger" = Logger(log_name="smemsynth").log
