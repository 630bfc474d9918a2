import os
from typing import Tuple

from dotenv import load_dotenv

load_dotenv()


class Config:
    def __init__(self):
        self.THREADS: int = int(os.environ.get("SMEMSYNTH_THREADS", 1))
        self.LOG_LEVEL: str = os.environ.get("SMEMSYNTH_LOG_LEVEL", "INFO").upper()
        self.LOG_FILE: str = os.environ.get("SMEMSYNTH_LOG_FILE", "")
        self.LIB_BOUNDS: Tuple[int, int] = self._parse_bounds(
            os.environ.get("SMEMSYNTH_LIB_BOUNDS", "8,64")
        )

        self._validate()

    @staticmethod
    def _parse_bounds(raw: str) -> Tuple[int, int]:
        try:
            low, high = (int(part) for part in raw.split(","))
        except ValueError:
            raise ValueError("SMEMSYNTH_LIB_BOUNDS: Invalid")
        return low, high

    def _validate(self):
        checks = {
            "SMEMSYNTH_THREADS": self.THREADS >= 1,
            "SMEMSYNTH_LOG_LEVEL": self.LOG_LEVEL
            in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
            "SMEMSYNTH_LIB_BOUNDS": 1 <= self.LIB_BOUNDS[0] <= self.LIB_BOUNDS[1],
        }
        for key, valid in checks.items():
            if not valid:
                raise ValueError(f"{key}: Invalid")


config: Config = Config()
