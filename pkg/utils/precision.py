from enum import Enum
from typing import Callable

from config.nsakit_config import NsaConfig
from utils.logging import NsaLogger


class Comparison(str, Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"


class PrecisionRefiner:
    """Retries an approximate comparison at increasing precision until it decides"""

    def __init__(self, logger: NsaLogger, max_attempts: int = NsaConfig.COMPARISON_RETRIES):
        self.logger = logger
        self.max_attempts = max_attempts

    def decide(self, compare: Callable[[int], Comparison], start: int, step: int = 8) -> Comparison:
        """Call `compare(precision)` until it is not INDETERMINATE, raising precision each attempt"""
        precision = start
        for attempt in range(self.max_attempts):
            outcome = compare(precision)
            if outcome is not Comparison.INDETERMINATE:
                return outcome
            self.logger.warning(f"Comparison attempt {attempt + 1} undecided at precision {precision}")
            precision += step
        return Comparison.INDETERMINATE
