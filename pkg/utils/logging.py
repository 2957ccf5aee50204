import logging
import sys
import time
from contextlib import asynccontextmanager, contextmanager


class NsaLogger:
    """Centralized logging for the toolkit; everything goes to stderr so stdout stays a clean report"""

    def __init__(self, logger_name: str = __name__):
        self.logger = logging.getLogger(logger_name)
        self._setup_logger()

    def _setup_logger(self):
        """Configure logger with a stderr handler and the shared format"""
        if not self.logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
            self.logger.setLevel(logging.INFO)
            self.logger.propagate = False

    @asynccontextmanager
    async def log_phase(self, phase_name: str, **context):
        """Context manager for logging case-study phases with timing"""
        start_time = time.perf_counter()
        self.logger.info(f"Starting phase: {phase_name} {_format_context(context)}".rstrip())

        try:
            yield
            duration = time.perf_counter() - start_time
            self.logger.info(f"Phase '{phase_name}' completed in {duration:.2f}s")
        except Exception as e:
            duration = time.perf_counter() - start_time
            self.logger.error(f"Phase '{phase_name}' failed after {duration:.2f}s: {e}")
            raise

    @contextmanager
    def phase(self, phase_name: str, **context):
        start_time = time.perf_counter()
        self.logger.debug(f"Starting phase: {phase_name} {_format_context(context)}".rstrip())
        try:
            yield
            self.logger.debug(f"Phase '{phase_name}' completed in {time.perf_counter() - start_time:.2f}s")
        except Exception as e:
            duration = time.perf_counter() - start_time
            self.logger.warning(f"Phase '{phase_name}' failed after {duration:.2f}s: {e}")
            raise

    def debug(self, message: str, **kwargs):
        self.logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs):
        self.logger.info(message, **kwargs)

    def error(self, message: str, **kwargs):
        self.logger.error(message, **kwargs)

    def warning(self, message: str, **kwargs):
        self.logger.warning(message, **kwargs)


def _format_context(context: dict) -> str:
    if not context:
        return ""
    return "(" + ", ".join(f"{key}={value}" for key, value in sorted(context.items())) + ")"


def set_toolkit_level(level: int):
    """Apply `level` to every nsakit logger created so far"""
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith("nsakit") and isinstance(logger, logging.Logger):
            logger.setLevel(level)
