import json
from pathlib import Path
from typing import Any, Dict, Optional

from config.nsakit_config import NsaConfig


def envelope(command: str, seed: Optional[int], caps: Dict[str, int], body: Dict[str, Any]) -> Dict[str, Any]:
    """Versioned wrapper shared by every report"""
    return {"schema": NsaConfig.SCHEMA_VERSION, "command": command, "seed": seed, "caps": caps, "report": body}


def render(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


class ReportManager:
    """Writes deterministic JSON reports into the report directory"""

    def __init__(self, base_dir: Path = NsaConfig.REPORT_DIR):
        self.base_dir = Path(base_dir)

    def capture(self, report: Dict[str, Any], name: str) -> str:
        """Write `<name>.json` and return its path"""
        self.base_dir.mkdir(parents=True, exist_ok=True)
        file_path = self.base_dir / f"{name}.json"
        file_path.write_text(render(report) + "\n", encoding="utf-8")
        return str(file_path)

    def capture_error(self, error_context: str, error: BaseException) -> str:
        """Write an error report named after its context"""
        report = {
            "schema": NsaConfig.SCHEMA_VERSION,
            "context": error_context,
            "error": type(error).__name__,
            "message": str(error),
        }
        return self.capture(report, f"error_{error_context}")
