import json
from pathlib import Path
from typing import Dict, Tuple

from gh.functionals import TypeTwoFunctional, from_json

LIBRARY_FILE = Path(__file__).resolve().parent.parent / "data" / "library" / "functionals.json"


def load_functionals(path: Path = LIBRARY_FILE) -> Tuple[Dict[str, TypeTwoFunctional], Dict[str, TypeTwoFunctional]]:
    """(Gandy-Hyland inputs, fan inputs) by name."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    gandy_hyland = {entry["name"]: from_json(entry) for entry in raw.get("gandy_hyland", [])}
    fan = {entry["name"]: from_json(entry) for entry in raw.get("fan", [])}
    return gandy_hyland, fan


GH_FUNCTIONALS, FAN_FUNCTIONALS = load_functionals()
