"""Named real functions with moduli of uniform continuity, and monotone sequences."""
import json
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict

from analysis.reals import RealCode, RealFunction, RealSequence
from exceptions.nsakit_exceptions import NsaKitError

LIBRARY_FILE = Path(__file__).resolve().parent.parent / "data" / "library" / "functions.json"

HALF = Fraction(1, 2)

# Lipschitz bounds on [0,1] are at most 2 for all three, hence shift 1.
EXPRESSIONS: Dict[str, Callable[[Fraction], Fraction]] = {
    "x": lambda x: x,
    "x^2": lambda x: x * x,
    "|x-1/2|": lambda x: abs(x - HALF),
    "x-x^3/6+x^5/120": lambda x: x - x ** 3 / 6 + x ** 5 / 120,
}

SEQUENCES: Dict[str, Callable[[int], Fraction]] = {
    "1-1/(n+1)": lambda n: 1 - Fraction(1, n + 1),
    "1-2^-n": lambda n: 1 - Fraction(1, 2 ** n),
    "1/2": lambda n: HALF,
}


def scaled_modulus(scale: int) -> Callable[[int], int]:
    return lambda k: scale * k


def constant_function(value, name: str = "constant") -> RealFunction:
    value = Fraction(value)
    return RealFunction(name, lambda x: value, shift=0, modulus=lambda k: 1)


def identity_function() -> RealFunction:
    return RealFunction("identity", EXPRESSIONS["x"], shift=0, modulus=scaled_modulus(1))


def exact_sequence(name: str, term: Callable[[int], Fraction]) -> RealSequence:
    return RealSequence(name, lambda n: RealCode.exact(term(n), f"{name}[{n}]"))


def load_library(path: Path = LIBRARY_FILE):
    """(functions, sequences) by name, read from the JSON library file."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    functions: Dict[str, RealFunction] = {}
    sequences: Dict[str, RealSequence] = {}
    for entry in raw.get("functions", []):
        expression = entry["expression"]
        if expression not in EXPRESSIONS:
            raise NsaKitError(f"unknown function expression '{expression}' in {path}")
        functions[entry["name"]] = RealFunction(entry["name"], EXPRESSIONS[expression],
                                                modulus=scaled_modulus(int(entry["modulus_scale"])))
    for entry in raw.get("sequences", []):
        expression = entry["expression"]
        if expression not in SEQUENCES:
            raise NsaKitError(f"unknown sequence expression '{expression}' in {path}")
        sequences[entry["name"]] = exact_sequence(entry["name"], SEQUENCES[expression])
    return functions, sequences


FUNCTIONS, REAL_SEQUENCES = load_library()
