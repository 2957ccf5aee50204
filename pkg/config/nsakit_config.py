from pathlib import Path


class NsaConfig:
    """Central configuration for caps, seeds and sweep sizes"""
    SEARCH_CAP = 10_000
    DEPTH_CAP = 12
    MAX_DEPTH = 16

    MODEL_UNIVERSE = 4
    MODEL_STANDARD = 3
    MODEL_MAX_UNIVERSE = 6
    MODELS_PER_SHAPE = 2
    RANDOM_RULE_INSTANCES = 1000
    RANDOM_FORMULA_SIZE = 4

    DEFAULT_SEED = 0
    SEED_ENV_VAR = "NSAKIT_SEED"

    REPORT_DIR = Path("reports")
    CORPUS_DIR = Path(__file__).resolve().parent.parent / "data" / "corpus"
    SCHEMA_VERSION = "1"

    PARTITION_PAIRS = 200
    CRI_PRECISIONS = range(1, 11)
    WORKING_PRECISION = 24
    COMPARISON_RETRIES = 8
    REFINEMENT_PAIRS = 20

    MCT_PRECISIONS = range(1, 11)
    MCT_SEQUENCES = ("harmonic", "dyadic", "constant")
    MU_CORPUS_SIZE = 50
    MU_PROBE_PRECISION = 2
    WINDOW_SAMPLES = 24

    RANDOM_TREES = 100
    TREE_DEPTH = 8
    GH_SWEEP_WIDTH = 8
    GH_ALPHABET = (0, 1, 2)
    GH_PREFIX_LENGTH = 3
    GH_REFERENCE_DEPTH = 3
    SCF_MAX_MODULUS = 3

    EVALUATOR_FUEL = 1_000_000


class Symbols:
    """Reserved names grouped by use"""

    KEYWORDS = (
        "forall", "exists", "in", "st", "approxR", "approx1", "inOmega", "lambda",
        "zero", "succ", "rec", "len", "get", "append", "max", "min",
    )

    EQ = "eq"
    LT = "lt"
    LE = "le"
    LE1 = "le1"
    DIST_LT = "distLt"

    PRECISION_STEM = "n"
    OMEGA_BOUND_STEM = "m"
    SEQUENCE_STEM = "w"
    HERBRAND_STEM = "g"

    CASE_STUDIES = ("CRI", "MCT", "GH", "FAN")
