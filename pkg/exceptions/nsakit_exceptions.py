class NsaKitError(Exception):
    """Base exception for nsakit errors"""
    pass

class NsaSyntaxError(NsaKitError):
    """Raised when surface syntax cannot be parsed"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column

class NsaTypeError(NsaKitError):
    """Raised when a term or formula is ill-typed"""

    def __init__(self, message: str, subterm: str = ""):
        super().__init__(message)
        self.subterm = subterm

class UnknownSchemaError(NsaKitError):
    """Raised when a schema name is not in the library"""
    pass

class SchemaArityError(NsaKitError):
    """Raised when a schema receives the wrong number of holes"""
    pass

class RulePreconditionError(NsaKitError):
    """Raised when a rewrite rule is applied to a formula of the wrong shape"""

    def __init__(self, rule: str, path, reason: str):
        super().__init__(f"{rule} at {list(path)}: {reason}")
        self.rule = rule
        self.path = tuple(path)
        self.reason = reason

class MissingAnnotationError(RulePreconditionError):
    """Raised when a max-collapse has no monotonicity annotation"""
    pass

class UnsoundRuleApplicationError(RulePreconditionError):
    """Raised when dropping st would strengthen a positive quantifier"""
    pass

class StuckError(NsaKitError):
    """Raised when no rule applies and the formula is not in normal form"""

    def __init__(self, formula, position, trace=None):
        super().__init__(f"no rule applies at {list(position)}")
        self.formula = formula
        self.position = tuple(position)
        self.trace = trace

class UninterpretedSymbolError(NsaKitError):
    """Raised when a model has no table for a symbol"""
    pass

class UnsupportedFragmentError(NsaKitError):
    """Raised when model checking meets a type or term it cannot enumerate"""
    pass

class MissingBaseWitnessError(NsaKitError):
    """Raised when witness assembly lacks a base obligation"""

    def __init__(self, obligation: str):
        super().__init__(f"no base witness for obligation '{obligation}'")
        self.obligation = obligation

class TermEvaluationError(NsaKitError):
    """Raised when a T* term cannot be evaluated"""
    pass

class FuelExhaustedError(TermEvaluationError):
    """Raised when the step-counting evaluator runs out of fuel"""
    pass

class PreconditionError(NsaKitError):
    """Raised when a numeric check is called outside its contract"""
    pass

class InvalidPartitionError(NsaKitError):
    """Raised when partition points or tags are malformed"""
    pass

class InvalidTreeError(NsaKitError):
    """Raised when a binary tree is not prefix-closed"""
    pass

class CapExceededError(NsaKitError):
    """Raised when a capped search or enumeration runs out of budget"""

    def __init__(self, message: str, cap: int, cell: str = ""):
        super().__init__(message)
        self.cap = cap
        self.cell = cell

class DepthExceededError(CapExceededError):
    """Raised when a depth budget is exhausted before certification"""

    def __init__(self, depth: int, cell: str = ""):
        super().__init__(f"not certified within depth {depth}", depth, cell)
        self.depth = depth

class GammaUndefinedError(NsaKitError):
    """Raised when a candidate Gamma is undefined on a queried sequence"""

    def __init__(self, sequence):
        super().__init__(f"gamma undefined at {list(sequence)}")
        self.sequence = tuple(sequence)

class FunctionalSyntaxError(NsaKitError):
    """Raised when a functional library entry is malformed"""
    pass

class ConfigurationError(NsaKitError):
    """Raised when run configuration or caps are invalid"""
    pass
