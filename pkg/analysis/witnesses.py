"""Base witnesses for the integration case study and evaluation of the assembled modulus."""
from typing import Callable, Dict

from core.terms import App, Lam, SeqLit, TermExpr, Var
from core.types import NAT, ONE
from rewrite.trace import RewriteTrace
from tstar.evaluator import apply, eval_closed
from tstar.library import DOUBLE
from tstar.values import native
from tstar.witness import assemble_witness

_G = Var("g", ONE)
_N = Var("n", NAT)

# λg.λn. <g (double n)>: one candidate mesh bound per precision, namely g(2n)
MESH_BOUND: TermExpr = Lam(_G, Lam(_N, SeqLit((App(_G, App(DOUBLE, _N)),), NAT)))

CRI_BASE: Dict[str, TermExpr] = {"M1": MESH_BOUND, "M2": MESH_BOUND}


def cri_modulus_term(trace: RewriteTrace, target: str = "M1") -> TermExpr:
    return assemble_witness(trace, CRI_BASE, target)


def evaluate_modulus(term: TermExpr, g: Callable[[int], int], n: int) -> int:
    """t(g)(n) for a Python modulus g."""
    return apply(eval_closed(term), native("g", g), n)
