"""Small closed T* terms used by base witnesses and tests."""
from core.terms import App, Lam, Rec, Succ, TermExpr, Var, Zero
from core.types import NAT

_M = Var("m", NAT)
_N = Var("n", NAT)
_I = Var("i", NAT)
_ACC = Var("acc", NAT)

IDENTITY: TermExpr = Lam(Var("x", NAT), Var("x", NAT))

# add m n = rec(m, λi.λacc. succ acc) n
ADD: TermExpr = Lam(_M, Lam(_N, App(Rec(_M, Lam(_I, Lam(_ACC, Succ(_ACC)))), _N)))

# double n = add n n
DOUBLE: TermExpr = Lam(_N, App(App(ADD, _N), _N))

# mul m n = rec(0, λi.λacc. add acc m) n
MUL: TermExpr = Lam(_M, Lam(_N, App(Rec(Zero(), Lam(_I, Lam(_ACC, App(App(ADD, _ACC), _M)))), _N)))

LIBRARY = {"id": IDENTITY, "add": ADD, "double": DOUBLE, "mul": MUL}
