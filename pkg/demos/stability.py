"""Top-degree structure constants of Sp_2n(3) class algebras do not depend on n.

For each pair of small modified types we expand the product of class sums in
Sp_2(3) and Sp_4(3) and print the coefficients of weight-additive classes.
"""

import itertools

from cgc.center import Context, product_expand
from cgc.combin import weight
from cgc.gf import field

F = field(3)
classes = Context.get("sp", 1, F).classes()
uni = [x for x in classes if 0 < weight(x) <= 1]

for lam, mu in itertools.product(uni, repeat=2):
    e1 = product_expand("sp", F, 1, lam, mu)
    e2 = product_expand("sp", F, 2, lam, mu)
    for eta in classes:
        if weight(eta) == weight(lam) + weight(mu):
            a, b = e1.get(eta, 0), e2.get(eta, 0)
            mark = "=" if a == b else "!"
            print(f"{lam!r} * {mu!r} -> {eta!r}: n=1 {a}  n=2 {b}  {mark}")
