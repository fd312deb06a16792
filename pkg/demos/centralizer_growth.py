"""Centralizer orders of Sp_2(3) elements embedded into Sp_4(3),
next to the predicted |C_m(U)| * |Sp_{n-m}| * q^(2(n-m)d)."""

from cgc.center import growth_check_sp
from cgc.classify import sp_type
from cgc.gf import field
from cgc.grp import group_table

F = field(3)
for U in group_table("sp", 1, F).class_reps():
    r = growth_check_sp(U, 1, 2, F)
    tag = "" if r["in_hypothesis"] else "  (identity block: outside the hypothesis)"
    print(f"{sp_type(U, F)!r:32s} {r['left']:>8d} vs {r['right']:>8d}{tag}")

print("\nn=3 takes about a minute per transvection class; try")
print("  cgc growth --kind sp --matrix '1,0;1,1' --n2 3")
