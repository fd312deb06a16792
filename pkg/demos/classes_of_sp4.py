"""Walk through the conjugacy classes of Sp_4(3): enumerate the group, split
it into classes, and print each class's symplectic type with its Wall signs."""

from cgc import mat
from cgc.classify import refl_length, sp_type
from cgc.combin import enumerate_types
from cgc.gf import field
from cgc.grp import group_table

F = field(3)
T = group_table("sp", 2, F)
print(f"|Sp_4(3)| = {len(T)}")

reps = T.class_reps()
sizes = [len(c) for c in T.classes()]
print(f"{len(reps)} classes; {len(enumerate_types(4, F, 'sp'))} symplectic types of weight 4\n")

for r, size in sorted(zip(reps, sizes), key=lambda rs: rs[1]):
    print(f"{size:6d}  rl={refl_length(r, F)}  {sp_type(r, F)!r}")

# J_6 carries the one odd-size block pair whose Wall form is symplectic
print("\nJ_6 over F_3:", sp_type(mat.j_block(6, F), F))
