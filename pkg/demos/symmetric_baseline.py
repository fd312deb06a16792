"""The symmetric-group case: transposition squares and stable constants."""

from cgc.fh_symmetric import expand_symmetric, perm_from_cycles, cycle_type, stability_check

g = perm_from_cycles([(3, 4, 5), (7, 8)], 8)
print("cycle type of (345)(78) in S_8:", cycle_type(g))

for n in range(3, 8):
    print(f"S_{n}: K_(1) * K_(1) =", expand_symmetric((1,), (1,), n))

rep = stability_check(5, 8)
print(f"\n{len(rep['triples'])} top-degree triples, constant across n=5..8: {rep['holds']}")
