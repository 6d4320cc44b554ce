"""Build a weighted plane tree for a lifted type and read off its
generating system.

    python demos/plane_trees.py 2,4,-3,-2,-1
"""
import sys

from defdatum.dessins import build_tree, combinatorial_type_m1, genus, tree_to_generating_system
from defdatum.types import realizable, stats


def show(A):
    n, k = stats(A)
    print(f"A = {A}: n_A = {n}, k_A = {k}, realizable = {realizable(A)}")
    if not realizable(A):
        return
    T = build_tree(A)
    for b, w, wt in T.edges:
        print(f"  edge black {b} -- white {w}, weight {wt}")
    g = tree_to_generating_system(T)
    C = g.combinatorial_type()
    print(f"  sigma1 = {g.sigma1}\n  sigma2 = {g.sigma2}\n  sigma3 = {g.sigma3}")
    print(f"  type {C.c1}, {C.c2}, {C.c3}; genus {genus(C)}; matches C(A): {C == combinatorial_type_m1(A)}")
    print(T.to_dot())


if __name__ == "__main__":
    lifts = [tuple(int(x) for x in arg.split(",")) for arg in sys.argv[1:]]
    for A in lifts or [(2, 4, -3, -2, -1), (3, -1, -1, -1), (1, 1, -1, -1), (4, 2, -2, -2, -2)]:
        show(A)
        print()
