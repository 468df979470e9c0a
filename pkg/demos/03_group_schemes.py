#!/usr/bin/env python3
"""Conjugacy class schemes from character tables.

A4's eigenmatrices come straight from its character table via
P[j][i] = |C_i| chi_j(g_i) / f_j and Q[i][j] = f_j conj(chi_j(g_i)); the
rational-class fusion merges the two classes of 3-cycles and reproduces the
3-class scheme of the complete multipartite graph.  The representation
blocks U_j diagonalise the whole Bose-Mesner algebra.
"""

from delsarte import (
    conj_class_scheme,
    builtin_representations,
    rational_class_fusion,
    representation_eigenvectors,
)
from delsarte.catalog import build_a4
from delsarte.groups import dicyclic_group


def show(name, matrix):
    print(f"{name} =")
    rows = [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    for r in rows:
        print("   " + "  ".join(v.rjust(w) for v, w in zip(r, widths)))


def main():
    b = build_a4()
    print(f"A4: class sizes {b.classes.sizes}, degrees {b.table.degrees}")
    show("P", b.eigen.P)
    show("Q", b.eigen.Q)

    partition, fused = rational_class_fusion(b.group, b.classes, b.scheme, b.eigen)
    print(f"\nrational conjugacy classes merge: {[list(c) for c in partition]}")
    show("fused P", fused.P_F)
    show("fused Q", fused.Q_F)

    print("\ndicyclic group of order 12: diagonalising with representations")
    group, classes, table = dicyclic_group(3)
    scheme, _ = conj_class_scheme(group)
    total = 0
    for j, rho in enumerate(builtin_representations("dicyclic", 3)):
        u = representation_eigenvectors(group, rho, scheme, classes)
        total += u.cols
        print(f"  representation {j}: degree {rho.degree}, "
              f"{u.cols} eigenvector columns verified")
    print(f"  total columns {total} = |G| = {group.order}")


if __name__ == "__main__":
    main()
