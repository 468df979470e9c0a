#!/usr/bin/env python3
"""Subgroups of the dicyclic group of order 4n (n odd) as Delsarte designs.

Every subgroup is cyclic <x^k> or dicyclic <x^k, y>.  Each row prints the
inner distribution a, the MacWilliams transform b = aQ, and the annihilated
set T(H).  The b-patterns follow the subgroup order exactly: cyclic
subgroups of order l show l on the linear characters (only the first two
when l is even) and 4l on every psi index divisible by l.
"""

import sys

from delsarte import dicyclic_subgroup_table


def main(n=5):
    rows = dicyclic_subgroup_table(n)
    print(f"Dic_{n} (order {4 * n}); eigenspaces indexed "
          f"chi0..chi3, psi1..psi{n - 1}\n")
    for r in rows:
        gen = f"<x^{r.k}>" if r.kind == "cyclic" else f"<x^{r.k}, y>"
        print(f"{r.kind:8s} {gen:10s} order {r.order:3d}")
        print(f"   a = {[str(v) for v in r.a]}")
        print(f"   b = {[str(v) for v in r.b]}")
        print(f"   T = {list(r.T)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
