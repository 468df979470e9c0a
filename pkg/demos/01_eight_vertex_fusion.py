#!/usr/bin/env python3
"""Walk through the 8-vertex scheme on Z4 x Z2: Galois orbits, the merged
eigenmatrix, the row-count criterion, and the resulting rational fusion.

The scheme has Gaussian-integer eigenvalues.  Complex conjugation swaps two
of the primitive idempotents, the merged eigenmatrix Qbar has exactly one
repeated row pair, and the criterion certifies a 3-class fusion.
"""

from delsarte import SubfieldSpec, bannai_muzychuk_idempotent, galois_fusion, orbit_merge
from delsarte.catalog import build_x8


def show(name, matrix):
    print(f"{name} =")
    rows = [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    for r in rows:
        print("   " + "  ".join(v.rjust(w) for v, w in zip(r, widths)))


def main():
    scheme, eigen = build_x8()
    print(f"scheme on {scheme.size} vertices, {scheme.classes} classes, "
          f"valencies {scheme.valencies}")
    show("Q", eigen.Q)

    rationals = SubfieldSpec.rationals(eigen.conductor)
    data = orbit_merge(eigen, rationals)
    print(f"\nGalois orbits on idempotents: {[list(o) for o in data.orbits]}")
    print(f"iota: {list(data.iota)}")
    show("Qbar = QO", data.Qbar)

    verdict = bannai_muzychuk_idempotent(data)
    print(f"\ndistinct rows: {verdict.distinct_rows} for {len(data.orbits)} "
          f"orbits -> criterion {'passes' if verdict.passes else 'fails'}")

    fs = galois_fusion(scheme, eigen, rationals)
    print(f"fused classes: {[list(c) for c in fs.partition]}")
    print("fused relation matrix:")
    for row in fs.fused.relation:
        print("   " + " ".join(map(str, row)))
    show("Q of the fusion", fs.Q_F)
    show("P of the fusion", fs.P_F)


if __name__ == "__main__":
    main()
