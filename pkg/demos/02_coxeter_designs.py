#!/usr/bin/env python3
"""The Coxeter graph scheme: a splitting field of conductor 8 whose merged
eigenmatrix fails the row-count criterion, so no Galois fusion exists over
any proper subfield.  Designs still close up along Galois orbits: a Fano
plane inside the vertex set is automatically a {1,2,4}-design.
"""

from delsarte import SubfieldSpec, bannai_muzychuk_idempotent, design_report, orbit_merge
from delsarte.catalog import build_coxeter, coxeter_second_fano, coxeter_vertices


def main():
    scheme, eigen = build_coxeter()
    print(f"Coxeter scheme: {scheme.size} vertices, diameter {scheme.d}, "
          f"valencies {scheme.valencies}")
    print(f"splitting conductor {eigen.conductor} (eigenvalues involve sqrt 2)")

    data = orbit_merge(eigen, SubfieldSpec.rationals(eigen.conductor))
    verdict = bannai_muzychuk_idempotent(data)
    print(f"orbits {[list(o) for o in data.orbits]}; "
          f"{verdict.distinct_rows} distinct merged rows for "
          f"{len(data.orbits)} orbits -> no fusion over Q")

    fano = coxeter_second_fano()
    triples = [coxeter_vertices()[v] for v in fano]
    print(f"\na second Fano plane among the vertices: {triples}")
    report = design_report(scheme, eigen, fano)
    print(f"inner distribution a  = {[str(v) for v in report.a]}")
    print(f"dual distribution  aQ = {[str(v) for v in report.b]}")
    print(f"T(C) = {list(report.T)}  "
          "(indices 2 and 4 sit in one Galois orbit, so they vanish together)")


if __name__ == "__main__":
    main()
