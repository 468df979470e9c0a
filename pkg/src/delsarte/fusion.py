"""Galois action on primitive idempotents and the fusions it induces.

For a subfield K of the splitting field (given by its fixing subgroup of
(Z/nZ)^x), each field automorphism permutes the primitive idempotents; the
orbits merge idempotents into the minimal K-rational ones F_l, described by
the column-merged eigenmatrix Qbar = Q O.  The merged row-count criterion
(Bannai-Muzychuk) decides in both forms whether a partition of classes or of
idempotents spans a fusion scheme; when it holds for the Galois orbits the
scheme has a Galois fusion over K, constructed here with full verification.

Fused classes and fused eigenspaces are each numbered canonically by their
smallest original index, which pins every matrix in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycMatrix, SubfieldSpec, subfield_membership
from .errors import (
    ConductorMismatch,
    InternalAssertion,
    NotAFusion,
    NotAScheme,
    NotClosed,
    NotPermutation,
)
from .scheme import EigenData, SchemeData, attach_eigendata, verify_scheme


@dataclass(frozen=True)
class GaloisOrbitData:
    """Orbits of the Galois action of Gal(F/K) on the primitive idempotents."""

    eigen: EigenData
    subfield: SubfieldSpec
    perms: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[int, ...], ...]
    iota: tuple[int, ...]
    Qbar: CycMatrix

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def O(self) -> np.ndarray:
        """The (d+1) x (e+1) 01 partition matrix with Qbar = Q O."""
        d1 = len(self.iota)
        out = np.zeros((d1, len(self.orbits)), dtype=np.int64)
        for j, l in enumerate(self.iota):
            out[j, l] = 1
        out.setflags(write=False)
        return out

    def merged_idempotent(self, l: int) -> CycMatrix:
        """F_l = sum of E_j over the l-th orbit, as a dense matrix."""
        scheme = self.eigen.scheme
        rel = scheme.relation
        col = [self.Qbar[i, l] / scheme.size for i in range(scheme.classes)]
        return CycMatrix(
            [[col[rel[x, y]] for y in range(scheme.size)] for x in range(scheme.size)]
        )


@dataclass(frozen=True)
class BMVerdict:
    """Outcome of the merged-eigenmatrix row-count criterion."""

    passes: bool
    distinct_rows: int
    row_classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FusionScheme:
    """A verified fusion scheme together with its exact eigenstructure."""

    parent: SchemeData
    parent_eigen: EigenData
    partition: tuple[tuple[int, ...], ...]
    class_map: tuple[int, ...]
    fused: SchemeData
    eigen: EigenData
    eigen_classes: tuple[tuple[int, ...], ...]
    S: np.ndarray
    subfield: SubfieldSpec | None = None
    orbit_data: GaloisOrbitData | None = None

    @property
    def P_F(self) -> CycMatrix:
        return self.eigen.P

    @property
    def Q_F(self) -> CycMatrix:
        return self.eigen.Q

    def eigen_iota(self, j: int) -> int:
        """Fused eigenspace index containing original eigenspace j."""
        for l, cell in enumerate(self.eigen_classes):
            if j in cell:
                return l
        raise IndexError(j)


def _canonical_cells(cells) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(c)) for c in cells), key=lambda c: c[0]))


def _group_rows(matrix: CycMatrix) -> tuple[tuple[int, ...], ...]:
    seen: dict[tuple, list[int]] = {}
    for i in range(matrix.rows):
        seen.setdefault(matrix.row_key(i), []).append(i)
    return _canonical_cells(seen.values())


def sigma_permutations(
    eigen: EigenData, subfield: SubfieldSpec
) -> tuple[tuple[int, ...], ...]:
    """Permutations of {0..d} induced by Gal(F/K) on the idempotents.

    Computed on the columns of Q: applying zeta -> zeta^k entrywise to E_j
    permutes the basis exactly when the image column of Q appears among the
    columns, since the entries of E_j are the entries of column j of Q
    spread over the relation classes.  Automorphisms with the same action on
    every entry of Q restrict identically to the splitting field and are
    identified; distinct restrictions must give distinct permutations
    (faithfulness), which is asserted.
    """
    n = eigen.conductor
    if subfield.conductor % n:
        raise ConductorMismatch(
            f"subfield lives in Q(zeta_{subfield.conductor}) which does not "
            f"contain the splitting conductor {n}"
        )
    dp1 = eigen.scheme.classes
    col_keys = {eigen.Q.col_key(j): j for j in range(dp1)}
    by_perm: dict[tuple[int, ...], tuple] = {}
    for k in subfield.group:
        image = eigen.Q.galois(k % n if n > 1 else 1)
        cols = []
        for j in range(dp1):
            target = col_keys.get(image.col_key(j))
            if target is None:
                raise NotPermutation(
                    f"zeta -> zeta^{k} does not map E_{j} into the idempotent "
                    "basis; Q is inconsistent with its declared conductor"
                )
            cols.append(target)
        perm = tuple(cols)
        if len(set(perm)) != dp1:
            raise NotPermutation(f"automorphism {k} does not act bijectively")
        signature = tuple(image.col_key(j) for j in range(dp1))
        if by_perm.setdefault(perm, signature) != signature:
            raise InternalAssertion(
                "two distinct restrictions induced the same permutation"
            )
    perms = tuple(sorted(by_perm))
    members = set(perms)
    for a in perms:
        for b in perms:
            if tuple(a[b[j]] for j in range(dp1)) not in members:
                raise InternalAssertion("induced permutations are not closed")
    return perms


def orbit_merge(eigen: EigenData, subfield: SubfieldSpec) -> GaloisOrbitData:
    """Orbits, iota, merged idempotents and Qbar = QO for Gal(F/K)."""
    perms = sigma_permutations(eigen, subfield)
    dp1 = eigen.scheme.classes
    seen = [False] * dp1
    orbits = []
    for j in range(dp1):
        if seen[j]:
            continue
        orbit = {j}
        frontier = [j]
        while frontier:
            a = frontier.pop()
            for perm in perms:
                b = perm[a]
                if b not in orbit:
                    orbit.add(b)
                    frontier.append(b)
        for a in orbit:
            seen[a] = True
        orbits.append(tuple(sorted(orbit)))
    orbits = _canonical_cells(orbits)
    assert orbits[0] == (0,), "E_0 is rational and must sit in its own orbit"
    iota = [0] * dp1
    for l, orbit in enumerate(orbits):
        for j in orbit:
            iota[j] = l
    qbar_rows = []
    for i in range(dp1):
        row = []
        for orbit in orbits:
            acc = eigen.Q[i, orbit[0]]
            for j in orbit[1:]:
                acc = acc + eigen.Q[i, j]
            row.append(acc)
        qbar_rows.append(row)
    qbar = CycMatrix(qbar_rows, eigen.conductor)
    for i in range(dp1):
        for l in range(len(orbits)):
            if not subfield_membership(qbar[i, l], subfield):
                raise InternalAssertion(
                    f"merged idempotent F_{l} has an entry outside the subfield"
                )
    return GaloisOrbitData(
        eigen=eigen,
        subfield=subfield,
        perms=perms,
        orbits=orbits,
        iota=tuple(iota),
        Qbar=qbar,
    )


def bannai_muzychuk_idempotent(orbit_data: GaloisOrbitData) -> BMVerdict:
    """Row-count criterion on Qbar: a fusion exists iff the distinct-row
    count equals the orbit count."""
    row_classes = _group_rows(orbit_data.Qbar)
    return BMVerdict(
        passes=len(row_classes) == orbit_data.orbit_count,
        distinct_rows=len(row_classes),
        row_classes=row_classes,
    )


def _validate_partition(cells, dp1: int) -> tuple[tuple[int, ...], ...]:
    cells = _canonical_cells(cells)
    flat = [i for cell in cells for i in cell]
    if sorted(flat) != list(range(dp1)) or len(flat) != dp1:
        raise ValueError(f"not a partition of 0..{dp1 - 1}: {cells}")
    if cells[0] != (0,):
        raise ValueError("class 0 (the identity relation) must be a singleton cell")
    return cells


def fuse_by_relation_partition(
    scheme: SchemeData, eigen: EigenData, partition
) -> FusionScheme:
    """Fuse relations along a partition, checked by the PO row criterion.

    PO must have exactly one distinct row per fused eigenspace (e+1 in
    total); on success the fused scheme is rebuilt and re-verified from
    scratch, P_F is read off the distinct rows of PO, and Q_F = |X| P_F^(-1)
    is attached with full eigendata verification.
    """
    cells = _validate_partition(partition, scheme.classes)
    e1 = len(cells)
    po_rows = []
    for j in range(scheme.classes):
        row = []
        for cell in cells:
            acc = eigen.P[j, cell[0]]
            for i in cell[1:]:
                acc = acc + eigen.P[j, i]
            row.append(acc)
        po_rows.append(row)
    po = CycMatrix(po_rows, eigen.conductor)
    eigen_classes = _group_rows(po)
    if len(eigen_classes) != e1:
        raise NotAFusion(len(eigen_classes), e1)

    class_map = [0] * scheme.classes
    for c, cell in enumerate(cells):
        for i in cell:
            class_map[i] = c
    lookup = np.array(class_map, dtype=np.int64)
    fused_rel = lookup[scheme.relation]
    try:
        fused_scheme = verify_scheme(fused_rel)
    except NotAScheme as exc:  # criterion passed, so this cannot happen
        raise InternalAssertion(f"fused relation failed verification: {exc}") from exc

    p_f = CycMatrix(
        [[po[cell[0], c] for c in range(e1)] for cell in eigen_classes],
        eigen.conductor,
    )
    s_mat = np.zeros((e1, scheme.classes), dtype=np.int64)
    for l, cell in enumerate(eigen_classes):
        for j in cell:
            s_mat[l, j] = 1
    s_mat.setflags(write=False)
    q_f = p_f.inverse().scale(scheme.size)
    try:
        fused_eigen = attach_eigendata(fused_scheme, q_f)
    except Exception as exc:
        raise InternalAssertion(f"fused eigendata rejected: {exc}") from exc
    return FusionScheme(
        parent=scheme,
        parent_eigen=eigen,
        partition=cells,
        class_map=tuple(class_map),
        fused=fused_scheme,
        eigen=fused_eigen,
        eigen_classes=eigen_classes,
        S=s_mat,
    )


def galois_fusion(
    scheme: SchemeData, eigen: EigenData, subfield: SubfieldSpec
) -> FusionScheme:
    """The Galois fusion of the scheme with respect to K, if it exists.

    Runs the idempotent-side criterion on Qbar; when it passes, the row
    classes of Qbar give the relation partition, the relation-side fusion is
    built and cross-checked against the orbit data, and the result is tagged
    with K.  Raises :class:`NotClosed` when the K-rational idempotents are
    not Schur-closed.
    """
    orbit_data = orbit_merge(eigen, subfield)
    verdict = bannai_muzychuk_idempotent(orbit_data)
    if not verdict.passes:
        raise NotClosed(verdict.distinct_rows, orbit_data.orbit_count)
    fs = fuse_by_relation_partition(scheme, eigen, verdict.row_classes)
    if fs.eigen_classes != orbit_data.orbits:
        raise InternalAssertion(
            "PO row classes disagree with the Galois orbits: "
            f"{fs.eigen_classes} vs {orbit_data.orbits}"
        )
    for c, cell in enumerate(fs.partition):
        rep = cell[0]
        for l in range(orbit_data.orbit_count):
            if fs.eigen.Q[c, l] != orbit_data.Qbar[rep, l]:
                raise InternalAssertion(
                    "fused eigenmatrix disagrees with the distinct rows of Qbar"
                )
    return FusionScheme(
        parent=fs.parent,
        parent_eigen=fs.parent_eigen,
        partition=fs.partition,
        class_map=fs.class_map,
        fused=fs.fused,
        eigen=fs.eigen,
        eigen_classes=fs.eigen_classes,
        S=fs.S,
        subfield=subfield,
        orbit_data=orbit_data,
    )


def partition_join(p1, p2, dp1: int) -> tuple[tuple[int, ...], ...]:
    """Finest partition of {0..d} coarser than both arguments."""
    parent = list(range(dp1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cells in (p1, p2):
        for cell in cells:
            cell = tuple(cell)
            for i in cell[1:]:
                ra, rb = find(cell[0]), find(i)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(dp1):
        groups.setdefault(find(i), []).append(i)
    return _canonical_cells(groups.values())


def common_fusion(
    scheme: SchemeData, eigen: EigenData, partition1, partition2
) -> FusionScheme:
    """Maximal common fusion of two fusions, via the partition join.

    Both partitions must individually satisfy the relation-side criterion;
    the join realizes the intersection of the two Bose-Mesner algebras and
    is verified outright (a failure would be reported as NotAFusion).
    """
    fuse_by_relation_partition(scheme, eigen, partition1)
    fuse_by_relation_partition(scheme, eigen, partition2)
    joined = partition_join(partition1, partition2, scheme.classes)
    return fuse_by_relation_partition(scheme, eigen, joined)
