"""Association schemes: axiom verification, intersection numbers, and
attachment of exact eigenstructure.

A scheme is presented as an |X| x |X| grid of class indices partitioning
X x X.  ``verify_scheme`` checks the four defining axioms by direct counting
and records the intersection tensor.  Eigenstructure is always supplied (a
second eigenmatrix Q) and verified, never solved for: ``attach_eigendata``
derives P = |X| Q^(-1) and confirms every structural identity exactly, so
results stay in exact arithmetic end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycMatrix, Cyclotomic, exact_sign, fixed_field_conductor, units_mod
from .errors import BadEigenbasis, KreinViolation, NotAScheme, SingularMatrix


@dataclass(frozen=True)
class SchemeData:
    """A verified association scheme on |X| points with d+1 classes."""

    size: int
    classes: int
    relation: np.ndarray
    transpose_map: tuple[int, ...]
    valencies: tuple[int, ...]
    intersection: np.ndarray  # p[i][j][k], nonnegative integers

    def __post_init__(self):
        self.relation.setflags(write=False)
        self.intersection.setflags(write=False)

    @property
    def d(self) -> int:
        return self.classes - 1

    def is_symmetric(self) -> bool:
        return all(i == ip for i, ip in enumerate(self.transpose_map))

    def adjacency(self, i: int) -> np.ndarray:
        return (self.relation == i).astype(np.int64)

    def __eq__(self, other):
        if not isinstance(other, SchemeData):
            return NotImplemented
        return self.size == other.size and np.array_equal(
            self.relation, other.relation
        )

    def __hash__(self):
        return hash((self.size, self.relation.tobytes()))


def verify_scheme(relation) -> SchemeData:
    """Check the scheme axioms on a relation grid by direct counting.

    Raises :class:`NotAScheme` naming the first violated axiom together with
    a witness; on success returns the populated :class:`SchemeData`.
    """
    rel = np.asarray(relation, dtype=np.int64)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise NotAScheme("shape", rel.shape, "relation grid must be square")
    size = rel.shape[0]
    present = np.unique(rel)
    d = int(rel.max())
    if rel.min() < 0 or len(present) != d + 1:
        missing = sorted(set(range(d + 1)) - set(present.tolist()))
        raise NotAScheme("classes", missing, f"class indices missing: {missing}")

    # (i) class 0 is the identity relation
    diag = np.diagonal(rel)
    if (diag != 0).any():
        x = int(np.argmax(diag != 0))
        raise NotAScheme("i", (x, x), f"relation[{x}][{x}] != 0")
    off_zero = np.argwhere((rel == 0) & ~np.eye(size, dtype=bool))
    if len(off_zero):
        x, y = map(int, off_zero[0])
        raise NotAScheme("i", (x, y), f"relation[{x}][{y}] = 0 off the diagonal")

    # (ii) the transpose of every class is a class
    transpose_map = []
    rel_t = rel.T
    for i in range(d + 1):
        vals = np.unique(rel_t[rel == i])
        if len(vals) != 1:
            cells = np.argwhere(rel == i)
            x, y = map(int, cells[0])
            raise NotAScheme(
                "ii", (i, (x, y)), f"transpose of class {i} is not a single class"
            )
        transpose_map.append(int(vals[0]))
    transpose_map = tuple(transpose_map)

    # (iii) constant intersection numbers, and (iv) their symmetry
    adj = [(rel == i).astype(np.int64) for i in range(d + 1)]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    masks = [rel == k for k in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            prod = adj[i] @ adj[j]
            for k in range(d + 1):
                vals = prod[masks[k]]
                first = int(vals[0])
                if (vals != first).any():
                    cells = np.argwhere(masks[k])
                    bad = cells[int(np.argmax(vals != first))]
                    raise NotAScheme(
                        "iii",
                        ((i, j, k), tuple(map(int, cells[0])), tuple(map(int, bad))),
                        f"|R_{i}(a) n R_{j}'(b)| is not constant on class {k}",
                    )
                p[i, j, k] = first
            if j > i:
                prod_ji = adj[j] @ adj[i]
                if not np.array_equal(prod_ji, prod):
                    cell = np.argwhere(prod_ji != prod)[0]
                    x, y = map(int, cell)
                    k = int(rel[x, y])
                    raise NotAScheme(
                        "iv",
                        (i, j, k),
                        f"p[{i}][{j}]^{k} != p[{j}][{i}]^{k}",
                    )
                for k in range(d + 1):
                    p[j, i, k] = p[i, j, k]

    valencies = tuple(int(p[i, transpose_map[i], 0]) for i in range(d + 1))
    assert sum(valencies) == size
    return SchemeData(
        size=size,
        classes=d + 1,
        relation=rel,
        transpose_map=transpose_map,
        valencies=valencies,
        intersection=p,
    )


def intersection_numbers(scheme: SchemeData) -> np.ndarray:
    """The tensor p[i][j][k] of the scheme (populated during verification)."""
    return scheme.intersection


def count_intersection(scheme: SchemeData, i: int, j: int, a: int, b: int) -> int:
    """Brute-force count of |{c : (a,c) in R_i, (c,b) in R_j}| for one pair."""
    rel = scheme.relation
    return int(np.count_nonzero((rel[a, :] == i) & (rel[:, b] == j)))


# ---------------------------------------------------------------------------
# Eigenstructure
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EigenData:
    """Verified eigenstructure (P, Q, idempotents) attached to a scheme."""

    scheme: SchemeData
    Q: CycMatrix
    P: CycMatrix
    multiplicities: tuple[int, ...]
    dual_map: tuple[int, ...]
    conductor: int

    @property
    def d(self) -> int:
        return self.scheme.d

    def idempotent(self, j: int) -> CycMatrix:
        """The primitive idempotent E_j as a dense |X| x |X| matrix."""
        rel = self.scheme.relation
        size = self.scheme.size
        col = [self.Q[i, j] / size for i in range(self.scheme.classes)]
        return CycMatrix(
            [[col[rel[x, y]] for y in range(size)] for x in range(size)]
        )

    def eigenvalue(self, j: int, i: int) -> Cyclotomic:
        """P[j][i], the eigenvalue of A_i on the j-th eigenspace."""
        return self.P[j, i]


def _int_positive(value: Cyclotomic):
    if not value.is_rational():
        return None
    q = value.as_rational()
    if q.denominator != 1 or q <= 0:
        return None
    return int(q)


def attach_eigendata(scheme: SchemeData, Q) -> EigenData:
    """Attach and exhaustively verify a second eigenmatrix Q.

    Q must be (d+1) x (d+1) with first column all ones (so E_0 = J/|X|).
    Every invariant is checked exactly: invertibility with PQ = QP = |X| I,
    positive integer multiplicities Q[0][j] and valencies matching the
    scheme, the common-eigenvector identity that makes each E_j idempotent
    and mutually orthogonal, the second orthogonality relation
    m_j P[j][i] = v_i conj(Q[i][j]), and existence of the dual map j -> j*
    with E_{j*} equal to the Hermitian adjoint of E_j.
    """
    if not isinstance(Q, CycMatrix):
        Q = CycMatrix(Q)
    dp1 = scheme.classes
    size = scheme.size
    if Q.rows != dp1 or Q.cols != dp1:
        raise BadEigenbasis("shape", f"Q must be {dp1}x{dp1}")
    if any(Q[i, 0] != 1 for i in range(dp1)):
        raise BadEigenbasis("E0", "column 0 of Q must be all ones")

    mult = []
    for j in range(dp1):
        m = _int_positive(Q[0, j])
        if m is None:
            raise BadEigenbasis("multiplicity", f"Q[0][{j}] = {Q[0, j]}")
        mult.append(m)
    if sum(mult) != size:
        raise BadEigenbasis("multiplicity", "multiplicities do not sum to |X|")

    try:
        P = Q.inverse().scale(size)
    except SingularMatrix as exc:
        raise BadEigenbasis("invertibility", str(exc)) from exc
    if P * Q != CycMatrix.identity(dp1).scale(size):
        raise BadEigenbasis("orthogonality", "PQ != |X| I")

    for i in range(dp1):
        v = _int_positive(P[0, i])
        if v is None or v != scheme.valencies[i]:
            raise BadEigenbasis(
                "valency", f"P[0][{i}] = {P[0, i]} != {scheme.valencies[i]}"
            )
        if P[i, 0] != 1:
            raise BadEigenbasis("P_column_0", f"P[{i}][0] != 1")

    # Common-eigenvector identity: B_i Qcol_j = P[j][i] Qcol_j where
    # (B_i)[m][l] = p[i][l][m].  Together with PQ = |X| I this forces
    # E_j E_k = delta_{jk} E_j, sum E_j = I, and A_i = sum_j P[j][i] E_j.
    p = scheme.intersection
    for j in range(dp1):
        qcol = [Q[l, j] for l in range(dp1)]
        for i in range(dp1):
            pij = P[j, i]
            for m in range(dp1):
                acc = Cyclotomic.from_rational(0, 1)
                row = p[i, :, m]
                for l in range(dp1):
                    c = int(row[l])
                    if c:
                        acc = acc + qcol[l] * c
                if acc != pij * qcol[m]:
                    raise BadEigenbasis(
                        "eigenvector",
                        f"intersection matrix B_{i} does not act as "
                        f"P[{j}][{i}] on column {j}",
                    )

    # Second orthogonality: m_j P[j][i] = v_i conj(Q[i][j]).
    for j in range(dp1):
        for i in range(dp1):
            lhs = P[j, i] * mult[j]
            rhs = Q[i, j].conjugate() * scheme.valencies[i]
            if lhs != rhs:
                raise BadEigenbasis(
                    "second_orthogonality", f"fails at (j={j}, i={i})"
                )

    # Dual map: E_{j*} = adjoint(E_j), i.e. Q[i][j*] = conj(Q[i'][j]).
    tmap = scheme.transpose_map
    col_keys = {Q.col_key(j): j for j in range(dp1)}
    dual = []
    for j in range(dp1):
        want = CycMatrix(
            [[Q[tmap[i], j].conjugate()] for i in range(dp1)], Q.conductor
        )
        j_star = col_keys.get(want.col_key(0))
        if j_star is None:
            raise BadEigenbasis("dual_map", f"adjoint of E_{j} not in the basis")
        dual.append(j_star)

    return EigenData(
        scheme=scheme,
        Q=Q,
        P=P,
        multiplicities=tuple(mult),
        dual_map=tuple(dual),
        conductor=Q.conductor,
    )


# ---------------------------------------------------------------------------
# Krein parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KreinData:
    """The Krein tensor q[i][j][k] and the conductor of its field."""

    q: tuple[tuple[tuple[Cyclotomic, ...], ...], ...]
    krein_conductor: int


def krein_parameters(eigen: EigenData) -> KreinData:
    """Expand E_i o E_j in the idempotent basis to recover q[i][j][k].

    Entrywise, E_i o E_j has A_m-coefficient Q[m][i] Q[m][j] / |X|^2, so
    q[i][j][k] = (1/|X|) sum_m P[k][m] Q[m][i] Q[m][j].  Realness is checked
    exactly; nonnegativity by exact zero test then interval sign evaluation.
    """
    Q, P = eigen.Q, eigen.P
    dp1 = eigen.scheme.classes
    size = eigen.scheme.size
    tensor = []
    for i in range(dp1):
        plane = []
        for j in range(dp1):
            w = [Q[m, i] * Q[m, j] for m in range(dp1)]
            row = []
            for k in range(dp1):
                acc = Cyclotomic.from_rational(0, 1)
                for m in range(dp1):
                    if not w[m].is_zero():
                        acc = acc + P[k, m] * w[m]
                q_ijk = acc / size
                if not q_ijk.is_real():
                    raise KreinViolation(i, j, k, f"= {q_ijk} is not real")
                if exact_sign(q_ijk) < 0:
                    raise KreinViolation(i, j, k, f"= {q_ijk} is negative")
                row.append(q_ijk)
            plane.append(tuple(row))
        tensor.append(tuple(plane))

    for j in range(dp1):
        for k in range(dp1):
            expected = 1 if j == k else 0
            if tensor[0][j][k] != expected:
                raise KreinViolation(0, j, k, f"!= {expected}")

    n = eigen.conductor
    fixing = [
        k
        for k in units_mod(n)
        if all(
            v.galois(k) == v for plane in tensor for row in plane for v in row
        )
    ]
    return KreinData(
        q=tuple(tensor),
        krein_conductor=fixed_field_conductor(n, fixing),
    )
