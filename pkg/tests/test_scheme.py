import random
from fractions import Fraction

import numpy as np
import pytest

from delsarte.catalog import (
    build_coxeter,
    build_x8,
    build_y8,
    cycle_scheme,
    _x8_eigenmatrix,
)
from delsarte.cyclotomic import CycMatrix, Cyclotomic
from delsarte.errors import BadEigenbasis, NotAScheme
from delsarte.scheme import (
    attach_eigendata,
    count_intersection,
    intersection_numbers,
    krein_parameters,
    verify_scheme,
)


# ---------------------------------------------------------------------------
# verify_scheme
# ---------------------------------------------------------------------------

def test_x8_is_a_scheme():
    scheme, _ = build_x8()
    assert scheme.d == 4
    assert scheme.valencies == (1, 1, 1, 1, 4)
    assert scheme.transpose_map == (0, 1, 3, 2, 4)
    assert not scheme.is_symmetric()


def test_cycle_scheme_c4():
    scheme = cycle_scheme(4)
    assert scheme.d == 2
    assert scheme.valencies == (1, 2, 1)
    assert scheme.is_symmetric()


def test_perturbed_x8_rejected():
    bad = [row[:] for row in __import__("delsarte.catalog", fromlist=["X8_RELATION"]).X8_RELATION]
    bad[1][2] = 2
    with pytest.raises(NotAScheme) as err:
        verify_scheme(bad)
    assert err.value.axiom in ("ii", "iii")


def test_missing_class_rejected():
    with pytest.raises(NotAScheme) as err:
        verify_scheme([[0, 2], [2, 0]])
    assert err.value.axiom == "classes"


def test_broken_identity_rejected():
    with pytest.raises(NotAScheme) as err:
        verify_scheme([[1, 0], [0, 1]])
    assert err.value.axiom == "i"


# ---------------------------------------------------------------------------
# intersection numbers
# ---------------------------------------------------------------------------

def test_p_of_identity_class():
    for scheme in (build_x8()[0], cycle_scheme(6)):
        p = intersection_numbers(scheme)
        for i in range(scheme.classes):
            for j in range(scheme.classes):
                expected = scheme.valencies[i] if j == scheme.transpose_map[i] else 0
                assert p[i, j, 0] == expected


def test_c6_common_neighbours():
    p = intersection_numbers(cycle_scheme(6))
    assert p[1, 1, 2] == 1


def test_intersection_brute_force_oracle():
    rng = random.Random(17)
    scheme, _ = build_coxeter()
    p = scheme.intersection
    for _ in range(60):
        a = rng.randrange(scheme.size)
        b = rng.randrange(scheme.size)
        i = rng.randrange(scheme.classes)
        j = rng.randrange(scheme.classes)
        k = scheme.relation[a, b]
        assert count_intersection(scheme, a=a, b=b, i=i, j=j) == p[i, j, k]


# ---------------------------------------------------------------------------
# attach_eigendata
# ---------------------------------------------------------------------------

def test_x8_eigendata():
    scheme, eigen = build_x8()
    assert eigen.multiplicities == (1, 1, 2, 2, 2)
    assert eigen.P * eigen.Q == CycMatrix.identity(5).scale(8)
    # 8 Q^{-1} = P: spelled out with mat_inverse
    assert eigen.Q.inverse().scale(8) == eigen.P


def test_coxeter_eigendata():
    scheme, eigen = build_coxeter()
    assert eigen.multiplicities == (1, 8, 6, 7, 6)
    assert scheme.valencies == (1, 3, 6, 12, 6)
    assert eigen.conductor == 8


def test_y8_eigendata():
    _, eigen = build_y8()
    assert eigen.multiplicities == (1, 1, 1, 1, 4)


def test_swapped_q_entries_rejected():
    scheme, _ = build_x8()
    rows = [list(r) for r in _x8_eigenmatrix().entries]
    rows[2][2], rows[3][2] = rows[3][2], rows[2][2]
    with pytest.raises(BadEigenbasis):
        attach_eigendata(scheme, CycMatrix(rows))


def test_random_q_corruptions_all_rejected():
    # every single-entry corruption of a valid Q must trip some invariant
    rng = random.Random(71)
    scheme, eigen = build_x8()
    zeta4 = Cyclotomic.zeta(4)
    for _ in range(25):
        rows = [list(r) for r in eigen.Q.entries]
        i = rng.randrange(5)
        j = rng.randrange(5)
        bump = rng.choice(
            [Fraction(1), Fraction(-1), Fraction(1, 2), zeta4, -zeta4]
        )
        rows[i][j] = rows[i][j] + bump
        with pytest.raises(BadEigenbasis):
            attach_eigendata(scheme, CycMatrix(rows))


def test_random_relation_corruptions_all_rejected():
    rng = random.Random(73)
    scheme, _ = build_x8()
    for _ in range(25):
        grid = scheme.relation.copy()
        x, y = rng.randrange(8), rng.randrange(8)
        new = rng.randrange(5)
        if grid[x, y] == new:
            new = (new + 1) % 5
        grid[x, y] = new
        with pytest.raises(NotAScheme):
            verify_scheme(grid)


def test_dual_map_is_identity_for_commutative_schemes():
    # primitive idempotents are orthogonal projections, hence Hermitian
    for builder in (build_x8, build_y8, build_coxeter):
        _, eigen = builder()
        assert eigen.dual_map == tuple(range(eigen.scheme.classes))


def test_idempotents_literal_matrix_identities():
    # literal |X| x |X| checks on the small scheme: E_j E_k = delta E_j,
    # sum E_j = I, E_0 = J/|X|, and A_i reconstruction
    scheme, eigen = build_x8()
    size = scheme.size
    es = [eigen.idempotent(j) for j in range(scheme.classes)]
    eye = CycMatrix.identity(size)
    jmat = CycMatrix([[Fraction(1, size)] * size for _ in range(size)])
    assert es[0] == jmat
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == eye
    for j, ej in enumerate(es):
        for k, ek in enumerate(es):
            prod = ej * ek
            assert prod == (ej if j == k else ej.scale(0))
        assert ej.adjoint() == es[eigen.dual_map[j]]
    for i in range(scheme.classes):
        acc = es[0].scale(eigen.P[0, i])
        for j in range(1, scheme.classes):
            acc = acc + es[j].scale(eigen.P[j, i])
        expected = CycMatrix(scheme.adjacency(i).tolist())
        assert acc == expected


def test_second_orthogonality_relation():
    for builder in (build_x8, build_coxeter):
        scheme, eigen = builder()
        for j in range(scheme.classes):
            for i in range(scheme.classes):
                assert eigen.P[j, i] * eigen.multiplicities[j] == eigen.Q[
                    i, j
                ].conjugate() * scheme.valencies[i]


# ---------------------------------------------------------------------------
# Krein parameters
# ---------------------------------------------------------------------------

def test_krein_normalization_rows():
    _, eigen = build_x8()
    kd = krein_parameters(eigen)
    dp1 = eigen.scheme.classes
    for j in range(dp1):
        for k in range(dp1):
            assert kd.q[0][j][k] == (1 if j == k else 0)


def test_krein_row_sum_identity():
    # Q[h][i] Q[h][j] = sum_k q[i][j][k] Q[h][k]
    for builder in (build_x8, build_coxeter):
        _, eigen = builder()
        kd = krein_parameters(eigen)
        dp1 = eigen.scheme.classes
        for h in range(dp1):
            for i in range(dp1):
                for j in range(dp1):
                    acc = Cyclotomic.from_rational(0, 1)
                    for k in range(dp1):
                        acc = acc + kd.q[i][j][k] * eigen.Q[h, k]
                    assert acc == eigen.Q[h, i] * eigen.Q[h, j]


def test_krein_coxeter_conductor():
    _, eigen = build_coxeter()
    kd = krein_parameters(eigen)
    assert kd.krein_conductor > 1


def test_krein_literal_schur_expansion():
    # E_i o E_j = (1/|X|) sum_k q[i][j][k] E_k, checked as matrices on x8
    _, eigen = build_x8()
    kd = krein_parameters(eigen)
    size = eigen.scheme.size
    es = [eigen.idempotent(j) for j in range(eigen.scheme.classes)]
    for i in (0, 2, 4):
        for j in (1, 3):
            lhs = es[i].schur(es[j]).scale(size)
            acc = es[0].scale(kd.q[i][j][0])
            for k in range(1, eigen.scheme.classes):
                acc = acc + es[k].scale(kd.q[i][j][k])
            assert lhs == acc
