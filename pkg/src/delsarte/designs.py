"""Delsarte designs: inner and dual distributions, annihilated eigenspaces,
exhaustive enumeration, design transfer between schemes with equal fusions,
and the dicyclic subgroup case study.

A (weighted) subset C has inner distribution a with
a_i = x^T A_i x / x^T x and dual distribution b = aQ; the annihilated set
T(C) collects the j >= 1 with b_j = 0, equivalently E_j x = 0.  T(C) is
always a union of orbits of the rational Galois action, which is verified on
every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .cyclotomic import Cyclotomic, SubfieldSpec, exact_sign
from .errors import (
    IncompatibleT,
    InternalAssertion,
    OrbitClosureViolation,
    TooLarge,
    ZeroVector,
)
from .fusion import FusionScheme, GaloisOrbitData, galois_fusion, orbit_merge
from .groups import conj_class_scheme, dicyclic_group, eigendata_from_characters
from .scheme import EigenData, SchemeData

#: exhaustive enumeration guardrails
ENUM_VERTEX_CAP = 40
ENUM_SUBSET_CAP = 2_000_000


@dataclass(frozen=True)
class WeightedSubset:
    """Nonnegative rational weights on the vertex set; not identically zero."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if not any(self.weights):
            raise ZeroVector("weighted subset is identically zero")

    @classmethod
    def from_indices(cls, size: int, indices) -> "WeightedSubset":
        w = [Fraction(0)] * size
        for i in indices:
            w[i] = Fraction(1)
        return cls(tuple(w))

    @classmethod
    def from_weights(cls, weights) -> "WeightedSubset":
        return cls(tuple(Fraction(w) for w in weights))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w)

    def is_characteristic(self) -> bool:
        return all(w in (0, 1) for w in self.weights)


def _as_subset(scheme: SchemeData, w) -> WeightedSubset:
    if isinstance(w, WeightedSubset):
        return w
    return WeightedSubset.from_indices(scheme.size, w)


@dataclass(frozen=True)
class DesignReport:
    """Inner/dual distributions, the annihilated set, and orbit closure."""

    a: tuple[Fraction, ...]
    b: tuple[Cyclotomic, ...]
    T: tuple[int, ...]
    orbit_closed: bool


def inner_distribution(scheme: SchemeData, w) -> tuple[Fraction, ...]:
    """a_i = x^T A_i x / x^T x, exactly; pair counting for 01 subsets."""
    w = _as_subset(scheme, w)
    support = w.support
    if w.is_characteristic():
        idx = np.fromiter(support, dtype=np.int64)
        sub = scheme.relation[np.ix_(idx, idx)]
        counts = np.bincount(sub.ravel(), minlength=scheme.classes)
        return tuple(Fraction(int(c), len(support)) for c in counts)
    num = [Fraction(0)] * scheme.classes
    for x in support:
        wx = w.weights[x]
        for y in support:
            num[scheme.relation[x, y]] += wx * w.weights[y]
    denom = sum(w.weights[x] ** 2 for x in support)
    return tuple(v / denom for v in num)


def dual_distribution(eigen: EigenData, a) -> tuple[Cyclotomic, ...]:
    """The MacWilliams transform b = aQ."""
    dp1 = eigen.scheme.classes
    if len(a) != dp1:
        raise ValueError(f"inner distribution must have length {dp1}")
    out = []
    for j in range(dp1):
        acc = Cyclotomic.from_rational(0, 1)
        for i in range(dp1):
            if a[i]:
                acc = acc + eigen.Q[i, j] * a[i]
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=32)
def rational_orbit_data(eigen: EigenData) -> GaloisOrbitData:
    """Orbits of the full Galois group on the idempotents (cached)."""
    return orbit_merge(eigen, SubfieldSpec.rationals(eigen.conductor))


def design_report(
    scheme: SchemeData, eigen: EigenData, w, verify_signs: bool = True
) -> DesignReport:
    """Full report for a weighted subset: a, b = aQ, T(C), orbit closure.

    Every b entry must be real and nonnegative (exact sign check unless
    ``verify_signs`` is disabled); T(C) must be a union of rational Galois
    orbits, else :class:`OrbitClosureViolation` (impossible for verified
    eigendata).
    """
    w = _as_subset(scheme, w)
    a = inner_distribution(scheme, w)
    b = dual_distribution(eigen, a)
    if verify_signs:
        for j, val in enumerate(b):
            if not val.is_real():
                raise InternalAssertion(f"b[{j}] = {val} is not real")
            if exact_sign(val) < 0:
                raise InternalAssertion(f"b[{j}] = {val} is negative")
    if b[0].is_zero():
        raise InternalAssertion("b[0] vanished for a nonzero subset")
    annihilated = tuple(j for j in range(1, len(b)) if b[j].is_zero())
    t_set = set(annihilated)
    closed = all(
        set(orbit) <= t_set or not (set(orbit) & t_set)
        for orbit in rational_orbit_data(eigen).orbits
    )
    if not closed:
        raise OrbitClosureViolation(
            f"T = {annihilated} is not a union of Galois orbits"
        )
    return DesignReport(a=a, b=b, T=annihilated, orbit_closed=closed)


def is_T_design(scheme: SchemeData, eigen: EigenData, w, T) -> bool:
    """True iff b_j = 0 for every j in T (equivalently E_j x = 0)."""
    T = _validate_T(T, scheme.d)
    if not T:
        return True
    w = _as_subset(scheme, w)
    a = inner_distribution(scheme, w)
    for j in T:
        acc = Cyclotomic.from_rational(0, 1)
        for i in range(scheme.classes):
            if a[i]:
                acc = acc + eigen.Q[i, j] * a[i]
        if not acc.is_zero():
            return False
    return True


def is_T_design_via_merges(orbit_data: GaloisOrbitData, w, T) -> bool:
    """Check F_l x = 0 for l in iota(T), using only subfield-rational data.

    Since the eigenspaces are orthogonal, F_l x = 0 forces E_j x = 0 for
    every j in the l-th orbit, so this decides whether C is a design for the
    whole Galois closure of T.
    """
    scheme = orbit_data.eigen.scheme
    T = _validate_T(T, scheme.d)
    w = _as_subset(scheme, w)
    merged = sorted({orbit_data.iota[j] for j in T})
    if not merged:
        return True
    for y in range(scheme.size):
        # class-aggregated weights of row y: (F_l x)_y is their Qbar combination
        coeffs = [Fraction(0)] * scheme.classes
        for z in w.support:
            coeffs[scheme.relation[y, z]] += w.weights[z]
        for l in merged:
            acc = Cyclotomic.from_rational(0, 1)
            for i, c in enumerate(coeffs):
                if c:
                    acc = acc + orbit_data.Qbar[i, l] * c
            if not acc.is_zero():
                return False
    return True


def _validate_T(T, d: int) -> tuple[int, ...]:
    T = tuple(sorted(set(T)))
    if any(j < 1 or j > d for j in T):
        raise ValueError(f"T must be a subset of 1..{d}: {T}")
    return T


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

def enumerate_T_designs(
    scheme: SchemeData,
    eigen: EigenData,
    T,
    min_size: int,
    max_size: int,
    method: str = "direct",
) -> tuple[tuple[int, ...], ...]:
    """All 01 subsets C with T(C) containing T and min <= |C| <= max,
    lexicographically ordered.

    ``method = "fused"`` enumerates on the Galois fusion over Q with the
    merged index set iota(T) (identical by the design-correspondence
    theorem); ``"cross_check"`` runs both and asserts they agree.
    """
    T = _validate_T(T, scheme.d)
    if scheme.size > ENUM_VERTEX_CAP:
        raise TooLarge(f"|X| = {scheme.size} exceeds the exhaustive cap")
    total = sum(
        math.comb(scheme.size, r)
        for r in range(max(min_size, 1), min(max_size, scheme.size) + 1)
    )
    if total > ENUM_SUBSET_CAP:
        raise TooLarge(f"{total} candidate subsets exceed the enumeration cap")

    if method == "cross_check":
        direct = enumerate_T_designs(scheme, eigen, T, min_size, max_size, "direct")
        fused = enumerate_T_designs(scheme, eigen, T, min_size, max_size, "fused")
        if direct != fused:
            raise InternalAssertion("direct and fused enumerations disagree")
        return direct
    if method == "fused":
        fs = galois_fusion(
            scheme, eigen, SubfieldSpec.rationals(eigen.conductor)
        )
        merged_T = sorted({fs.orbit_data.iota[j] for j in T})
        return enumerate_T_designs(
            fs.fused, fs.eigen, merged_T, min_size, max_size, "direct"
        )
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")

    rel = scheme.relation
    # b_j = 0 iff counts . Q[:, j] = 0; scale each column integral so the
    # test is an exact int64 matrix product (counts <= |X|^2, entries small)
    blocks = []
    for j in T:
        col = [eigen.Q[i, j] for i in range(scheme.classes)]
        denom = math.lcm(*(c.denominator for v in col for c in v.coeffs))
        blocks.append(
            [[int(c * denom) for c in v.coeffs] for v in col]
        )
    check = np.hstack([np.array(b, dtype=np.int64) for b in blocks]) if T else None
    found = []
    for r in range(max(min_size, 1), min(max_size, scheme.size) + 1):
        for combo in combinations(range(scheme.size), r):
            idx = np.fromiter(combo, dtype=np.int64)
            counts = np.bincount(
                rel[np.ix_(idx, idx)].ravel(), minlength=scheme.classes
            )
            if check is None or not (counts @ check).any():
                found.append(combo)
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# Design transfer between schemes with equal rational fusions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DesignTransfer:
    """A design-collection bijection induced by an isomorphism of fusions."""

    source: FusionScheme
    target: FusionScheme
    vertex_map: tuple[int, ...]
    class_map: tuple[int, ...]
    eigen_match: tuple[int, ...]


def build_design_transfer(
    source: FusionScheme, target: FusionScheme, vertex_map=None, eigen_match=None
) -> DesignTransfer:
    """Match two fused schemes through a vertex bijection.

    The vertex map (identity by default) must carry the fused relation
    partition of the source onto that of the target; fused eigenspaces are
    then matched by comparing eigenmatrix columns under the induced class
    bijection, with multiplicities as a pre-filter.  Ambiguous matches are
    rejected rather than guessed, and a supplied ``eigen_match`` override is
    verified entry by entry.
    """
    fx, fy = source.fused, target.fused
    if fx.size != fy.size:
        raise ValueError("fused schemes live on different vertex counts")
    vm = tuple(vertex_map) if vertex_map is not None else tuple(range(fx.size))
    if sorted(vm) != list(range(fx.size)):
        raise ValueError("vertex map is not a bijection")
    if fx.classes != fy.classes:
        raise IncompatibleT("fused schemes have different class counts")

    perm = np.fromiter(vm, dtype=np.int64)
    image = fy.relation[np.ix_(perm, perm)]
    class_map = [-1] * fx.classes
    for c in range(fx.classes):
        vals = np.unique(image[fx.relation == c])
        if len(vals) != 1:
            raise IncompatibleT(
                f"vertex map does not carry fused class {c} onto a single class"
            )
        class_map[c] = int(vals[0])
    if sorted(class_map) != list(range(fx.classes)):
        raise IncompatibleT("induced class map is not a bijection")

    qx, qy = source.Q_F, target.Q_F
    e1 = qx.cols
    my = [qy[0, l] for l in range(e1)]
    derived = []
    for l in range(e1):
        column = [None] * e1
        for c in range(e1):
            column[class_map[c]] = qx[c, l]
        candidates = [
            lp
            for lp in range(e1)
            if my[lp] == qx[0, l]
            and all(qy[c, lp] == column[c] for c in range(e1))
        ]
        if not candidates:
            raise IncompatibleT(f"fused eigenspace {l} has no match")
        if len(candidates) > 1:
            raise IncompatibleT(f"fused eigenspace {l} matches ambiguously")
        derived.append(candidates[0])
    if sorted(derived) != list(range(e1)):
        raise IncompatibleT("eigenspace matching is not a bijection")
    if eigen_match is not None:
        if tuple(eigen_match) != tuple(derived):
            raise IncompatibleT(
                f"supplied eigen match {tuple(eigen_match)} contradicts the "
                f"verified one {tuple(derived)}"
            )
    return DesignTransfer(
        source=source,
        target=target,
        vertex_map=vm,
        class_map=tuple(class_map),
        eigen_match=tuple(derived),
    )


def transfer_design(
    transfer: DesignTransfer, subset, T
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Carry a T-design of the source scheme to a T'-design of the target.

    T is given in original source indices; its merged image moves through
    the eigenspace match and pulls back to T' in original target indices.
    The transferred subset is re-verified as a T'-design.
    """
    src, tgt = transfer.source, transfer.target
    if src.orbit_data is None or tgt.orbit_data is None:
        raise ValueError("design transfer needs Galois fusions (orbit data)")
    T = _validate_T(T, src.parent.d)
    if not is_T_design(src.parent, src.parent_eigen, subset, T):
        raise ValueError(f"{tuple(subset)} is not a {T}-design of the source")
    merged = sorted({src.orbit_data.iota[j] for j in T})
    mapped = sorted(transfer.eigen_match[l] for l in merged)
    t_prime = tuple(
        sorted(
            j
            for lp in mapped
            for j in tgt.orbit_data.orbits[lp]
        )
    )
    image = tuple(sorted(transfer.vertex_map[c] for c in subset))
    if not is_T_design(tgt.parent, tgt.parent_eigen, image, t_prime):
        raise InternalAssertion("transferred subset failed design verification")
    return image, t_prime


# ---------------------------------------------------------------------------
# Dicyclic subgroup case study
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupDistribution:
    """One row of the dicyclic subgroup table."""

    kind: str  # "cyclic" or "dicyclic"
    k: int
    order: int
    elements: tuple[int, ...]
    a: tuple[Fraction, ...]
    b: tuple[Cyclotomic, ...]
    T: tuple[int, ...]


def dicyclic_subgroups(n: int) -> list[tuple[str, int, tuple[int, ...]]]:
    """Subgroup representatives of Dic_n (n odd): cyclic <x^k> for k | 2n
    and dicyclic <x^k, y> for k | n."""
    two_n = 2 * n
    out = []
    for k in sorted(d for d in range(1, two_n + 1) if two_n % d == 0):
        out.append(("cyclic", k, tuple(range(0, two_n, k))))
    for k in sorted(d for d in range(1, n + 1) if n % d == 0):
        cyclic_part = tuple(range(0, two_n, k))
        y_part = tuple(two_n + j for j in range(0, two_n, k))
        out.append(("dicyclic", k, cyclic_part + y_part))
    return out


def dicyclic_subgroup_table(n: int) -> list[SubgroupDistribution]:
    """Inner and dual distributions of every subgroup of Dic_n (n odd).

    Rows are computed from the scheme itself (not from closed forms), so
    they serve as ground truth for the tabulated patterns: cyclic <x^k> of
    order l = 2n/k has b-entries l, l, l, l on the linear characters when l
    is odd (l, l, 0, 0 when l is even) and 4l at the psi indices divisible
    by l; dicyclic subgroups of order 4n/k lead with 4n/k.
    """
    group, classes, table = dicyclic_group(n)
    scheme, _ = conj_class_scheme(group)
    eigen = eigendata_from_characters(group, classes, table, scheme)
    rows = []
    for kind, k, elements in dicyclic_subgroups(n):
        report = design_report(scheme, eigen, elements)
        rows.append(
            SubgroupDistribution(
                kind=kind,
                k=k,
                order=len(elements),
                elements=elements,
                a=report.a,
                b=report.b,
                T=report.T,
            )
        )
    return rows
