"""Built-in example schemes.

Each entry bundles a verified scheme with its exact second eigenmatrix (and,
for group schemes, the underlying group and character table).  The same
builders that construct the objects in memory also generate the persisted
JSON catalog shipped under ``delsarte/data``; ``load_entry`` reads those
files back and re-verifies everything.

Entries:

==========  ================================================================
x8          8-vertex Cayley scheme on Z4 x Z2 with Gaussian-integer
            eigenvalues; its rational fusion merges two classes.
y8          a second, non-isomorphic 8-vertex scheme with the same rational
            fusion as x8.
coxeter     the metric scheme of the Coxeter graph (28 vertices, diameter
            4, eigenvalues in Q(sqrt 2)); admits no proper Galois fusion.
z12         conjugacy class (translation) scheme of the cyclic group Z12.
a4          conjugacy class scheme of the alternating group A4.
dic3/5/7    conjugacy class schemes of the dicyclic groups of order 12,
            20, 28.
==========  ================================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from .cyclotomic import CycMatrix, Cyclotomic
from .groups import (
    CharacterTable,
    ConjClassData,
    GroupTable,
    conj_class_scheme,
    conjugacy_classes,
    cyclic_group,
    dicyclic_group,
    eigendata_from_characters,
    make_character_table,
    make_group_table,
)
from .scheme import EigenData, SchemeData, attach_eigendata, verify_scheme

zeta = Cyclotomic.zeta

X8_RELATION = [
    [0, 1, 2, 3, 4, 4, 4, 4],
    [1, 0, 3, 2, 4, 4, 4, 4],
    [3, 2, 0, 1, 4, 4, 4, 4],
    [2, 3, 1, 0, 4, 4, 4, 4],
    [4, 4, 4, 4, 0, 1, 2, 3],
    [4, 4, 4, 4, 1, 0, 3, 2],
    [4, 4, 4, 4, 3, 2, 0, 1],
    [4, 4, 4, 4, 2, 3, 1, 0],
]

Y8_RELATION = [
    [0, 1, 2, 2, 3, 3, 4, 4],
    [1, 0, 2, 2, 3, 3, 4, 4],
    [2, 2, 0, 1, 4, 4, 3, 3],
    [2, 2, 1, 0, 4, 4, 3, 3],
    [4, 4, 3, 3, 0, 1, 2, 2],
    [4, 4, 3, 3, 1, 0, 2, 2],
    [3, 3, 4, 4, 2, 2, 0, 1],
    [3, 3, 4, 4, 2, 2, 1, 0],
]


def _x8_eigenmatrix() -> CycMatrix:
    i = zeta(4)
    return CycMatrix(
        [
            [1, 1, 2, 2, 2],
            [1, 1, -2, -2, 2],
            [1, 1, -2 * i, 2 * i, -2],
            [1, 1, 2 * i, -2 * i, -2],
            [1, -1, 0, 0, 0],
        ]
    )


def _y8_eigenmatrix() -> CycMatrix:
    i = zeta(4)
    return CycMatrix(
        [
            [1, 1, 1, 1, 4],
            [1, 1, 1, 1, -4],
            [1, -1, -1, 1, 0],
            [1, -i, i, -1, 0],
            [1, i, -i, -1, 0],
        ]
    )


def fano_lines(shift: tuple[int, int, int] = (1, 2, 4)) -> list[frozenset[int]]:
    """Lines of a Fano plane on {0..6} from a perfect difference set."""
    return [frozenset((i + s) % 7 for s in shift) for i in range(7)]


def coxeter_vertices() -> list[tuple[int, ...]]:
    """The 28 triples from {0..6} avoiding the standard Fano lines, sorted."""
    lines = set(fano_lines())
    return [
        t for t in combinations(range(7), 3) if frozenset(t) not in lines
    ]


def coxeter_second_fano() -> list[int]:
    """Vertex indices of a Fano plane disjoint from the deleted one.

    The complementary difference set {3, 5, 6} yields seven lines, none of
    which is a line of the standard plane, so all appear among the 28
    Coxeter vertices.
    """
    verts = {t: k for k, t in enumerate(coxeter_vertices())}
    return sorted(verts[tuple(sorted(line))] for line in fano_lines((3, 5, 6)))


def _coxeter_relation() -> np.ndarray:
    verts = coxeter_vertices()
    n = len(verts)
    adjacent = [
        [bool(not (set(a) & set(b))) for b in verts] for a in verts
    ]
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        frontier = [s]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for u in frontier:
                for v in range(n):
                    if adjacent[u][v] and dist[s, v] < 0:
                        dist[s, v] = depth
                        nxt.append(v)
            frontier = nxt
    assert dist.min() >= 0 and dist.max() == 4
    return dist


def _coxeter_eigenmatrix() -> CycMatrix:
    sqrt2 = zeta(8) - zeta(8, 3)
    f = Fraction
    return CycMatrix(
        [
            [1, 8, 6, 7, 6],
            [1, f(16, 3), -2 + 2 * sqrt2, f(-7, 3), -2 - 2 * sqrt2],
            [1, f(4, 3), -2 * sqrt2, f(-7, 3), 2 * sqrt2],
            [1, f(-4, 3), -1, f(7, 3), -1],
            [1, f(-8, 3), 2 + sqrt2, f(-7, 3), 2 - sqrt2],
        ]
    )


def build_x8() -> tuple[SchemeData, EigenData]:
    scheme = verify_scheme(X8_RELATION)
    return scheme, attach_eigendata(scheme, _x8_eigenmatrix())


def build_y8() -> tuple[SchemeData, EigenData]:
    scheme = verify_scheme(Y8_RELATION)
    return scheme, attach_eigendata(scheme, _y8_eigenmatrix())


def build_coxeter() -> tuple[SchemeData, EigenData]:
    scheme = verify_scheme(_coxeter_relation())
    return scheme, attach_eigendata(scheme, _coxeter_eigenmatrix())


def cycle_scheme(n: int) -> SchemeData:
    """The distance scheme of the n-cycle: (x, y) in R_i iff y = x +- i."""
    rel = [[min((x - y) % n, (y - x) % n) for y in range(n)] for x in range(n)]
    return verify_scheme(rel)


# ---------------------------------------------------------------------------
# Group scheme entries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSchemeBundle:
    group: GroupTable
    classes: ConjClassData
    table: CharacterTable
    scheme: SchemeData
    eigen: EigenData


def _bundle(group, classes, table) -> GroupSchemeBundle:
    scheme, found = conj_class_scheme(group)
    assert found.classes == classes.classes
    eigen = eigendata_from_characters(group, classes, table, scheme)
    return GroupSchemeBundle(group, classes, table, scheme, eigen)


def alternating_group_4() -> tuple[GroupTable, ConjClassData, CharacterTable]:
    """A4 as permutations of four points, classes ordered: identity, the
    double transpositions, then the two classes of 3-cycles."""
    from itertools import permutations

    def parity(p):
        inv = sum(p[a] > p[b] for a in range(4) for b in range(a + 1, 4))
        return inv % 2

    def rank(p):
        fixed = sum(p[t] == t for t in range(4))
        return (0 if fixed == 4 else 1 if fixed == 0 else 2, p)

    elements = sorted((p for p in permutations(range(4)) if parity(p) == 0), key=rank)
    index = {p: k for k, p in enumerate(elements)}
    mult = [
        [index[tuple(a[b[t]] for t in range(4))] for b in elements] for a in elements
    ]
    group = make_group_table(mult)
    classes = conjugacy_classes(group)
    assert classes.sizes == (1, 3, 4, 4)
    w = zeta(3)
    one = Cyclotomic.from_rational(1, 1)
    rows = [
        [1, 1, 1, 1],
        [one, one, w, w * w],
        [one, one, w * w, w],
        [3, -1, 0, 0],
    ]
    return group, classes, make_character_table(3, rows)


def build_z12() -> GroupSchemeBundle:
    return _bundle(*cyclic_group(12))


def build_a4() -> GroupSchemeBundle:
    return _bundle(*alternating_group_4())


def build_dicyclic(n: int) -> GroupSchemeBundle:
    return _bundle(*dicyclic_group(n))


# ---------------------------------------------------------------------------
# Persisted catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """One named example: file names relative to the catalog directory."""

    name: str
    scheme_file: str
    eigen_file: str
    group_file: str | None
    chars_file: str | None
    note: str


CATALOG: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry(
            "x8", "x8.scheme.json", "x8.eigen.json", None, None,
            "8-vertex Cayley scheme on Z4 x Z2 with Gaussian-integer eigenvalues",
        ),
        CatalogEntry(
            "y8", "y8.scheme.json", "y8.eigen.json", None, None,
            "second 8-vertex scheme, non-isomorphic to x8 but with the same "
            "rational fusion",
        ),
        CatalogEntry(
            "coxeter", "coxeter.scheme.json", "coxeter.eigen.json", None, None,
            "metric scheme of the Coxeter graph; no proper Galois fusion",
        ),
        CatalogEntry(
            "z12", "z12.scheme.json", "z12.eigen.json",
            "z12.group.json", "z12.chars.json",
            "conjugacy class scheme of the cyclic group Z12",
        ),
        CatalogEntry(
            "a4", "a4.scheme.json", "a4.eigen.json",
            "a4.group.json", "a4.chars.json",
            "conjugacy class scheme of the alternating group A4",
        ),
        CatalogEntry(
            "dic3", "dic3.scheme.json", "dic3.eigen.json",
            "dic3.group.json", "dic3.chars.json",
            "conjugacy class scheme of the dicyclic group of order 12",
        ),
        CatalogEntry(
            "dic5", "dic5.scheme.json", "dic5.eigen.json",
            "dic5.group.json", "dic5.chars.json",
            "conjugacy class scheme of the dicyclic group of order 20",
        ),
        CatalogEntry(
            "dic7", "dic7.scheme.json", "dic7.eigen.json",
            "dic7.group.json", "dic7.chars.json",
            "conjugacy class scheme of the dicyclic group of order 28",
        ),
    )
}

GROUP_BUILDERS = {
    "z12": build_z12,
    "a4": build_a4,
    "dic3": lambda: build_dicyclic(3),
    "dic5": lambda: build_dicyclic(5),
    "dic7": lambda: build_dicyclic(7),
}

PLAIN_BUILDERS = {
    "x8": build_x8,
    "y8": build_y8,
    "coxeter": build_coxeter,
}


def data_dir() -> Path:
    return Path(__file__).parent / "data"


@dataclass(frozen=True)
class LoadedEntry:
    entry: CatalogEntry
    scheme: SchemeData
    eigen: EigenData
    group: GroupTable | None = None
    classes: ConjClassData | None = None
    table: CharacterTable | None = None


def list_entries() -> list[CatalogEntry]:
    return [CATALOG[name] for name in sorted(CATALOG)]


def load_entry(name: str, base: Path | None = None) -> LoadedEntry:
    """Read an entry from disk and re-verify every part of it.

    Group entries additionally check that the stored scheme equals the one
    derived from the stored group, and that the stored Q equals the one the
    character table induces.
    """
    from . import fileio
    from .groups import conjugacy_classes

    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; "
                       f"known: {', '.join(sorted(CATALOG))}") from None
    base = base or data_dir()
    scheme = fileio.parse_scheme_file((base / entry.scheme_file).read_text())
    _, q = fileio.parse_eigen_file((base / entry.eigen_file).read_text())
    eigen = attach_eigendata(scheme, q)
    group = classes = table = None
    if entry.group_file:
        group = fileio.parse_group_file((base / entry.group_file).read_text())
        derived, found = conj_class_scheme(group)
        if derived != scheme:
            raise ValueError(f"{name}: stored scheme disagrees with the group")
        classes = found
        table = fileio.parse_character_file((base / entry.chars_file).read_text())
        from_chars = eigendata_from_characters(group, classes, table, scheme)
        if from_chars.Q != eigen.Q:
            raise ValueError(f"{name}: stored Q disagrees with the characters")
    return LoadedEntry(
        entry=entry, scheme=scheme, eigen=eigen,
        group=group, classes=classes, table=table,
    )


def generate_data(dest: Path | None = None) -> list[Path]:
    """Write the canonical catalog files; returns the paths written."""
    from . import fileio

    dest = dest or data_dir()
    dest.mkdir(parents=True, exist_ok=True)
    written = []

    def put(filename, text):
        path = dest / filename
        path.write_text(text)
        written.append(path)

    for name, builder in PLAIN_BUILDERS.items():
        entry = CATALOG[name]
        scheme, eigen = builder()
        put(entry.scheme_file, fileio.dump_scheme(scheme))
        put(entry.eigen_file, fileio.dump_eigen(eigen))
    for name, builder in GROUP_BUILDERS.items():
        entry = CATALOG[name]
        bundle = builder()
        put(entry.scheme_file, fileio.dump_scheme(bundle.scheme))
        put(entry.eigen_file, fileio.dump_eigen(bundle.eigen))
        put(entry.group_file, fileio.dump_group(bundle.group))
        put(entry.chars_file, fileio.dump_characters(bundle.table))
    return written
