"""JSON file formats with exact round-tripping.

All numeric payloads are exact: rationals are strings "p/q" (with "/q"
omitted when the denominator is 1) and cyclotomic values are term lists
[[exponent, "p/q"], ...] over a declared ambient conductor.  Serialization
is canonical (sorted keys, one matrix row per line), so
``serialize(parse(f))`` is byte-identical for canonical files.

Formats:

- scheme:     {"size": v, "classes": d+1, "relation": [[...]]}
- eigen:      {"conductor": n, "Q": [[literal, ...], ...]}
- group:      {"order": n, "mult": [[...]]}
- characters: {"conductor": n, "rows": [[literal, ...], ...], "degrees": [...]}
- design:     {"subset": [indices]} or {"weights": ["p/q", ...]}
- cyclotomic: {"conductor": n, "terms": [[exponent, "p/q"], ...]}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cyclotomic import CycMatrix, Cyclotomic, cyc_canonicalize
from .designs import DesignReport, WeightedSubset
from .errors import ParseError
from .groups import CharacterTable, GroupTable, make_character_table, make_group_table
from .lp import LPResult
from .scheme import EigenData, SchemeData, verify_scheme

# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def rational_to_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_str(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(None, f"bad rational literal {text!r}: {exc}") from exc


def cyc_to_literal(value: Cyclotomic):
    """Rational values become "p/q" strings; others term lists."""
    if value.is_rational():
        return rational_to_str(value.as_rational())
    return [[e, rational_to_str(c)] for e, c in value.terms()]


def cyc_from_literal(lit, conductor: int) -> Cyclotomic:
    if isinstance(lit, (int, str)):
        return Cyclotomic.from_rational(rational_from_str(lit), 1)
    if isinstance(lit, list):
        try:
            terms = [(int(e), rational_from_str(c)) for e, c in lit]
        except (TypeError, ValueError) as exc:
            raise ParseError(None, f"bad cyclotomic literal {lit!r}") from exc
        return cyc_canonicalize(conductor, terms)
    raise ParseError(None, f"bad cyclotomic literal {lit!r}")


def cyclotomic_to_json(value: Cyclotomic) -> dict:
    return {
        "conductor": value.conductor,
        "terms": [[e, rational_to_str(c)] for e, c in value.terms()],
    }


def cyclotomic_from_json(obj) -> Cyclotomic:
    _expect_keys(obj, {"conductor", "terms"}, "cyclotomic")
    return cyc_canonicalize(
        int(obj["conductor"]),
        [(int(e), rational_from_str(c)) for e, c in obj["terms"]],
    )


# ---------------------------------------------------------------------------
# canonical emitter / parser
# ---------------------------------------------------------------------------

def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))

def canonical_dumps(obj) -> str:
    """Canonical form: sorted keys, one top-level key per line, matrix rows
    (lists of lists) one row per line."""
    if not isinstance(obj, dict):
        return _compact(obj) + "\n"
    lines = ["{"]
    items = sorted(obj.items())
    for pos, (key, value) in enumerate(items):
        comma = "," if pos < len(items) - 1 else ""
        if isinstance(value, list) and value and all(
            isinstance(r, list) for r in value
        ):
            lines.append(f"{json.dumps(key)}: [")
            for rpos, row in enumerate(value):
                rcomma = "," if rpos < len(value) - 1 else ""
                lines.append(f"  {_compact(row)}{rcomma}")
            lines.append(f"]{comma}")
        else:
            lines.append(f"{json.dumps(key)}: {_compact(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from exc


def _expect_keys(obj, keys, what):
    if not isinstance(obj, dict) or set(obj) != set(keys):
        raise ParseError(
            None, f"{what} object must have exactly the keys {sorted(keys)}"
        )


# ---------------------------------------------------------------------------
# schemes
# ---------------------------------------------------------------------------

def parse_scheme_file(text: str) -> SchemeData:
    obj = parse_json(text)
    _expect_keys(obj, {"size", "classes", "relation"}, "scheme")
    scheme = verify_scheme(obj["relation"])
    if scheme.size != obj["size"] or scheme.classes != obj["classes"]:
        raise ParseError(None, "declared size/classes disagree with the grid")
    return scheme


def dump_scheme(scheme: SchemeData) -> str:
    return canonical_dumps(
        {
            "size": scheme.size,
            "classes": scheme.classes,
            "relation": scheme.relation.tolist(),
        }
    )


def parse_eigen_file(text: str) -> tuple[int, CycMatrix]:
    obj = parse_json(text)
    _expect_keys(obj, {"conductor", "Q"}, "eigen")
    n = int(obj["conductor"])
    rows = [[cyc_from_literal(v, n) for v in row] for row in obj["Q"]]
    return n, CycMatrix(rows, n)


def dump_eigen(eigen: EigenData) -> str:
    return canonical_dumps(
        {
            "conductor": eigen.conductor,
            "Q": [
                [cyc_to_literal(eigen.Q[i, j]) for j in range(eigen.Q.cols)]
                for i in range(eigen.Q.rows)
            ],
        }
    )


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def parse_group_file(text: str) -> GroupTable:
    obj = parse_json(text)
    _expect_keys(obj, {"order", "mult"}, "group")
    group = make_group_table(obj["mult"])
    if group.order != obj["order"]:
        raise ParseError(None, "declared order disagrees with the table")
    return group


def dump_group(group: GroupTable) -> str:
    return canonical_dumps({"order": group.order, "mult": group.mult.tolist()})


def parse_character_file(text: str) -> CharacterTable:
    obj = parse_json(text)
    _expect_keys(obj, {"conductor", "rows", "degrees"}, "character table")
    n = int(obj["conductor"])
    rows = [[cyc_from_literal(v, n) for v in row] for row in obj["rows"]]
    table = make_character_table(n, rows)
    if list(table.degrees) != list(obj["degrees"]):
        raise ParseError(None, "declared degrees disagree with the table")
    return table


def dump_characters(table: CharacterTable) -> str:
    return canonical_dumps(
        {
            "conductor": table.conductor,
            "rows": [[cyc_to_literal(v) for v in row] for row in table.rows],
            "degrees": list(table.degrees),
        }
    )


# ---------------------------------------------------------------------------
# designs and result payloads
# ---------------------------------------------------------------------------

def parse_design_file(text: str, size: int) -> WeightedSubset:
    obj = parse_json(text)
    if not isinstance(obj, dict) or not (set(obj) <= {"subset", "weights"}):
        raise ParseError(None, 'design object needs "subset" or "weights"')
    if "subset" in obj and "weights" in obj:
        raise ParseError(None, 'give either "subset" or "weights", not both')
    if "subset" in obj:
        indices = [int(i) for i in obj["subset"]]
        if any(i < 0 or i >= size for i in indices):
            raise ParseError(None, f"subset indices must lie in 0..{size - 1}")
        return WeightedSubset.from_indices(size, indices)
    weights = [rational_from_str(w) for w in obj["weights"]]
    if len(weights) != size:
        raise ParseError(None, f"expected {size} weights")
    return WeightedSubset.from_weights(weights)


def dump_design(w: WeightedSubset) -> str:
    if w.is_characteristic():
        return canonical_dumps({"subset": list(w.support)})
    return canonical_dumps({"weights": [rational_to_str(v) for v in w.weights]})


def design_report_to_json(report: DesignReport, conductor: int) -> dict:
    return {
        "conductor": conductor,
        "a": [rational_to_str(v) for v in report.a],
        "b": [cyc_to_literal(v) for v in report.b],
        "T": list(report.T),
        "orbit_closed": report.orbit_closed,
    }


def fusion_report_to_json(passes, orbits, iota, row_classes, q_f) -> dict:
    out = {
        "passes": bool(passes),
        "orbits": [list(o) for o in orbits],
        "iota": list(iota),
        "row_classes": [list(c) for c in row_classes],
    }
    if q_f is None:
        out["Q_F"] = None
    else:
        out["conductor"] = q_f.conductor
        out["Q_F"] = [
            [cyc_to_literal(q_f[i, j]) for j in range(q_f.cols)]
            for i in range(q_f.rows)
        ]
    return out


def lp_result_to_json(result: LPResult) -> dict:
    out = {"status": result.status}
    if result.status == "optimal":
        out["value"] = rational_to_str(result.value)
        out["solution"] = [rational_to_str(v) for v in result.solution]
    return out
