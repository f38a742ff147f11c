"""JSON file format for algebras, brackets, and xi-groups.

Every file is a single JSON object with a ``kind`` discriminator.  Tensors
are sparse entry lists ``[i, j, k, "p/q"]`` with zero-based indices and
rationals as strings (ints are accepted); graded files add an ``even`` index
list; huliu files carry both an ``angle`` and a ``square`` tensor; xigroup
files extend graded files with a named constraint family, an odd-coordinate
subspace, and a tolerance.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ._tables import table_entries, table_from_entries
from .algebras import Algebra, GradedAlgebra, find_unit
from .huliu import HuLiuAlgebra
from .leibniz import LeibnizAlgebra
from .linalg import span
from .xigroup import LinearXiGroup, constraint_family, regular_realization


class SchemaError(ValueError):
    """Malformed input file."""


_FIELDS = {
    "algebra": {"kind", "dim", "basis", "product"},
    "graded": {"kind", "dim", "basis", "product", "even"},
    "leibniz": {"kind", "dim", "basis", "angle"},
    "huliu": {"kind", "dim", "basis", "angle", "square"},
    "xigroup": {"kind", "dim", "basis", "product", "even", "constraints",
                "odd_subspace", "tolerance"},
}
_OPTIONAL = {"xigroup": {"odd_subspace", "tolerance"}}


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"{where}: rational must be an int or a 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"{where}: bad rational {value!r}: {e}") from None


def _tensor(data, field: str, dim: int):
    if not isinstance(data, list):
        raise SchemaError(f"field {field!r} must be a list of [i, j, k, value] entries")
    items = []
    for pos, entry in enumerate(data):
        where = f"{field}[{pos}]"
        if not (isinstance(entry, list) and len(entry) == 4):
            raise SchemaError(f"{where}: expected [i, j, k, value]")
        i, j, k, value = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise SchemaError(f"{where}: indices must be integers")
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise SchemaError(f"{where}: index out of range for dim {dim}")
        items.append((i, j, k, _rational(value, where)))
    return table_from_entries(dim, items)


def _vector_list(data, field: str, width: int):
    if not isinstance(data, list):
        raise SchemaError(f"field {field!r} must be a list of vectors")
    out = []
    for pos, row in enumerate(data):
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(f"{field}[{pos}]: expected a vector of length {width}")
        out.append([_rational(v, f"{field}[{pos}]") for v in row])
    return out


def load_obj(data):
    """Build the object a JSON document describes; SchemaError on bad input."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    kind = data.get("kind")
    if kind not in _FIELDS:
        raise SchemaError(f"unknown or missing kind {kind!r}")
    allowed = _FIELDS[kind]
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"unknown fields for kind {kind!r}: {sorted(unknown)}")
    missing = allowed - set(data) - _OPTIONAL.get(kind, set())
    if missing:
        raise SchemaError(f"missing fields for kind {kind!r}: {sorted(missing)}")

    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("field 'dim' must be a positive integer")
    basis = data["basis"]
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise SchemaError(f"field 'basis' must be a list of {dim} names")

    if kind == "algebra":
        a = Algebra(_tensor(data["product"], "product", dim), basis)
        a.unit = find_unit(a)
        return a

    if kind in ("graded", "xigroup"):
        a = Algebra(_tensor(data["product"], "product", dim), basis)
        a.unit = find_unit(a)
        even = data["even"]
        if (not isinstance(even, list)
                or not all(isinstance(i, int) and not isinstance(i, bool)
                           and 0 <= i < dim for i in even)):
            raise SchemaError("field 'even' must be a list of in-range indices")
        g = GradedAlgebra(a, even)
        if kind == "graded":
            return g
        spec = data["constraints"]
        if not isinstance(spec, dict) or "family" not in spec:
            raise SchemaError("field 'constraints' must be {'family': name, ...}")
        params = {k: v for k, v in spec.items() if k != "family"}
        try:
            family = constraint_family(spec["family"], **params)
        except (ValueError, KeyError, TypeError) as e:
            raise SchemaError(f"bad constraints: {e}") from None
        odd_dim = dim - len(set(even))
        odd_subspace = None
        if "odd_subspace" in data:
            vectors = _vector_list(data["odd_subspace"], "odd_subspace", odd_dim)
            odd_subspace = span(vectors, odd_dim)
        tolerance = data.get("tolerance", 1e-9)
        if isinstance(tolerance, bool) or not isinstance(tolerance, (int, float)) or tolerance < 0:
            raise SchemaError("field 'tolerance' must be a nonnegative number")
        try:
            realization = regular_realization(g.validate())
            return LinearXiGroup(realization, family, odd_subspace, float(tolerance))
        except ValueError as e:
            raise SchemaError(str(e)) from None

    if kind == "leibniz":
        return LeibnizAlgebra(_tensor(data["angle"], "angle", dim), basis)

    return HuLiuAlgebra(_tensor(data["angle"], "angle", dim),
                        _tensor(data["square"], "square", dim), basis)


def load_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
    return load_obj(data)


def _entries_json(table):
    return [[i, j, k, str(c)] for i, j, k, c in table_entries(table)]


def dump_obj(obj) -> dict:
    if isinstance(obj, LinearXiGroup):
        g = obj.graded
        return {
            "kind": "xigroup",
            "dim": g.dim,
            "basis": list(g.algebra.basis_names),
            "product": _entries_json(g.algebra.table),
            "even": list(g.even),
            "constraints": {"family": obj.constraints.name, **obj.constraints.params()},
            "odd_subspace": [[str(c) for c in b] for b in obj.odd_subspace.basis],
            "tolerance": obj.tolerance,
        }
    if isinstance(obj, GradedAlgebra):
        return {
            "kind": "graded",
            "dim": obj.dim,
            "basis": list(obj.algebra.basis_names),
            "product": _entries_json(obj.algebra.table),
            "even": list(obj.even),
        }
    if isinstance(obj, Algebra):
        return {
            "kind": "algebra",
            "dim": obj.dim,
            "basis": list(obj.basis_names),
            "product": _entries_json(obj.table),
        }
    if isinstance(obj, HuLiuAlgebra):
        return {
            "kind": "huliu",
            "dim": obj.dim,
            "basis": list(obj.basis_names),
            "angle": _entries_json(obj.leibniz.angle),
            "square": _entries_json(obj.square),
        }
    if isinstance(obj, LeibnizAlgebra):
        return {
            "kind": "leibniz",
            "dim": obj.dim,
            "basis": list(obj.basis_names),
            "angle": _entries_json(obj.angle),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Serialize with one tensor entry per line so fixtures stay readable."""
    data = dump_obj(obj)
    lines = ["{"]
    items = list(data.items())
    for idx, (key, value) in enumerate(items):
        comma = "," if idx < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f' "{key}": [')
            for pos, row in enumerate(value):
                tail = "," if pos < len(value) - 1 else ""
                lines.append("  " + json.dumps(row) + tail)
            lines.append(f" ]{comma}")
        else:
            lines.append(f' "{key}": {json.dumps(value)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_file(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
