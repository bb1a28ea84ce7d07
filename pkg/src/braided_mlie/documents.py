"""JSON input documents: parsing with located errors, and serialization back.

Every document is an object with ``"schema": "braided-mlie/1"`` and a
``"kind"``; scalars are strings in the field's literal syntax (plain JSON
integers are accepted too).  See README.md for the full layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .algebra import GradedAlgebra, check_graded
from .classical import QuantumTrace, Transpose, block_trace, ordinary_transpose
from .field import FieldSpec, parse_scalar
from .gm import GeneralLinear, GmAlgebra, GmElement, gm_grade
from .grading import Bicharacter, GroupElement, GroupSpec, bichar_validate
from .quiver import Arrow, Quiver, build_path_algebra
from .rep import Representation, left_regular

SCHEMA = "braided-mlie/1"


class DocumentError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class GmSetup:
    algebra: GmAlgebra
    braiding: Bicharacter
    quiver: Quiver | None = None
    max_len: int | None = None

    def graded(self) -> GradedAlgebra:
        return gm_grade(self.algebra, self.braiding)


@dataclass
class ClassicalSetup:
    setup: GmSetup
    trace: QuantumTrace | None = None
    transpose: Transpose | None = None
    M: GmElement | None = None

    @property
    def algebra(self) -> GmAlgebra:
        return self.setup.algebra

    @property
    def braiding(self) -> Bicharacter:
        return self.setup.braiding


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _get(doc: dict, key: str, where: str, default=...):
    if key in doc:
        return doc[key]
    if default is ...:
        raise DocumentError(where, f"missing field {key!r}")
    return default


def _scalar(text, F: FieldSpec, where: str):
    try:
        return parse_scalar(text, F)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DocumentError(where, f"bad scalar {text!r}: {exc}") from None


def _element(value, G: GroupSpec, where: str) -> GroupElement:
    coords = [value] if isinstance(value, int) else value
    if not isinstance(coords, list) or not all(isinstance(c, int) for c in coords):
        raise DocumentError(where, f"group element must be an integer or integer list, got {value!r}")
    try:
        return G.element(*coords)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _header(doc: dict, where: str, field_override: FieldSpec | None):
    F = field_override
    if F is None:
        try:
            F = FieldSpec.parse(_get(doc, "field", where, "rational"))
        except ValueError as exc:
            raise DocumentError(f"{where}.field", str(exc)) from None
    try:
        G = GroupSpec(tuple(_get(doc, "group", where, [])))
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{where}.group", str(exc)) from None
    raw = _get(doc, "bicharacter", where, None)
    if raw is None:
        r = Bicharacter.trivial(G, F)
    else:
        if not isinstance(raw, list) or len(raw) != G.rank or any(
            not isinstance(row, list) or len(row) != G.rank for row in raw
        ):
            raise DocumentError(f"{where}.bicharacter", f"expected a {G.rank}x{G.rank} matrix")
        vals = [[_scalar(v, F, f"{where}.bicharacter[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(raw)]
        r = Bicharacter(G, F, vals)
        report = bichar_validate(r)
        if not report:
            raise DocumentError(f"{where}.bicharacter", str(report))
    return F, G, r


def _parse_algebra(doc: dict, where: str, F_override) -> GradedAlgebra:
    F, G, r = _header(doc, where, F_override)
    basis = _get(doc, "basis", where)
    degs = _get(doc, "degrees", where)
    if len(degs) != len(basis):
        raise DocumentError(f"{where}.degrees", "needs one degree per basis element")
    degrees = [_element(d, G, f"{where}.degrees[{k}]") for k, d in enumerate(degs)]
    names = set(basis)
    products = []
    for n, entry in enumerate(_get(doc, "products", where, [])):
        loc = f"{where}.products[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError(loc, "expected [left, right, result, scalar]")
        x, y, z, c = entry
        for name in (x, y, z):
            if name not in names:
                raise DocumentError(loc, f"unknown basis element {name!r}")
        products.append((x, y, z, _scalar(c, F, loc)))
    try:
        A = GradedAlgebra(r, basis, degrees, products, unit=_get(doc, "unit", where, None))
    except (ValueError, KeyError) as exc:
        raise DocumentError(where, str(exc)) from None
    report = check_graded(A)
    if not report:
        i, j, k = report.witness
        raise DocumentError(
            f"{where}.products",
            f"structure constant ({A.basis[i]}, {A.basis[j]}, {A.basis[k]}) violates the grading: {report.detail}",
        )
    return A


def _parse_gm(doc: dict, where: str, F_override, max_len_override=None) -> GmSetup:
    kind = doc.get("kind")
    F, G, r = _header(doc, where, F_override)
    try:
        if kind == "gl":
            dims = [(_element(g, G, f"{where}.dims[{k}]"), n) for k, (g, n) in enumerate(_get(doc, "dims", where))]
            return GmSetup(GeneralLinear(F, G, dims), r)
        if kind == "quiver":
            vertices = [_element(v, G, f"{where}.vertices[{k}]") for k, v in enumerate(_get(doc, "vertices", where))]
            arrows = []
            for k, a in enumerate(_get(doc, "arrows", where, [])):
                if not isinstance(a, list) or len(a) != 3:
                    raise DocumentError(f"{where}.arrows[{k}]", "expected [source, target, name]")
                arrows.append(Arrow(_element(a[0], G, f"{where}.arrows[{k}]"), _element(a[1], G, f"{where}.arrows[{k}]"), a[2]))
            D = Quiver(vertices, arrows)
            max_len = max_len_override if max_len_override is not None else doc.get("max_len")
            return GmSetup(build_path_algebra(D, max_len, F), r, D, max_len)
        if kind == "gm":
            index = [_element(v, G, f"{where}.index[{k}]") for k, v in enumerate(_get(doc, "index", where))]
            blocks = {}
            for k, b in enumerate(_get(doc, "blocks", where)):
                loc = f"{where}.blocks[{k}]"
                key = (_element(_get(b, "row", loc), G, loc), _element(_get(b, "col", loc), G, loc))
                blocks[key] = list(_get(b, "basis", loc))
            products = []
            for k, entry in enumerate(_get(doc, "products", where, [])):
                loc = f"{where}.products[{k}]"
                if not isinstance(entry, list) or len(entry) != 4:
                    raise DocumentError(loc, "expected [left, right, result, scalar]")
                products.append((*entry[:3], _scalar(entry[3], F, loc)))
            return GmSetup(GmAlgebra(F, G, index, blocks, products), r)
    except DocumentError:
        raise
    except (ValueError, KeyError) as exc:
        raise DocumentError(where, str(exc)) from None
    raise DocumentError(f"{where}.kind", f"expected gm, gl or quiver, got {kind!r}")


def _gm_element(value, A: GmAlgebra, where: str) -> GmElement:
    if value == "identity":
        if not isinstance(A, GeneralLinear):
            raise DocumentError(where, "'identity' needs a gl algebra")
        return A.identity()
    if isinstance(value, list):
        if not isinstance(A, GeneralLinear):
            raise DocumentError(where, "matrix form needs a gl algebra")
        return A.from_matrix([[_scalar(x, A.field, where) for x in row] for row in value])
    if isinstance(value, dict):
        try:
            return A.element({k: _scalar(c, A.field, f"{where}.{k}") for k, c in value.items()})
        except KeyError as exc:
            raise DocumentError(where, str(exc)) from None
    raise DocumentError(where, f"cannot read a gm element from {value!r}")


def _parse_classical(doc: dict, where: str, F_override, max_len_override) -> ClassicalSetup:
    setup = _parse_gm(_get(doc, "algebra", where), f"{where}.algebra", F_override, max_len_override)
    A, r = setup.algebra, setup.braiding
    out = ClassicalSetup(setup)
    try:
        tr = doc.get("trace")
        if tr == "block":
            if not isinstance(A, GeneralLinear):
                raise DocumentError(f"{where}.trace", "'block' trace needs a gl algebra")
            out.trace = block_trace(A, r)
        elif tr is not None:
            F = A.field
            maps = {k: [_scalar(x, F, f"{where}.trace.maps.{k}") for x in v] for k, v in _get(tr, "maps", f"{where}.trace").items()}
            out.trace = QuantumTrace(A, r, _get(tr, "target", f"{where}.trace"), maps)
        t = doc.get("transpose")
        if t == "ordinary":
            if not isinstance(A, GeneralLinear):
                raise DocumentError(f"{where}.transpose", "'ordinary' transpose needs a gl algebra")
            out.transpose = ordinary_transpose(A)
        elif t is not None:
            images = {k: {p: _scalar(c, A.field, f"{where}.transpose.{k}") for p, c in v.items()} for k, v in t.items()}
            out.transpose = Transpose(A, images)
        if "M" in doc:
            out.M = _gm_element(doc["M"], A, f"{where}.M")
    except DocumentError:
        raise
    except (ValueError, KeyError) as exc:
        raise DocumentError(where, str(exc)) from None
    return out


def _parse_representation(doc: dict, where: str, F_override, max_len_override) -> Representation:
    inner = _get(doc, "algebra", where)
    if inner.get("kind", "algebra") == "algebra":
        L = _parse_algebra(inner, f"{where}.algebra", F_override)
    else:
        L = _parse_gm(inner, f"{where}.algebra", F_override, max_len_override).graded()
    action = _get(doc, "action", where)
    try:
        if action == "regular":
            return left_regular(L)
        carrier = _get(doc, "carrier", where)
        cb = _get(carrier, "basis", f"{where}.carrier")
        cd = [_element(d, L.group, f"{where}.carrier.degrees[{k}]") for k, d in enumerate(_get(carrier, "degrees", f"{where}.carrier"))]
        n = len(cb)
        mats = []
        for name in L.basis:
            raw = action.get(name)
            if raw is None:
                mats.append([[0] * n for _ in range(n)])
            else:
                mats.append([[_scalar(x, L.field, f"{where}.action.{name}") for x in row] for row in raw])
        unknown = set(action) - set(L.basis)
        if unknown:
            raise DocumentError(f"{where}.action", f"unknown basis elements {sorted(unknown)}")
        return Representation(L, cb, cd, mats)
    except DocumentError:
        raise
    except (ValueError, KeyError) as exc:
        raise DocumentError(where, str(exc)) from None


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def parse_document(source, field: FieldSpec | None = None, max_len: int | None = None):
    """Load a document (path or already-decoded dict) into its typed object.

    Returns a GradedAlgebra, GmSetup, ClassicalSetup or Representation
    depending on ``kind``.  ``field`` and ``max_len`` override the document.
    """
    if isinstance(source, (str, Path)):
        where = str(source)
        doc = load_json(source)
    else:
        where, doc = "document", source
    if not isinstance(doc, dict):
        raise DocumentError(where, "top level must be an object")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise DocumentError(f"{where}.schema", f"unsupported schema {schema!r}")
    kind = _get(doc, "kind", where)
    if kind == "algebra":
        return _parse_algebra(doc, where, field)
    if kind in ("gm", "gl", "quiver"):
        return _parse_gm(doc, where, field, max_len)
    if kind == "classical":
        return _parse_classical(doc, where, field, max_len)
    if kind == "representation":
        return _parse_representation(doc, where, field, max_len)
    raise DocumentError(f"{where}.kind", f"unknown document kind {kind!r}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _dump_element(g: GroupElement):
    return g.coords[0] if len(g.coords) == 1 else list(g.coords)


def _dump_header(r: Bicharacter) -> dict:
    return {
        "schema": SCHEMA,
        "field": str(r.field),
        "group": list(r.group.orders),
        "bicharacter": [[str(v) for v in row] for row in r.gen_values],
    }


def dump_document(obj) -> dict:
    """Inverse of :func:`parse_document` up to semantic equality."""
    if isinstance(obj, GradedAlgebra):
        doc = _dump_header(obj.braiding)
        doc.update(
            kind="algebra",
            basis=list(obj.basis),
            degrees=[_dump_element(d) for d in obj.degrees],
            products=[
                [obj.basis[i], obj.basis[j], obj.basis[k], str(c)]
                for (i, j), row in sorted(obj.table.items())
                for k, c in sorted(row.items())
            ],
        )
        if obj.unit is not None:
            doc["unit"] = obj.basis[obj.unit]
        return doc
    if isinstance(obj, GmSetup):
        doc = _dump_header(obj.braiding)
        A = obj.algebra
        if obj.quiver is not None:
            doc.update(
                kind="quiver",
                vertices=[_dump_element(v) for v in obj.quiver.vertices],
                arrows=[[_dump_element(a.source), _dump_element(a.target), a.name] for a in obj.quiver.arrows],
            )
            if obj.max_len is not None:
                doc["max_len"] = obj.max_len
        elif isinstance(A, GeneralLinear):
            doc.update(kind="gl", dims=[[_dump_element(g), n] for g, n in A.dims])
        else:
            doc.update(
                kind="gm",
                index=[_dump_element(g) for g in A.index_set],
                blocks=[
                    {"row": _dump_element(i), "col": _dump_element(j), "basis": [A.basis[k] for k in ks]}
                    for (i, j), ks in A.blocks.items()
                ],
                products=[
                    [A.basis[x], A.basis[y], A.basis[z], str(c)]
                    for (x, y), row in sorted(A.table.items())
                    for z, c in sorted(row.items())
                ],
            )
        return doc
    if isinstance(obj, ClassicalSetup):
        inner = dump_document(obj.setup)
        inner.pop("schema")
        doc = {"schema": SCHEMA, "kind": "classical", "algebra": inner}
        A = obj.algebra
        if obj.trace is not None:
            doc["trace"] = {
                "target": list(obj.trace.target),
                "maps": {A.basis[k]: [str(v) for v in img] for k, img in sorted(obj.trace.images.items())},
            }
        if obj.transpose is not None:
            doc["transpose"] = {
                A.basis[k]: {A.basis[p]: str(c) for p, c in sorted(img.coeffs.items())}
                for k, img in sorted(obj.transpose.images.items())
            }
        if obj.M is not None:
            doc["M"] = {A.basis[k]: str(c) for k, c in sorted(obj.M.coeffs.items())}
        return doc
    if isinstance(obj, Representation):
        if not isinstance(obj.source, GradedAlgebra):
            raise TypeError("only representations of graded algebras serialize")
        inner = dump_document(obj.source)
        inner.pop("schema")
        return {
            "schema": SCHEMA,
            "kind": "representation",
            "algebra": inner,
            "carrier": {"basis": list(obj.carrier_basis), "degrees": [_dump_element(d) for d in obj.carrier_degrees]},
            "action": {
                obj.source.basis[i]: [[str(x) for x in row] for row in mat] for i, mat in enumerate(obj.action)
            },
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(dump_document(obj), indent=2, sort_keys=False)
