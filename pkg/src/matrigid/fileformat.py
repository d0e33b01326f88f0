"""JSON framework and report files.

Schema and semantic errors are reported with the line of the offending
value. Floats are written with Python's shortest round-trip repr, so a
placement read back is bit-identical to the one written.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from json.decoder import scanstring

import jsonschema
import numpy as np

from . import __version__
from .config import ToleranceConfig
from .exceptions import DegenerateFrameworkError, FileFormatError
from .matspace import Field, Kind, make_chart
from .norms import NormSpec, Variant
from .product import ProductNormSpace
from .rigidity import Framework
from .sparsity import Graph, parse_edge_list
from .spaces import MatrixNormedSpace

_NAME = {"type": ["string", "integer"]}
_NUM = {"type": "number"}

NORM_SCHEMA = {
    "type": "object",
    "required": ["variant"],
    "properties": {
        "variant": {"enum": [v.value for v in Variant]},
        "q": {"oneOf": [{"type": "number", "minimum": 1}, {"const": "inf"}]},
        "k": {"type": "integer", "minimum": 1},
        "d": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

FRAMEWORK_SCHEMA = {
    "type": "object",
    "required": ["space", "vertices", "edges", "placement"],
    "properties": {
        "space": {
            "type": "object",
            "required": ["type"],
            "properties": {
                "type": {"enum": ["matrix", "vector", "product"]},
                "field": {"enum": ["real", "complex"]},
                "n": {"type": "integer", "minimum": 2},
                "kind": {"enum": ["full", "hermitian"]},
                "norm": NORM_SCHEMA,
                "factors": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["dim", "norm"],
                        "properties": {
                            "dim": {"type": "integer", "minimum": 1},
                            "norm": {"enum": ["euclidean", "absval"]},
                        },
                        "additionalProperties": False,
                    },
                },
            },
            "additionalProperties": False,
        },
        "vertices": {"type": "array", "items": _NAME},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2},
        },
        "placement": {
            "type": "object",
            "additionalProperties": {
                "oneOf": [
                    {"type": "array", "items": _NUM},
                    {
                        "type": "object",
                        "required": ["re"],
                        "properties": {
                            "re": {"type": "array", "items": {"type": "array", "items": _NUM}},
                            "im": {"type": "array", "items": {"type": "array", "items": _NUM}},
                        },
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "tolerances": {
            "type": "object",
            "properties": {
                "rank_rel_tol": {"type": "number", "minimum": 0},
                "gap_tol": {"type": "number", "minimum": 0},
                "colour_tol": {"type": "number", "minimum": 0},
                "member_tol": {"type": "number", "minimum": 0},
            },
            "additionalProperties": False,
        },
        "certificate": {"type": "object"},
        "meta": {"type": "object"},
    },
    "additionalProperties": False,
}


# position tracking: map each JSON path to the line its value starts on

_WS = re.compile(r"[ \t\n\r]*")
_LITERAL = re.compile(r"-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][-+]?\d+)?|true|false|null")


class _Locator:
    def __init__(self, text):
        self.text = text
        self.lines = {}

    def line_at(self, pos):
        return self.text.count("\n", 0, pos) + 1

    def _ws(self, pos):
        return _WS.match(self.text, pos).end()

    def value(self, pos, path):
        pos = self._ws(pos)
        self.lines[path] = self.line_at(pos)
        ch = self.text[pos:pos + 1]
        if ch == "{":
            pos = self._ws(pos + 1)
            if self.text[pos] == "}":
                return pos + 1
            while True:
                pos = self._ws(pos)
                key, pos = scanstring(self.text, pos + 1)
                pos = self._ws(pos) + 1  # colon
                pos = self._ws(self.value(pos, path + (key,)))
                if self.text[pos] == "}":
                    return pos + 1
                pos += 1
        if ch == "[":
            pos = self._ws(pos + 1)
            if self.text[pos] == "]":
                return pos + 1
            i = 0
            while True:
                pos = self._ws(self.value(pos, path + (i,)))
                i += 1
                if self.text[pos] == "]":
                    return pos + 1
                pos += 1
        if ch == '"':
            return scanstring(self.text, pos + 1)[1]
        return _LITERAL.match(self.text, pos).end()


def _line_map(text) -> dict:
    loc = _Locator(text)
    loc.value(0, ())
    return loc.lines


def _line_for(lines, path) -> int | None:
    path = tuple(path)
    while path not in lines and path:
        path = path[:-1]
    return lines.get(path)


def _parse(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno) from None
    return doc, _line_map(text)


def _norm_spec(d) -> NormSpec:
    q = d.get("q")
    if q == "inf":
        q = math.inf
    return NormSpec(Variant(d["variant"]), q=None if q is None else float(q), k=d.get("k"), d=d.get("d"))


def space_from_dict(d):
    kind = d["type"]
    if kind == "matrix":
        missing = [k for k in ("field", "n", "kind", "norm") if k not in d]
        if missing:
            raise ValueError(f"matrix space needs {missing}")
        return MatrixNormedSpace(make_chart(Field(d["field"]), d["n"], Kind(d["kind"])), _norm_spec(d["norm"]))
    if "factors" in d and "norm" not in d:
        return ProductNormSpace(tuple((f["dim"], Variant(f["norm"])) for f in d["factors"]))
    if "norm" not in d:
        raise ValueError(f"{kind} space needs a norm or a factor list")
    spec = _norm_spec(d["norm"])
    if spec.is_matrix_norm:
        raise ValueError(f"{spec} is a matrix norm; use a matrix space")
    if kind == "vector" and spec.variant is not Variant.EUCLIDEAN:
        raise ValueError("vector spaces carry a euclidean norm; use type 'product' for other norms")
    return ProductNormSpace.from_spec(spec)


@dataclass
class FrameworkFile:
    framework: Framework
    tolerances: dict = field(default_factory=dict)
    certificate: dict | None = None
    meta: dict | None = None

    def tolerance_config(self, base: ToleranceConfig | None = None) -> ToleranceConfig:
        return (base or ToleranceConfig()).replace(**self.tolerances)


def _coords(space, value, where):
    if isinstance(value, dict):
        if not isinstance(space, MatrixNormedSpace):
            raise ValueError("matrix-form positions need a matrix space")
        m = np.array(value["re"], dtype=float)
        if "im" in value:
            m = m + 1j * np.array(value["im"], dtype=float)
        if m.shape != (space.chart.n, space.chart.n):
            raise ValueError(f"expected a {space.chart.n}x{space.chart.n} matrix, got shape {m.shape}")
        return space.chart.to_coords(m)
    c = np.array(value, dtype=float)
    if c.shape != (space.dim,):
        raise ValueError(f"expected {space.dim} coordinates, got {c.size}")
    return c


def loads_framework(text: str) -> FrameworkFile:
    doc, lines = _parse(text)
    try:
        jsonschema.validate(doc, FRAMEWORK_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise FileFormatError(f"schema: {exc.message} at /{'/'.join(map(str, exc.absolute_path))}",
                              _line_for(lines, exc.absolute_path)) from None

    def fail(msg, path):
        raise FileFormatError(msg, _line_for(lines, path))

    try:
        space = space_from_dict(doc["space"])
    except (ValueError, KeyError) as exc:
        fail(f"space: {exc}", ("space",))
    vertices = doc["vertices"]
    if len(set(vertices)) != len(vertices):
        fail("duplicate vertex names", ("vertices",))
    known = set(vertices)
    seen = set()
    for i, (u, v) in enumerate(doc["edges"]):
        if u not in known or v not in known:
            fail(f"edge [{u!r}, {v!r}] uses an undeclared vertex", ("edges", i))
        if u == v:
            fail(f"loop at vertex {u!r}", ("edges", i))
        key = frozenset((u, v))
        if key in seen:
            fail(f"duplicate edge [{u!r}, {v!r}]", ("edges", i))
        seen.add(key)
    placement = doc["placement"]
    by_str = {str(k): k for k in vertices}
    rows = []
    for v in vertices:
        if str(v) not in placement:
            fail(f"no position for vertex {v!r}", ("placement",))
        try:
            rows.append(_coords(space, placement[str(v)], ("placement", str(v))))
        except ValueError as exc:
            fail(f"position of {v!r}: {exc}", ("placement", str(v)))
    extra = [k for k in placement if k not in by_str]
    if extra:
        fail(f"positions given for undeclared vertices {extra}", ("placement", extra[0]))
    try:
        fw = Framework(space, vertices, doc["edges"], np.array(rows).reshape(len(vertices), space.dim))
    except DegenerateFrameworkError:
        # a geometric problem, not a format one; callers report it separately
        raise
    except ValueError as exc:
        fail(str(exc), ("edges",))
    return FrameworkFile(fw, doc.get("tolerances", {}), doc.get("certificate"), doc.get("meta"))


def load_framework(path) -> FrameworkFile:
    with open(path, encoding="utf-8") as fh:
        return loads_framework(fh.read())


def framework_to_dict(fw: Framework, tolerances: dict | None = None,
                      certificate: dict | None = None, meta: dict | None = None) -> dict:
    names = {v: (v if isinstance(v, (str, int)) and not isinstance(v, bool) else str(v)) for v in fw.vertices}
    out = {
        "space": fw.space.describe(),
        "vertices": [names[v] for v in fw.vertices],
        "edges": [[names[u], names[v]] for u, v in fw.edges],
        "placement": {str(names[v]): [float(x) for x in fw.P[i]] for i, v in enumerate(fw.vertices)},
    }
    if tolerances:
        out["tolerances"] = dict(tolerances)
    if certificate is not None:
        out["certificate"] = certificate
    if meta is not None:
        out["meta"] = meta
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


def dumps(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def dump_framework(path, fw: Framework, **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(framework_to_dict(fw, **kwargs)))


def report_document(report, tol: ToleranceConfig) -> dict:
    """ReportFile content: the report, the tolerances behind it and the tool version."""
    doc = report.to_dict()
    doc["tolerances"] = tol.as_dict()
    doc["version"] = __version__
    return _jsonable(doc)


def load_graph(path) -> Graph:
    """Graph from a framework JSON file, a bare {"vertices", "edges"} JSON, or an edge list."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc, lines = _parse(text)
        schema = {
            "type": "object",
            "required": ["edges"],
            "properties": {
                "vertices": FRAMEWORK_SCHEMA["properties"]["vertices"],
                "edges": FRAMEWORK_SCHEMA["properties"]["edges"],
            },
        }
        try:
            jsonschema.validate(doc, schema)
        except jsonschema.ValidationError as exc:
            raise FileFormatError(f"schema: {exc.message}", _line_for(lines, exc.absolute_path)) from None
        try:
            return Graph.from_edges([tuple(e) for e in doc["edges"]], doc.get("vertices"))
        except ValueError as exc:
            raise FileFormatError(str(exc), _line_for(lines, ("edges",))) from None
    return parse_edge_list(text)
