"""Algebra-spec documents: parsing, validation and the bundled examples.

An algebra spec is a JSON object::

    {
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "from": "1", "to": "2"}],
      "relations": [[{"coeff": "1", "path": ["a", "b"]}, ...], ...],
      "max_path_length": 32
    }

Coefficients are exact rationals written as strings ``"p"`` or ``"p/q"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import Arrow, BoundQuiverAlgebra, Quiver, Relation, build_algebra
from .exact import q_str, to_q


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[tuple[str, tuple[str, ...]], ...], ...] = ()
    max_path_length: int | None = None
    name: str = field(default="", compare=False)

    def quiver(self) -> Quiver:
        return Quiver(self.vertices, tuple(Arrow(*a) for a in self.arrows))

    def build(self) -> BoundQuiverAlgebra:
        rels = tuple(Relation(tuple((c, p) for c, p in r)) for r in self.relations)
        return build_algebra(self.quiver(), rels, self.max_path_length)

    def to_json(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "arrows": [{"name": a, "from": s, "to": t} for a, s, t in self.arrows],
            "relations": [[{"coeff": q_str(c), "path": list(p)} for c, p in r] for r in self.relations],
        }
        if self.max_path_length is not None:
            out["max_path_length"] = self.max_path_length
        return out


_TOP_KEYS = {"vertices", "arrows", "relations", "max_path_length"}


def _fail(where: str, msg: str, text: str | None = None):
    raise ParseError(f"{where}: {msg}")


def parse_spec(text: str | dict, name: str = "") -> AlgebraSpec:
    """Strictly parse an algebra-spec document (JSON text or an already-loaded dict)."""
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        _fail("document", "expected a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        _fail("document", f"unknown keys {sorted(unknown)}")
    for key in ("vertices", "arrows"):
        if key not in doc:
            _fail("document", f"missing key {key!r}")

    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not vertices or not all(isinstance(v, str) for v in vertices):
        _fail("vertices", "expected a nonempty list of strings")
    if len(set(vertices)) != len(vertices):
        _fail("vertices", "duplicate vertex label")

    arrows = []
    names = set()
    if not isinstance(doc["arrows"], list):
        _fail("arrows", "expected a list")
    for k, a in enumerate(doc["arrows"]):
        where = f"arrows[{k}]"
        if not isinstance(a, dict):
            _fail(where, "expected an object")
        extra = set(a) - {"name", "from", "to"}
        if extra:
            _fail(where, f"unknown keys {sorted(extra)}")
        for key in ("name", "from", "to"):
            if not isinstance(a.get(key), str):
                _fail(where, f"field {key!r} must be a string")
        if a["name"] in names:
            _fail(where, f"duplicate arrow name {a['name']!r}")
        for key in ("from", "to"):
            if a[key] not in vertices:
                _fail(f"{where}.{key}", f"unknown vertex {a[key]!r}")
        names.add(a["name"])
        arrows.append((a["name"], a["from"], a["to"]))

    relations = []
    raw_rels = doc.get("relations", [])
    if not isinstance(raw_rels, list):
        _fail("relations", "expected a list")
    for k, rel in enumerate(raw_rels):
        if not isinstance(rel, list) or not rel:
            _fail(f"relations[{k}]", "expected a nonempty list of terms")
        terms = []
        for t, term in enumerate(rel):
            where = f"relations[{k}][{t}]"
            if not isinstance(term, dict):
                _fail(where, "expected an object")
            extra = set(term) - {"coeff", "path"}
            if extra:
                _fail(where, f"unknown keys {sorted(extra)}")
            coeff = term.get("coeff", "1")
            if not isinstance(coeff, (str, int)) or isinstance(coeff, bool):
                _fail(f"{where}.coeff", "coefficient must be a string 'p/q' or an integer")
            try:
                c = to_q(coeff)
            except (ValueError, ZeroDivisionError) as e:
                _fail(f"{where}.coeff", f"bad rational {coeff!r} ({e})")
            path = term.get("path")
            if not isinstance(path, list) or not all(isinstance(p, str) for p in path):
                _fail(f"{where}.path", "expected a list of arrow names")
            for p in path:
                if p not in names:
                    _fail(f"{where}.path", f"unknown arrow {p!r}")
            terms.append((c, tuple(path)))
        relations.append(tuple(terms))

    mpl = doc.get("max_path_length")
    if mpl is not None and (not isinstance(mpl, int) or isinstance(mpl, bool) or mpl < 1):
        _fail("max_path_length", "expected a positive integer")
    return AlgebraSpec(tuple(vertices), tuple(arrows), tuple(relations), mpl, name)


# ---------------------------------------------------------------------------
# bundled examples


def _rel(*terms):
    return [{"coeff": str(c), "path": p.split(".")} for c, p in terms]


def _jacobian_b() -> dict:
    arrows = []
    for i in range(3):
        arrows.append({"name": f"x{i + 1}", "from": str(i + 1), "to": str((i + 1) % 3 + 1)})
        arrows.append({"name": f"y{i + 1}", "from": str(i + 1), "to": str((i + 1) % 3 + 1)})

    def x(i):
        return f"x{i % 3 + 1}"

    def y(i):
        return f"y{i % 3 + 1}"

    rels = []
    for i in range(3):
        # paths start at vertex i+1
        rels.append(_rel((1, f"{x(i)}.{x(i + 1)}"), (-1, f"{y(i)}.{x(i + 1)}.{y(i + 2)}.{x(i)}.{y(i + 1)}")))
        rels.append(_rel((1, f"{y(i)}.{y(i + 1)}"), (-1, f"{x(i)}.{y(i + 1)}.{x(i + 2)}.{y(i)}.{x(i + 1)}")))
        rels.append(_rel((1, f"{x(i)}.{x(i + 1)}.{y(i + 2)}")))
        rels.append(_rel((1, f"{x(i)}.{y(i + 1)}.{y(i + 2)}")))
        rels.append(_rel((1, f"{y(i)}.{y(i + 1)}.{x(i + 2)}")))
        rels.append(_rel((1, f"{y(i)}.{x(i + 1)}.{x(i + 2)}")))
    return {"vertices": ["1", "2", "3"], "arrows": arrows, "relations": rels}


BUNDLED: dict[str, dict] = {
    "a2-path": {
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": [],
    },
    "a3-rel": {
        "vertices": ["1", "2", "3"],
        "arrows": [{"name": "x", "from": "1", "to": "2"}, {"name": "y", "from": "2", "to": "3"}],
        "relations": [_rel((1, "x.y"))],
    },
    "sym-local": {
        # x, y: 1 -> 2 and x', y': 2 -> 1 with xy = yx and x^2 = y^2 = 0 at both vertices
        "vertices": ["1", "2"],
        "arrows": [
            {"name": "x1", "from": "1", "to": "2"},
            {"name": "y1", "from": "1", "to": "2"},
            {"name": "x2", "from": "2", "to": "1"},
            {"name": "y2", "from": "2", "to": "1"},
        ],
        "relations": [
            _rel((1, "x1.y2"), (-1, "y1.x2")),
            _rel((1, "x2.y1"), (-1, "y2.x1")),
            _rel((1, "x1.x2")),
            _rel((1, "x2.x1")),
            _rel((1, "y1.y2")),
            _rel((1, "y2.y1")),
        ],
    },
    "jacobian-b": _jacobian_b(),
    "preproj-a2": {
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}],
        "relations": [_rel((1, "a.b")), _rel((1, "b.a"))],
    },
    "one-simple": {"vertices": ["1"], "arrows": [], "relations": []},
}


def bundled(name: str) -> AlgebraSpec:
    if name not in BUNDLED:
        raise ParseError(f"unknown example {name!r}; choose from {sorted(BUNDLED)}")
    return parse_spec(BUNDLED[name], name=name)


_ALG_CACHE: dict[str, BoundQuiverAlgebra] = {}


def bundled_algebra(name: str) -> BoundQuiverAlgebra:
    if name not in _ALG_CACHE:
        _ALG_CACHE[name] = bundled(name).build()
    return _ALG_CACHE[name]
