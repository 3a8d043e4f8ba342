import json

import pytest

from tautilt.spec import BUNDLED, ParseError, bundled, parse_spec


def test_bundled_a2():
    s = bundled("a2-path")
    assert len(s.vertices) == 2 and len(s.arrows) == 1 and len(s.relations) == 0


def test_bundled_a3_relation():
    s = bundled("a3-rel")
    assert len(s.vertices) == 3 and len(s.arrows) == 2 and len(s.relations) == 1
    assert s.relations[0][0][1] == ("x", "y")


def test_bundled_names_fixed():
    assert set(BUNDLED) == {"a2-path", "a3-rel", "sym-local", "jacobian-b", "preproj-a2", "one-simple"}


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_roundtrip(name):
    s = bundled(name)
    again = parse_spec(json.dumps(s.to_json()))
    assert again == s


def _doc(**over):
    doc = {
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": [],
    }
    doc.update(over)
    return doc


def test_unknown_arrow_in_relation():
    doc = _doc(relations=[[{"coeff": "1", "path": ["a", "b"]}]])
    with pytest.raises(ParseError, match=r"relations\[0\]\[0\]\.path"):
        parse_spec(doc)


def test_unknown_top_level_key():
    with pytest.raises(ParseError, match="unknown keys"):
        parse_spec(_doc(colour="red"))


def test_duplicate_arrow():
    arrows = [{"name": "a", "from": "1", "to": "2"}, {"name": "a", "from": "2", "to": "1"}]
    with pytest.raises(ParseError, match="duplicate arrow"):
        parse_spec(_doc(arrows=arrows))


def test_duplicate_vertex():
    with pytest.raises(ParseError, match="duplicate vertex"):
        parse_spec(_doc(vertices=["1", "1"]))


def test_bad_rational():
    doc = _doc(relations=[[{"coeff": "1/0", "path": ["a", "a"]}]])
    with pytest.raises(ParseError, match="coeff"):
        parse_spec(doc)


def test_float_coefficient_rejected():
    doc = _doc(relations=[[{"coeff": 0.5, "path": ["a", "a"]}]])
    with pytest.raises(ParseError, match="coeff"):
        parse_spec(doc)


def test_invalid_json_reports_position():
    with pytest.raises(ParseError, match="line 1"):
        parse_spec("{not json")


def test_rational_coefficients_parse_exactly():
    doc = {
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "1", "to": "2"},
                   {"name": "c", "from": "2", "to": "2"}],
        "relations": [[{"coeff": "2/3", "path": ["a", "c"]}, {"coeff": "-1/3", "path": ["b", "c"]}],
                      [{"coeff": "1", "path": ["c", "c"]}]],
    }
    s = parse_spec(doc)
    assert str(s.relations[0][0][0]) == "2/3"
    alg = s.build()
    # e1, e2, a, b, c, and one of ac / bc
    assert alg.dim == 6
